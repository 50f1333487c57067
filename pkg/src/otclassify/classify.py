"""Orbits of embedding choices under A_U and the biholomorphism decision.

An embedding choice picks one embedding from each conjugate pair (a bitmask
of length t); the stabilizer A_U acts through the induced permutations of
the labels.  Orbits are computed by union-find and cross-checked exactly
against Burnside's count, and every pair inside an orbit carries a witness
automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import embeddings as emb
from .errors import NotAdmissible, NotSimpleType, TooLarge
from .galois import Automorphism, AutGroup
from .numberfield import NumberField
from .units import UnitSubgroup, is_admissible, is_simple_type

CHOICE_CAP = 20


@dataclass(frozen=True)
class EmbeddingChoice:
    """One embedding per conjugate pair: bit j-1 = 0 selects sigma_{s+j},
    bit j-1 = 1 selects sigma_{s+t+j}."""

    t: int
    bits: int

    def indices(self, field: NumberField) -> tuple:
        s, t = field.s, field.t
        return tuple(s + j + (t if self.bits >> (j - 1) & 1 else 0)
                     for j in range(1, t + 1))

    def __str__(self):
        return format(self.bits, f"0{self.t}b")[::-1] if self.t else ""


@dataclass(frozen=True)
class OrderedChoice:
    """An embedding choice with an explicit coordinate order tau_1..tau_t."""

    indices: tuple

    @staticmethod
    def canonical(field: NumberField) -> "OrderedChoice":
        return OrderedChoice(tuple(range(field.s + 1, field.s + field.t + 1)))

    def validate(self, field: NumberField):
        s, t = field.s, field.t
        if len(self.indices) != t:
            raise ValueError(f"tau must list {t} embeddings")
        pairs = []
        for idx in self.indices:
            if not s + 1 <= idx <= s + 2 * t:
                raise ValueError(f"index {idx} is not a complex embedding")
            pairs.append(idx - s if idx <= s + t else idx - s - t)
        if sorted(pairs) != list(range(1, t + 1)):
            raise ValueError("tau must select exactly one embedding per pair")

    def forget(self, field: NumberField) -> EmbeddingChoice:
        s, t = field.s, field.t
        bits = 0
        for idx in self.indices:
            if idx > s + t:
                bits |= 1 << (idx - s - t - 1)
        return EmbeddingChoice(t, bits)


@dataclass(frozen=True)
class OrbitReport:
    orbits: tuple            # tuple of tuples of EmbeddingChoice
    count: int
    witnesses: dict          # bits -> (orbit_rep_bits, automorphism index w):
                             # act(w, rep) = choice
    group: AutGroup

    def orbit_of(self, choice: EmbeddingChoice):
        return self.witnesses[choice.bits][0]


@dataclass(frozen=True)
class BiholomorphismVerdict:
    verdict: str             # "yes" | "no" | "unknown"
    witness: Automorphism | None


def enumerate_choices(field: NumberField, cap: int = CHOICE_CAP):
    """All 2^t embedding choices in ascending bitmask order."""
    t = field.t
    if t < 1:
        raise ValueError("the construction needs t >= 1")
    if t > cap:
        raise TooLarge(f"2^{t} choices exceed the cap 2^{cap}")
    return [EmbeddingChoice(t, bits) for bits in range(1 << t)]


def act(field: NumberField, rho: Automorphism, T: EmbeddingChoice) -> EmbeddingChoice:
    """rho . T = { sigma o rho : sigma in T }, renormalized to a bitmask."""
    s, t = field.s, field.t
    bits = 0
    for idx in T.indices(field):
        image = rho.perm[idx - 1]
        pair = image - s if image <= s + t else image - s - t
        if image > s + t:
            bits |= 1 << (pair - 1)
    return EmbeddingChoice(t, bits)


def _pair_action(field, rho):
    """(pi, flip): pair j maps to pair pi[j-1], flipping iff flip[j-1]."""
    s, t = field.s, field.t
    pi, flip = [], []
    for j in range(1, t + 1):
        image = rho.perm[s + j - 1]
        pi.append(image - s if image <= s + t else image - s - t)
        flip.append(image > s + t)
    return pi, flip


def burnside_fixed_count(field: NumberField, rho: Automorphism) -> int:
    """Number of choices fixed by rho, from the pair-cycle structure."""
    pi, flip = _pair_action(field, rho)
    t = field.t
    seen = [False] * t
    cycles = 0
    for j in range(t):
        if seen[j]:
            continue
        cycles += 1
        parity = False
        k = j
        while not seen[k]:
            seen[k] = True
            parity ^= flip[k]
            k = pi[k] - 1
        if parity:
            return 0
    return 1 << cycles


def orbit_report(A_U: AutGroup, field: NumberField,
                 cap: int = CHOICE_CAP) -> OrbitReport:
    """Union-find orbits of the choices, cross-checked by Burnside's lemma."""
    choices = enumerate_choices(field, cap)
    size = len(choices)
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            if rx > ry:
                rx, ry = ry, rx
            parent[ry] = rx

    action = {}
    for gi, rho in enumerate(A_U.elements):
        row = [act(field, rho, c).bits for c in choices]
        action[gi] = row
        for bits, image in enumerate(row):
            union(bits, image)

    groups: dict = {}
    for bits in range(size):
        groups.setdefault(find(bits), []).append(bits)
    orbits = tuple(tuple(EmbeddingChoice(field.t, b) for b in sorted(members))
                   for _, members in sorted(groups.items()))

    # witness BFS from each representative: w with act(w, rep) = element
    witnesses = {}
    for rep, members in sorted(groups.items()):
        witnesses[rep] = (rep, A_U.identity_index)
        frontier = [rep]
        while frontier:
            nxt = []
            for x in frontier:
                wx = witnesses[x][1]
                for gi in range(A_U.order):
                    y = action[gi][x]
                    if y not in witnesses:
                        witnesses[y] = (rep, A_U.compose(wx, gi))
                        nxt.append(y)
            frontier = nxt

    count = len(orbits)
    total_fixed = sum(burnside_fixed_count(field, rho) for rho in A_U.elements)
    if total_fixed != count * A_U.order:
        raise AssertionError("Burnside count disagrees with union-find")
    if field.t <= 12:
        direct = sum(sum(1 for bits in range(size) if action[gi][bits] == bits)
                     for gi in range(A_U.order))
        if direct != total_fixed:
            raise AssertionError("cycle-formula Burnside disagrees with direct count")
    for orbit in orbits:
        if A_U.order % len(orbit) != 0:
            raise AssertionError("orbit size does not divide the group order")
    return OrbitReport(orbits, count, witnesses, A_U)


def witness_between(report: OrbitReport, T: EmbeddingChoice,
                    Tp: EmbeddingChoice):
    """Automorphism index w with act(w, T) = Tp, or None (different orbits)."""
    rep_t, w_t = report.witnesses[T.bits]
    rep_p, w_p = report.witnesses[Tp.bits]
    if rep_t != rep_p:
        return None
    g = report.group
    return g.compose(g.inverse(w_t), w_p)


def are_biholomorphic(field: NumberField, U: UnitSubgroup, A_U: AutGroup,
                      T: EmbeddingChoice, Tp: EmbeddingChoice,
                      sufficient_only: bool = False) -> BiholomorphismVerdict:
    """Decide X(K,U,T) = X(K,U,T') by searching A_U for a witness.

    The equivalence requires (K,U) of simple type; without it only the
    sufficient direction is available (opt in via sufficient_only).
    """
    simple = is_simple_type(U, field)
    if not simple and not sufficient_only:
        raise NotSimpleType(
            "the biholomorphism criterion requires (K,U) of simple type; "
            "pass sufficient_only to get the one-sided test")
    for rho in A_U.elements:
        if act(field, rho, T) == Tp:
            return BiholomorphismVerdict("yes", rho)
    return BiholomorphismVerdict("no" if simple else "unknown", None)


@dataclass(frozen=True)
class LatticeData:
    """Affine generator data of the lattice acting on H^s x C^t."""

    tau: OrderedChoice
    rotations: tuple     # per unit generator: (s intervals, t boxes)
    translations: tuple  # per order-basis element: (s intervals, t boxes)
    basis_kind: str      # "power" (Z[alpha]) or "user"
    precision: int


def export_lattice(field: NumberField, U: UnitSubgroup, tau: OrderedChoice,
                   precision: int = emb.PRECISION_START) -> LatticeData:
    """Certified rotation and translation coefficients of the group action."""
    tau.validate(field)
    if not is_admissible(U, field):
        raise NotAdmissible("the unit subgroup is not admissible")
    data = emb.embedding_data(field)

    def row(elem):
        reals = []
        for i in range(1, field.s + 1):
            v = data.evaluate(i, elem, precision)
            p = precision
            while not (v.is_positive() or v.is_negative()):
                p *= 2
                v = data.evaluate(i, elem, p)
            reals.append(v)
        boxes = [data.evaluate(idx, elem, precision) for idx in tau.indices]
        return tuple(reals), tuple(boxes)

    rotations = []
    for g in U.generators:
        reals, boxes = row(g)
        if any(not r.is_positive() for r in reals):
            raise AssertionError("unit generator with non-positive rotation")
        rotations.append((reals, boxes))
    translations = [row(b) for b in field.order_basis_elements()]
    return LatticeData(tau, tuple(rotations), tuple(translations),
                       "power" if field.uses_power_order else "user", precision)
