"""Field automorphisms, their embedding permutations, and the U-stabilizer.

Automorphisms are found as roots of the defining polynomial inside the field:
for each numerically enclosed root, LLL proposes a rational expression in
powers of the generator, and the proposal is kept only if f(candidate) = 0
holds exactly in K.  When the field has a real embedding, only real roots can
be images of the generator (the field embeds in R), which bounds |Aut| by s
and makes the enumeration complete.  The found set is closed under exact
composition, so the returned group is always a genuine subgroup of Aut(K/Q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import embeddings as emb
from .errors import Ambiguous, NotAUnit, NotTotallyPositive, PrecisionExhausted
from .lattice import relation_candidates
from .numberfield import FieldElement, NumberField
from .units import UnitSubgroup, exponent_solve

DENOMINATOR_CAP = 10 ** 6


@dataclass(frozen=True)
class Automorphism:
    """rho in Aut(K/Q), given by the exact image of the generator.

    perm is 1-based with sigma_i o rho = sigma_{perm[i-1]}; it maps real
    indices to real indices and commutes with the conjugate pairing.
    """

    image: FieldElement
    perm: tuple

    def apply(self, e: FieldElement) -> FieldElement:
        """rho(e), by substituting the generator image into e."""
        acc = e.field.zero()
        for c in reversed(e.coords):
            acc = acc * self.image + e.field.rational(c)
        return acc

    def __call__(self, e: FieldElement) -> FieldElement:
        return self.apply(e)

    def is_identity(self) -> bool:
        return self.image == self.image.field.alpha()


class AutGroup:
    """A closed set of automorphisms with its composition table."""

    def __init__(self, elements, warnings=()):
        self.elements = tuple(elements)
        self.warnings = tuple(warnings)
        index = {a.image.coords: i for i, a in enumerate(self.elements)}
        table = []
        for a in self.elements:
            row = []
            for b in self.elements:
                im = a.apply(b.image)  # (a o b)(alpha) = b-poly evaluated at a(alpha)
                row.append(index[im.coords])
            table.append(tuple(row))
        self.cayley = tuple(table)
        self.identity_index = next(i for i, a in enumerate(self.elements)
                                   if a.is_identity())
        self.inverses = tuple(row.index(self.identity_index) for row in self.cayley)

    @property
    def order(self) -> int:
        return len(self.elements)

    def compose(self, i: int, j: int) -> int:
        """Index of elements[i] o elements[j]."""
        return self.cayley[i][j]

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"AutGroup(order={self.order}, warnings={len(self.warnings)})"


def automorphisms(field: NumberField, precision: int = emb.PRECISION_START,
                  cap: int = emb.PRECISION_CAP,
                  denominator_cap: int = DENOMINATOR_CAP) -> AutGroup:
    """All roots of f inside K, as verified automorphisms.

    With s >= 1 the generator image must be a real root, so only real roots
    are tried; reconstruction failures are reported in warnings (the group
    itself is exact and closed regardless).
    """
    data = emb.embedding_data(field)
    n = field.n
    if field.s >= 1:
        targets = list(range(1, field.s + 1))
    else:
        targets = list(range(1, n + 1))
    found = {field.alpha().coords: field.alpha()}
    unresolved = []
    for idx in targets:
        image = _reconstruct_root(field, data, idx, precision, cap, denominator_cap)
        if image is None:
            unresolved.append(idx)
        else:
            found[image.coords] = image
    # close under composition (exact); catches anything reconstruction missed
    images = list(found.values())
    changed = True
    while changed:
        changed = False
        for a in list(images):
            for b in list(images):
                c = _substitute(b, a)
                if c.coords not in found:
                    found[c.coords] = c
                    images.append(c)
                    changed = True
    elements = sorted(found.values(), key=lambda e: (not _is_alpha(e), e.coords))
    autos = [Automorphism(im, induced_permutation(field, im)) for im in elements]
    covered = {a.perm[0] for a in autos}
    warnings = tuple(f"root sigma_{i}(alpha) not reconstructed within the budget"
                     for i in unresolved if i not in covered)
    return AutGroup(autos, warnings)


def _is_alpha(e: FieldElement) -> bool:
    return e == e.field.alpha()


def _substitute(outer_poly_of: FieldElement, at: FieldElement) -> FieldElement:
    acc = at.field.zero()
    for c in reversed(outer_poly_of.coords):
        acc = acc * at + at.field.rational(c)
    return acc


def _reconstruct_root(field, data, target_idx, precision, cap, denom_cap):
    """Express the target root as an exact polynomial in sigma_1(alpha)."""
    f = field.f
    n = field.n
    alpha = field.alpha()
    if target_idx == 1:
        return alpha
    prec = max(precision, 128)
    while prec <= cap:
        scale = prec
        goal = 2 * (scale + 16)
        try:
            powers = [data.evaluate(1, alpha ** k, goal) for k in range(n)]
            target = data.evaluate(target_idx, alpha, goal)
        except PrecisionExhausted:
            return None
        tails = [_tail(v) for v in powers] + [_tail(target)]
        for cand in relation_candidates(tails, scale, limit=8):
            d = cand[-1]
            if d == 0 or abs(d) > denom_cap:
                continue
            coords = [Fraction(-a, d) for a in cand[:-1]]
            g = field.element(coords)
            if _is_root(f, g):
                return g
        prec *= 2
    return None


def _tail(v):
    from .intervals import Box

    if isinstance(v, Box):
        return (v.re.mid, v.im.mid)
    return (v.mid, Fraction(0))


def _is_root(f, g: FieldElement) -> bool:
    acc = g.field.zero()
    for c in reversed(f.coeffs):
        acc = acc * g + g.field.rational(c)
    return acc.is_zero()


def induced_permutation(field: NumberField, image: FieldElement,
                        precision: int = emb.PRECISION_START) -> tuple:
    """perm with sigma_i o rho = sigma_{perm[i-1]} for rho: alpha -> image.

    Exact because an embedding is determined by its value on the generator:
    sigma_i(rho(alpha)) is matched against the certified root enclosures.
    """
    data = emb.embedding_data(field)
    labels = data.labels()
    n = field.n
    perm = []
    for i in range(1, n + 1):
        p = precision
        while True:
            value = data.evaluate(i, image, p)
            try:
                lab = emb.match_embedding(field, value, labels, field.alpha(),
                                          precision=p)
                break
            except Ambiguous:
                p *= 2
                if p > data.cap:
                    raise
        perm.append(lab.index)
    perm = tuple(perm)
    _check_perm(field, perm)
    return perm


def _check_perm(field, perm):
    s, t = field.s, field.t
    if sorted(perm) != list(range(1, field.n + 1)):
        raise AssertionError(f"not a permutation: {perm}")
    for i in range(1, s + 1):
        if perm[i - 1] > s:
            raise AssertionError("real embedding mapped to a complex one")
    for j in range(1, t + 1):
        a, b = perm[s + j - 1], perm[s + t + j - 1]
        pa = a - s if a <= s + t else a - s - t
        pb = b - s if b <= s + t else b - s - t
        if pa != pb or a == b:
            raise AssertionError("permutation breaks the conjugate pairing")


def stabilizer_A_U(G: AutGroup, U: UnitSubgroup) -> AutGroup:
    """Subgroup A_U = { rho : rho(U) = U }.

    One-sided containment rho(U) <= U suffices: rho has finite order, so
    rho(U) <= U implies equality.
    """
    members = []
    for a in G.elements:
        ok = True
        for g in U.generators:
            w = a.apply(g)
            try:
                if exponent_solve(U, w) is None:
                    ok = False
                    break
            except (NotAUnit, NotTotallyPositive):
                ok = False
                break
        if ok:
            members.append(a)
    return AutGroup(members, warnings=G.warnings)
