"""Unit subgroups of a number field order.

A UnitSubgroup is a finite list of multiplicatively independent totally
positive units.  Independence, admissibility, and exponent recovery all
follow the same pattern: interval linear algebra over certified log vectors
gives the verdict whenever enclosures suffice, and any degeneracy claim must
be backed by an exact witness identity in the field (a product of generator
powers equal to 1), proposed by LLL and verified exactly.  Nothing is ever
concluded from floating point alone.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction

from .errors import (
    DependentGenerators,
    Inconclusive,
    NotAUnit,
    NotTotallyPositive,
)
from .intervals import Interval
from .lattice import relation_candidates
from .numberfield import FieldElement, NumberField, norm, subfield_degree
from . import embeddings as emb

PREC_START = 128
PREC_CAP = 16384


class UnitSubgroup:
    """Finitely generated subgroup of the totally positive units."""

    def __init__(self, generators, _certified=False):
        self.generators = tuple(generators)
        if self.generators and not _certified:
            raise ValueError("use make_subgroup to construct a certified subgroup")
        self._log_cache = {}
        self._lock = threading.Lock()

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def field(self) -> NumberField | None:
        return self.generators[0].field if self.generators else None

    def log_matrix(self, precision: int):
        """Rows of certified log vectors for the generators (cached)."""
        with self._lock:
            rows = self._log_cache.get(precision)
            if rows is None:
                rows = tuple(emb.log_vector(g, precision).entries
                             for g in self.generators)
                self._log_cache[precision] = rows
            return rows

    def power_product(self, exponents) -> FieldElement:
        acc = self.field.one()
        for g, e in zip(self.generators, exponents):
            if e:
                acc = acc * g ** int(e)
        return acc

    def __eq__(self, other):
        return isinstance(other, UnitSubgroup) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"UnitSubgroup(rank={self.rank})"


def is_unit(e: FieldElement) -> bool:
    """In the chosen order with norm +-1."""
    if e.is_zero():
        return False
    return e.field.in_order(e) and abs(norm(e)) == 1


def is_totally_positive(e: FieldElement) -> bool:
    """Exact verdict: all real embedding values positive (e != 0)."""
    if e.is_zero():
        raise ValueError("sign of zero")
    data = emb.embedding_data(e.field)
    return all(data.real_sign(i, e) > 0 for i in range(1, e.field.s + 1))


def make_subgroup(gens, precision_cap: int = PREC_CAP) -> UnitSubgroup:
    """Certified unit subgroup: checks units, positivity, and independence."""
    gens = list(gens)
    for g in gens:
        if not is_unit(g):
            raise NotAUnit(f"{g.poly()} is not a unit of the chosen order")
        if not is_totally_positive(g):
            raise NotTotallyPositive(f"{g.poly()} is not totally positive")
        if g.is_one():
            raise DependentGenerators("the identity cannot be a generator", (1,))
    group = UnitSubgroup(gens, _certified=True)
    if gens:
        _certify_independent(group, precision_cap)
    return group


def _certify_independent(group: UnitSubgroup, cap: int):
    field = group.field
    r = group.rank
    # Dirichlet bound: rank of the totally positive units is s + t - 1
    hard_bound = field.s + field.t - 1
    prec = PREC_START
    while True:
        rows = group.log_matrix(prec)
        if r <= hard_bound and _interval_full_rank(rows):
            return
        rel = _exact_relation(group, rows, prec)
        if rel is not None:
            raise DependentGenerators(
                f"generators satisfy the relation {rel}", rel)
        prec *= 2
        if prec > cap:
            raise Inconclusive(
                "independence neither certified nor refuted at the precision cap")


def _exact_relation(group: UnitSubgroup, rows, prec):
    """LLL-propose an integer relation among log rows; verify exactly in K."""
    tails = [tuple(entry.mid for entry in row) for row in rows]
    for cand in relation_candidates(tails, max(64, prec // 2), limit=6):
        if all(c == 0 for c in cand):
            continue
        if max(abs(c) for c in cand) > 10 ** 6:
            continue
        if group.power_product(cand).is_one():
            return cand
    return None


def _interval_full_rank(rows) -> bool:
    """Certified full row rank via interval Gaussian elimination."""
    work = [list(row) for row in rows]
    m = len(work[0]) if work else 0
    used_cols = set()
    for i in range(len(work)):
        pivot = None
        for c in range(m):
            if c in used_cols:
                continue
            if not work[i][c].contains_zero():
                pivot = c
                break
        if pivot is None:
            return False
        used_cols.add(pivot)
        for j in range(i + 1, len(work)):
            factor = work[j][pivot] / work[i][pivot]
            work[j] = [a - factor * b for a, b in zip(work[j], work[i])]
    return True


def _interval_det(rows):
    """Enclosure of the determinant of a square interval matrix, or None
    when no pivot chain with certified-nonzero pivots exists at this width."""
    n = len(rows)
    work = [list(r) for r in rows]
    det = Interval.point(1)
    for i in range(n):
        pivot = next((j for j in range(i, n)
                      if not work[j][i].contains_zero()), None)
        if pivot is None:
            return None
        if pivot != i:
            work[i], work[pivot] = work[pivot], work[i]
            det = -det
        det = det * work[i][i]
        for j in range(i + 1, n):
            factor = work[j][i] / work[i][i]
            work[j] = [a - factor * b for a, b in zip(work[j], work[i])]
    return det


def is_admissible(U: UnitSubgroup, field: NumberField,
                  precision_cap: int = PREC_CAP) -> bool:
    """Rank s and certified nonsingular projection onto the first s log
    coordinates (the admissibility condition on the unit subgroup)."""
    if U.rank != field.s:
        return False
    if field.s == 0:
        return False
    prec = PREC_START
    while True:
        rows = U.log_matrix(prec)
        proj = [row[: field.s] for row in rows]
        det = _interval_det(proj)
        if det is not None and not det.contains_zero():
            return True
        rel = _exact_relation(U, rows, prec)
        if rel is not None:
            # cannot happen for a certified subgroup; defensive
            raise DependentGenerators(f"generators satisfy {rel}", rel)
        prec *= 2
        if prec > precision_cap:
            raise Inconclusive(
                "admissibility determinant not certified at the precision cap")


def exponent_solve(U: UnitSubgroup, w: FieldElement,
                   precision_cap: int = PREC_CAP):
    """Exponents e with w = prod gens^e, or None when w is not in U.

    The real linear system on log vectors is solved with interval
    coefficients; integer candidates inside the solution enclosures are
    verified exactly in the field.  A None verdict is certified: either some
    enclosure contains no integer, or the unique candidate fails the exact
    product identity.
    """
    if not is_unit(w):
        raise NotAUnit(f"{w.poly()} is not a unit of the chosen order")
    if not is_totally_positive(w):
        raise NotTotallyPositive(f"{w.poly()} is not totally positive")
    if U.rank == 0:
        return () if w.is_one() else None
    if w.is_one():
        return (0,) * U.rank
    prec = PREC_START
    while True:
        rows = U.log_matrix(prec)
        target = emb.log_vector(w, prec).entries
        sol = _interval_solve(rows, target)
        if sol is not None:
            candidates = []
            ok = True
            for iv in sol:
                ints = _integers_in(iv)
                if len(ints) == 0:
                    return None
                if len(ints) > 1:
                    ok = False
                    break
                candidates.append(ints[0])
            if ok:
                if U.power_product(candidates) == w:
                    return tuple(candidates)
                return None
        prec *= 2
        if prec > precision_cap:
            raise Inconclusive("exponent system not separable at the precision cap")


def _interval_solve(rows, target):
    """Solve sum_k e_k rows[k] = target over intervals.

    rows: r log vectors of length m >= r; returns r solution enclosures or
    None when no certified pivot chain exists at this precision.
    """
    r = len(rows)
    m = len(target)
    # columns of the system matrix are the generators' log vectors
    aug = [[rows[k][c] for k in range(r)] + [target[c]] for c in range(m)]
    pivots = []
    used = [False] * m
    for col in range(r):
        pivot = None
        for row in range(m):
            if not used[row] and not aug[row][col].contains_zero():
                pivot = row
                break
        if pivot is None:
            return None
        used[pivot] = True
        pivots.append(pivot)
        for row in range(m):
            if row != pivot:
                factor = aug[row][col] / aug[pivot][col]
                aug[row] = [a - factor * b for a, b in zip(aug[row], aug[pivot])]
    return [aug[pivots[col]][r] / aug[pivots[col]][col] for col in range(r)]


def _integers_in(iv: Interval):
    import math

    lo = math.ceil(iv.lo)
    hi = math.floor(iv.hi)
    return list(range(lo, hi + 1))


def is_simple_type(U: UnitSubgroup, field: NumberField) -> bool:
    """Q(U) = K, tested by the exact degree of the generated subfield."""
    if U.rank == 0:
        return False  # Q(U) = Q and n >= 2
    return subfield_degree(U.generators) == field.n


def unit_search(field: NumberField, height_bound: int, count_target: int):
    """Best-effort search for independent totally positive units.

    Enumerates order elements with coordinates bounded by height_bound,
    keeps norm +-1 elements (squaring the ones that are not totally
    positive), and deduplicates against the subgroup generated so far.  Not
    guaranteed to find fundamental units.
    """
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    basis = field.order_basis_elements()
    found: list[FieldElement] = []
    group = UnitSubgroup(())
    # enumerate small-first: 0, 1, -1, 2, -2, ... with high-degree coordinates
    # most significant, so simple elements like the generator come early
    digits = [0]
    for k in range(1, height_bound + 1):
        digits += [k, -k]
    for rev in itertools.product(digits, repeat=field.n):
        coords = tuple(reversed(rev))
        if len(found) >= count_target:
            break
        if all(c == 0 for c in coords):
            continue
        e = field.zero()
        for c, b in zip(coords, basis):
            if c:
                e = e + c * b
        if e.is_rational():
            continue  # rational units are just +-1
        if abs(norm(e)) != 1:
            continue
        cand = e if is_totally_positive(e) else e * e
        if cand.is_one():
            continue
        try:
            if found and exponent_solve(group, cand) is not None:
                continue
            group = make_subgroup(found + [cand])
        except (DependentGenerators, Inconclusive):
            continue
        found.append(cand)
    return found
