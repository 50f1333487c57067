"""Certified realization of the archimedean embeddings of a number field.

Real roots are isolated by Sturm counts and refined by exact bisection;
complex roots are seeded numerically (mpmath's polynomial root finder) and
then certified and refined with the interval Newton operator, so every
enclosure provably contains exactly one root.  The canonical labeling is

    sigma_1 .. sigma_s          real roots, descending
    sigma_{s+1} .. sigma_{s+t}  upper-half roots, (Re, Im) descending
    sigma_{s+t+j} = conj(sigma_{s+j})

Ordering decisions are certified: overlapping real parts are either separated
by refinement or proven equal through the exact root-sum polynomial, so the
labeling is a pure function of the defining polynomial.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .errors import Ambiguous, NoMatch, NotTotallyPositive, PrecisionExhausted
from .intervals import Box, Interval, as_box, eval_poly, log_interval
from .numberfield import FieldElement, NumberField
from .polynomials import RationalPoly, squarefree_part, sturm_chain, sturm_count, root_bound

PRECISION_START = 128
PRECISION_CAP = 16384


@dataclass(frozen=True)
class EmbeddingLabel:
    """Canonical label of one archimedean embedding (1-based index)."""

    index: int
    kind: str               # "real" | "complex"
    pair_index: int | None  # 1..t for complex labels
    partner: int | None     # index of the conjugate embedding

    @property
    def is_real(self) -> bool:
        return self.kind == "real"


@dataclass(frozen=True)
class LogVector:
    """Dirichlet log map image: s real logs then t values log|tau_j|^2."""

    entries: tuple

    def sum_enclosure(self) -> Interval:
        total = Interval.point(0)
        for e in self.entries:
            total = total + e
        return total


def _int_coeffs(g: RationalPoly):
    """(integer coefficient list, common denominator) with g = ints / den."""
    den = 1
    for c in g.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    return [int(c * den) for c in g.coeffs], den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _eval_elem(coeffs_den, x):
    ints, den = coeffs_den
    v = eval_poly([Fraction(c) for c in ints], x)
    if den != 1:
        v = v * Fraction(1, den)
    return v


# --- real root isolation (exact) ---------------------------------------------

class RealRootIsolation:
    """Isolating intervals (ascending) for the real roots of a squarefree poly.

    Rational roots are peeled off first and kept as point intervals, so
    bisection never lands on a root at a dyadic midpoint.
    """

    def __init__(self, g: RationalPoly):
        g = squarefree_part(g)
        self.rational_roots = []
        for r in _rational_roots_any(g):
            self.rational_roots.append(r)
            g = g // RationalPoly((-r, Fraction(1)))
        self.poly = g
        self.intervals = []
        if g.degree > 0:
            chain = sturm_chain(g)
            bound = root_bound(g)
            total = sturm_count(chain, -bound, bound)
            stack = [(-bound, bound, total)]
            while stack:
                lo, hi, cnt = stack.pop()
                if cnt == 0:
                    continue
                if cnt == 1:
                    self.intervals.append(Interval(lo, hi))
                    continue
                mid = (lo + hi) / 2
                cl = sturm_count(chain, lo, mid)
                stack.append((lo, mid, cl))
                stack.append((mid, hi, cnt - cl))
        for r in self.rational_roots:
            self.intervals.append(Interval.point(r))
        # split any interval that an exact rational root happens to sit inside
        fixed = []
        for iv in self.intervals:
            if iv.width == 0:
                fixed.append(iv)
                continue
            pieces = [iv]
            for r in self.rational_roots:
                nxt = []
                for piece in pieces:
                    if piece.lo < r < piece.hi:
                        c = sturm_chain(self.poly)
                        left = Interval(piece.lo, r)
                        right = Interval(r, piece.hi)
                        nxt.append(left if sturm_count(c, left.lo, left.hi) else right)
                    else:
                        nxt.append(piece)
                pieces = nxt
            fixed.extend(pieces)
        self.intervals = sorted(fixed, key=lambda i: (i.lo, i.hi))

    def refine(self, negbits: int):
        """Bisect every non-point interval until width <= 2**-negbits."""
        g = self.poly
        out = []
        for iv in self.intervals:
            if iv.width == 0:
                out.append(iv)
                continue
            lo, hi = iv.lo, iv.hi
            slo = 1 if g(lo) > 0 else -1
            while (hi - lo) * (1 << negbits) > 1:
                mid = (lo + hi) / 2
                vm = g(mid)
                sm = 1 if vm > 0 else -1  # vm != 0: rational roots were peeled
                if sm == slo:
                    lo = mid
                else:
                    hi = mid
            out.append(Interval(lo, hi))
        self.intervals = out


def _rational_roots_any(g: RationalPoly):
    """Rational roots of an arbitrary rational polynomial."""
    gi = g.scale_int()
    if gi.is_zero() or gi.degree == 0:
        return []
    roots = []
    if gi.coeffs[0] == 0:
        roots.append(Fraction(0))
        while gi.coeffs[0] == 0:
            gi = RationalPoly(gi.coeffs[1:])
    c0 = abs(int(gi.coeffs[0])) if gi.coeffs else 0
    cl = abs(int(gi.lc)) if not gi.is_zero() else 1
    if c0:
        for p in _divisors(c0):
            for q in _divisors(cl):
                for s in (1, -1):
                    v = Fraction(s * p, q)
                    if v not in roots and g(v) == 0:
                        roots.append(v)
    return roots


def _divisors(a):
    out = []
    d = 1
    while d * d <= a:
        if a % d == 0:
            out.append(d)
            if d != a // d:
                out.append(a // d)
        d += 1
    return sorted(out)


# --- certified embedding data -------------------------------------------------

class EmbeddingData:
    """Refinable certified enclosures of all roots of the defining polynomial."""

    def __init__(self, field: NumberField, cap: int = PRECISION_CAP):
        self.field = field
        self.cap = cap
        self._lock = threading.RLock()
        self._fint = _int_coeffs(field.f)
        self._dint = _int_coeffs(field.f.derivative())
        self._negbits = PRECISION_START
        self._isolate(self._negbits)
        self._order_uppers()
        self._labels = self._build_labels()

    # -- isolation and refinement

    def _isolate(self, negbits):
        field = self.field
        iso = RealRootIsolation(field.f)
        iso.refine(negbits)
        if len(iso.intervals) != field.s:
            raise AssertionError("Sturm count mismatch")  # cannot happen
        self._real = sorted(iso.intervals, key=lambda i: i.lo, reverse=True)
        self._upper = self._certify_boxes(negbits)

    def _certify_boxes(self, negbits):
        """Seed upper-half roots numerically, certify via interval Newton."""
        field = self.field
        t = field.t
        if t == 0:
            return []
        work = max(negbits + 48, 96)
        while True:
            if work > self.cap:
                raise PrecisionExhausted(
                    f"cannot certify complex roots of {field.f} within {self.cap} bits")
            seeds = self._seed_roots(work)
            uppers = sorted((z for z in seeds if z.imag > 0),
                            key=lambda z: (-z.imag,))[:t]
            if len(uppers) < t:
                work *= 2
                continue
            boxes = []
            for z in uppers:
                box = self._certify_one(z, work)
                if box is None:
                    boxes = None
                    break
                boxes.append(box)
            if boxes is None:
                work *= 2
                continue
            ok = all(b.im.is_positive() for b in boxes)
            if ok:
                # refine until pairwise disjoint
                for _ in range(work):
                    clash = self._first_overlap(boxes)
                    if clash is None:
                        break
                    i, j = clash
                    boxes[i] = self._newton_step(boxes[i], work)
                    boxes[j] = self._newton_step(boxes[j], work)
                else:
                    ok = False
            if ok and self._first_overlap(boxes) is None:
                boxes = [self._shrink(b, negbits, work) for b in boxes]
                return boxes
            work *= 2

    def _seed_roots(self, work):
        with mpmath.workprec(work + 32):
            ints, den = self._fint
            coeffs = [mpmath.mpf(c) / den for c in reversed(ints)]
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=work // 2)
            except mpmath.libmp.NoConvergence:
                return []
            return [mpmath.mpc(r) for r in roots]

    def _certify_one(self, z, work):
        """Epsilon-inflation: find a box around the seed that Newton contracts."""
        re = _mpf_fraction(z.real)
        im = _mpf_fraction(z.imag)
        for j in (work - 16, work // 2, work // 4, 24, 12, 6):
            if j <= 0:
                continue
            eps = Fraction(1, 1 << j)
            box = Box(Interval(re - eps, re + eps),
                      Interval(im - eps, im + eps)).round_out(work)
            nxt = self._newton_image(box)
            if nxt is not None and nxt.strictly_inside(box):
                got = nxt.intersect(box)
                return got.round_out(work) if got is not None else None
        return None

    def _newton_image(self, box):
        m = box.mid_point()
        fp = _eval_elem(self._dint, box)
        if fp.mag2().contains_zero():
            return None
        fm = _eval_elem(self._fint, m)
        return m - fm / fp

    def _newton_step(self, box, work):
        nxt = self._newton_image(box)
        if nxt is None:
            return box
        got = nxt.intersect(box)
        if got is None:
            return box
        return got.round_out(work)

    def _shrink(self, box, negbits, work):
        for _ in range(200):
            if box.width * (1 << negbits) <= 1:
                return box
            newbox = self._newton_step(box, max(work, negbits + 16))
            if newbox.width >= box.width:
                work = max(2 * work, 2 * negbits + 32)
            box = newbox
        raise PrecisionExhausted("Newton refinement stalled")

    @staticmethod
    def _first_overlap(boxes):
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if boxes[i].intersects(boxes[j]):
                    return i, j
        return None

    def ensure(self, negbits: int):
        """Refine all root enclosures to width <= 2**-negbits."""
        with self._lock:
            if negbits > self.cap:
                raise PrecisionExhausted(f"precision cap {self.cap} bits exceeded")
            if negbits <= self._negbits:
                return
            work = negbits + 32
            f = self.field.f
            out = []
            for iv in self._real:
                lo, hi = iv.lo, iv.hi
                slo = 1 if f(lo) > 0 else -1
                while (hi - lo) * (1 << negbits) > 1:
                    mid = (lo + hi) / 2
                    sm = 1 if f(mid) > 0 else -1
                    if sm == slo:
                        lo = mid
                    else:
                        hi = mid
                out.append(Interval(lo, hi))
            self._real = out
            self._upper = [self._shrink(b, negbits, work) for b in self._upper]
            self._negbits = negbits

    # -- canonical ordering

    def _order_uppers(self):
        t = self.field.t
        if t <= 1:
            return
        # order[(i,j)] > 0 means box i sorts before box j in the descending key
        order = {}
        for i in range(t):
            for j in range(i + 1, t):
                order[(i, j)] = self._compare_uppers(i, j)
        idx = self._sort_by_pair_order(order, t)
        self._upper = [self._upper[i] for i in idx]

    def _sort_by_pair_order(self, order, t):
        def before(a, b):
            if a < b:
                return order[(a, b)] > 0
            return order[(b, a)] < 0

        idx = list(range(t))
        # insertion sort with the certified pairwise relation
        for i in range(1, t):
            j = i
            while j > 0 and before(idx[j], idx[j - 1]):
                idx[j], idx[j - 1] = idx[j - 1], idx[j]
                j -= 1
        return idx

    def _compare_uppers(self, i, j):
        """+1 if box i precedes box j in (Re, Im)-descending order, else -1."""
        goal = self._negbits
        while True:
            a, b = self._upper[i], self._upper[j]
            if a.re.disjoint(b.re):
                return 1 if a.re.lo > b.re.hi else -1
            eq = self._real_parts_equal(i, j, goal)
            if eq is True:
                while not self._upper[i].im.disjoint(self._upper[j].im):
                    goal *= 2
                    self.ensure(goal)
                a, b = self._upper[i], self._upper[j]
                return 1 if a.im.lo > b.im.hi else -1
            goal *= 2
            self.ensure(goal)

    def _real_parts_equal(self, i, j, goal):
        """Certified equality test for Re(z_i) = Re(z_j) via the root-sum poly.

        2*Re(z) = z + conj(z) is a real root of S(y) = prod(y - z_a - z_b);
        equality holds iff both doubled real parts land in the same isolating
        interval of the squarefree part of S.
        """
        iso = self._root_sum_isolation()
        negbits = max(32, goal // 4)
        for _ in range(30):
            iso.refine(negbits)
            hits = []
            for k in (i, j):
                enc = self._upper[k].re * 2
                touching = [idx for idx, iv in enumerate(iso.intervals)
                            if iv.intersects(enc)]
                hits.append(touching)
            if len(hits[0]) == 1 and len(hits[1]) == 1:
                return hits[0][0] == hits[1][0]
            negbits *= 2
            if negbits > self.cap:
                break
            self.ensure(min(negbits, self.cap))
        raise PrecisionExhausted("cannot resolve real-part tie")

    def _root_sum_isolation(self):
        if not hasattr(self, "_sum_iso"):
            self._sum_iso = RealRootIsolation(_root_sum_poly(self.field.f))
        return self._sum_iso

    # -- public access

    def _build_labels(self):
        s, t = self.field.s, self.field.t
        labels = [EmbeddingLabel(i + 1, "real", None, None) for i in range(s)]
        for j in range(t):
            labels.append(EmbeddingLabel(s + 1 + j, "complex", j + 1, s + t + 1 + j))
        for j in range(t):
            labels.append(EmbeddingLabel(s + t + 1 + j, "complex", j + 1, s + 1 + j))
        return labels

    def labels(self):
        return list(self._labels)

    def label(self, index: int) -> EmbeddingLabel:
        return self._labels[index - 1]

    def enclosure(self, index: int):
        """Current enclosure of the root sigma_index(alpha)."""
        with self._lock:
            s, t = self.field.s, self.field.t
            if index <= s:
                return self._real[index - 1]
            if index <= s + t:
                return self._upper[index - s - 1]
            return self._upper[index - s - t - 1].conj()

    def evaluate(self, index: int, elem: FieldElement, precision: int):
        """Certified enclosure of sigma_index(elem), width <= 2**(1 - precision/2)."""
        goal = max(precision // 2, 16)
        coeffs = _int_coeffs(elem.poly())
        with self._lock:
            negbits = max(self._negbits, goal)
            while True:
                self.ensure(negbits)
                v = _eval_elem(coeffs, self.enclosure(index))
                if v.width * (1 << goal) <= 2:
                    return v
                if negbits >= self.cap:
                    raise PrecisionExhausted(
                        f"evaluation at sigma_{index} did not reach width 2^{1 - goal}")
                negbits = min(2 * negbits, self.cap)

    def real_sign(self, index: int, elem: FieldElement) -> int:
        """Exact sign of sigma_index(elem) for a real embedding, elem != 0."""
        coeffs = _int_coeffs(elem.poly())
        with self._lock:
            negbits = self._negbits
            while True:
                self.ensure(negbits)
                v = _eval_elem(coeffs, self.enclosure(index))
                sg = v.sign()
                if sg is not None:
                    return sg
                if negbits >= self.cap:
                    raise PrecisionExhausted("sign certification exhausted")
                negbits = min(2 * negbits, self.cap)


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def embedding_data(field: NumberField, cap: int = PRECISION_CAP) -> EmbeddingData:
    with _CACHE_LOCK:
        data = _CACHE.get(field)
        if data is None or data.cap < cap:
            data = EmbeddingData(field, cap=max(cap, PRECISION_CAP))
            _CACHE[field] = data
        return data


def isolate_roots(field: NumberField, precision: int = PRECISION_START):
    """All root enclosures in label order, plus the exact signature (s, t)."""
    data = embedding_data(field)
    data.ensure(max(precision // 2, 32))
    encl = [data.enclosure(i) for i in range(1, field.n + 1)]
    return encl, (field.s, field.t)


def canonical_labeling(field: NumberField):
    return embedding_data(field).labels()


def evaluate(field: NumberField, index: int, elem: FieldElement,
             precision: int = PRECISION_START):
    return embedding_data(field).evaluate(index, elem, precision)


def log_vector(u: FieldElement, precision: int = PRECISION_START) -> LogVector:
    """Dirichlet log vector of u; requires positive real embedding values."""
    if u.is_zero():
        raise ValueError("log vector of zero")
    field = u.field
    data = embedding_data(field)
    entries = []
    for i in range(1, field.s + 1):
        if data.real_sign(i, u) < 0:
            raise NotTotallyPositive(f"sigma_{i}(u) < 0")
        v = data.evaluate(i, u, precision)
        while not v.is_positive():
            precision2 = 2 * precision
            v = data.evaluate(i, u, precision2)
            precision = precision2
        entries.append(log_interval(v, precision))
    for j in range(1, field.t + 1):
        box = data.evaluate(field.s + j, u, precision)
        m2 = box.mag2()
        p = precision
        while not m2.is_positive():
            p *= 2
            box = data.evaluate(field.s + j, u, p)
            m2 = box.mag2()
        entries.append(log_interval(m2, precision))
    return LogVector(tuple(entries))


def match_embedding(field: NumberField, value, candidates, elem: FieldElement,
                    precision: int = PRECISION_START, cap: int = PRECISION_CAP):
    """The unique candidate label whose enclosure of elem meets value.

    Candidates are refined until pairwise disjoint; the caller guarantees the
    candidate values are distinct (e.g. elem is a primitive element).
    """
    data = embedding_data(field)
    vbox = as_box(value)
    p = precision
    while True:
        encl = {lab.index: as_box(data.evaluate(lab.index, elem, p))
                for lab in candidates}
        items = list(encl.items())
        separated = all(items[i][1].disjoint(items[j][1])
                        for i in range(len(items)) for j in range(i + 1, len(items)))
        if separated:
            break
        if p >= cap:
            raise Ambiguous("candidate embeddings not separable within the budget")
        p *= 2
    hits = [idx for idx, box in encl.items() if box.intersects(vbox)]
    if not hits:
        raise NoMatch("no candidate embedding matches the value")
    if len(hits) > 1:
        raise Ambiguous(f"value overlaps {len(hits)} candidates; refine the value")
    lab = next(l for l in candidates if l.index == hits[0])
    return lab


def _mpf_fraction(v) -> Fraction:
    p, q = mpmath.libmp.to_rational(v._mpf_)
    return Fraction(p, q)


def _power_sums(f: RationalPoly, upto: int):
    """Power sums of the roots of monic f, via Newton's identities."""
    n = f.degree
    c = list(f.coeffs)
    p = [Fraction(n)]
    for k in range(1, upto + 1):
        if k <= n:
            acc = -k * c[n - k]
            for i in range(1, k):
                acc -= c[n - i] * p[k - i]
        else:
            acc = Fraction(0)
            for i in range(1, n + 1):
                acc -= c[n - i] * p[k - i]
        p.append(acc)
    return p


def _root_sum_poly(f: RationalPoly) -> RationalPoly:
    """Squarefree polynomial vanishing on all pairwise root sums z_a + z_b."""
    n = f.degree
    N = n * n
    p = _power_sums(f, N)
    q = [Fraction(0)] * (N + 1)
    for k in range(N + 1):
        q[k] = sum(comb(k, j) * p[j] * p[k - j] for j in range(k + 1))
    # elementary symmetric functions from power sums
    e = [Fraction(1)] + [Fraction(0)] * N
    for k in range(1, N + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * q[i]
        e[k] = acc / k
    coeffs = [(-1) ** k * e[k] for k in range(N + 1)]
    poly = RationalPoly(tuple(reversed(coeffs)))
    return squarefree_part(poly)
