"""Exact arithmetic in a number field K = Q[x]/(f).

Elements are coordinate vectors in the power basis 1, a, ..., a^{n-1} where a
is the class of x.  The signature (s, t) is certified at parse time by a
Sturm count, so no floating point is involved in constructing a field.

The chosen order defaults to Z[a]; a user-supplied integral basis can be
attached for fields where Z[a] is not maximal.  Integrality tests are always
relative to the chosen order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeTooSmall, DivisionByZero, NotMonic
from .polynomials import (
    RationalPoly,
    count_real_roots,
    poly_gcd,
    require_irreducible,
    resultant,
)


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f of degree >= 2."""

    def __init__(self, f: RationalPoly, order_basis=None):
        self.f = f
        self.n = f.degree
        s = count_real_roots(f)
        self.s = s
        self.t = (self.n - s) // 2
        # order basis: rows are power-basis coordinates of the basis elements
        if order_basis is None:
            self.order_basis = None  # Z[a], implicit identity matrix
        else:
            self.order_basis = tuple(tuple(Fraction(c) for c in row)
                                     for row in order_basis)
            _validate_order_basis(self, self.order_basis)
        self._basis_inverse = None

    @property
    def uses_power_order(self) -> bool:
        return self.order_basis is None

    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.n:
            raise ValueError(f"expected at most {self.n} coordinates")
        coords += [Fraction(0)] * (self.n - len(coords))
        return FieldElement(self, tuple(coords))

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def alpha(self) -> "FieldElement":
        return self.element([0, 1])

    def from_poly(self, p: RationalPoly) -> "FieldElement":
        return self.element((p % self.f).coeffs)

    def rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)])

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.f == other.f
                and self.order_basis == other.order_basis)

    def __hash__(self):
        return hash((self.f.coeffs, self.order_basis))

    def __repr__(self):
        return f"NumberField({self.f}, signature=({self.s},{self.t}))"

    def order_coordinates(self, e: "FieldElement"):
        """Coordinates of e in the chosen order basis."""
        if self.order_basis is None:
            return e.coords
        if self._basis_inverse is None:
            self._basis_inverse = _invert_matrix([list(r) for r in self.order_basis])
        inv = self._basis_inverse
        # basis elements are rows, so coordinates use the transposed inverse
        return tuple(
            sum(inv[i][j] * e.coords[i] for i in range(self.n))
            for j in range(self.n)
        )

    def in_order(self, e: "FieldElement") -> bool:
        """Whether e lies in the chosen order (integral coordinates)."""
        return all(c.denominator == 1 for c in self.order_coordinates(e))

    def order_basis_elements(self):
        """The order basis as field elements (power basis for Z[a])."""
        if self.order_basis is None:
            return [self.element([0] * k + [1]) for k in range(self.n)]
        return [self.element(row) for row in self.order_basis]


@dataclass(frozen=True)
class FieldElement:
    """Element of a NumberField as reduced power-basis coordinates."""

    field: NumberField
    coords: tuple

    def poly(self) -> RationalPoly:
        return RationalPoly.make(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field,
                            tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        self._check(other)
        prod = self.poly() * other.poly()
        return self.field.from_poly(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # extended gcd of the representative with f; gcd is 1 by irreducibility
        f = self.field.f
        r0, r1 = f, self.poly()
        s0, s1 = RationalPoly.zero(), RationalPoly.one()
        while r1.degree > 0:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        inv = s1 * (1 / r1.lc)
        return self.field.from_poly(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"<{self.poly()} in {self.field!r}>"


def parse_field(coeffs, order_basis=None) -> NumberField:
    """Build a NumberField from integer coefficients, lowest degree first.

    Rejects non-monic, non-integer, low-degree, and reducible inputs.
    """
    f = RationalPoly.make(coeffs)
    if f.degree < 2:
        raise DegreeTooSmall(f"degree {f.degree} < 2")
    if not f.has_integer_coeffs():
        raise NotMonic("defining polynomial must have integer coefficients")
    if not f.is_monic():
        raise NotMonic("defining polynomial must be monic")
    require_irreducible(f)
    return NumberField(f, order_basis=order_basis)


def minimal_polynomial(e: FieldElement) -> RationalPoly:
    """Monic minimal polynomial of e over Q; its degree divides n."""
    n = e.field.n
    # find the first power of e linearly dependent on the smaller powers
    rows = []  # reduced echelon rows, paired with their expression in e-powers
    power = e.field.one()
    for d in range(n + 1):
        vec = list(power.coords)
        combo = [Fraction(0)] * (n + 1)
        combo[d] = Fraction(1)
        for pivot_col, (rvec, rcombo) in rows:
            c = vec[pivot_col]
            if c:
                for i in range(n):
                    vec[i] -= c * rvec[i]
                for i in range(n + 1):
                    combo[i] -= c * rcombo[i]
        pivot = next((i for i, v in enumerate(vec) if v != 0), None)
        if pivot is None:
            # combo gives the dependency: sum combo[k] * e^k = 0
            poly = RationalPoly.make(combo[: d + 1])
            return poly.monic()
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        combo = [v * inv for v in combo]
        rows.append((pivot, (vec, combo)))
        power = power * e
    raise AssertionError("no dependency among n+1 powers")  # unreachable


def norm(e: FieldElement) -> Fraction:
    """Field norm N_{K/Q}(e) = Res(f, g) for the representative g of e."""
    if e.is_zero():
        return Fraction(0)
    return resultant(e.field.f, e.poly())


def trace(e: FieldElement) -> Fraction:
    """Field trace, from the multiplication matrix diagonal."""
    total = Fraction(0)
    for k in range(e.field.n):
        basis_vec = e.field.element([0] * k + [1])
        total += (e * basis_vec).coords[k]
    return total


def subfield_degree(gens) -> int:
    """Degree [Q(gens) : Q] by iterated primitive elements.

    At each step the new primitive element is g + c*h over a deterministic
    sequence of integers c; at most D(D-1)/2 values of c are bad for
    D = [Q(g,h):Q] <= n, so trying n(n-1)/2 + 1 candidates and keeping the
    maximal degree is exact.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    field = gens[0].field
    n = field.n
    g = gens[0]
    deg_g = minimal_polynomial(g).degree
    for h in gens[1:]:
        deg_h = minimal_polynomial(h).degree
        if deg_h == 1:
            continue
        best = None
        best_deg = -1
        budget = n * (n - 1) // 2 + 1
        for c in _candidate_constants(budget):
            cand = g + field.rational(c) * h
            d = minimal_polynomial(cand).degree
            if d > best_deg:
                best, best_deg = cand, d
            if d == n or d == deg_g * deg_h:
                break
        g, deg_g = best, best_deg
        if deg_g == n:
            break
    return deg_g


def _candidate_constants(count):
    """1, -1, 2, -2, ... (deterministic retry sequence)."""
    k = 0
    for _ in range(count):
        k += 1
        yield k
        yield -k


def element_height_log2(e: FieldElement) -> Fraction:
    """Upper bound on the absolute logarithmic Weil height of e, in bits.

    Uses h(e) <= log(M(p))/deg(p) for the minimal polynomial p of e, with the
    Mahler measure bounded by the l2 norm of the primitive integer multiple
    (Landau's inequality).
    """
    p = minimal_polynomial(e).scale_int()
    norm_sq = sum(Fraction(c) ** 2 for c in p.coeffs)
    # log2(sqrt(norm_sq)) <= bits such that norm_sq <= 4**bits
    bits = 0
    acc = Fraction(1)
    while acc < norm_sq:
        acc *= 4
        bits += 1
    return Fraction(bits, p.degree)


def _invert_matrix(rows):
    """Exact inverse of a square Fraction matrix (Gauss-Jordan)."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _validate_order_basis(field, rows):
    """Check a user-supplied integral basis really is a ring order."""
    n = field.n
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"order basis must be a {n}x{n} rational matrix")
    inv = _invert_matrix([list(r) for r in rows])

    def coords_in_basis(e):
        return [sum(inv[i][j] * e.coords[i] for i in range(n)) for j in range(n)]

    elems = [field.element(r) for r in rows]
    one = field.one()
    if any(c.denominator != 1 for c in coords_in_basis(one)):
        raise ValueError("order basis does not contain 1")
    if any(c.denominator != 1 for c in coords_in_basis(field.alpha())):
        raise ValueError("order basis does not contain the field generator")
    for i in range(n):
        for j in range(i, n):
            prod = elems[i] * elems[j]
            if any(c.denominator != 1 for c in coords_in_basis(prod)):
                raise ValueError("order basis is not closed under multiplication")
