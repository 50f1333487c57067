"""Exact univariate polynomial arithmetic over the rationals.

Coefficient vectors are stored lowest degree first as tuples of
``fractions.Fraction``.  Everything here is exact; no floating point enters.
The irreducibility test follows a cheap-first cascade: squarefree reduction,
rational-root check, a degree-pattern sieve modulo small primes, and a
Zassenhaus-style factorization fallback for the rare inputs the sieve cannot
settle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .errors import NotIrreducible

_SIEVE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _strip(coeffs):
    """Drop trailing zero coefficients; () is the zero polynomial."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial over Q, coefficients lowest degree first.

    Invariant: the leading coefficient is nonzero unless the polynomial is
    zero (represented by an empty coefficient tuple).
    """

    coeffs: tuple

    @staticmethod
    def make(coeffs) -> "RationalPoly":
        return RationalPoly(_strip(Fraction(c) for c in coeffs))

    @staticmethod
    def zero() -> "RationalPoly":
        return RationalPoly(())

    @staticmethod
    def one() -> "RationalPoly":
        return RationalPoly((Fraction(1),))

    @staticmethod
    def x() -> "RationalPoly":
        return RationalPoly((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(_strip(out))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            if other == 0:
                return RationalPoly.zero()
            return RationalPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPoly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return RationalPoly(_strip(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        dlc = other.lc
        db = other.degree
        while len(rem) - 1 >= db and rem:
            k = len(rem) - 1 - db
            c = rem[-1] / dlc
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPoly(_strip(quo)), RationalPoly(tuple(rem))

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def derivative(self) -> "RationalPoly":
        return RationalPoly(_strip(k * c for k, c in enumerate(self.coeffs) if k))

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        """self(inner(x))."""
        acc = RationalPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + RationalPoly.make((c,))
        return acc

    def shift(self, a) -> "RationalPoly":
        """self(x + a)."""
        return self.compose(RationalPoly((Fraction(a), Fraction(1))))

    def scale_int(self) -> "RationalPoly":
        """Primitive integer multiple with positive leading coefficient."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        if ints[-1] < 0:
            g = -g
        return RationalPoly(tuple(Fraction(v // g) for v in ints))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                xs = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    parts.append(xs)
                elif c == -1:
                    parts.append(f"-{xs}")
                else:
                    parts.append(f"{c}*{xs}")
        return " + ".join(reversed(parts)).replace("+ -", "- ")


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_part(f: RationalPoly) -> RationalPoly:
    return (f // poly_gcd(f, f.derivative())).monic()


def resultant(f: RationalPoly, g: RationalPoly) -> Fraction:
    """Res(f, g) by the Euclidean recurrence."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    acc = Fraction(1)
    while True:
        if g.degree == 0:
            return acc * g.lc ** f.degree
        r = f % g
        if r.is_zero():
            return Fraction(0)
        if (f.degree * g.degree) % 2:
            acc = -acc
        acc *= g.lc ** (f.degree - r.degree)
        f, g = g, r


def discriminant(f: RationalPoly) -> Fraction:
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


# --- Sturm sequences --------------------------------------------------------

def sturm_chain(f: RationalPoly):
    """Sturm sequence of the squarefree part of f."""
    f = squarefree_part(f)
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_count(chain, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]."""
    vlo = _variations([_sign(p(lo)) for p in chain])
    vhi = _variations([_sign(p(hi)) for p in chain])
    return vlo - vhi


def count_real_roots(f: RationalPoly) -> int:
    """Number of distinct real roots over all of R."""
    chain = sturm_chain(f)
    at_minf = _variations([_sign(p.lc) * (-1 if p.degree % 2 else 1) for p in chain])
    at_pinf = _variations([_sign(p.lc) for p in chain])
    return at_minf - at_pinf


def root_bound(f: RationalPoly) -> Fraction:
    """Cauchy bound (rounded up to a power of two) on all root magnitudes."""
    lc = abs(f.lc)
    m = max(abs(c) / lc for c in f.coeffs[:-1]) if f.degree > 0 else Fraction(0)
    b = 1 + m
    p = Fraction(1)
    while p < b:
        p *= 2
    return p


# --- arithmetic mod p -------------------------------------------------------
# Dense coefficient lists over F_p, used only by the irreducibility sieve.

def _mp_strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _mp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _mp_strip(out)


def _mp_rem(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        if c:
            off = len(a) - len(b)
            for j, cb in enumerate(b[:-1]):
                a[off + j] = (a[off + j] - c * cb) % p
        a.pop()
        _mp_strip(a)
    return a


def _mp_divexact(a, b, p):
    """Quotient a // b for monic b dividing a."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] % p
        out[k] = c
        if c:
            for j, cb in enumerate(b):
                a[k + j] = (a[k + j] - c * cb) % p
    return _mp_strip(out)


def _mp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _mp_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _mp_powmod(base, e, mod, p):
    result = [1]
    base = _mp_rem(base, mod, p)
    while e:
        if e & 1:
            result = _mp_rem(_mp_mul(result, base, p), mod, p)
        base = _mp_rem(_mp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def degree_pattern_mod_p(f: RationalPoly, p: int):
    """Multiset of irreducible-factor degrees of f mod p.

    Returns None when the prime is unusable: the leading coefficient or a
    denominator vanishes mod p, or the reduction is not squarefree.
    """
    if f.lc.numerator % p == 0 or any(c.denominator % p == 0 for c in f.coeffs):
        return None
    inv_lc = pow(int(f.lc.numerator) % p, -1, p)
    fp = _mp_strip([int(c.numerator) * pow(int(c.denominator) % p, -1, p)
                    % p * inv_lc % p for c in f.coeffs])
    if len(fp) - 1 != f.degree:
        return None
    dfp = _mp_strip([k * c % p for k, c in enumerate(fp) if k])
    if len(_mp_gcd(fp, dfp, p)) != 1:
        return None
    # distinct-degree factorization: gcd with x^{p^d} - x peels the degree-d part
    pattern = []
    work = fp
    xq = [0, 1]
    d = 0
    while len(work) - 1 >= 2 * (d + 1):
        d += 1
        xq = _mp_powmod(xq, p, work, p)
        diff = list(xq) + [0] * max(0, 2 - len(xq))
        diff[1] = (diff[1] - 1) % p
        g = _mp_gcd(work, _mp_strip(diff), p)
        if len(g) - 1 > 0:
            pattern.extend([d] * ((len(g) - 1) // d))
            work = _mp_divexact(work, g, p)
    if len(work) - 1 > 0:
        pattern.append(len(work) - 1)
    return sorted(pattern)


def _proper_degree_sums(pattern, n):
    """Achievable proper factor degrees, as a bitmask over exponents 1..n-1."""
    mask = 1
    for d in pattern:
        mask |= mask << d
    return mask & ((1 << n) - 2)


def _rational_roots(f: RationalPoly):
    """Rational roots of a monic integer polynomial (divisors of f(0))."""
    c0 = f.coeffs[0]
    if c0 == 0:
        return [Fraction(0)]
    roots = []
    a = int(abs(c0))
    d = 1
    while d * d <= a:
        if a % d == 0:
            for cand in (d, a // d):
                for s in (cand, -cand):
                    v = Fraction(s)
                    if f(v) == 0 and v not in roots:
                        roots.append(v)
        d += 1
    return roots


def is_irreducible(f: RationalPoly) -> bool:
    """Irreducibility over Q for monic integer f of degree >= 1."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    if poly_gcd(f, f.derivative()).degree > 0:
        return False
    if _rational_roots(f):
        return False
    if n <= 3:
        return True  # degree 2 or 3 reducible only via a rational root
    allowed = (1 << n) - 2
    for p in _SIEVE_PRIMES:
        pat = degree_pattern_mod_p(f, p)
        if pat is None:
            continue
        allowed &= _proper_degree_sums(pat, n)
        if allowed == 0:
            return True
    # sieve inconclusive: defer to a full Zassenhaus-style factorization
    return _factor_fallback_is_irreducible(f)


def _factor_fallback_is_irreducible(f: RationalPoly) -> bool:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k
               for k, c in enumerate(f.coeffs))
    _, factors = sympy.Poly(expr, x).factor_list()
    return len(factors) == 1 and factors[0][1] == 1


def require_irreducible(f: RationalPoly):
    if not is_irreducible(f):
        raise NotIrreducible(f"{f} is reducible over Q")
