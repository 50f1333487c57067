"""Exact field arithmetic against sympy and multiplication-matrix oracles."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from otclassify.errors import DegreeTooSmall, DivisionByZero, NotIrreducible, NotMonic
from otclassify.numberfield import (
    FieldElement,
    minimal_polynomial,
    norm,
    parse_field,
    subfield_degree,
    trace,
)
from otclassify.polynomials import RationalPoly

x = sympy.Symbol("x")

coords3 = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                   min_size=3, max_size=3)


def sympy_poly(p: RationalPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**k
               for k, c in enumerate(p.coeffs))


class TestParseField:
    def test_signature_quartic(self, quartic):
        assert (quartic.s, quartic.t) == (2, 1)

    def test_rejects_reducible(self):
        with pytest.raises(NotIrreducible):
            parse_field([-1, 0, 1])  # x^2 - 1

    def test_signature_cubic(self, cubic_plastic):
        # one real root (independent Sturm oracle checked in test_polynomials)
        assert (cubic_plastic.s, cubic_plastic.t) == (1, 1)

    def test_rejects_low_degree(self):
        with pytest.raises(DegreeTooSmall):
            parse_field([3, 1])

    def test_rejects_non_monic(self):
        with pytest.raises(NotMonic):
            parse_field([1, 0, 2])


class TestElementArithmetic:
    def test_sqrt2_squares_to_two(self):
        K = parse_field([-2, 0, 1])
        a = K.alpha()
        assert (a * a).coords == (Fraction(2), Fraction(0))

    def test_inverse_round_trip(self, quartic):
        b = quartic.element([1, 2, 0, 3])
        assert (quartic.one() / b * b).is_one()

    def test_division_by_zero(self, quartic):
        with pytest.raises(DivisionByZero):
            quartic.one() / quartic.zero()

    def test_quartic_reduction(self, quartic):
        # alpha^2 * (alpha^2 - 2) reduces to 1; oracle: sympy polynomial rem
        a = quartic.alpha()
        prod = (a * a) * (a * a - quartic.rational(2))
        rem = sympy.rem(x**4 - 2 * x**2, x**4 - 2 * x**2 - 1, x)
        assert rem == 1
        assert prod.is_one()

    @given(a=coords3, b=coords3, c=coords3)
    @settings(max_examples=60, deadline=None)
    def test_field_axioms(self, cubic_plastic, a, b, c):
        K = cubic_plastic
        ea, eb, ec = K.element(a), K.element(b), K.element(c)
        assert (ea + eb) * ec == ea * ec + eb * ec
        assert (ea * eb) * ec == ea * (eb * ec)
        assert ea * eb == eb * ea
        if not eb.is_zero():
            assert (ea / eb) * eb == ea

    @given(a=coords3)
    @settings(max_examples=40, deadline=None)
    def test_inverse_exact(self, cubic_plastic, a):
        e = cubic_plastic.element(a)
        if e.is_zero():
            return
        assert (e * e.inverse()).is_one()


class TestMinimalPolynomial:
    def test_generator(self, quartic):
        assert minimal_polynomial(quartic.alpha()) == quartic.f

    def test_rational(self, quartic):
        assert minimal_polynomial(quartic.rational(7)) == RationalPoly.make([-7, 1])

    def test_alpha_squared(self, quartic):
        # oracle: resultant_y(f(y), x - y^2) has minimal factor x^2 - 2x - 1
        y = sympy.Symbol("y")
        res = sympy.resultant(y**4 - 2 * y**2 - 1, x - y**2, y)
        factors = sympy.factor_list(res)[1]
        assert any(sympy.Poly(p, x).all_coeffs() == [1, -2, -1] for p, _ in factors)
        a2 = quartic.alpha() ** 2
        assert minimal_polynomial(a2) == RationalPoly.make([-1, -2, 1])

    @given(a=coords3)
    @settings(max_examples=30, deadline=None)
    def test_vanishes_and_degree_divides(self, cubic_plastic, a):
        e = cubic_plastic.element(a)
        p = minimal_polynomial(e)
        assert cubic_plastic.n % p.degree == 0
        acc = cubic_plastic.zero()
        for c in reversed(p.coeffs):
            acc = acc * e + cubic_plastic.rational(c)
        assert acc.is_zero()

    def test_matches_sympy(self, cubic_plastic):
        e = cubic_plastic.element([1, 2, -1])
        alpha = sympy.CRootOf(x**3 - x - 1, 0)
        expr = 1 + 2 * alpha - alpha**2
        theirs = sympy.minimal_polynomial(expr, x)
        ours = sympy_poly(minimal_polynomial(e))
        assert sympy.expand(ours - theirs) == 0


class TestNorm:
    def test_cubic_generator(self, cubic_plastic):
        assert norm(cubic_plastic.alpha()) == 1

    def test_one(self, quartic):
        assert norm(quartic.one()) == 1

    def test_quintic_alpha_minus_one(self, quintic):
        # product of (root - 1) over all roots of x^5 - 2; the exact value is
        # (-1)^5 f(1) = +1 (verified below by the multiplication-matrix det)
        e = quintic.alpha() - quintic.one()
        assert norm(e) == 1
        assert _det_oracle(e) == 1

    @given(a=coords3, b=coords3)
    @settings(max_examples=40, deadline=None)
    def test_multiplicative(self, cubic_plastic, a, b):
        ea, eb = cubic_plastic.element(a), cubic_plastic.element(b)
        assert norm(ea * eb) == norm(ea) * norm(eb)

    @given(a=coords3)
    @settings(max_examples=30, deadline=None)
    def test_matches_multiplication_matrix(self, cubic_plastic, a):
        e = cubic_plastic.element(a)
        assert norm(e) == _det_oracle(e)


def _det_oracle(e: FieldElement) -> Fraction:
    """Independent norm oracle: determinant of multiplication by e."""
    K = e.field
    rows = []
    for k in range(K.n):
        basis_vec = K.element([0] * k + [1])
        rows.append([sympy.Rational(c.numerator, c.denominator)
                     for c in (e * basis_vec).coords])
    d = sympy.Matrix(rows).det()
    return Fraction(int(sympy.numer(d)), int(sympy.denom(d)))


class TestTrace:
    def test_rational(self, quartic):
        assert trace(quartic.rational(3)) == 12

    def test_alpha(self, quartic):
        # trace of the generator is minus the x^{n-1} coefficient
        assert trace(quartic.alpha()) == 0


class TestSubfieldDegree:
    def test_generator(self, quartic):
        assert subfield_degree([quartic.alpha()]) == 4

    def test_rational(self, quartic):
        assert subfield_degree([quartic.rational(2)]) == 1

    def test_alpha_squared(self, quartic):
        assert subfield_degree([quartic.alpha() ** 2]) == 2

    def test_two_generators_recover_field(self, quartic):
        a2 = quartic.alpha() ** 2
        a3 = quartic.alpha() ** 3
        assert subfield_degree([a2, a3]) == 4


class TestOrderBasis:
    def test_golden_ratio_order(self):
        # x^2 - 5 with the maximal order Z[(1+sqrt5)/2]
        basis = [[1, 0], [Fraction(1, 2), Fraction(1, 2)]]
        K = parse_field([-5, 0, 1], order_basis=basis)
        phi = K.element([Fraction(1, 2), Fraction(1, 2)])
        assert K.in_order(phi)
        assert not K.uses_power_order
        Kpow = parse_field([-5, 0, 1])
        assert not Kpow.in_order(phi)

    def test_rejects_non_ring(self):
        # the module Z + Z*(sqrt2/2) is not closed under multiplication
        with pytest.raises(ValueError):
            parse_field([-2, 0, 1], order_basis=[[1, 0], [0, Fraction(1, 2)]])
