"""Exact polynomial layer, cross-checked against sympy oracles."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from otclassify.polynomials import (
    RationalPoly,
    count_real_roots,
    degree_pattern_mod_p,
    discriminant,
    is_irreducible,
    poly_gcd,
    resultant,
    root_bound,
    squarefree_part,
    sturm_chain,
    sturm_count,
)

x = sympy.Symbol("x")


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**k
               for k, c in enumerate(p.coeffs))


def P(*coeffs):
    return RationalPoly.make(coeffs)


small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=7).map(RationalPoly.make)


class TestArithmetic:
    def test_divmod_identity(self):
        f = P(1, 2, 0, 3, 5)
        g = P(7, 0, 2)
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree

    @given(small_polys, small_polys)
    @settings(max_examples=100, deadline=None)
    def test_divmod_identity_random(self, f, g):
        if g.is_zero():
            return
        q, r = divmod(f, g)
        assert q * g + r == f

    def test_compose(self):
        f = P(1, 0, 1)           # x^2 + 1
        g = P(-1, 1)             # x - 1
        assert f.compose(g) == P(2, -2, 1)

    def test_shift(self):
        f = P(0, 0, 1)
        assert f.shift(3) == P(9, 6, 1)

    def test_gcd(self):
        f = P(-1, 0, 1) * P(1, 1)   # (x^2-1)(x+1)
        g = P(1, 2, 1)              # (x+1)^2
        assert poly_gcd(f, g) == P(1, 2, 1).monic()

    def test_squarefree_part(self):
        f = P(1, 1) * P(1, 1) * P(-2, 1)
        assert squarefree_part(f) == (P(1, 1) * P(-2, 1)).monic()


class TestResultant:
    def test_known(self):
        # res(x^2 - 2, x) = product of x over the roots = -2
        assert resultant(P(-2, 0, 1), P(0, 1)) == -2

    @given(st.lists(st.integers(-6, 6), min_size=2, max_size=6),
           st.lists(st.integers(-6, 6), min_size=2, max_size=6))
    @settings(max_examples=60, deadline=None)
    def test_matches_sylvester_determinant(self, a, b):
        f, g = P(*a), P(*b)
        if f.is_zero() or g.is_zero() or f.degree < 1 or g.degree < 1:
            return
        ours = resultant(f, g)
        # independent oracle: determinant of the Sylvester matrix
        m, n = f.degree, g.degree
        fa = [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)]
        ga = [sympy.Rational(c.numerator, c.denominator) for c in reversed(g.coeffs)]
        rows = []
        for i in range(n):
            rows.append([0] * i + fa + [0] * (n - 1 - i))
        for i in range(m):
            rows.append([0] * i + ga + [0] * (m - 1 - i))
        det = sympy.Matrix(rows).det()
        assert sympy.Rational(ours.numerator, ours.denominator) == det

    def test_discriminant_quadratic(self):
        # b^2 - 4ac for x^2 + bx + c
        assert discriminant(P(3, 5, 1)) == 25 - 12


class TestSturm:
    @pytest.mark.parametrize("coeffs,expected", [
        ((-1, -1, 0, 1), 1),     # x^3 - x - 1
        ((-2, 0, 1), 2),         # x^2 - 2
        ((-1, 0, -2, 0, 1), 2),  # x^4 - 2x^2 - 1
        ((1, 0, 1), 0),          # x^2 + 1
        ((-2, 0, 0, 0, 0, 1), 1),
    ])
    def test_real_root_counts(self, coeffs, expected):
        assert count_real_roots(P(*coeffs)) == expected

    def test_count_on_window(self):
        # one real root of x^3 - x - 1 in (-2, 2]; the derived example
        f = P(-1, -1, 0, 1)
        chain = sturm_chain(f)
        assert sturm_count(chain, Fraction(-2), Fraction(2)) == 1

    @given(st.lists(st.integers(-8, 8), min_size=2, max_size=7))
    @settings(max_examples=60, deadline=None)
    def test_matches_sympy_real_roots(self, coeffs):
        f = P(*coeffs)
        if f.degree < 1:
            return
        ours = count_real_roots(f)
        theirs = sympy.Poly(to_sympy(f), x).count_roots()
        assert ours == theirs

    def test_root_bound_is_power_of_two(self):
        b = root_bound(P(-10, 3, 1))
        assert b.denominator == 1 and (b.numerator & (b.numerator - 1)) == 0


class TestIrreducibility:
    @pytest.mark.parametrize("coeffs,expected", [
        ((-1, 0, -2, 0, 1), True),
        ((-1, 0, 1), False),          # x^2 - 1 = (x-1)(x+1)
        ((-1, -1, 0, 1), True),
        ((1, 0, 0, 0, 1), True),      # x^4 + 1: sieve-inconclusive case
        ((1, 1, 2, 1, 1), False),     # (x^2+1)(x^2+x+1)
        ((-2, 0, 0, 0, 0, 1), True),
        ((2, 0, 4, 0, 1), True),      # x^4 + 4x^2 + 2 (Eisenstein at 2)
        ((0, 0, 1), False),           # x^2
        ((4, 4, 1), False),           # (x+2)^2
    ])
    def test_fixed_cases(self, coeffs, expected):
        assert is_irreducible(P(*coeffs)) is expected

    def test_degree_pattern(self):
        # x^2 + 1 is irreducible mod 3, splits mod 5
        f = P(1, 0, 1)
        assert degree_pattern_mod_p(f, 3) == [2]
        assert degree_pattern_mod_p(f, 5) == [1, 1]
        # p dividing the discriminant is rejected
        assert degree_pattern_mod_p(f, 2) is None

    def test_random_monic_against_sympy(self):
        rng = random.Random(20240811)
        for _ in range(40):
            deg = rng.randint(2, 8)
            coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [1]
            f = P(*coeffs)
            _, factors = sympy.Poly(to_sympy(f), x).factor_list()
            expected = len(factors) == 1 and factors[0][1] == 1
            assert is_irreducible(f) is expected, coeffs
