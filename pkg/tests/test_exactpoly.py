"""Exact polynomial layer: ring axioms, shift, division, roots, text forms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspdiff.exactpoly import (ArityMismatch, BasePoly, DivisionByZero,
                                NotDivisible, PolyParseError, divides,
                                exact_divide, grlex_key, linear_factors,
                                parse_poly, poly_from_json, poly_to_json,
                                rational_roots, render_poly)

H = BasePoly.variable(1, 0)


def poly1(*coeffs):
    """Univariate polynomial with coeffs listed from the constant term up."""
    return BasePoly(1, {(k,): c for k, c in enumerate(coeffs)})


coeffs = st.integers(min_value=-9, max_value=9)


@st.composite
def polys(draw, nvars=1, maxdeg=4):
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=5))):
        exp = tuple(draw(st.integers(min_value=0, max_value=maxdeg))
                    for _ in range(nvars))
        terms[exp] = draw(coeffs)
    return BasePoly(nvars, terms)


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        assert BasePoly(1, {(3,): 0, (1,): 2}) == poly1(0, 2)
        assert BasePoly(1, {(2,): 0}).is_zero()

    def test_integral_fractions_stored_as_ints(self):
        p = BasePoly(1, {(1,): Fraction(4, 2)})
        assert p == poly1(0, 2)

    def test_constant_and_variable(self):
        assert BasePoly.constant(1, 5).eval([7]) == 5
        assert BasePoly.variable(2, 1).eval([3, 11]) == 11

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            BasePoly(1, {(-1,): 1})

    def test_immutable(self):
        with pytest.raises(AttributeError):
            H.terms = {}


class TestArithmetic:
    def test_known_product(self):
        # (h-1)(h-2) = h^2 - 3h + 2
        assert (H - 1) * (H - 2) == poly1(2, -3, 1)

    def test_mixed_arity_rejected(self):
        with pytest.raises(ArityMismatch):
            H + BasePoly.variable(2, 0)

    def test_scalar_coercion(self):
        assert H + Fraction(1, 2) == BasePoly(1, {(1,): 1, (0,): Fraction(1, 2)})
        assert 3 * H == poly1(0, 3)
        assert (2 - H) == -(H - 2)

    @given(polys(), polys(), polys())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) * r == p * r + q * r
        assert (p * q) * r == p * (q * r)

    @given(polys(nvars=2, maxdeg=3), st.integers(-5, 5), st.integers(-5, 5),
           st.fractions(min_value=-4, max_value=4, max_denominator=8))
    @settings(max_examples=60, deadline=None)
    def test_eval_is_a_homomorphism(self, p, a, b, t):
        q = p * p + p
        assert q.eval([a, t]) == p.eval([a, t]) ** 2 + p.eval([a, t])
        assert (p + q).eval([b, t]) == p.eval([b, t]) + q.eval([b, t])


class TestShift:
    def test_direction(self):
        # shift(k) substitutes h -> h - k
        assert H.shift([1]) == H - 1
        assert H.shift([-2]) == H + 2

    def test_known_expansion(self):
        p = H * H
        assert p.shift([1]) == poly1(1, -2, 1)

    @given(polys(), st.integers(-4, 4), st.integers(-4, 4))
    @settings(max_examples=60, deadline=None)
    def test_composition_and_identity(self, p, a, b):
        assert p.shift([0]) == p
        assert p.shift([a]).shift([b]) == p.shift([a + b])

    @given(polys(), polys(), st.integers(-4, 4))
    @settings(max_examples=60, deadline=None)
    def test_ring_homomorphism(self, p, q, k):
        assert (p + q).shift([k]) == p.shift([k]) + q.shift([k])
        assert (p * q).shift([k]) == p.shift([k]) * q.shift([k])

    @given(polys(), st.integers(-4, 4), st.fractions(min_value=-6, max_value=6, max_denominator=8))
    @settings(max_examples=60, deadline=None)
    def test_eval_compatibility(self, p, k, t):
        assert p.shift([k]).eval([t]) == p.eval([t - k])

    def test_multivariate_shifts_are_independent(self):
        p = BasePoly.variable(2, 0) * BasePoly.variable(2, 1)
        q = p.shift([1, -1])
        assert q.eval([3, 5]) == (3 - 1) * (5 + 1)


class TestDivision:
    def test_exact(self):
        p = (H - 1) * (H + 3) * (H - Fraction(1, 2))
        assert exact_divide(p, H - 1) == (H + 3) * (H - Fraction(1, 2))

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            exact_divide(H * H + 1, H - 1)

    def test_by_zero(self):
        with pytest.raises(DivisionByZero):
            exact_divide(H, BasePoly.zero(1))

    def test_zero_dividend(self):
        assert exact_divide(BasePoly.zero(1), H).is_zero()

    def test_multivariate(self):
        h1, h2 = BasePoly.variable(2, 0), BasePoly.variable(2, 1)
        p = (h1 + h2) * (h1 * h2 - 2)
        assert exact_divide(p, h1 + h2) == h1 * h2 - 2

    @given(polys(), polys())
    @settings(max_examples=80, deadline=None)
    def test_product_roundtrip(self, p, q):
        if q.is_zero():
            return
        assert exact_divide(p * q, q) == p
        assert divides(q, p * q)


class TestRationalRoots:
    def test_monic_split(self):
        roots, cof = rational_roots((H - 1) * (H - 1) * (H + 4))
        assert roots == [Fraction(-4), Fraction(1), Fraction(1)]
        assert cof == BasePoly.one(1)

    def test_fractional_roots_and_leading_coefficient(self):
        p = (2 * H - 1) * (H + 3)
        roots, cof = rational_roots(p)
        assert roots == [Fraction(-3), Fraction(1, 2)]
        assert cof == BasePoly.constant(1, 2)

    def test_roots_at_zero(self):
        roots, cof = rational_roots(H * H * (H - 5))
        assert roots == [0, 0, Fraction(5)]
        assert cof == BasePoly.one(1)

    def test_irreducible_cofactor(self):
        roots, cof = rational_roots((H * H + 1) * (H - 2))
        assert roots == [Fraction(2)]
        assert cof == H * H + 1

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            rational_roots(BasePoly.zero(1))

    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), max_size=4),
           st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_reconstruction(self, roots, lead):
        p = linear_factors(roots) * lead
        got, cof = rational_roots(p)
        assert got == sorted(roots)
        assert cof == BasePoly.constant(1, lead)


class TestTextForm:
    def test_canonical_rendering(self):
        assert render_poly((H - 1) * (H - 2)) == "h^2-3*h+2"
        assert render_poly(BasePoly.zero(1)) == "0"
        assert render_poly(-H) == "-h"
        assert render_poly(H + Fraction(1, 2)) == "h+1/2"

    def test_multivariate_rendering_uses_graded_order(self):
        h1, h2 = BasePoly.variable(2, 0), BasePoly.variable(2, 1)
        assert render_poly(h1 * h2 + h1 + 1) == "h1*h2+h1+1"

    def test_parse_known(self):
        assert parse_poly("h^2-3*h+2") == (H - 1) * (H - 2)
        assert parse_poly("-h+1/2") == -H + Fraction(1, 2)
        assert parse_poly("h1*h2+1", nvars=2) == \
            BasePoly.variable(2, 0) * BasePoly.variable(2, 1) + 1

    def test_parse_error_carries_position(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("h^")
        assert "position" in str(err.value)

    @given(polys())
    @settings(max_examples=80, deadline=None)
    def test_roundtrip(self, p):
        assert parse_poly(render_poly(p), nvars=1) == p

    @given(polys(nvars=2, maxdeg=3))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_rank_two(self, p):
        assert parse_poly(render_poly(p), nvars=2) == p


class TestJson:
    @given(polys(nvars=2, maxdeg=3))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip(self, p):
        assert poly_from_json(poly_to_json(p)) == p

    def test_fraction_coefficients_survive(self):
        p = H * Fraction(3, 7) + 1
        assert poly_from_json(poly_to_json(p)) == p


def test_grlex_orders_by_total_degree_first():
    assert grlex_key((0, 2)) > grlex_key((1, 0))
    assert grlex_key((1, 1)) > grlex_key((0, 2))


def test_sorted_terms_descending():
    p = H * H + 3 * H + 2
    exps = [e for e, _ in p.sorted_terms()]
    assert exps == [(2,), (1,), (0,)]
