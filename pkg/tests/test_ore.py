import random
from fractions import Fraction

import pytest
from sympy import Poly, symbols

from trinomial_index.fqpoly import FiniteField, FqPoly
from trinomial_index.intarith import vp
from trinomial_index.newton import Side, phi_newton_polygon
from trinomial_index.ore import (
    analyze_factor, augmented_valuation, build_order_two_type, factor_shape, ore_analysis, refine_lift,
)
from trinomial_index.utils.error_handling import DomainError, NotApplicableError, ShapeStatus
from trinomial_index.zpoly import IntPoly, Trinomial, dedekind_p_maximal, discriminant_resultant


class TestOreAnalysis:
    """First-order splitting of p"""

    def test_regular_quartic(self):
        """Test the shape {(1, 2), (2, 1)} and index 4"""
        result = ore_analysis(IntPoly((96, 8, 6, 0, 1)), 2)
        assert result.regular
        assert result.index_lower_bound == 4
        assert result.shape.pairs == [(1, 2), (2, 1)]
        assert result.shape.complete
        assert result.shape.degree == 4

    def test_two_factors(self):
        """Test x^5 + 5x + 2 = x (x + 1)^4 mod 2"""
        result = ore_analysis(Trinomial(5, 5, 2).poly, 2)
        assert [d.multiplicity for d in result.details] == [1, 4]
        assert result.shape.pairs == [(1, 1), (1, 1), (3, 1)]
        assert result.index_lower_bound == 1

    def test_not_squarefree(self):
        """Test that a polynomial with a repeated factor is refused"""
        with pytest.raises(DomainError):
            ore_analysis(IntPoly((1, 2, 1)), 3)

    def test_analyze_factor(self):
        """Test the local data of phi = x - 1 for x^5 + 5x + 2 at 2"""
        local = analyze_factor(Trinomial(5, 5, 2).poly, IntPoly.linear(1), 2)
        assert local.multiplicity == 4
        assert local.polygon.vertices == [(0, 3), (1, 1), (4, 0)]
        assert local.index == 1
        assert local.regular


class TestFactorShape:
    """Full shape with refinement and order two"""

    def test_one_sided(self):
        """Test x^4 + 8x + 8 is totally ramified at 2"""
        shape = factor_shape(Trinomial(4, 8, 8).poly, 2)
        assert shape.pairs == [(4, 1)]
        assert shape.complete
        assert shape.census() == {1: 1}

    def test_census(self):
        """Test three primes of residue degree one above 2 for x^5 + 5x + 2"""
        shape = factor_shape(Trinomial(5, 5, 2).poly, 2)
        assert shape.complete
        assert shape.census() == {1: 3}

    def test_order_two_total_ramification(self):
        """Test x^5 + 4x + 8 splits as {(1, 1), (4, 1)} at 2"""
        shape = factor_shape(Trinomial(5, 4, 8).poly, 2)
        assert shape.pairs == [(1, 1), (4, 1)]
        assert shape.degree == 5

    def test_order_two_split(self):
        """Test x^5 + 28x + 32 splits as {(1, 1), (2, 1), (2, 1)} at 2"""
        shape = factor_shape(Trinomial(5, 28, 32).poly, 2)
        assert shape.pairs == [(1, 1), (2, 1), (2, 1)]

    def test_primes_record_provenance(self):
        """Test that each prime names the lift and side that produced it"""
        shape = factor_shape(Trinomial(4, 8, 8).poly, 2)
        prime = shape.primes[0]
        assert prime.phi == "x"
        assert prime.slope == Fraction(-3, 4)
        assert prime.order == 1


class TestRefinement:
    """Lift refinement and the order-two machinery"""

    def test_refine_integer_slope(self):
        """Test phi - z p^h on a side of slope -1"""
        f2 = FiniteField.prime_field(2)
        refined = refine_lift(IntPoly((4, 0, 1)), 2, IntPoly.x(), Side((0, 2), (2, 0)), f2.one)
        assert refined == IntPoly((-2, 1))

    def test_refine_needs_integer_slope(self):
        """Test that a side with e > 1 cannot be refined"""
        f2 = FiniteField.prime_field(2)
        with pytest.raises(NotApplicableError):
            refine_lift(IntPoly((8, 4, 0, 0, 0, 1)), 2, IntPoly.x(), Side((1, 2), (5, 0)), f2.one)

    def test_augmented_valuation(self):
        """Test v(x) = 1 for the slope -1/2 scaled by e = 2"""
        assert augmented_valuation(IntPoly.x(), IntPoly.x(), Fraction(-1, 2), 2) == 1
        assert augmented_valuation(IntPoly.constant(4), IntPoly.x(), Fraction(-1, 2), 2) == 4

    def test_augmented_valuation_needs_negative_slope(self):
        """Test that a non-negative slope is refused"""
        with pytest.raises(DomainError):
            augmented_valuation(IntPoly.x(), IntPoly.x(), Fraction(1, 2), 2)

    def test_simple_factor_needs_no_order_two(self):
        """Test that order two is refused for a simple residual factor"""
        f2 = FiniteField.prime_field(2)
        with pytest.raises(NotApplicableError):
            build_order_two_type(
                Trinomial(5, 4, 8).poly, IntPoly.x(), Side((1, 2), (5, 0)), FqPoly.from_ints(f2, [1, 1]), 1, 2,
            )

    def test_order_two_key_polynomial(self):
        """Test phi2 has a one-sided phi-polygon of the first-order slope"""
        f2 = FiniteField.prime_field(2)
        side = Side((1, 2), (5, 0))
        t = build_order_two_type(Trinomial(5, 4, 8).poly, IntPoly.x(), side, FqPoly.from_ints(f2, [1, 1]), 2, 2)
        assert t.phi2.degree == 2
        assert t.phi2.is_monic()
        assert t.multiplicity == 2

    def test_complete_shape_has_no_notes(self):
        """Test that a complete shape carries no notes"""
        shape = factor_shape(Trinomial(4, 8, 8).poly, 2)
        assert shape.status is ShapeStatus.COMPLETE
        assert shape.notes == ()

    @pytest.mark.parametrize("a0, b0", [(19, 4), (3, 20)])
    def test_refined_lift_two_sides(self, a0, b0):
        """Test x - 1 refines to x - 3 with vertices (0,4), (2,1), (4,0) in the class of (a, b) mod 32"""
        rng = random.Random(a0)
        for _ in range(3):
            f = Trinomial(5, a0 + 32 * rng.randint(-20, 20), b0 + 32 * rng.randint(-20, 20)).poly
            local = analyze_factor(f, IntPoly.linear(1), 2)
            first = local.sides[0]
            assert first.side.slope == -1
            (psi, k), = first.factors
            assert k == 2
            refined = refine_lift(f, 2, local.phi, first.side, -psi.coeff(0))
            assert refined == IntPoly.linear(3)
            assert phi_newton_polygon(f, refined, 2).vertices == [(0, 4), (2, 1), (4, 0)]
            assert factor_shape(f, 2).pairs == [(1, 1), (2, 1), (2, 1)]

    def test_refined_lift_three_sides(self):
        """Test x - 3 gives three sides when (a, b) = (3, 4) mod 64"""
        rng = random.Random(64)
        for _ in range(3):
            f = Trinomial(5, 3 + 64 * rng.randint(-20, 20), 4 + 64 * rng.randint(-20, 20)).poly
            polygon = phi_newton_polygon(f, IntPoly.linear(3), 2)
            assert len(polygon.sides) == 3
            start = polygon.vertices[0]
            assert start[0] == 0 and start[1] >= 6
            assert polygon.vertices[1:] == [(1, 3), (2, 1), (4, 0)]
            assert factor_shape(f, 2).pairs == [(1, 1), (1, 1), (1, 1), (2, 1)]


def random_irreducible(rng: random.Random, p: int) -> IntPoly:
    """Monic irreducible polynomial of degree 2..8 whose coefficients carry random powers of p."""
    x = symbols("x")
    while True:
        n = rng.randint(2, 8)
        coeffs = [p ** rng.randint(0, 3) * rng.randint(-6, 6) for _ in range(n)] + [1]
        if coeffs[0] and Poly(list(reversed(coeffs)), x).is_irreducible:
            return IntPoly(tuple(coeffs))


class TestOreProperties:
    """Randomized consistency of Dedekind, Ore and the full shape"""

    def test_dedekind_matches_ore_index(self):
        """Test Dedekind's criterion holds iff the Ore index bound is zero, on 300 instances"""
        rng = random.Random(23)
        for _ in range(300):
            p = rng.choice([2, 3, 5])
            f = random_irreducible(rng, p)
            result = ore_analysis(f, p)
            maximal = dedekind_p_maximal(f, p)
            assert maximal == (result.index_lower_bound == 0)
            if maximal:
                assert result.regular

    def test_shape_bookkeeping(self):
        """Test sum e*f = n for complete shapes, index monotonicity and the discriminant bound"""
        rng = random.Random(31)
        for _ in range(150):
            p = rng.choice([2, 3, 5])
            f = random_irreducible(rng, p)
            shape = factor_shape(f, p)
            first_order = ore_analysis(f, p)
            if shape.complete:
                assert shape.degree == f.degree
            assert shape.index_lower_bound >= first_order.index_lower_bound
            assert vp(discriminant_resultant(f), p) - 2 * shape.index_lower_bound >= 0

    def test_refinement_keeps_the_factor(self):
        """Test refined lifts reduce to the same factor with the same polygon length"""
        rng = random.Random(59)
        refined_count = 0
        for _ in range(300):
            p = rng.choice([2, 3, 5])
            f = random_irreducible(rng, p)
            for local in ore_analysis(f, p).details:
                for analysis in local.sides:
                    if analysis.side.e != 1:
                        continue
                    for psi, k in analysis.factors:
                        if k < 2 or psi.degree != 1:
                            continue
                        refined = refine_lift(f, p, local.phi, analysis.side, -psi.coeff(0))
                        assert refined.reduce(p) == local.phi.reduce(p)
                        assert phi_newton_polygon(f, refined, p).length == local.multiplicity
                        refined_count += 1
        assert refined_count > 0
