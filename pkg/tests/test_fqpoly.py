import itertools
import random

import pytest

from trinomial_index.fqpoly import (
    FiniteField, FpPoly, FqPoly, count_binomial_factors, factor_mod_p, factor_over_fq, is_separable,
)
from trinomial_index.utils.error_handling import DomainError


def fp(coeffs, p):
    """F_p polynomial from coefficients lowest degree first."""
    return FpPoly.from_coeffs(coeffs, p)


@pytest.fixture
def f4():
    """F_4 = F_2[x]/(x^2 + x + 1)"""
    return FiniteField(2, fp([1, 1, 1], 2))


@pytest.fixture
def f9():
    """F_9 = F_3[x]/(x^2 + 1)"""
    return FiniteField(3, fp([1, 0, 1], 3))


def is_irreducible_over(h: FqPoly) -> bool:
    """Rabin-style check: no factor of degree < deg h, and h | y^(q^d) - y."""
    q = h.field.order
    y = FqPoly.monomial(h.field, 1)
    power = y
    for i in range(1, h.degree):
        power = power.pow_mod(q, h)
        if h.gcd(power - y).degree > 0:
            return False
    power = power.pow_mod(q, h)
    return (power - y) % h == FqPoly(h.field)


class TestFpPoly:
    """Polynomials over F_p"""

    def test_normalization(self):
        """Test that coefficients are reduced and leading zeros stripped"""
        f = FpPoly(3, (0, 4, -1, 5))
        assert f.dense == (1, 2, 2)
        assert f.coeffs == (2, 2, 1)
        assert f.degree == 2

    def test_string(self):
        """Test the printed form"""
        assert str(fp([1, 1, 1], 2)) == "x^2 + x + 1"
        assert str(fp([1, 2], 3)) == "2*x + 1"
        assert str(FpPoly(5, ())) == "0"

    def test_arithmetic(self):
        """Test division with remainder and gcd"""
        f = fp([2, 0, 0, 0, 1], 3)
        g = fp([2, 1], 3)
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.is_zero()
        assert g.divides(f)
        assert f.gcd(fp([1, 1], 3)) == fp([1, 1], 3)

    def test_multiplicity(self):
        """Test the multiplicity of a factor"""
        f = fp([1, 0, 1], 2)
        assert fp([1, 1], 2).multiplicity_in(f) == 2
        assert fp([0, 1], 2).multiplicity_in(f) == 0

    def test_irreducibility(self):
        """Test irreducibility over F_p"""
        assert fp([1, 1, 1], 2).is_irreducible()
        assert not fp([1, 0, 1], 2).is_irreducible()
        assert fp([1, 0, 1], 3).is_irreducible()

    def test_squarefree_decomposition(self):
        """Test that p-th powers are found without splitting into irreducibles"""
        assert fp([0, 0, 0, 0, 1], 2).squarefree_decomposition() == [(fp([0, 1], 2), 4)]
        # x^18 - 1 = (x^2 - 1)^9 over F_3
        assert fp([-1] + [0] * 17 + [1], 3).squarefree_decomposition() == [(fp([2, 0, 1], 3), 9)]
        parts = (fp([0, 1], 3) * fp([1, 1], 3) ** 2).squarefree_decomposition()
        assert set(parts) == {(fp([0, 1], 3), 1), (fp([1, 1], 3), 2)}


class TestFactorModP:
    """Factorization over F_p"""

    def test_split_quartic(self):
        """Test x^4 - 1 over F_5 splits into four linear factors"""
        factors = factor_mod_p(fp([-1, 0, 0, 0, 1], 5))
        assert [g.degree for g, _ in factors] == [1, 1, 1, 1]
        assert all(k == 1 for _, k in factors)

    def test_repeated_factor(self):
        """Test x^2 + 1 = (x + 1)^2 over F_2"""
        assert factor_mod_p(fp([1, 0, 1], 2)) == [(fp([1, 1], 2), 2)]

    def test_zero_rejected(self):
        """Test that the zero polynomial cannot be factored"""
        with pytest.raises(DomainError):
            factor_mod_p(FpPoly(3, ()))

    def test_cached_factorization_is_a_fresh_list(self):
        """Test that mutating a returned factor list leaves later calls intact"""
        f = fp([1, 0, 1], 2)
        first = factor_mod_p(f)
        first.append((fp([1, 1, 1], 2), 1))
        assert factor_mod_p(f) == [(fp([1, 1], 2), 2)]

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 31])
    def test_factor_reconstruction(self, p):
        """Test that monic random polynomials of degree up to 30 are the product of their factors"""
        rng = random.Random(p)
        for _ in range(500):
            degree = rng.randint(1, 30)
            f = fp([rng.randrange(p) for _ in range(degree)] + [1], p)
            factors = factor_mod_p(f)
            product = FpPoly.constant(1, p)
            for g, k in factors:
                assert g.is_monic()
                assert g.is_irreducible()
                product = product * g**k
            assert product == f
            assert sum(k * g.degree for g, k in factors) == f.degree
            assert len({g for g, _ in factors}) == len(factors)

    def test_x8_minus_one_mod_3(self):
        """Test the explicit factorization of x^8 - 1 over F_3"""
        expected = {
            fp([2, 1], 3), fp([1, 1], 3),
            fp([1, 0, 1], 3), fp([2, 2, 1], 3), fp([2, 1, 1], 3),
        }
        factors = factor_mod_p(fp([-1] + [0] * 7 + [1], 3))
        assert {g for g, _ in factors} == expected
        assert all(k == 1 for _, k in factors)

    def test_x16_minus_one_mod_3(self):
        """Test the explicit factorization of x^16 - 1 over F_3"""
        expected = {
            fp([2, 1], 3), fp([1, 1], 3),
            fp([1, 0, 1], 3), fp([2, 2, 1], 3), fp([2, 1, 1], 3),
            fp([2, 0, 1, 0, 1], 3), fp([2, 0, 2, 0, 1], 3),
        }
        factors = factor_mod_p(fp([-1] + [0] * 15 + [1], 3))
        assert {g for g, _ in factors} == expected


class TestBinomialCounts:
    """N_p(m, s, t): degree-m factors of x^s + t"""

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_linear_factors(self, k):
        """Test N_3(1, 2^k, 2) = 2"""
        assert count_binomial_factors(3, 1, 2**k, 2) == 2

    def test_quadratic_factors(self):
        """Test N_3(2, 4, 2) = 1 and N_3(2, 2^k, 2) = 3 for k = 3, 4"""
        assert count_binomial_factors(3, 2, 4, 2) == 1
        assert count_binomial_factors(3, 2, 8, 2) == 3
        assert count_binomial_factors(3, 2, 16, 2) == 3

    def test_plus_one(self):
        """Test N_3(2, 2, 1) = 1 and N_3(2, 4, 1) = 2"""
        assert count_binomial_factors(3, 2, 2, 1) == 1
        assert count_binomial_factors(3, 2, 4, 1) == 2

    def test_domain(self):
        """Test that m and s must be positive"""
        with pytest.raises(DomainError):
            count_binomial_factors(3, 0, 4, 1)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_counts_match_enumeration(self, p):
        """Test N_p(m, s, t) against every monic irreducible of degree m, s <= 16"""
        degrees = [m for m in (1, 2, 3) if p**m <= 125]
        irreducibles = {
            m: [g for g in (fp(list(c) + [1], p) for c in itertools.product(range(p), repeat=m)) if g.is_irreducible()]
            for m in degrees
        }
        for s in range(1, 17):
            for t in range(p):
                binomial = fp([t] + [0] * (s - 1) + [1], p)
                for m in degrees:
                    expected = sum(1 for g in irreducibles[m] if g.divides(binomial))
                    assert count_binomial_factors(p, m, s, t) == expected


class TestFiniteField:
    """Arithmetic in F_q"""

    def test_reducible_modulus_rejected(self):
        """Test that a reducible modulus is refused"""
        with pytest.raises(DomainError):
            FiniteField(2, fp([1, 0, 1], 2))

    def test_order_and_elements(self, f4, f9):
        """Test the element enumeration"""
        assert f4.order == 4
        assert len(set(f4.elements())) == 4
        assert len(set(f9.elements())) == 9

    def test_generator_relation(self, f4):
        """Test z^2 = z + 1 and z^3 = 1 in F_4"""
        z = f4.generator()
        assert z * z == z + 1
        assert (z**3).is_one()
        assert str(z) == "z"
        assert str(z + 1) == "(z + 1)"

    def test_inverses(self, f9):
        """Test a * a^-1 = 1 for every nonzero element"""
        for a in f9.elements():
            if a.is_zero():
                with pytest.raises(ZeroDivisionError):
                    a.inverse()
                continue
            assert (a * a.inverse()).is_one()
            assert a / a == f9.one
            assert a ** -2 * a**2 == f9.one

    def test_frobenius_fixes_field(self, f4, f9):
        """Test a^q = a for every element"""
        for fld in (f4, f9):
            for a in fld.elements():
                assert a ** fld.order == a

    def test_prime_field(self):
        """Test the degree-one field"""
        f5 = FiniteField.prime_field(5)
        assert f5.degree == 1
        assert str(f5.element(7)) == "2"


class TestFqPoly:
    """Polynomials over F_q and their factorization"""

    def test_divmod_reconstructs(self, f9):
        """Test a = q*b + r with deg r < deg b on random inputs"""
        rng = random.Random(3)
        for _ in range(50):
            a = FqPoly(f9, tuple(f9.random_element(rng) for _ in range(rng.randint(1, 7))))
            b = FqPoly(f9, tuple(f9.random_element(rng) for _ in range(rng.randint(1, 4))))
            if b.is_zero():
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree < b.degree

    def test_split_over_f4(self, f4):
        """Test y^2 + y + 1 = (y + z)(y + z + 1) over F_4"""
        z = f4.generator()
        g = FqPoly.from_ints(f4, [1, 1, 1])
        factors = factor_over_fq(g)
        assert {h for h, _ in factors} == {FqPoly(f4, (z, f4.one)), FqPoly(f4, (z + 1, f4.one))}

    def test_prime_field_delegation(self):
        """Test that a prime field factors through F_p[x]"""
        f5 = FiniteField.prime_field(5)
        factors = factor_over_fq(FqPoly.from_ints(f5, [1, 0, 1]))
        assert factors == [(FqPoly.from_ints(f5, [2, 1]), 1), (FqPoly.from_ints(f5, [3, 1]), 1)]

    def test_pth_power(self, f9):
        """Test y^3 + 1 = (y + 1)^3 over F_9"""
        g = FqPoly.from_ints(f9, [1, 0, 0, 1])
        assert factor_over_fq(g) == [(FqPoly.from_ints(f9, [1, 1]), 3)]
        assert not is_separable(g)

    def test_separability(self, f9):
        """Test separable and non-separable polynomials"""
        assert is_separable(FqPoly.from_ints(f9, [1, 0, 1]))
        assert not is_separable(FqPoly.from_ints(f9, [1, 2, 1]))

    @pytest.mark.parametrize("field_name", ["f4", "f9"])
    def test_separable_iff_factors_are_simple(self, field_name, request):
        """Test is_separable against the multiplicities of the factorization"""
        fld = request.getfixturevalue(field_name)
        rng = random.Random(17)

        def monic(degree):
            return FqPoly(fld, tuple(fld.random_element(rng) for _ in range(degree)) + (fld.one,))

        for _ in range(100):
            g = monic(rng.randint(1, 4))
            if rng.random() < 0.5:
                g = g * monic(rng.randint(1, 2)) ** 2
            factors = factor_over_fq(g, seed=rng.randrange(1000))
            assert is_separable(g) == all(k == 1 for _, k in factors)

    def test_zero_rejected(self, f4):
        """Test that the zero polynomial cannot be factored"""
        with pytest.raises(DomainError):
            factor_over_fq(FqPoly(f4))

    @pytest.mark.parametrize("field_name", ["f4", "f9"])
    def test_factor_product_reconstruction(self, field_name, request):
        """Test that random polynomials are the product of irreducible factors"""
        fld = request.getfixturevalue(field_name)
        rng = random.Random(11)
        for _ in range(120):
            degree = rng.randint(1, 6)
            coeffs = [fld.random_element(rng) for _ in range(degree)] + [fld.one]
            g = FqPoly(fld, tuple(coeffs))
            factors = factor_over_fq(g, seed=rng.randrange(1000))
            product = FqPoly(fld, (fld.one,))
            for h, k in factors:
                assert h.leading.is_one()
                assert is_irreducible_over(h)
                product = product * h**k
            assert product == g
            assert len({h for h, _ in factors}) == len(factors)
