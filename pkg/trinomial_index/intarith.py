"""Exact integer kernels: p-adic valuations, binomial valuations, Moebius, N_p(m)."""
import functools
import logging
from fractions import Fraction
from typing import Union

from sympy import divisors, factorint, isprime
from sympy.ntheory import multiplicity

from trinomial_index.utils.error_handling import DomainError

logger = logging.getLogger(__name__)


@functools.total_ordering
class _Infinity:
    """The valuation of zero. Compares above every integer and absorbs addition."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("trinomial_index.INFINITY")

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction, _Infinity)):
            return False
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other > 0:
                return self
            raise DomainError("infinite valuation multiplied by a non-positive number")
        return NotImplemented

    __rmul__ = __mul__


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


def is_infinite(value) -> bool:
    return value is INFINITY


def require_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise DomainError(f"{p} is not a prime")


def vp(t: int, p: int) -> Valuation:
    """Largest k with p^k | t; INFINITY for t = 0."""
    require_prime(p)
    if t == 0:
        return INFINITY
    return int(multiplicity(p, abs(t)))


def residue_unit(t: int, p: int) -> int:
    """The image of t / p^{v_p(t)} in F_p, as an integer in 1..p-1."""
    require_prime(p)
    if t == 0:
        raise DomainError("residue_unit is undefined for 0")
    k = vp(t, p)
    return (t // p**k) % p


def vp_binomial(p: int, r: int, j: int) -> int:
    """v_p(C(p^r, j)) = r - v_p(j) for 1 <= j <= p^r - 1."""
    require_prime(p)
    if r < 1 or not 1 <= j <= p**r - 1:
        raise DomainError(f"binomial index {j} outside 1..{p}^{r}-1")
    return r - vp(j, p)


def moebius(d: int) -> int:
    if d < 1:
        raise DomainError(f"Moebius function is defined on positive integers, got {d}")
    exponents = factorint(d)
    if any(k > 1 for k in exponents.values()):
        return 0
    return -1 if len(exponents) % 2 else 1


def count_irreducibles(p: int, m: int) -> int:
    """N_p(m): the number of monic irreducible polynomials of degree m over F_p."""
    require_prime(p)
    if m < 1:
        raise DomainError(f"degree must be positive, got {m}")
    total = sum(moebius(d) * p ** (m // d) for d in divisors(m))
    return total // m


def p_part(t: int, p: int) -> int:
    """p^{v_p(t)} for nonzero t."""
    return p ** vp(t, p)


def floor_fraction(value: Fraction) -> int:
    return value.numerator // value.denominator
