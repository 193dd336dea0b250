# certifiers/divisor_certifiers.py
"""Families where p divides n (dn1) or n - 1 (dn2), and their explicit 3-adic tables."""

import logging
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterable, List, Optional, Tuple

from sympy import primefactors

from .base_certifier import BaseCertifier, ClauseHit, Range, exactly
from trinomial_index.fqpoly import FpPoly, count_binomial_factors, factor_mod_p
from trinomial_index.intarith import Valuation, count_irreducibles, is_infinite, vp
from trinomial_index.zpoly import Trinomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalParameters:
    """Data of one admissible prime: n (or n - 1) = w * p^k with p not dividing w.

    first, second are the valuations of the divisible coefficient and of
    (unit coefficient)^(p-1) - 1; either may be infinite.
    """
    p: int
    k: int
    w: int
    unit: int
    first: Valuation
    second: Valuation

    @property
    def smallest(self) -> Valuation:
        return min(self.first, self.second)

    @property
    def capped(self) -> int:
        return int(min(self.smallest, self.k + 1))

    def linear_count(self) -> int:
        """N_p(1, w, unit)."""
        return count_binomial_factors(self.p, 1, self.w, self.unit)

    def factor_degrees(self) -> List[int]:
        """Degrees m > 1 of the irreducible factors of x^w + unit mod p."""
        binomial = FpPoly(self.p, (1,) + (0,) * (self.w - 1) + (self.unit,))
        return sorted({g.degree for g, _ in factor_mod_p(binomial) if g.degree > 1})


def _finite(value) -> bool:
    return not is_infinite(value)


def _divisor_clauses(params: LocalParameters, offset: int, label: Callable[[int], str]) -> List[ClauseHit]:
    """Clauses 1-4 shared by both families; offset is 0 for dn1 and 1 for dn2."""
    p, k = params.p, params.k
    hits: List[ClauseHit] = []
    if params.smallest != k + 1:
        for m in params.factor_degrees():
            count = count_binomial_factors(p, m, params.w, params.unit)
            bound = count_irreducibles(p, m)
            if params.capped * count > bound:
                hits.append(ClauseHit(label(1), p, note=f"{params.capped} * N_{p}({m}, {params.w}, {params.unit % p}) > N_{p}({m}) = {bound}"))
                break
    n1 = params.linear_count()
    if n1 == 0:
        return hits
    first, second = params.first, params.second
    if _finite(first) and p < first * n1 + offset and first < min(second, k + 1):
        hits.append(ClauseHit(label(2), p))
    if _finite(second) and p < second * n1 + offset and second < min(first, k + 1):
        hits.append(ClauseHit(label(3), p))
    if p < (k + 1) * n1 + offset and k + 1 < params.smallest:
        hits.append(ClauseHit(label(4), p))
    return hits


def _odd_prime_divisors(value: int) -> List[int]:
    return [int(p) for p in primefactors(value) if p != 2]


class DividesDegreeCertifier(BaseCertifier):
    """p odd with p | a, p | n and p not dividing b."""

    theorem = "dn1"
    pattern = "n divisible by an odd prime"

    def matches_degree(self, n: int) -> bool:
        return bool(_odd_prime_divisors(n))

    def admissible_primes(self, t: Trinomial) -> List[int]:
        return [p for p in _odd_prime_divisors(t.n) if t.a % p == 0 and t.b % p != 0]

    def parameters(self, t: Trinomial, p: int) -> LocalParameters:
        r = int(vp(t.n, p))
        return LocalParameters(
            p=p, k=r, w=t.n // p**r, unit=t.b,
            first=vp(t.a, p), second=vp(t.b ** (p - 1) - 1, p),
        )

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        hits: List[ClauseHit] = []
        for p in self.admissible_primes(t):
            hits.extend(_divisor_clauses(self.parameters(t, p), 0, self.label))
        return hits

    def engine_primes(self, t: Trinomial) -> List[int]:
        return self.admissible_primes(t)


class DividesDegreeMinusOneCertifier(BaseCertifier):
    """p odd with p | b, p | n - 1 and p not dividing a."""

    theorem = "dn2"
    pattern = "n - 1 divisible by an odd prime"

    def matches_degree(self, n: int) -> bool:
        return bool(_odd_prime_divisors(n - 1))

    def admissible_primes(self, t: Trinomial) -> List[int]:
        return [p for p in _odd_prime_divisors(t.n - 1) if t.b % p == 0 and t.a % p != 0]

    def parameters(self, t: Trinomial, p: int) -> LocalParameters:
        k = int(vp(t.n - 1, p))
        return LocalParameters(
            p=p, k=k, w=(t.n - 1) // p**k, unit=t.a,
            first=vp(t.b, p), second=vp(t.a ** (p - 1) - 1, p),
        )

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        hits: List[ClauseHit] = []
        for p in self.admissible_primes(t):
            hits.extend(_divisor_clauses(self.parameters(t, p), 1, self.label))
        return hits

    def engine_primes(self, t: Trinomial) -> List[int]:
        return self.admissible_primes(t)


@dataclass(frozen=True)
class CongruenceClause:
    """(a mod modulus, b mod modulus) in residues, for exponents (i, j) in the given ranges."""
    index: int
    first: Range
    second: Range
    modulus: int
    residues: FrozenSet[Tuple[int, int]]

    def matches(self, i: int, j: int, a: int, b: int) -> bool:
        return i in self.first and j in self.second and (a % self.modulus, b % self.modulus) in self.residues


def product(a_values: Iterable[int], b_values: Iterable[int]) -> FrozenSet[Tuple[int, int]]:
    b_values = tuple(b_values)
    return frozenset((a, b) for a in a_values for b in b_values)


def two_three_exponents(m: int) -> Optional[Tuple[int, int]]:
    """(k, r) with m = 2^k 3^r, or None."""
    if m < 1:
        return None
    k = int(vp(m, 2))
    r = int(vp(m, 3))
    if 2**k * 3**r != m:
        return None
    return k, r


# F = x^(2^k 3^r) + ax + b; ranges are on (k, r)
CORN11_TABLE = (
    CongruenceClause(1, Range(1), exactly(3), 243, product([0], [242])),
    CongruenceClause(2, Range(1, 2), Range(4), 243, product([81, 162], [80, 161, 242]) | product([0], [80, 161])),
    CongruenceClause(3, Range(1), exactly(1), 27, product([0], [26])),
    CongruenceClause(4, Range(1), Range(2), 27, product([9, 18], [26]) | product([0], [8, 17])),
    CongruenceClause(5, Range(1), Range(3), 81, product([0], [26, 53]) | product([27, 54], [26, 53, 80])),
    CongruenceClause(6, Range(1), exactly(2), 81, product([0], [80])),
    CongruenceClause(7, exactly(1), exactly(3), 243, product([0], [1])),
    CongruenceClause(8, exactly(1), Range(4), 243, product([81, 162], [1, 82, 163]) | product([0], [82, 163])),
    CongruenceClause(9, exactly(2), exactly(1), 27, product([0], [1])),
    CongruenceClause(10, exactly(2), Range(2), 27, product([9, 18], [1, 10, 19]) | product([0], [10, 19])),
    CongruenceClause(11, Range(3), Range(2), 27, product([9, 18], [8, 17])),
)

# F = x^(2^s 3^k + 1) + ax + b; ranges are on (s, k)
CORN12_TABLE = (
    CongruenceClause(1, exactly(0), Range(3), 81, product([1, 80], [27, 54]) | product([26, 28, 53, 55], [0])),
    CongruenceClause(2, exactly(0), Range(4), 243, product([1, 242], [81, 162]) | product([80, 82, 161, 163], [0])),
    CongruenceClause(3, exactly(0), exactly(2), 81, product([1, 80], [0])),
    CongruenceClause(4, exactly(0), exactly(3), 243, product([1, 242], [0])),
    CongruenceClause(5, Range(1), Range(2), 27, product([26], [9, 18]) | product([8, 17], [0])),
    CongruenceClause(6, Range(1), Range(3), 81, product([80], [27, 54]) | product([26, 53], [0, 27, 54])),
    CongruenceClause(7, Range(1), exactly(1), 27, product([26], [0])),
    CongruenceClause(8, Range(1), exactly(2), 81, product([80], [0])),
    CongruenceClause(9, exactly(2), exactly(3), 243, product([242], [0])),
    CongruenceClause(10, exactly(2), Range(4), 243, product([80, 161, 242], [81, 162]) | product([80, 161], [0])),
    CongruenceClause(11, Range(3), Range(2), 27, product([8, 17, 26], [9, 18]) | product([8, 17], [0])),
    CongruenceClause(12, exactly(1), exactly(3), 243, product([1], [0])),
    CongruenceClause(13, exactly(1), Range(4), 243, product([1, 82, 163], [81, 162]) | product([82, 163], [0])),
    CongruenceClause(14, exactly(2), exactly(1), 27, product([1], [0])),
    CongruenceClause(15, exactly(2), Range(2), 27, product([1, 10, 19], [9, 18]) | product([10, 19], [0])),
)


class CongruenceTableCertifier(BaseCertifier):
    """Explicit congruence tables at p = 3."""

    table: Tuple[CongruenceClause, ...] = ()

    @staticmethod
    def exponents(n: int) -> Optional[Tuple[int, int]]:
        return two_three_exponents(n)

    def matches_degree(self, n: int) -> bool:
        found = self.exponents(n)
        return found is not None and found[1] >= 1

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        found = self.exponents(t.n)
        if found is None:
            return []
        i, j = found
        return [ClauseHit(self.label(c.index), 3) for c in self.table if c.matches(i, j, t.a, t.b)]

    def engine_primes(self, t: Trinomial) -> List[int]:
        return [3]


class DegreeTwoThreeCertifier(CongruenceTableCertifier):
    theorem = "corn11"
    pattern = "2^k 3^r, k, r >= 1"
    table = CORN11_TABLE

    def matches_degree(self, n: int) -> bool:
        found = self.exponents(n)
        return found is not None and found[0] >= 1 and found[1] >= 1


class DegreeTwoThreePlusOneCertifier(CongruenceTableCertifier):
    theorem = "corn12"
    pattern = "2^s 3^k + 1, k >= 1"
    table = CORN12_TABLE

    @staticmethod
    def exponents(n: int) -> Optional[Tuple[int, int]]:
        return two_three_exponents(n - 1)
