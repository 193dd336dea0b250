# certifiers/low_degree_certifiers.py

import logging
from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Tuple

from .base_certifier import BaseCertifier, ClauseHit
from trinomial_index.intarith import is_infinite, vp
from trinomial_index.zpoly import Trinomial

logger = logging.getLogger(__name__)

Condition = Callable[[int, int], bool]


@dataclass(frozen=True)
class ResidueCondition:
    """(a mod modulus, b mod modulus) is one of the listed pairs."""
    modulus: int
    pairs: FrozenSet[Tuple[int, int]]

    def __call__(self, a: int, b: int) -> bool:
        return (a % self.modulus, b % self.modulus) in self.pairs


def residues(modulus: int, *pairs: Tuple[int, int]) -> ResidueCondition:
    return ResidueCondition(modulus, frozenset(pairs))


def _sextic_valuation_balance(a: int, b: int) -> bool:
    """a = 2 mod 4, b = 1 mod 4 and v_2(1 + a + b) = 2 v_2(a + 6)."""
    if a % 4 != 2 or b % 4 != 1:
        return False
    left, right = vp(1 + a + b, 2), vp(a + 6, 2)
    if is_infinite(left) or is_infinite(right):
        return False
    return left == 2 * right


class FixedDegreeCertifier(BaseCertifier):
    """A clause list for one degree; each clause is (condition, prime)."""

    degree: int = 0
    table: Tuple[Tuple[Condition, int], ...] = ()

    def matches_degree(self, n: int) -> bool:
        return n == self.degree

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        return [
            ClauseHit(self.label(i), p)
            for i, (condition, p) in enumerate(self.table, start=1)
            if condition(t.a, t.b)
        ]

    def engine_primes(self, t: Trinomial) -> List[int]:
        return sorted({p for _, p in self.table})


class QuinticCertifier(FixedDegreeCertifier):
    theorem = "d51"
    pattern = "5"
    degree = 5
    table = (
        (residues(4, (1, 2)), 2),
        (residues(16, (7, 8), (15, 0)), 2),
        (residues(32, (19, 4), (3, 20)), 2),
        (residues(64, (3, 4), (35, 36), (19, 20), (51, 52)), 2),
        (residues(32, (3, 12), (19, 28)), 2),
        (residues(64, (3, 60), (19, 44), (35, 28), (51, 12)), 2),
        (residues(8, (4, 0)), 2),
    )


class SexticCertifier(FixedDegreeCertifier):
    theorem = "d61"
    pattern = "6"
    degree = 6
    table = (
        (residues(8, (0, 7)), 2),
        (_sextic_valuation_balance, 2),
        (residues(8, (0, 3)), 2),
        (residues(9, (0, 8)), 3),
    )
