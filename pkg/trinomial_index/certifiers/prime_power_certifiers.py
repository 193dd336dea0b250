# certifiers/prime_power_certifiers.py

import logging
from typing import List, Optional, Tuple

from sympy import factorint

from .base_certifier import BaseCertifier, ClauseHit
from trinomial_index.monogenity import MonoParams, certify_mono
from trinomial_index.utils.error_handling import NotApplicableError
from trinomial_index.zpoly import Trinomial

logger = logging.getLogger(__name__)


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, r) with n = p^r, or None."""
    exponents = factorint(n)
    if len(exponents) != 1:
        return None
    (p, r), = exponents.items()
    return int(p), int(r)


class PrimePowerCertifier(BaseCertifier):
    """p odd, n = p^r, r >= p, a = 0 mod p^(p+1) and b^(p-1) = 1 mod p^(p+1)."""

    theorem = "dpr"
    pattern = "p^r, p odd"

    def matches_degree(self, n: int) -> bool:
        found = prime_power(n)
        return found is not None and found[0] % 2 == 1

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        found = prime_power(t.n)
        if found is None:
            return []
        p, r = found
        modulus = p ** (p + 1)
        if r >= p and t.a % modulus == 0 and pow(t.b, p - 1, modulus) == 1:
            return [ClauseHit(self.label(1), p)]
        return []

    def engine_primes(self, t: Trinomial) -> List[int]:
        found = prime_power(t.n)
        return [found[0]] if found else []


class PowerOfThreeCertifier(BaseCertifier):
    """n = 3^r, r >= 3, a = 0 mod 81 and b = +-1 mod 81."""

    theorem = "3r"
    pattern = "3^r"

    def matches_degree(self, n: int) -> bool:
        return prime_power(n) is not None and n % 3 == 0

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        _, r = prime_power(t.n) or (3, 0)
        if r >= 3 and t.a % 81 == 0 and t.b % 81 in (1, 80):
            return [ClauseHit(self.label(1), 3)]
        return []

    def engine_primes(self, t: Trinomial) -> List[int]:
        return [3]


class MonoCertifier(BaseCertifier):
    """x^(p^r) + p^v a x + p^u b is monogenic with generator theta^x / p^y."""

    theorem = "mono"
    pattern = "p^r"

    def matches_degree(self, n: int) -> bool:
        return prime_power(n) is not None

    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        try:
            params = MonoParams.from_trinomial(t)
        except NotApplicableError as e:
            logger.debug(f"mono does not apply to {t}: {e}")
            return []
        cert = certify_mono(params, self.settings.discriminant_cutoff)
        if not cert.passed:
            logger.info(f"mono checks failed for {t}: {'; '.join(cert.notes)}")
            return []
        note = "; ".join(cert.notes)
        return [ClauseHit(self.theorem, params.p, note=note, generator=cert.generator)]

    def confirms(self, verdict: Optional[bool]) -> bool:
        # a monogenic field has no common index divisor
        return verdict is False

    def engine_primes(self, t: Trinomial) -> List[int]:
        found = prime_power(t.n)
        return [found[0]] if found else []
