from abc import ABC, abstractmethod
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from trinomial_index.contracts import ClauseCheck, FamilyCertificate, VerdictReport
from trinomial_index.monogenity import CidResult, candidate_primes, common_index_divisor_test
from trinomial_index.utils.config import DEFAULT_SETTINGS, EngineSettings
from trinomial_index.utils.error_handling import DomainError
from trinomial_index.zpoly import Trinomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClauseHit:
    """A clause whose conditions hold, with the prime it speaks about."""
    clause: str
    prime: int
    note: str = ""
    generator: Optional[str] = None


@dataclass(frozen=True)
class Range:
    """lo <= value <= hi; hi None means unbounded."""
    lo: int
    hi: Optional[int] = None

    def __contains__(self, value: int) -> bool:
        return value >= self.lo and (self.hi is None or value <= self.hi)


def exactly(value: int) -> Range:
    return Range(value, value)


class BaseCertifier(ABC):
    """Base class for the theorem family certifiers."""

    theorem: str = ""
    pattern: str = ""

    def __init__(self, settings: EngineSettings = DEFAULT_SETTINGS):
        self.settings = settings

    @abstractmethod
    def matches_degree(self, n: int) -> bool:
        """Whether n fits the family's degree pattern."""
        pass

    @abstractmethod
    def clauses(self, t: Trinomial) -> List[ClauseHit]:
        """Every clause whose conditions hold, in table order."""
        pass

    def engine_primes(self, t: Trinomial) -> List[int]:
        """Primes whose engine transcript is attached when no clause fires."""
        return candidate_primes(t)

    def confirms(self, verdict: Optional[bool]) -> bool:
        """Whether an engine verdict at the clause prime agrees with the clause."""
        return verdict is True

    def label(self, index: int) -> str:
        return f"{self.theorem}({index})"

    def require_degree(self, t: Trinomial) -> None:
        if not self.matches_degree(t.n):
            raise DomainError(f"degree {t.n} does not fit the {self.theorem} pattern {self.pattern}")

    def agreement(self, t: Trinomial, hit: ClauseHit, report: Optional[VerdictReport] = None) -> bool:
        """Engine confirmation of a fired clause, reusing the per-prime data of a verdict when present."""
        if report is not None:
            for prime_report in report.per_prime:
                if prime_report.p == hit.prime:
                    return self.confirms(prime_report.verdict)
        return self.confirms(common_index_divisor_test(t.poly, hit.prime, self.settings.split_seed).verdict)

    def check_clause(self, t: Trinomial, hit: ClauseHit) -> Tuple[ClauseCheck, CidResult]:
        """Reruns the engine at the clause prime; disagreement is reported, never raised."""
        result = common_index_divisor_test(t.poly, hit.prime, self.settings.split_seed)
        agreement = self.confirms(result.verdict)
        verb = "agrees" if agreement else "disagrees"
        message = f"clause {hit.clause} fired at p = {hit.prime}; engine {verb}: {result.describe()}"
        if not agreement:
            logger.warning(f"{t}: {message}")
        check = ClauseCheck(
            clause=hit.clause,
            prime=hit.prime,
            agreement=agreement,
            witness=result.witness.to_report() if result.witness else None,
            message=message,
        )
        return check, result

    def cross_check(self, t: Trinomial, hits: List[ClauseHit]) -> FamilyCertificate:
        checks: List[ClauseCheck] = []
        engine: Dict[int, CidResult] = {}
        for hit in hits:
            check, result = self.check_clause(t, hit)
            checks.append(check)
            engine.setdefault(hit.prime, result)
        first = checks[0]
        return FamilyCertificate(
            theorem=self.theorem,
            n=t.n, a=t.a, b=t.b,
            fired=True,
            clause=first.clause,
            prime=first.prime,
            agreement=all(c.agreement for c in checks),
            witness=first.witness,
            generator=hits[0].generator,
            checks=checks,
            engine=[r.to_report() for r in engine.values()],
            message="; ".join(c.message for c in checks),
        )

    def certify(self, t: Trinomial) -> FamilyCertificate:
        self.require_degree(t)
        hits = self.clauses(t)
        if hits:
            return self.cross_check(t, hits)
        engine: List[CidResult] = [
            common_index_divisor_test(t.poly, p, self.settings.split_seed) for p in self.engine_primes(t)
        ]
        logger.info(f"{t}: no {self.theorem} clause fired")
        return FamilyCertificate(
            theorem=self.theorem,
            n=t.n, a=t.a, b=t.b,
            fired=False,
            engine=[r.to_report() for r in engine],
            message="no clause fired",
        )
