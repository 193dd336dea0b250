import logging
from typing import Dict, List

from trinomial_index.certifiers.base_certifier import BaseCertifier
from trinomial_index.certifiers.divisor_certifiers import (
    DegreeTwoThreeCertifier, DegreeTwoThreePlusOneCertifier, DividesDegreeCertifier,
    DividesDegreeMinusOneCertifier,
)
from trinomial_index.certifiers.low_degree_certifiers import QuinticCertifier, SexticCertifier
from trinomial_index.certifiers.prime_power_certifiers import (
    MonoCertifier, PowerOfThreeCertifier, PrimePowerCertifier,
)
from trinomial_index.contracts import FamilyCertificate
from trinomial_index.utils.config import DEFAULT_SETTINGS, EngineSettings
from trinomial_index.utils.error_handling import DomainError
from trinomial_index.zpoly import Trinomial

logger = logging.getLogger(__name__)


class CertifierRouter:
    def __init__(self, settings: EngineSettings = DEFAULT_SETTINGS):
        self.settings = settings
        self.certifiers = self._create_certifiers()

    def _create_certifiers(self) -> Dict[str, BaseCertifier]:
        """Create and return all theorem family certifiers."""
        return {
            "dpr": PrimePowerCertifier(self.settings),
            "3r": PowerOfThreeCertifier(self.settings),
            "dn1": DividesDegreeCertifier(self.settings),
            "dn2": DividesDegreeMinusOneCertifier(self.settings),
            "d51": QuinticCertifier(self.settings),
            "d61": SexticCertifier(self.settings),
            "corn11": DegreeTwoThreeCertifier(self.settings),
            "corn12": DegreeTwoThreePlusOneCertifier(self.settings),
            "mono": MonoCertifier(self.settings),
        }

    @property
    def theorems(self) -> List[str]:
        return list(self.certifiers)

    def get(self, theorem: str) -> BaseCertifier:
        certifier = self.certifiers.get(theorem)
        if not certifier:
            logger.warning(f"No certifier found for theorem: {theorem}")
            raise DomainError(f"unknown theorem {theorem!r}; expected one of {', '.join(self.theorems)}")
        return certifier

    def matching(self, t: Trinomial) -> List[str]:
        """Theorems whose degree pattern fits t."""
        return [name for name, c in self.certifiers.items() if c.matches_degree(t.n)]

    def certify(self, t: Trinomial, theorem: str) -> FamilyCertificate:
        return self.get(theorem).certify(t)


def certify_family(t: Trinomial, theorem: str, settings: EngineSettings = DEFAULT_SETTINGS) -> FamilyCertificate:
    return CertifierRouter(settings).certify(t, theorem)
