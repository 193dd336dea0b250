import logging
import os
from typing import Mapping, Optional

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

WORKERS_ENV = "TRINOMIAL_INDEX_WORKERS"
CUTOFF_ENV = "TRINOMIAL_INDEX_DISCRIMINANT_CUTOFF"
IRREDUCIBILITY_PRIMES_ENV = "TRINOMIAL_INDEX_IRREDUCIBILITY_PRIMES"


class EngineSettings(BaseModel):
    """Tunable limits of the engine and of the scan pipeline."""
    workers: int = Field(default=1, ge=1, description="Number of scan worker processes.")
    discriminant_cutoff: int = Field(
        default=10**6, ge=2,
        description="Trial-division bound used on discriminants and mono side conditions.",
    )
    irreducibility_prime_bound: int = Field(
        default=50, ge=2,
        description="Largest prime tried by the irreducible-mod-p certificate.",
    )
    split_seed: int = Field(default=0, description="Seed of the equal-degree splitting generator.")
    scan_window: int = Field(default=64, ge=1, description="Maximum number of in-flight scan items.")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "EngineSettings":
        """Builds settings from the environment, ignoring malformed overrides."""
        env = os.environ if environ is None else environ
        overrides = {}
        for key, name in (
            ("workers", WORKERS_ENV),
            ("discriminant_cutoff", CUTOFF_ENV),
            ("irreducibility_prime_bound", IRREDUCIBILITY_PRIMES_ENV),
        ):
            raw = env.get(name)
            if raw is None or raw.strip() == "":
                continue
            try:
                overrides[key] = int(raw)
            except ValueError:
                logger.warning(f"Ignoring non-integer {name}={raw!r}")
        try:
            return cls(**overrides)
        except ValidationError as e:
            logger.warning(f"Ignoring invalid settings override: {e.errors()}")
            return cls()


DEFAULT_SETTINGS = EngineSettings()
