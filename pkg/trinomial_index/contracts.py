# contracts.py
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, TypeAdapter

SCHEMA_VERSION = "1"


class VerdictStatus(str, Enum):
    MONOGENIC_WITH_GENERATOR = "monogenic-with-generator"
    NOT_MONOGENIC = "not-monogenic"
    ZK_EQUALS_ZTHETA = "zk-equals-ztheta"
    INCONCLUSIVE = "inconclusive"


# --- Per-prime analysis ---

class WitnessReport(BaseModel):
    """P_m > N_p(m) for the prime p."""
    p: int = Field(..., description="Prime common index divisor.")
    m: int = Field(..., description="Residue degree of the witnessing primes.")
    Pm: int = Field(..., description="Number of primes above p of residue degree m.")
    Npm: int = Field(..., description="Number of monic irreducible polynomials of degree m over F_p.")


class PrimeIdealReport(BaseModel):
    e: int
    f: int
    phi: str
    slope: str
    residual_factor: str
    order: int = 1


class PrimeReport(BaseModel):
    type: Literal["prime_report"] = "prime_report"
    p: int
    shape: List[Tuple[int, int]] = Field(default_factory=list, description="Sorted (e, f) pairs.")
    shape_status: str = Field(..., description="complete, partial or inconclusive.")
    census: Dict[int, int] = Field(default_factory=dict, description="m -> P_m.")
    index_lower_bound: int = 0
    verdict: Optional[bool] = Field(None, description="True: common index divisor; False: no witness; None: unknown.")
    witness: Optional[WitnessReport] = None
    primes: List[PrimeIdealReport] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


# --- Verdicts and certificates ---

class VerdictReport(BaseModel):
    type: Literal["verdict"] = "verdict"
    schema_version: str = SCHEMA_VERSION
    n: int
    a: int
    b: int
    discriminant: int
    candidate_primes: List[int] = Field(default_factory=list)
    per_prime: List[PrimeReport] = Field(default_factory=list)
    status: VerdictStatus
    clause: Optional[str] = None
    generator: Optional[str] = None
    irreducibility: str = Field(..., description="Irreducibility certificate or 'unknown'.")
    flags: List[str] = Field(default_factory=list)
    unnormalized_primes: List[int] = Field(default_factory=list)
    transcript: List[str] = Field(default_factory=list)

    @property
    def witnesses(self) -> List[WitnessReport]:
        return [r.witness for r in self.per_prime if r.witness is not None]

    def summary(self) -> str:
        if self.status is VerdictStatus.MONOGENIC_WITH_GENERATOR:
            line = f"monogenic; generator {self.generator}"
        elif self.status is VerdictStatus.ZK_EQUALS_ZTHETA:
            line = "monogenic; Z_K = Z[theta]"
        elif self.status is VerdictStatus.NOT_MONOGENIC:
            w = self.witnesses[0]
            line = f"not monogenic; {w.p} | i(K) since P_{w.m} = {w.Pm} > N_{w.p}({w.m}) = {w.Npm}"
        else:
            line = "inconclusive"
        if self.flags:
            line += f" [{', '.join(self.flags)}]"
        return line


class ClauseCheck(BaseModel):
    """One fired clause and the engine rerun at its prime."""
    clause: str
    prime: int
    agreement: bool
    witness: Optional[WitnessReport] = None
    message: str


class FamilyCertificate(BaseModel):
    type: Literal["family_certificate"] = "family_certificate"
    schema_version: str = SCHEMA_VERSION
    theorem: str
    n: int
    a: int
    b: int
    fired: bool
    clause: Optional[str] = Field(None, description="Label of the first clause whose conditions hold.")
    prime: Optional[int] = None
    agreement: Optional[bool] = Field(None, description="Whether the engine confirms every fired clause.")
    witness: Optional[WitnessReport] = None
    generator: Optional[str] = None
    checks: List[ClauseCheck] = Field(default_factory=list, description="Every fired clause in table order.")
    engine: List[PrimeReport] = Field(default_factory=list)
    message: str


# --- Scans ---

class ScanSpec(BaseModel):
    """Plain-text scan specification, one `key = value` per line."""
    degrees: List[int] = Field(..., description="Degrees n to scan, expanded from a list or pattern.")
    a_min: int
    a_max: int
    b_min: int
    b_max: int
    modulus: Optional[int] = Field(None, gt=0, description="Congruence filter modulus.")
    residues: List[Tuple[int, int]] = Field(default_factory=list, description="Allowed (a, b) residues.")
    theorem: Optional[str] = None
    output: Optional[str] = None
    workers: Optional[int] = Field(None, ge=1)


class ScanRow(BaseModel):
    type: Literal["scan_row"] = "scan_row"
    n: int
    a: int
    b: int
    status: str = Field(..., description="Verdict status, or 'input-error'.")
    clause: Optional[str] = None
    clauses: List[str] = Field(default_factory=list, description="Every fired clause in table order.")
    agreement: Optional[bool] = Field(None, description="False when the engine disagrees with any fired clause.")
    irreducibility: str = "unknown"
    witnesses: List[WitnessReport] = Field(default_factory=list)
    error: Optional[str] = None


class ScanSummary(BaseModel):
    type: Literal["scan_summary"] = "scan_summary"
    schema_version: str = SCHEMA_VERSION
    rows: int = 0
    by_status: Dict[str, int] = Field(default_factory=dict)
    by_clause: Dict[str, int] = Field(default_factory=dict)
    disagreements: int = 0


Report = Union[VerdictReport, FamilyCertificate, ScanRow, ScanSummary]


def parse_report(json_str: str) -> Report:
    return TypeAdapter(Report).validate_json(json_str)
