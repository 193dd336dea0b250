"""Verdict layer: candidate primes, common index divisors, the mono generator construction
and the top-level `analyze` orchestration."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy import Poly, factorint, integer_nthroot, isprime, primerange, resultant, symbols

from trinomial_index.contracts import PrimeIdealReport, PrimeReport, VerdictReport, VerdictStatus, WitnessReport
from trinomial_index.intarith import count_irreducibles, is_infinite, p_part, vp
from trinomial_index.ore import FactorShape, factor_shape
from trinomial_index.utils.config import DEFAULT_SETTINGS, EngineSettings
from trinomial_index.utils.error_handling import DomainError, NotApplicableError, ReducibleInputError
from trinomial_index.zpoly import (
    IntPoly, Trinomial, dedekind_p_maximal, discriminant_resultant, irreducibility_certificate,
    trinomial_discriminant,
)

logger = logging.getLogger(__name__)

UNNORMALIZED = "unnormalized"
IRREDUCIBILITY_UNVERIFIED = "irreducibility-unverified"
UNFACTORED_DISCRIMINANT = "monogenic-modulo-unfactored-discriminant"


@dataclass(frozen=True)
class Witness:
    """P_m > N_p(m): p is a common index divisor."""
    p: int
    m: int
    P_m: int
    N_m: int

    def to_report(self) -> WitnessReport:
        return WitnessReport(p=self.p, m=self.m, Pm=self.P_m, Npm=self.N_m)

    def __str__(self) -> str:
        return f"P_{self.m} = {self.P_m} > N_{self.p}({self.m}) = {self.N_m}"


@dataclass(frozen=True)
class ResidueCensus:
    p: int
    counts: Dict[int, int]
    complete: bool

    @classmethod
    def from_shape(cls, p: int, shape: FactorShape) -> "ResidueCensus":
        return cls(p, shape.census(), shape.complete)

    def first_witness(self) -> Optional[Witness]:
        """Smallest m with P_m > N_p(m)."""
        for m in sorted(self.counts):
            bound = count_irreducibles(self.p, m)
            if self.counts[m] > bound:
                return Witness(self.p, m, self.counts[m], bound)
        return None


@dataclass(frozen=True)
class CidResult:
    p: int
    verdict: Optional[bool]
    witness: Optional[Witness]
    shape: FactorShape
    census: ResidueCensus

    def to_report(self) -> PrimeReport:
        return PrimeReport(
            p=self.p,
            shape=self.shape.pairs,
            shape_status=self.shape.status.name.lower(),
            census=self.census.counts,
            index_lower_bound=self.shape.index_lower_bound,
            verdict=self.verdict,
            witness=self.witness.to_report() if self.witness else None,
            primes=[
                PrimeIdealReport(
                    e=q.e, f=q.f, phi=q.phi, slope=str(q.slope),
                    residual_factor=q.residual_factor, order=q.order,
                )
                for q in self.shape.primes
            ],
            notes=list(self.shape.notes),
        )

    def describe(self) -> str:
        head = f"p = {self.p}: shape {self.shape.pairs} {self.shape.status.name.lower()}, census {self.census.counts}"
        if self.verdict is None:
            return f"{head}; no verdict ({'; '.join(self.shape.notes)})"
        if self.witness is None:
            return f"{head}; no witness"
        return f"{head}; witness {self.witness}"


def candidate_primes(t: Trinomial) -> List[int]:
    """Primes p < n with p^2 | disc(F); only these can divide the common index."""
    disc = trinomial_discriminant(t)
    if disc == 0:
        raise ReducibleInputError(f"{t} is not squarefree", factor=str(t.poly.gcd(t.poly.derivative())))
    return [int(p) for p in primerange(2, t.n) if disc % (p * p) == 0]


def common_index_divisor_test(f: IntPoly, p: int, seed: int = 0) -> CidResult:
    """True with the smallest witnessing m when the complete shape has P_m > N_p(m).

    False only means that no witness exists among the computed primes; an
    incomplete shape gives no verdict.
    """
    shape = factor_shape(f, p, seed)
    census = ResidueCensus.from_shape(p, shape)
    if not shape.complete:
        logger.info(f"Shape of {f} at {p} is {shape.status.name.lower()}; no verdict")
        return CidResult(p, None, None, shape, census)
    witness = census.first_witness()
    if witness is not None:
        logger.info(f"{p} is a common index divisor of {f}: {witness}")
    return CidResult(p, witness is not None, witness, shape, census)


def solve_generator_exponents(p: int, r: int, u: int) -> Tuple[int, int]:
    """The unique (x, y) with x*u - y*p^r = 1 and 0 <= y < u."""
    if u < 1 or u % p == 0:
        raise DomainError(f"gcd(u, p) must be 1, got u = {u}, p = {p}")
    q = p**r
    y = (-pow(q, -1, u)) % u
    x = (1 + y * q) // u
    return x, y


@dataclass(frozen=True)
class MonoParams:
    """F = x^(p^r) + p^v a x + p^u b with p not dividing ab, v >= u >= 2, gcd(u, p) = 1."""
    p: int
    r: int
    v: int
    u: int
    a: int
    b: int

    def __post_init__(self):
        if not isprime(self.p) or self.r < 1:
            raise DomainError(f"degree must be a prime power, got p = {self.p}, r = {self.r}")
        if self.a % self.p == 0 or self.b % self.p == 0:
            raise DomainError(f"{self.p} divides a*b = {self.a}*{self.b}")
        if not self.v >= self.u >= 2:
            raise DomainError(f"need v >= u >= 2, got v = {self.v}, u = {self.u}")
        if self.u % self.p == 0:
            raise DomainError(f"gcd(u, p) = {self.p}; the trinomial may be reducible")

    @classmethod
    def from_trinomial(cls, t: Trinomial) -> "MonoParams":
        exponents = factorint(t.n)
        if len(exponents) != 1:
            raise NotApplicableError(f"degree {t.n} is not a prime power")
        (p, r), = exponents.items()
        p, r = int(p), int(r)
        if t.a == 0:
            raise NotApplicableError("a = 0 has no unit part")
        v, u = int(vp(t.a, p)), int(vp(t.b, p))
        try:
            return cls(p, r, v, u, t.a // p**v, t.b // p**u)
        except DomainError as e:
            raise NotApplicableError(f"{t} does not fit x^(p^r) + p^v a x + p^u b: {e}") from e

    @property
    def n(self) -> int:
        return self.p**self.r

    @property
    def trinomial(self) -> Trinomial:
        return Trinomial(self.n, self.p**self.v * self.a, self.p**self.u * self.b)

    @property
    def exponents(self) -> Tuple[int, int]:
        return solve_generator_exponents(self.p, self.r, self.u)

    def side_quantity(self) -> int:
        """(1 - p^r)^(p^r - 1) (p^v a)^(p^r) + (p^r)^(p^r) (p^u b)^(p^r - 1), the discriminant up to sign."""
        n = self.n
        return (1 - n) ** (n - 1) * (self.p**self.v * self.a) ** n + n**n * (self.p**self.u * self.b) ** (n - 1)


@dataclass(frozen=True)
class MonoCertificate:
    params: MonoParams
    x: int
    y: int
    minimal_polynomial: Optional[IntPoly]
    eisenstein: bool
    side_condition: bool
    discriminant_drops: bool = True
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.eisenstein and self.side_condition and self.discriminant_drops

    @property
    def generator(self) -> str:
        power = "theta" if self.x == 1 else f"theta^{self.x}"
        return f"{power}/{self.params.p**self.y}"


def _side_condition(params: MonoParams, cutoff: int) -> Tuple[bool, List[str]]:
    """v_q(side quantity) <= 1 for all q != p, trial division up to cutoff."""
    rest = abs(params.side_quantity())
    rest //= p_part(rest, params.p)
    notes = []
    for q, k in sorted(factorint(rest, limit=cutoff).items()):
        if isprime(q):
            if k >= 2:
                return False, [f"{q}^{k} divides the side quantity"]
            continue
        _, square = integer_nthroot(int(q), 2)
        if k >= 2 or square:
            return False, [f"the unfactored part {q} is a square"]
        notes.append(f"side condition unverified beyond {cutoff} for the cofactor {q}")
    return True, notes


def _is_eisenstein(g: IntPoly, p: int) -> bool:
    if not g.is_monic():
        return False
    if any(c % p for c in g.coeffs[:-1]):
        return False
    return g.coeffs[0] % (p * p) != 0


def eta_minimal_polynomial(t: Trinomial, x: int, y: int, p: int) -> Optional[IntPoly]:
    """Minimal polynomial of theta^x / p^y by eliminating X from F(X) and X^x - p^y W; None if not integral."""
    X, W = symbols("X W")
    F = X**t.n + t.a * X + t.b
    res = Poly(resultant(F, X**x - p**y * W, X), W, domain="QQ")
    monic = res.monic()
    coeffs = monic.all_coeffs()
    if any(not c.is_integer for c in coeffs):
        return None
    return IntPoly.from_dense([int(c) for c in coeffs])


def certify_mono(params: MonoParams, cutoff: int = DEFAULT_SETTINGS.discriminant_cutoff) -> MonoCertificate:
    """Checks the side condition and that theta^x / p^y has a p-Eisenstein minimal polynomial."""
    x, y = params.exponents
    t = params.trinomial
    side_ok, notes = _side_condition(params, cutoff)
    g = eta_minimal_polynomial(t, x, y, params.p)
    eisenstein = g is not None and _is_eisenstein(g, params.p)
    if g is None:
        notes.append(f"theta^{x}/{params.p}^{y} is not integral")
    elif not eisenstein:
        notes.append(f"minimal polynomial {g} is not {params.p}-Eisenstein")
    drops = g is not None and (y == 0 or eta_discriminant_drops(t, g, params.p))
    if g is not None and not drops:
        notes.append(f"v_{params.p}(disc({g})) does not drop below v_{params.p}(disc(F))")
    cert = MonoCertificate(params, x, y, g, eisenstein, side_ok, drops, tuple(notes))
    logger.debug(f"Mono certificate for {t}: (x, y) = ({x}, {y}), passed={cert.passed}")
    return cert


def square_discriminant_primes(disc: int, cutoff: int) -> Tuple[List[int], bool]:
    """Primes q with q^2 | disc found below the cutoff, and whether an unfactored cofactor remains."""
    primes = []
    unfactored = False
    for q, k in sorted(factorint(abs(disc), limit=cutoff).items()):
        if isprime(q):
            if k >= 2:
                primes.append(int(q))
        else:
            unfactored = True
    return primes, unfactored


def analyze(t: Trinomial, settings: EngineSettings = DEFAULT_SETTINGS, prime: Optional[int] = None) -> VerdictReport:
    """Decides what the engine can about the monogenity of Q(theta), F(theta) = 0."""
    f = t.poly
    transcript: List[str] = []
    flags: List[str] = []

    certificate = irreducibility_certificate(t, settings.irreducibility_prime_bound, settings.discriminant_cutoff)
    transcript.append(f"irreducibility: {certificate.describe()}")
    if not certificate.certified:
        flags.append(IRREDUCIBILITY_UNVERIFIED)
    unnormalized = t.unnormalized_primes()
    if unnormalized:
        logger.warning(f"{t} is not normalized at {unnormalized}")
        flags.append(UNNORMALIZED)

    disc = trinomial_discriminant(t)
    transcript.append(f"discriminant: {disc}")
    candidates = candidate_primes(t)
    transcript.append(f"candidate primes: {candidates}")
    tested = candidates if prime is None else [q for q in candidates if q == prime]
    if prime is not None and prime not in candidates:
        transcript.append(f"p = {prime} is not a candidate prime")

    results = []
    for p in tested:
        result = common_index_divisor_test(f, p, settings.split_seed)
        results.append(result)
        transcript.append(result.describe())

    def report(status: VerdictStatus, clause: Optional[str] = None, generator: Optional[str] = None) -> VerdictReport:
        verdict = VerdictReport(
            n=t.n, a=t.a, b=t.b,
            discriminant=disc,
            candidate_primes=candidates,
            per_prime=[r.to_report() for r in results],
            status=status,
            clause=clause,
            generator=generator,
            irreducibility=certificate.describe(),
            flags=flags,
            unnormalized_primes=unnormalized,
            transcript=transcript,
        )
        logger.info(f"{t}: {verdict.summary()}")
        return verdict

    if any(r.verdict for r in results):
        return report(VerdictStatus.NOT_MONOGENIC)

    square, unfactored = square_discriminant_primes(disc, settings.discriminant_cutoff)
    non_maximal = []
    for q in square:
        maximal = dedekind_p_maximal(f, q)
        transcript.append(f"dedekind at {q}: {'p-maximal' if maximal else 'not p-maximal'}")
        if not maximal:
            non_maximal.append(q)
    if not certificate.certified:
        transcript.append("irreducibility not certified; no monogenity claim")
        return report(VerdictStatus.INCONCLUSIVE)
    if not non_maximal:
        if unfactored:
            logger.warning(f"Discriminant of {t} is not factored below {settings.discriminant_cutoff}")
            transcript.append(f"discriminant has a cofactor without prime factors below {settings.discriminant_cutoff}")
            flags.append(UNFACTORED_DISCRIMINANT)
            return report(VerdictStatus.INCONCLUSIVE)
        return report(VerdictStatus.ZK_EQUALS_ZTHETA, generator="theta")

    try:
        params = MonoParams.from_trinomial(t)
    except NotApplicableError as e:
        transcript.append(f"mono: {e}")
        return report(VerdictStatus.INCONCLUSIVE)
    mono = certify_mono(params, settings.discriminant_cutoff)
    transcript.append(
        f"mono: p = {params.p}, r = {params.r}, v = {params.v}, u = {params.u}, "
        f"(x, y) = ({mono.x}, {mono.y}), eisenstein={mono.eisenstein}, side condition={mono.side_condition}"
    )
    transcript.extend(f"mono: {note}" for note in mono.notes)
    if mono.passed:
        return report(VerdictStatus.MONOGENIC_WITH_GENERATOR, clause="mono", generator=mono.generator)
    return report(VerdictStatus.INCONCLUSIVE)


def eta_discriminant_drops(t: Trinomial, g: IntPoly, p: int) -> bool:
    """v_p(disc(g)) < v_p(disc(F)) for the minimal polynomial g of theta^x / p^y, y > 0."""
    before = vp(trinomial_discriminant(t), p)
    after = vp(discriminant_resultant(g), p)
    if is_infinite(after) or is_infinite(before):
        return False
    return after < before

