"""Integer polynomials: trinomials, discriminants, phi-adic developments, lifts and
irreducibility certificates."""
import logging
from dataclasses import dataclass
from enum import Enum, auto
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import divisors, factorint, integer_nthroot, isprime, primerange
from sympy.polys.densearith import dup_add, dup_div, dup_mul, dup_mul_ground, dup_pow, dup_sub
from sympy.polys.densetools import dup_diff, dup_eval
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_discriminant, dup_gcd
from sympy.polys.galoistools import gf_to_int_poly

from trinomial_index.fqpoly import FpPoly, factor_mod_p
from trinomial_index.intarith import INFINITY, Valuation, is_infinite, require_prime, vp
from trinomial_index.utils.error_handling import DomainError, ReducibleInputError

logger = logging.getLogger(__name__)


def _ints(values) -> Tuple[int, ...]:
    return tuple(int(c) for c in values)


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, coefficients lowest degree first. The zero polynomial has no coefficients."""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_dense(cls, dense: Sequence[int]) -> "IntPoly":
        """From sympy dense order (highest degree first)."""
        return cls(tuple(reversed(_ints(dense))))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def linear(cls, c: int) -> "IntPoly":
        """x - c."""
        return cls((-c, 1))

    @classmethod
    def lift(cls, g: FpPoly, symmetric: bool = False) -> "IntPoly":
        """Integer lift of an F_p polynomial, coefficients in [0, p) or in the symmetric range."""
        if symmetric:
            return cls.from_dense(gf_to_int_poly(list(g.dense), g.p, symmetric=True))
        return cls(g.coeffs)

    @property
    def dense(self) -> List:
        return [ZZ(c) for c in reversed(self.coeffs)]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.from_dense(dup_add(self.dense, other.dense, ZZ))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.from_dense(dup_sub(self.dense, other.dense, ZZ))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly.from_dense(dup_mul_ground(self.dense, ZZ(other), ZZ))
        return IntPoly.from_dense(dup_mul(self.dense, other.dense, ZZ))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        return IntPoly.from_dense(dup_pow(self.dense, n, ZZ))

    def __divmod__(self, other: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Exact division with remainder by a monic polynomial."""
        if not other.is_monic():
            raise DomainError(f"division requires a monic divisor, got {other}")
        q, r = dup_div(self.dense, other.dense, ZZ)
        return IntPoly.from_dense(q), IntPoly.from_dense(r)

    def exact_quotient(self, k: int) -> "IntPoly":
        """self / k, which must be integral."""
        if any(c % k for c in self.coeffs):
            raise DomainError(f"{self} is not divisible by {k}")
        return IntPoly(tuple(c // k for c in self.coeffs))

    def content_valuation(self, p: int) -> Valuation:
        """Minimum p-adic valuation of the coefficients."""
        if self.is_zero():
            return INFINITY
        return min(vp(c, p) for c in self.coeffs if c)

    def reduce(self, p: int) -> FpPoly:
        return FpPoly.from_coeffs(self.coeffs, p)

    def derivative(self) -> "IntPoly":
        return IntPoly.from_dense(dup_diff(self.dense, 1, ZZ))

    def evaluate(self, x: int) -> int:
        return int(dup_eval(self.dense, ZZ(x), ZZ))

    def gcd(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.from_dense(dup_gcd(self.dense, other.dense, ZZ))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "x" if k == 1 else f"x^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def default_lift(g: FpPoly) -> IntPoly:
    """Analysis lift: x - c with 0 <= c < p for linear g, coefficients in [0, p) otherwise."""
    g = g.monic()
    if g.degree == 1:
        return IntPoly.linear((-g.coeffs[0]) % g.p)
    return IntPoly.lift(g)


@dataclass(frozen=True)
class Trinomial:
    """x^n + a*x + b with n >= 2 and b != 0."""
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"degree must be at least 2, got {self.n}")
        if self.b == 0:
            raise ReducibleInputError("b = 0 makes x a factor", factor="x")

    @property
    def poly(self) -> IntPoly:
        coeffs = [0] * (self.n + 1)
        coeffs[0] += self.b
        coeffs[1] += self.a
        coeffs[self.n] += 1
        return IntPoly(tuple(coeffs))

    def unnormalized_primes(self) -> List[int]:
        """Primes q with v_q(a) >= n-1 and v_q(b) >= n."""
        bound, _ = integer_nthroot(abs(self.b), self.n)
        found = []
        for q in primerange(2, int(bound) + 1):
            if self.b % q**self.n == 0 and (self.a == 0 or self.a % q ** (self.n - 1) == 0):
                found.append(int(q))
        return found

    def __str__(self) -> str:
        return str(self.poly)


def trinomial_discriminant(t: Trinomial) -> int:
    """(-1)^(n(n-1)/2) * (n^n b^(n-1) + (1-n)^(n-1) a^n)."""
    n, a, b = t.n, t.a, t.b
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * (n**n * b ** (n - 1) + (1 - n) ** (n - 1) * a**n)


def discriminant_resultant(f: IntPoly) -> int:
    """Discriminant through the resultant Res(f, f'); zero when f has a repeated factor."""
    if f.degree < 1:
        raise DomainError("discriminant needs a nonconstant polynomial")
    d = int(dup_discriminant(f.dense, ZZ))
    if d == 0:
        logger.debug(f"{f} is not squarefree; discriminant is zero")
    return d


@dataclass(frozen=True)
class PhiDevelopment:
    """f = sum a_i(x) phi(x)^i with deg a_i < deg phi, plus u_i = v_p(a_i)."""
    phi: IntPoly
    p: int
    coeffs: Tuple[IntPoly, ...]
    valuations: Tuple[Valuation, ...]

    @property
    def length(self) -> int:
        return len(self.coeffs) - 1

    def points(self) -> List[Tuple[int, int]]:
        """Lattice points (i, u_i) over nonzero coefficients."""
        return [(i, u) for i, u in enumerate(self.valuations) if not is_infinite(u)]

    def reconstruct(self) -> IntPoly:
        total = IntPoly(())
        power = IntPoly.constant(1)
        for a in self.coeffs:
            total = total + a * power
            power = power * self.phi
        return total


def development_from_coeffs(phi: IntPoly, p: int, coeffs: Sequence[IntPoly]) -> PhiDevelopment:
    """Wraps an arbitrary (not necessarily adic) phi-development, computing its valuations."""
    coeffs = tuple(coeffs)
    return PhiDevelopment(phi, p, coeffs, tuple(a.content_valuation(p) for a in coeffs))


def phi_expansion(f: IntPoly, phi: IntPoly, p: int) -> PhiDevelopment:
    """The phi-adic development of f by repeated division."""
    require_prime(p)
    if not phi.is_monic():
        raise DomainError(f"phi must be monic, got {phi}")
    if not 1 <= phi.degree <= f.degree:
        raise DomainError(f"phi of degree {phi.degree} cannot develop a polynomial of degree {f.degree}")
    coeffs = []
    rest = f
    while not rest.is_zero():
        rest, r = divmod(rest, phi)
        coeffs.append(r)
    return development_from_coeffs(phi, p, coeffs)


@dataclass(frozen=True)
class LiftedFactor:
    """f = phi*U + p*T with g not dividing U mod p, T mod p nonzero and deg T < deg phi."""
    phi: IntPoly
    U: IntPoly
    T: IntPoly
    p: int


def select_lift(f: IntPoly, g: FpPoly, p: int) -> LiftedFactor:
    """Monic lift phi of g with f = phi*U + p*T and g coprime to U*T mod p.

    Starts from the symmetric-range lift; when the remainder of f by that lift has
    p-adic valuation at least 2, the lift is shifted to phi - p once.
    """
    require_prime(p)
    g = g.monic()
    fbar = f.reduce(p)
    if g.degree < 1 or not g.divides(fbar):
        raise DomainError(f"{g} does not divide {fbar} over F_{p}")
    if g.multiplicity_in(fbar) != 1:
        raise DomainError(f"{g} divides {fbar} more than once over F_{p}")
    phi = IntPoly.lift(g, symmetric=True)
    U, R = divmod(f, phi)
    valuation = R.content_valuation(p)
    if valuation >= 2:
        logger.debug(f"Remainder of {f} by {phi} has valuation {valuation}; shifting the lift by -{p}")
        phi = phi - IntPoly.constant(p)
        U, R = divmod(f, phi)
    return LiftedFactor(phi=phi, U=U, T=R.exact_quotient(p), p=p)


class CertificateKind(Enum):
    EISENSTEIN = auto()
    ONE_SIDED_POLYGON = auto()
    IRREDUCIBLE_MOD_P = auto()
    UNKNOWN = auto()


@dataclass(frozen=True)
class IrreducibilityCertificate:
    kind: CertificateKind
    prime: Optional[int] = None
    phi: Optional[IntPoly] = None
    slope: Optional[Fraction] = None

    @property
    def certified(self) -> bool:
        return self.kind is not CertificateKind.UNKNOWN

    def describe(self) -> str:
        if self.kind is CertificateKind.UNKNOWN:
            return "unknown"
        if self.kind is CertificateKind.IRREDUCIBLE_MOD_P:
            return f"irreducible-mod-p({self.prime})"
        if self.kind is CertificateKind.EISENSTEIN:
            return f"eisenstein({self.prime}; phi = {self.phi}, slope {self.slope})"
        return f"one-sided-polygon({self.prime}; phi = {self.phi}, slope {self.slope})"


def rational_root(t: Trinomial) -> Optional[int]:
    """An integer root of the trinomial, if any; monic so rational roots divide b."""
    f = t.poly
    for d in divisors(abs(t.b)):
        for r in (int(d), -int(d)):
            if f.evaluate(r) == 0:
                return r
    return None


def _single_irreducible_power(fbar: FpPoly) -> Optional[Tuple[FpPoly, int]]:
    """(g, l) with fbar = g^l, g irreducible and l >= 2; found from the squarefree parts alone."""
    parts = fbar.squarefree_decomposition()
    if len(parts) != 1:
        return None
    g, l = parts[0]
    if l < 2 or not g.is_irreducible():
        return None
    return g, l


def _one_sided_slope(f: IntPoly, p: int) -> Optional[Tuple[IntPoly, Fraction]]:
    """If f mod p is a power phi^l of one irreducible and the phi-polygon is one side of degree 1."""
    found = _single_irreducible_power(f.reduce(p))
    if found is None:
        return None
    g, l = found
    phi = default_lift(g)
    dev = phi_expansion(f, phi, p)
    v0 = dev.valuations[0]
    if is_infinite(v0) or gcd(int(v0), l) != 1:
        return None
    for i, u in dev.points():
        if 0 < i < l and u * l < v0 * (l - i):
            return None
    return phi, Fraction(-int(v0), l)


def irreducibility_certificate(t: Trinomial, prime_bound: int = 50, factor_limit: int = 10**6) -> IrreducibilityCertificate:
    """Searches rational root, Eisenstein, one-sided polygon and irreducible-mod-p certificates in that order.

    The polygon test only runs at primes dividing the discriminant, where f mod p
    can be a proper power; the mod-p test only at the others.
    Raises ReducibleInputError on a rational root or a repeated factor.
    """
    root = rational_root(t)
    if root is not None:
        raise ReducibleInputError(f"{t} has the rational root {root}", factor=str(IntPoly.linear(root)))
    f = t.poly
    disc = trinomial_discriminant(t)
    if disc == 0:
        common = f.gcd(f.derivative())
        raise ReducibleInputError(f"{t} has a repeated factor", factor=str(common))

    shared = gcd(t.a, t.b)
    local = [int(q) for q in factorint(shared, limit=factor_limit) if isprime(q)]
    small = [int(q) for q in primerange(2, prime_bound + 1)]

    for p in local:
        if vp(t.b, p) == 1:
            return IrreducibilityCertificate(
                CertificateKind.EISENSTEIN, prime=p, phi=IntPoly.x(), slope=Fraction(-1, t.n)
            )
    for p in sorted(set(local) | set(small)):
        if disc % p:
            continue
        found = _one_sided_slope(f, p)
        if found is not None:
            phi, slope = found
            return IrreducibilityCertificate(CertificateKind.ONE_SIDED_POLYGON, prime=p, phi=phi, slope=slope)
    for p in small:
        if disc % p and f.reduce(p).is_irreducible():
            return IrreducibilityCertificate(CertificateKind.IRREDUCIBLE_MOD_P, prime=p)
    logger.warning(f"Could not certify irreducibility of {t}")
    return IrreducibilityCertificate(CertificateKind.UNKNOWN)


def dedekind_p_maximal(f: IntPoly, p: int) -> bool:
    """Dedekind's criterion: p does not divide (Z_K : Z[theta])."""
    require_prime(p)
    if not f.is_monic():
        raise DomainError(f"Dedekind's criterion needs a monic polynomial, got {f}")
    factors = factor_mod_p(f.reduce(p))
    g = IntPoly.constant(1)
    h = IntPoly.constant(1)
    for gi, li in factors:
        lifted = IntPoly.lift(gi)
        g = g * lifted
        h = h * lifted ** (li - 1)
    F = (f - g * h).exact_quotient(p).reduce(p)
    common = F.gcd(g.reduce(p)).gcd(h.reduce(p))
    return common.degree == 0
