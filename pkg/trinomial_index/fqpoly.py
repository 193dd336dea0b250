"""Polynomial algebra over F_p and over single-step extensions F_q = F_p[x]/(g).

F_p[x] arithmetic is delegated to ``sympy.polys.galoistools`` (dense lists, highest
degree first). Extension fields carry an explicit irreducible modulus; polynomials
over them are factored with squarefree, distinct-degree and equal-degree splitting.
"""
import functools
import logging
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add, gf_degree, gf_diff, gf_div, gf_eval, gf_factor, gf_from_int_poly,
    gf_gcd, gf_gcdex, gf_irreducible_p, gf_monic, gf_mul, gf_neg, gf_pow_mod,
    gf_rem, gf_sqf_list, gf_sub,
)

from trinomial_index.intarith import require_prime
from trinomial_index.utils.error_handling import DomainError

logger = logging.getLogger(__name__)


def _dense(values: Sequence[int]) -> list:
    return [ZZ(int(c)) for c in values]


def _format_terms(terms: Sequence[Tuple[str, int]], var: str) -> str:
    """Renders (coefficient text, exponent) pairs, highest exponent first."""
    parts = []
    for coeff, k in terms:
        if k == 0:
            parts.append(coeff)
        else:
            power = var if k == 1 else f"{var}^{k}"
            parts.append(power if coeff == "1" else f"{coeff}*{power}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FpPoly:
    """A polynomial over F_p, stored as a stripped dense tuple in [0, p), highest degree first."""
    p: int
    dense: Tuple[int, ...]

    def __post_init__(self):
        reduced = [int(c) % self.p for c in self.dense]
        while reduced and reduced[0] == 0:
            reduced.pop(0)
        object.__setattr__(self, "dense", tuple(reduced))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], p: int) -> "FpPoly":
        """Builds from coefficients listed lowest degree first."""
        return cls(p, tuple(reversed([int(c) for c in coeffs])))

    @classmethod
    def from_int_dense(cls, dense: Sequence[int], p: int) -> "FpPoly":
        return cls(p, tuple(int(c) for c in gf_from_int_poly(list(dense), p)))

    @classmethod
    def x(cls, p: int) -> "FpPoly":
        return cls(p, (1, 0))

    @classmethod
    def constant(cls, c: int, p: int) -> "FpPoly":
        return cls(p, (c,))

    @property
    def coeffs(self) -> Tuple[int, ...]:
        """Coefficients lowest degree first."""
        return tuple(reversed(self.dense))

    @property
    def degree(self) -> int:
        return int(gf_degree(list(self.dense)))

    @property
    def leading(self) -> int:
        return self.dense[0] if self.dense else 0

    def is_zero(self) -> bool:
        return not self.dense

    def is_one(self) -> bool:
        return self.dense == (1,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def _wrap(self, dense) -> "FpPoly":
        return FpPoly(self.p, tuple(int(c) for c in dense))

    def _check(self, other: "FpPoly") -> None:
        if other.p != self.p:
            raise DomainError(f"cannot combine polynomials over F_{self.p} and F_{other.p}")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        return self._wrap(gf_add(_dense(self.dense), _dense(other.dense), self.p, ZZ))

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        return self._wrap(gf_sub(_dense(self.dense), _dense(other.dense), self.p, ZZ))

    def __neg__(self) -> "FpPoly":
        return self._wrap(gf_neg(_dense(self.dense), self.p, ZZ))

    def __mul__(self, other: Union["FpPoly", int]) -> "FpPoly":
        if isinstance(other, int):
            other = FpPoly.constant(other, self.p)
        self._check(other)
        return self._wrap(gf_mul(_dense(self.dense), _dense(other.dense), self.p, ZZ))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FpPoly":
        result = FpPoly.constant(1, self.p)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "FpPoly") -> Tuple["FpPoly", "FpPoly"]:
        self._check(other)
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        q, r = gf_div(_dense(self.dense), _dense(other.dense), self.p, ZZ)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        return self._wrap(gf_rem(_dense(self.dense), _dense(other.dense), self.p, ZZ))

    def divides(self, other: "FpPoly") -> bool:
        return (other % self).is_zero()

    def pow_mod(self, n: int, modulus: "FpPoly") -> "FpPoly":
        return self._wrap(gf_pow_mod(_dense(self.dense), n, _dense(modulus.dense), self.p, ZZ))

    def gcd(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        return self._wrap(gf_gcd(_dense(self.dense), _dense(other.dense), self.p, ZZ))

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        return self._wrap(gf_monic(_dense(self.dense), self.p, ZZ)[1])

    def derivative(self) -> "FpPoly":
        return self._wrap(gf_diff(_dense(self.dense), self.p, ZZ))

    def evaluate(self, c: int) -> int:
        return int(gf_eval(_dense(self.dense), c % self.p, self.p, ZZ))

    def is_irreducible(self) -> bool:
        return self.degree >= 1 and _irreducible_mod_p(self)

    def squarefree_decomposition(self) -> List[Tuple["FpPoly", int]]:
        """Pairwise coprime squarefree monic parts with their multiplicities; gcds only, no splitting."""
        _, parts = gf_sqf_list(_dense(self.dense), self.p, ZZ)
        return [(FpPoly(self.p, tuple(int(c) for c in g)), int(k)) for g, k in parts]

    def multiplicity_in(self, other: "FpPoly") -> int:
        """Largest k with self^k | other; other must be nonzero."""
        if other.is_zero() or self.degree < 1:
            raise DomainError("multiplicity needs a nonconstant divisor and a nonzero polynomial")
        k = 0
        rest = other
        while True:
            q, r = divmod(rest, self)
            if not r.is_zero():
                return k
            rest, k = q, k + 1

    def __str__(self) -> str:
        terms = [(str(c), self.degree - i) for i, c in enumerate(self.dense) if c]
        return _format_terms(terms, "x")


@functools.lru_cache(maxsize=4096)
def _irreducible_mod_p(f: FpPoly) -> bool:
    return bool(gf_irreducible_p(_dense(f.dense), f.p, ZZ))


def factor_mod_p(f: FpPoly) -> List[Tuple[FpPoly, int]]:
    """Monic irreducible factors of f with multiplicities, in lexicographic coefficient order."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    return list(_factor_mod_p(f))


@functools.lru_cache(maxsize=4096)
def _factor_mod_p(f: FpPoly) -> Tuple[Tuple[FpPoly, int], ...]:
    _, factors = gf_factor(_dense(f.dense), f.p, ZZ)
    result = [(FpPoly(f.p, tuple(int(c) for c in g)), int(k)) for g, k in factors]
    result.sort(key=lambda item: (item[0].degree, item[0].coeffs))
    return tuple(result)


def count_binomial_factors(p: int, m: int, s: int, t: int) -> int:
    """N_p(m, s, t): distinct monic irreducible factors of degree m of x^s + t over F_p."""
    require_prime(p)
    if m < 1 or s < 1:
        raise DomainError("degree and exponent must be positive")
    binomial = FpPoly(p, (1,) + (0,) * (s - 1) + (t,))
    return sum(1 for g, _ in factor_mod_p(binomial) if g.degree == m)


@dataclass(frozen=True)
class FiniteField:
    """F_q = F_p[x]/(modulus) for a monic irreducible modulus; degree one gives F_p itself."""
    p: int
    modulus: FpPoly

    def __post_init__(self):
        require_prime(self.p)
        if self.modulus.p != self.p:
            raise DomainError("modulus lives over a different prime field")
        if not self.modulus.is_irreducible():
            raise DomainError(f"modulus {self.modulus} is not irreducible over F_{self.p}")
        object.__setattr__(self, "modulus", self.modulus.monic())

    @classmethod
    def prime_field(cls, p: int) -> "FiniteField":
        return cls(p, FpPoly.x(p))

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def element(self, value: Union[int, FpPoly, Sequence[int]]) -> "FqElement":
        """Coerces an integer, an F_p polynomial or low-first integer coefficients."""
        if isinstance(value, int):
            poly = FpPoly.constant(value, self.p)
        elif isinstance(value, FpPoly):
            poly = value
        else:
            poly = FpPoly.from_coeffs(value, self.p)
        return FqElement(self, (poly % self.modulus).dense)

    @property
    def zero(self) -> "FqElement":
        return FqElement(self, ())

    @property
    def one(self) -> "FqElement":
        return FqElement(self, (1,))

    def generator(self) -> "FqElement":
        """The class of x modulo the defining polynomial."""
        return self.element(FpPoly.x(self.p))

    def elements(self) -> Iterator["FqElement"]:
        for index in range(self.order):
            digits = []
            for _ in range(self.degree):
                index, digit = divmod(index, self.p)
                digits.append(digit)
            yield self.element(digits)

    def random_element(self, rng: random.Random) -> "FqElement":
        return self.element([rng.randrange(self.p) for _ in range(self.degree)])

    def __str__(self) -> str:
        if self.degree == 1:
            return f"F_{self.p}"
        return f"F_{self.order} = F_{self.p}[x]/({self.modulus})"


@dataclass(frozen=True)
class FqElement:
    field: FiniteField
    rep: Tuple[int, ...]

    def __post_init__(self):
        poly = FpPoly(self.field.p, self.rep) % self.field.modulus
        object.__setattr__(self, "rep", poly.dense)

    def _coerce(self, other) -> "FqElement":
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        raise TypeError(f"cannot combine FqElement with {type(other).__name__}")

    @property
    def poly(self) -> FpPoly:
        return FpPoly(self.field.p, self.rep)

    def is_zero(self) -> bool:
        return not self.rep

    def is_one(self) -> bool:
        return self.rep == (1,)

    def __add__(self, other) -> "FqElement":
        return FqElement(self.field, (self.poly + self._coerce(other).poly).dense)

    __radd__ = __add__

    def __sub__(self, other) -> "FqElement":
        return FqElement(self.field, (self.poly - self._coerce(other).poly).dense)

    def __rsub__(self, other) -> "FqElement":
        return self._coerce(other) - self

    def __neg__(self) -> "FqElement":
        return FqElement(self.field, (-self.poly).dense)

    def __mul__(self, other) -> "FqElement":
        product = (self.poly * self._coerce(other).poly) % self.field.modulus
        return FqElement(self.field, product.dense)

    __rmul__ = __mul__

    def inverse(self) -> "FqElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        s, _, h = gf_gcdex(_dense(self.rep), _dense(self.field.modulus.dense), self.field.p, ZZ)
        if [int(c) for c in h] != [1]:
            raise DomainError("element is not invertible; modulus is not irreducible")
        return FqElement(self.field, tuple(int(c) for c in s))

    def __truediv__(self, other) -> "FqElement":
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int) -> "FqElement":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.field.one
        powered = gf_pow_mod(_dense(self.rep), n, _dense(self.field.modulus.dense), self.field.p, ZZ)
        return FqElement(self.field, tuple(int(c) for c in powered))

    def sort_key(self) -> Tuple[int, ...]:
        return self.poly.coeffs

    def __str__(self) -> str:
        if self.field.degree == 1:
            return str(self.rep[0] if self.rep else 0)
        terms = [(str(c), len(self.rep) - 1 - i) for i, c in enumerate(self.rep) if c]
        text = _format_terms(terms, "z")
        return f"({text})" if len(terms) > 1 else text


@dataclass(frozen=True)
class FqPoly:
    """A polynomial over a FiniteField, coefficients lowest degree first, trailing zeros trimmed."""
    field: FiniteField
    coeffs: Tuple[FqElement, ...] = ()

    def __post_init__(self):
        coeffs = [self.field.element(c) if isinstance(c, int) else c for c in self.coeffs]
        for c in coeffs:
            if c.field != self.field:
                raise DomainError("all coefficients must share one field")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_ints(cls, field: FiniteField, values: Sequence[int]) -> "FqPoly":
        return cls(field, tuple(field.element(v) for v in values))

    @classmethod
    def monomial(cls, field: FiniteField, k: int, c: Optional[FqElement] = None) -> "FqPoly":
        lead = field.one if c is None else c
        return cls(field, (field.zero,) * k + (lead,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> FqElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, k: int) -> FqElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def __add__(self, other: "FqPoly") -> "FqPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return FqPoly(self.field, tuple(self.coeff(k) + other.coeff(k) for k in range(size)))

    def __neg__(self) -> "FqPoly":
        return FqPoly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        return self + (-other)

    def __mul__(self, other: Union["FqPoly", FqElement]) -> "FqPoly":
        if isinstance(other, FqElement):
            return FqPoly(self.field, tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return FqPoly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return FqPoly(self.field, tuple(out))

    def __pow__(self, n: int) -> "FqPoly":
        result = FqPoly(self.field, (self.field.one,))
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "FqPoly") -> Tuple["FqPoly", "FqPoly"]:
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        rem = list(self.coeffs)
        inv = other.leading.inverse()
        quo = [self.field.zero] * max(len(rem) - other.degree, 0)
        while len(rem) - 1 >= other.degree and rem:
            shift = len(rem) - 1 - other.degree
            c = rem[-1] * inv
            quo[shift] = c
            for k, g in enumerate(other.coeffs):
                rem[shift + k] = rem[shift + k] - c * g
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return FqPoly(self.field, tuple(quo)), FqPoly(self.field, tuple(rem))

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[1]

    def monic(self) -> "FqPoly":
        if self.is_zero():
            return self
        return self * self.leading.inverse()

    def gcd(self, other: "FqPoly") -> "FqPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "FqPoly":
        return FqPoly(self.field, tuple(c * k for k, c in enumerate(self.coeffs) if k > 0))

    def pow_mod(self, n: int, modulus: "FqPoly") -> "FqPoly":
        result = FqPoly(self.field, (self.field.one,))
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def evaluate(self, z: FqElement) -> FqElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def sort_key(self) -> Tuple:
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def to_fp(self) -> FpPoly:
        """Coefficientwise image in F_p[y]; only for degree-one fields."""
        if self.field.degree != 1:
            raise DomainError("only polynomials over a prime field convert to F_p[y]")
        return FpPoly.from_coeffs([c.rep[0] if c.rep else 0 for c in self.coeffs], self.field.p)

    def __str__(self) -> str:
        terms = [(str(c), k) for k, c in reversed(list(enumerate(self.coeffs))) if not c.is_zero()]
        return _format_terms(terms, "y")


def is_separable(g: FqPoly) -> bool:
    """True iff gcd(g, g') is constant."""
    if g.degree <= 0:
        return True
    return g.gcd(g.derivative()).degree == 0


def _pth_root(c: FqPoly) -> FqPoly:
    p, q = c.field.p, c.field.order
    root = [c.coeffs[k] ** (q // p) for k in range(0, len(c.coeffs), p)]
    return FqPoly(c.field, tuple(root))


def _squarefree_decomposition(f: FqPoly) -> List[Tuple[FqPoly, int]]:
    result: List[Tuple[FqPoly, int]] = []
    c = f.gcd(f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        fac = w // y
        if fac.degree > 0:
            result.append((fac.monic(), i))
        w, c, i = y, c // y, i + 1
    if c.degree > 0:
        for g, k in _squarefree_decomposition(_pth_root(c).monic()):
            result.append((g, k * f.field.p))
    return result


def _distinct_degree(f: FqPoly) -> List[Tuple[FqPoly, int]]:
    q = f.field.order
    y = FqPoly.monomial(f.field, 1)
    h = y
    result = []
    d = 1
    while f.degree >= 2 * d:
        h = h.pow_mod(q, f)
        g = f.gcd(h - y)
        if g.degree > 0:
            result.append((g, d))
            f = f // g
            h = h % f
        d += 1
    if f.degree > 0:
        result.append((f.monic(), f.degree))
    return result


def _equal_degree_split(g: FqPoly, d: int, rng: random.Random) -> List[FqPoly]:
    if g.degree == d:
        return [g]
    fld = g.field
    q = fld.order
    while True:
        a = FqPoly(fld, tuple(fld.random_element(rng) for _ in range(g.degree)))
        if a.degree <= 0:
            continue
        if q % 2:
            b = a.pow_mod((q**d - 1) // 2, g) - FqPoly(fld, (fld.one,))
        else:
            # absolute trace to F_2: a + a^2 + ... + a^(2^(k*d - 1))
            bits = (q.bit_length() - 1) * d
            b, term = a % g, a % g
            for _ in range(bits - 1):
                term = (term * term) % g
                b = b + term
        u = g.gcd(b)
        if 0 < u.degree < g.degree:
            return _equal_degree_split(u, d, rng) + _equal_degree_split(g // u, d, rng)


def factor_over_fq(g: FqPoly, seed: int = 0) -> List[Tuple[FqPoly, int]]:
    """Monic irreducible factors of g over its field with multiplicities, sorted by (degree, coefficients)."""
    if g.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    return list(_factor_over_fq(g, seed))


@functools.lru_cache(maxsize=4096)
def _factor_over_fq(g: FqPoly, seed: int) -> Tuple[Tuple[FqPoly, int], ...]:
    if g.degree == 0:
        return ()
    fld = g.field
    if fld.degree == 1:
        return tuple(
            (FqPoly.from_ints(fld, list(h.coeffs)), k)
            for h, k in factor_mod_p(g.to_fp())
        )
    rng = random.Random(seed)
    result = []
    for part, k in _squarefree_decomposition(g.monic()):
        for block, d in _distinct_degree(part):
            for h in _equal_degree_split(block, d, rng):
                result.append((h.monic(), k))
    result.sort(key=lambda item: item[0].sort_key())
    logger.debug(f"Factored {g} over {fld} into {len(result)} factors")
    return tuple(result)
