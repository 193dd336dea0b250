"""Splitting of p in Z[x]/(f): Ore's theorem, lift refinement and one order-two level."""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from trinomial_index.fqpoly import FiniteField, FqElement, FqPoly, FpPoly, factor_mod_p, factor_over_fq
from trinomial_index.intarith import INFINITY, Valuation, is_infinite, vp
from trinomial_index.newton import (
    NewtonPolygon, ResidualPolynomial, Side, phi_index, polygon_of_development,
    principal_polygon, residual_polynomial, residue_field,
)
from trinomial_index.utils.error_handling import DomainError, NotApplicableError, ShapeStatus
from trinomial_index.zpoly import IntPoly, PhiDevelopment, default_lift, discriminant_resultant, phi_expansion

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeIdeal:
    """One prime above p with the data that produced it."""
    e: int
    f: int
    phi: str
    slope: Fraction
    residual_factor: str
    order: int = 1


@dataclass(frozen=True)
class FactorShape:
    primes: Tuple[PrimeIdeal, ...]
    status: ShapeStatus
    index_lower_bound: int = 0
    notes: Tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return self.status is ShapeStatus.COMPLETE

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return sorted((q.e, q.f) for q in self.primes)

    @property
    def degree(self) -> int:
        return sum(q.e * q.f for q in self.primes)

    def census(self) -> Dict[int, int]:
        """m -> number of primes of residue degree m."""
        return dict(sorted(Counter(q.f for q in self.primes).items()))


def _shape_status(primes: List[PrimeIdeal], notes: List[str]) -> ShapeStatus:
    if not notes:
        return ShapeStatus.COMPLETE
    return ShapeStatus.PARTIAL if primes else ShapeStatus.INCONCLUSIVE


@dataclass(frozen=True)
class SideAnalysis:
    side: Side
    residual: ResidualPolynomial
    factors: Tuple[Tuple[FqPoly, int], ...]

    @property
    def separable(self) -> bool:
        return all(k == 1 for _, k in self.factors)


@dataclass(frozen=True)
class LocalFactorAnalysis:
    factor: FpPoly
    multiplicity: int
    phi: IntPoly
    development: PhiDevelopment
    polygon: NewtonPolygon
    sides: Tuple[SideAnalysis, ...]
    index: int

    @property
    def regular(self) -> bool:
        return all(s.separable for s in self.sides)


@dataclass(frozen=True)
class OreAnalysis:
    p: int
    index_lower_bound: int
    regular: bool
    shape: FactorShape
    details: Tuple[LocalFactorAnalysis, ...]


def _primes_of_side(phi: IntPoly, analysis: SideAnalysis) -> List[PrimeIdeal]:
    return [
        PrimeIdeal(analysis.side.e, phi.degree * psi.degree, str(phi), analysis.side.slope, str(psi))
        for psi, k in analysis.factors if k == 1
    ]


def analyze_factor(f: IntPoly, phi: IntPoly, p: int, seed: int = 0) -> LocalFactorAnalysis:
    """First-order data of f for one lift phi."""
    dev = phi_expansion(f, phi, p)
    polygon = polygon_of_development(dev)
    fld = residue_field(phi, p)
    sides = []
    for side in polygon.sides:
        residual = residual_polynomial(dev, side, fld)
        sides.append(SideAnalysis(side, residual, tuple(factor_over_fq(residual.poly, seed))))
    phibar = phi.reduce(p)
    return LocalFactorAnalysis(
        factor=phibar,
        multiplicity=phibar.multiplicity_in(f.reduce(p)),
        phi=phi,
        development=dev,
        polygon=polygon,
        sides=tuple(sides),
        index=phi_index(polygon, phi.degree),
    )


def _require_squarefree(f: IntPoly) -> int:
    if not f.is_monic():
        raise DomainError(f"{f} is not monic")
    disc = discriminant_resultant(f)
    if disc == 0:
        raise DomainError(f"{f} is not squarefree")
    return disc


def ore_analysis(f: IntPoly, p: int, seed: int = 0) -> OreAnalysis:
    """Theorem of Ore with the default lift of every irreducible factor of f mod p."""
    _require_squarefree(f)
    details = []
    primes: List[PrimeIdeal] = []
    notes: List[str] = []
    for g, _ in factor_mod_p(f.reduce(p)):
        local = analyze_factor(f, default_lift(g), p, seed)
        details.append(local)
        for side in local.sides:
            primes.extend(_primes_of_side(local.phi, side))
            if not side.separable:
                notes.append(f"phi = {local.phi}: residual {side.residual} of side {side.side} is not separable")
    index = sum(d.index for d in details)
    regular = all(d.regular for d in details)
    shape = FactorShape(tuple(primes), _shape_status(primes, notes), index, tuple(notes))
    logger.debug(f"Ore analysis of {f} at {p}: index >= {index}, regular={regular}")
    return OreAnalysis(p, index, regular, shape, tuple(details))


def refine_lift(f: IntPoly, p: int, phi: IntPoly, side: Side, repeated_root: FqElement) -> IntPoly:
    """phi - z*p^h for a side of integer slope -h whose residual polynomial has the repeated root z."""
    if side.e != 1:
        raise NotApplicableError(f"refinement needs an integer slope, side {side} has e = {side.e}")
    z = IntPoly.lift(repeated_root.poly)
    refined = phi - z * p**side.h
    logger.debug(f"Refining lift {phi} to {refined} on side {side} of {f}")
    return refined


def augmented_valuation(P: IntPoly, phi: IntPoly, slope: Fraction, p: int) -> Valuation:
    """e * min_j (v_p(a_j) + j (v_p(phi) + h/e)) over the phi-adic coefficients a_j of P."""
    if P.is_zero():
        return INFINITY
    h, e = -slope.numerator, slope.denominator
    if h <= 0:
        raise DomainError(f"augmented valuation needs a negative slope, got {slope}")
    base = phi.content_valuation(p)
    coeffs = [P] if P.degree < phi.degree else list(phi_expansion(P, phi, p).coeffs)
    best: Valuation = INFINITY
    for j, a in enumerate(coeffs):
        v = a.content_valuation(p)
        if is_infinite(v):
            continue
        best = min(best, e * v + j * (e * base + h))
    return best


@dataclass(frozen=True)
class OrderTwoType:
    """(phi; slope, phi2) with psi1 the first-order residual factor of multiplicity k."""
    phi: IntPoly
    side: Side
    psi1: FqPoly
    multiplicity: int
    phi2: IntPoly


@dataclass(frozen=True)
class SecondOrderResult:
    order_two: OrderTwoType
    polygon: NewtonPolygon
    residuals: Tuple[Tuple[Side, FqPoly], ...]
    primes: Tuple[PrimeIdeal, ...]
    status: ShapeStatus
    note: str = ""


def _phi2_candidate(phi: IntPoly, side: Side, psi1: FqPoly, p: int, symmetric: bool) -> IntPoly:
    total = IntPoly(())
    for j, beta in enumerate(psi1.coeffs):
        if beta.is_zero():
            continue
        lifted = IntPoly.lift(beta.poly, symmetric=symmetric)
        total = total + lifted * p ** (side.h * (psi1.degree - j)) * phi ** (side.e * j)
    return total


def build_order_two_type(f: IntPoly, phi: IntPoly, side: Side, psi1: FqPoly, k: int, p: int) -> OrderTwoType:
    """Constructs phi2 with a one-sided phi-polygon of the side's slope and residual polynomial psi1."""
    if k < 2:
        raise NotApplicableError(f"residual factor {psi1} is simple; order two is not needed")
    psi1 = psi1.monic()
    for symmetric in (True, False):
        phi2 = _phi2_candidate(phi, side, psi1, p, symmetric)
        dev = phi_expansion(phi2, phi, p)
        polygon = polygon_of_development(dev)
        if len(polygon.sides) != 1 or polygon.sides[0].slope != side.slope:
            continue
        if residual_polynomial(dev, polygon.sides[0], psi1.field).poly.monic() == psi1:
            logger.debug(f"Order-two key polynomial for {f}: {phi2}")
            return OrderTwoType(phi, side, psi1, k, phi2)
    raise NotApplicableError(f"no key polynomial for phi = {phi}, slope {side.slope}, psi = {psi1}")


def _second_field(phi: IntPoly, psi1: FqPoly, p: int) -> Tuple[FiniteField, FqElement]:
    """F_phi[y]/(psi1) and the class z of y."""
    if phi.degree == 1:
        fld = FiniteField(p, psi1.to_fp())
        return fld, fld.generator()
    if psi1.degree == 1:
        return psi1.field, -psi1.coeff(0)
    raise NotApplicableError("second residue field would need a tower of extensions")


def _second_residue(A: IntPoly, t: OrderTwoType, p: int, fld: FiniteField, z: FqElement, m: int) -> FqElement:
    """Residue of A / pi^m in F_phi[y]/(psi1), pi = phi^l / p^l' of value 1/e."""
    h, e = t.side.h, t.side.e
    ell = pow(h, -1, e) if e > 1 else 0
    coeffs = [A] if A.degree < t.phi.degree else list(phi_expansion(A, t.phi, p).coeffs)
    total = fld.zero
    for j, a in enumerate(coeffs):
        v = a.content_valuation(p)
        if is_infinite(v) or e * v + j * h != m:
            continue
        unit = a.exact_quotient(p**v).reduce(p)
        if t.phi.degree == 1:
            c = fld.element(unit.evaluate(-t.phi.coeff(0)))
        else:
            c = fld.element(unit % t.phi.reduce(p))
        total = total + c * z ** ((j - m * ell) // e)
    return total


def second_order_analysis(f: IntPoly, t: OrderTwoType, p: int, seed: int = 0) -> SecondOrderResult:
    """Second-order polygon of f for the type t and the primes it yields."""
    fld, z = _second_field(t.phi, t.psi1, p)
    dev = phi_expansion(f, t.phi2, p)
    phi2_value = augmented_valuation(t.phi2, t.phi, t.side.slope, p)
    values: Dict[int, int] = {}
    for i, A in enumerate(dev.coeffs):
        v = augmented_valuation(A, t.phi, t.side.slope, p)
        if not is_infinite(v):
            values[i] = v + i * phi2_value
    polygon = principal_polygon(values.items(), p, t.phi2)
    logger.debug(f"Second-order points of {f}: {sorted(values.items())}")
    if polygon.length != t.multiplicity:
        note = f"second-order polygon has length {polygon.length}, expected {t.multiplicity}"
        logger.warning(f"{f} at {p}: {note}")
        return SecondOrderResult(t, polygon, (), (), ShapeStatus.INCONCLUSIVE, note)
    residuals = []
    primes: List[PrimeIdeal] = []
    note = ""
    for side in polygon.sides:
        coeffs = []
        for k in range(side.degree + 1):
            i = side.start[0] + k * side.e
            on_side = i in values and values[i] * side.e == side.ordinate_times_e(i)
            if on_side:
                A = dev.coeffs[i]
                m = augmented_valuation(A, t.phi, t.side.slope, p)
                coeffs.append(_second_residue(A, t, p, fld, z, int(m)))
            else:
                coeffs.append(fld.zero)
        R2 = FqPoly(fld, tuple(coeffs))
        residuals.append((side, R2))
        for psi2, k2 in factor_over_fq(R2, seed):
            if k2 != 1:
                note = f"second-order residual {R2} is not separable"
                continue
            primes.append(PrimeIdeal(
                t.side.e * side.e,
                t.phi.degree * t.psi1.degree * psi2.degree,
                str(t.phi2),
                side.slope,
                str(psi2),
                order=2,
            ))
    status = ShapeStatus.COMPLETE if not note else _shape_status(primes, [note])
    return SecondOrderResult(t, polygon, tuple(residuals), tuple(primes), status, note)


@dataclass
class _Resolution:
    primes: List[PrimeIdeal]
    notes: List[str]
    index: int


def _resolve(f: IntPoly, phi: IntPoly, p: int, floor: Optional[int], passes: int, seed: int) -> _Resolution:
    """Primes of the roots t of f with v(phi(t)) > floor (all roots of the factor when floor is None)."""
    local = analyze_factor(f, phi, p, seed)
    out = _Resolution([], [], local.index)
    for analysis in local.sides:
        side = analysis.side
        if floor is not None and side.slope >= -floor:
            continue
        for psi, k in analysis.factors:
            if k == 1:
                out.primes.append(PrimeIdeal(side.e, phi.degree * psi.degree, str(phi), side.slope, str(psi)))
                continue
            if side.e == 1 and psi.degree == 1 and passes > 0:
                refined = refine_lift(f, p, phi, side, -psi.coeff(0))
                child = _resolve(f, refined, p, side.h, passes - 1, seed)
                covered = sum(q.e * q.f for q in child.primes) // phi.degree
                if not child.notes and covered != k:
                    child.notes.append(f"refined lift {refined} accounts for {covered} of {k} roots")
                out.primes.extend(child.primes)
                out.notes.extend(child.notes)
                out.index = max(out.index, child.index)
                continue
            try:
                t = build_order_two_type(f, phi, side, psi, k, p)
                result = second_order_analysis(f, t, p, seed)
            except NotApplicableError as e:
                out.notes.append(f"phi = {phi}, slope {side.slope}, psi = {psi}: {e}")
                continue
            out.primes.extend(result.primes)
            if result.status is not ShapeStatus.COMPLETE:
                out.notes.append(f"phi2 = {t.phi2}: {result.note}")
    return out


def factor_shape(f: IntPoly, p: int, seed: int = 0) -> FactorShape:
    """Ore's theorem, then refinement and order two on every non-separable residual factor."""
    disc = _require_squarefree(f)
    passes = 2 * (1 + int(vp(disc, p)))
    primes: List[PrimeIdeal] = []
    notes: List[str] = []
    index = 0
    for g, _ in factor_mod_p(f.reduce(p)):
        resolved = _resolve(f, default_lift(g), p, None, passes, seed)
        primes.extend(resolved.primes)
        notes.extend(resolved.notes)
        index += resolved.index
    status = _shape_status(primes, notes)
    if status is not ShapeStatus.COMPLETE:
        logger.info(f"Shape of {f} at {p} is {status.name.lower()}: {'; '.join(notes)}")
    primes.sort(key=lambda q: (q.f, q.e, q.phi, q.order))
    return FactorShape(tuple(primes), status, index, tuple(notes))
