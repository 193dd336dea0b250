"""Principal phi-Newton polygons, residual polynomials and the phi-index."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from trinomial_index.fqpoly import FiniteField, FqElement, FqPoly, factor_mod_p, is_separable
from trinomial_index.intarith import is_infinite, require_prime
from trinomial_index.utils.error_handling import DomainError
from trinomial_index.zpoly import IntPoly, PhiDevelopment, default_lift, phi_expansion

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


@dataclass(frozen=True)
class Side:
    """A segment of a lower hull with slope -h/e, gcd(h, e) = 1."""
    start: Point
    end: Point

    @property
    def length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def height(self) -> int:
        return self.start[1] - self.end[1]

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.height, self.length)

    @property
    def h(self) -> int:
        return -self.slope.numerator

    @property
    def e(self) -> int:
        return self.slope.denominator

    @property
    def degree(self) -> int:
        return self.length // self.e

    def ordinate_times_e(self, i: int) -> int:
        """e * y(i) on the side's line, an integer."""
        return self.start[1] * self.e - (i - self.start[0]) * self.h

    def contains(self, point: Point) -> bool:
        i, u = point
        return self.start[0] <= i <= self.end[0] and u * self.e == self.ordinate_times_e(i)

    def __str__(self) -> str:
        return f"{self.start}-{self.end} slope {self.slope}"


@dataclass(frozen=True)
class NewtonPolygon:
    sides: Tuple[Side, ...]
    p: Optional[int] = None
    phi: Optional[IntPoly] = None
    points: Tuple[Point, ...] = ()
    # sides of slope >= 0, kept for reporting only
    diagnostic_sides: Tuple[Side, ...] = ()

    @property
    def vertices(self) -> List[Point]:
        if not self.sides:
            return []
        return [self.sides[0].start] + [s.end for s in self.sides]

    @property
    def length(self) -> int:
        return sum(s.length for s in self.sides)

    def is_empty(self) -> bool:
        return not self.sides

    def ordinate(self, i: int) -> Fraction:
        for side in self.sides:
            if side.start[0] <= i <= side.end[0]:
                return Fraction(side.ordinate_times_e(i), side.e)
        raise DomainError(f"abscissa {i} lies outside the polygon")


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def principal_polygon(points: Iterable[Point], p: Optional[int] = None, phi: Optional[IntPoly] = None) -> NewtonPolygon:
    """Lower convex hull split into its negative-slope part and the rest."""
    lowest: Dict[int, int] = {}
    for i, u in points:
        if i not in lowest or u < lowest[i]:
            lowest[i] = u
    ordered = sorted(lowest.items())
    hull: List[Point] = []
    for pt in ordered:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    principal, rest = [], []
    for a, b in zip(hull, hull[1:]):
        (principal if b[1] < a[1] else rest).append(Side(a, b))
    return NewtonPolygon(tuple(principal), p, phi, tuple(ordered), tuple(rest))


def polygon_of_development(dev: PhiDevelopment) -> NewtonPolygon:
    return principal_polygon(dev.points(), dev.p, dev.phi)


def phi_newton_polygon(f: IntPoly, phi: IntPoly, p: int) -> NewtonPolygon:
    """Principal polygon of f with respect to phi; empty when phi mod p does not divide f mod p."""
    if not phi.reduce(p).is_irreducible():
        raise DomainError(f"{phi} is not irreducible modulo {p}")
    polygon = polygon_of_development(phi_expansion(f, phi, p))
    logger.debug(f"N_phi({f}; phi = {phi}, p = {p}) has vertices {polygon.vertices}")
    return polygon


def residue_field(phi: IntPoly, p: int) -> FiniteField:
    """F_phi = Z[x]/(p, phi)."""
    return FiniteField(p, phi.reduce(p).monic())


def residual_coefficient(dev: PhiDevelopment, i: int, u: int, fld: FiniteField) -> FqElement:
    """(a_i(x) / p^u) mod (p, phi), or zero when a_i vanishes or u_i differs from u."""
    if i >= len(dev.coeffs):
        return fld.zero
    ui = dev.valuations[i]
    if is_infinite(ui) or ui != u:
        return fld.zero
    return fld.element(dev.coeffs[i].exact_quotient(dev.p**u).reduce(dev.p))


@dataclass(frozen=True)
class ResidualPolynomial:
    side: Side
    coefficients: Tuple[FqElement, ...]
    field: FiniteField

    @property
    def poly(self) -> FqPoly:
        return FqPoly(self.field, self.coefficients)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __str__(self) -> str:
        return str(self.poly)


def residual_polynomial(dev: PhiDevelopment, side: Side, fld: Optional[FiniteField] = None) -> ResidualPolynomial:
    """R(y) = c_s + c_{s+e} y + ... + c_{s+de} y^d for the given side."""
    fld = fld or residue_field(dev.phi, dev.p)
    coefficients = []
    for k in range(side.degree + 1):
        i = side.start[0] + k * side.e
        u = side.ordinate_times_e(i) // side.e
        coefficients.append(residual_coefficient(dev, i, u, fld))
    return ResidualPolynomial(side, tuple(coefficients), fld)


def phi_index(polygon: NewtonPolygon, deg_phi: int) -> int:
    """deg(phi) times the lattice points with i >= 1, u >= 1 on or under the polygon."""
    count = 0
    for side in polygon.sides:
        lo = max(side.start[0], 1)
        for i in range(lo, side.end[0]):
            count += side.ordinate_times_e(i) // side.e
    return deg_phi * count


def is_admissible(dev: PhiDevelopment, p: Optional[int] = None) -> bool:
    """Every vertex coefficient of the development is nonzero modulo (p, phi).

    p defaults to the prime the development was built at and must agree with it.
    """
    if p is not None:
        require_prime(p)
        if p != dev.p:
            raise DomainError(f"development was built at {dev.p}, not at {p}")
    polygon = polygon_of_development(dev)
    phibar = dev.phi.reduce(dev.p)
    # a polygon without sides degenerates to its leftmost point
    for i, _ in polygon.vertices or polygon.points[:1]:
        u = dev.valuations[i]
        if is_infinite(u):
            return False
        residue = dev.coeffs[i].exact_quotient(dev.p**u).reduce(dev.p)
        if phibar.divides(residue):
            return False
    return True


@dataclass(frozen=True)
class FactorRegularity:
    phi: IntPoly
    multiplicity: int
    polygon: NewtonPolygon
    residuals: Tuple[ResidualPolynomial, ...]
    separable: Tuple[bool, ...] = ()

    @property
    def regular(self) -> bool:
        return all(self.separable)


@dataclass(frozen=True)
class RegularityReport:
    p: int
    factors: Tuple[FactorRegularity, ...]

    @property
    def regular(self) -> bool:
        return all(f.regular for f in self.factors)

    def witness(self) -> Optional[Tuple[IntPoly, ResidualPolynomial]]:
        """First (phi, residual polynomial) that is not separable."""
        for factor in self.factors:
            for residual, ok in zip(factor.residuals, factor.separable):
                if not ok:
                    return factor.phi, residual
        return None


def is_p_regular(f: IntPoly, p: int) -> RegularityReport:
    """Separability of every residual polynomial of every factor of f mod p."""
    factors = []
    for g, mult in factor_mod_p(f.reduce(p)):
        phi = default_lift(g)
        dev = phi_expansion(f, phi, p)
        polygon = polygon_of_development(dev)
        fld = residue_field(phi, p)
        residuals = tuple(residual_polynomial(dev, side, fld) for side in polygon.sides)
        factors.append(FactorRegularity(
            phi, mult, polygon, residuals, tuple(is_separable(r.poly) for r in residuals)
        ))
    return RegularityReport(p, tuple(factors))


def render(polygon: NewtonPolygon) -> str:
    """ASCII plot: '*' vertices, 'o' points on a side, 'x' points above the polygon."""
    if not polygon.points:
        return "(no points)"
    vertices = set(polygon.vertices)
    if polygon.sides:
        width = polygon.vertices[-1][0]
    else:
        width = max(i for i, _ in polygon.points)
    shown = [(i, u) for i, u in polygon.points if i <= width]
    top = max(u for _, u in shown)
    label = len(str(top))
    rows = []
    for u in range(top, -1, -1):
        cells = []
        for i in range(width + 1):
            mark = " "
            if (i, u) in vertices:
                mark = "*"
            elif (i, u) in shown:
                on_side = any(s.contains((i, u)) for s in polygon.sides)
                mark = "o" if on_side else "x"
            cells.append(mark)
        rows.append(f"{str(u).rjust(label)} |" + " ".join(cells))
    rows.append(" " * label + " +" + "-" * (2 * width + 1))
    rows.append(" " * label + "  " + " ".join(str(i % 10) for i in range(width + 1)))
    return "\n".join(rows)
