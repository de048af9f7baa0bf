"""
Newton Polygons with Precision Certification.

A coefficient known only mod p^M has valuation Exact(v) or AtLeast(M). Two
lower hulls bracket every possible completion:

    hull_low   unknown valuations set to M (the lowest they can be)
    hull_high  unknown points left out (valuation +infinity)

Slopes are compared unit by unit (each slope repeated by its horizontal
length). The longest common prefix is certified; certified_bound is the next
slope of hull_low, so every slope strictly below it has its full multiplicity.

A truncation of an entire series has an open tail: coefficients past T^N are
never seen, and they can extend or undercut the segment that ends at N. With
open_tail the bound is capped at the final slope of hull_low, so that segment
is listed but never counted. unit_span is the highest index a unit coefficient
can sit at; a window shorter than that certifies nothing. Tail points are taken
to lie on or above the line through the final window segment.

All arithmetic is in exact rationals.
"""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from unitroot.errors import NonUnitConstantTerm
from unitroot.logger import get_logger
from unitroot.padic import Exact, SlopeRational, ValInfo, val
from unitroot.series import TruncSeries

logger = get_logger("newton")

Point = Tuple[int, Fraction]


# ============================================================================
# Hull helpers
# ============================================================================

def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[Point]) -> List[Point]:
    """Lower convex hull (Andrew's monotone chain), collinear points dropped."""
    hull: List[Point] = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def unit_slopes(hull: Sequence[Point]) -> List[Fraction]:
    """Each segment slope repeated by its horizontal length."""
    units = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        units += [Fraction(y1 - y0, x1 - x0)] * (x1 - x0)
    return units


def _compress(units: Sequence[Fraction]) -> List[Tuple[Fraction, int]]:
    slopes: List[Tuple[Fraction, int]] = []
    for s in units:
        if slopes and slopes[-1][0] == s:
            slopes[-1] = (s, slopes[-1][1] + 1)
        else:
            slopes.append((s, 1))
    return slopes


# ============================================================================
# Data Model
# ============================================================================

@dataclass
class NewtonPolygon:
    """Certified part of the Newton polygon of a truncated series."""
    points: List[Tuple[int, ValInfo]]
    vertices: List[Point]
    slopes: List[Tuple[SlopeRational, int]]
    certified_bound: SlopeRational
    hull_low: List[Point] = field(default_factory=list, repr=False)

    @property
    def certified_length(self) -> int:
        return sum(mult for _, mult in self.slopes)

    def degrees(self) -> Dict[SlopeRational, int]:
        """slope -> multiplicity, for the slopes strictly below certified_bound."""
        return {s: mult for s, mult in self.slopes if s < self.certified_bound}

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "valuation"])
        for n, v in self.vertices:
            writer.writerow([n, str(v)])
        writer.writerow(["slope", "multiplicity"])
        for s, mult in self.slopes:
            writer.writerow([str(s), mult])
        return buffer.getvalue()

    def to_dict(self) -> Dict:
        return {
            "vertices": [[n, str(v)] for n, v in self.vertices],
            "slopes": [[str(s), mult] for s, mult in self.slopes],
            "certified_bound": str(self.certified_bound),
        }


# ============================================================================
# Operations
# ============================================================================

def _as_valinfo(v: Union[int, ValInfo]) -> ValInfo:
    return Exact(v) if isinstance(v, int) else v


def newton_polygon_from_valuations(valuations: Sequence[Union[int, ValInfo]], open_tail: bool = False,
                                   unit_span: Optional[int] = None) -> NewtonPolygon:
    """
    Certified Newton polygon of a coefficient vector given by valuations.

    Args:
        valuations: ValInfo (or plain int for Exact) of coefficients 0..N
        open_tail: the vector is a truncation of a longer series
        unit_span: no unit coefficient sits past this index

    Returns:
        NewtonPolygon whose degrees() holds only the slopes below certified_bound
    """
    infos = [_as_valinfo(v) for v in valuations]
    if not infos or infos[0] != Exact(0):
        raise NonUnitConstantTerm("constant term must be a unit (valuation exactly 0)")

    low_points = [
        (n, Fraction(info.v if isinstance(info, Exact) else info.modexp))
        for n, info in enumerate(infos)
    ]
    high_points = [(n, Fraction(info.v)) for n, info in enumerate(infos) if isinstance(info, Exact)]

    hull_low = lower_hull(low_points)
    units_low = unit_slopes(hull_low)
    units_high = unit_slopes(lower_hull(high_points))

    common = 0
    while (common < len(units_low) and common < len(units_high)
           and units_low[common] == units_high[common]):
        common += 1

    if common < len(units_low):
        bound = units_low[common]
    else:
        bound = units_low[-1] + 1 if units_low else Fraction(0)

    if open_tail:
        window = len(infos) - 1
        if not units_low or (unit_span is not None and window < unit_span):
            bound = Fraction(0)
        else:
            bound = min(bound, units_low[-1])

    certified = units_low[:common]
    vertices: List[Point] = [hull_low[0]]
    x, y = hull_low[0]
    for i, s in enumerate(certified):
        x, y = x + 1, y + s
        if i + 1 == len(certified) or certified[i + 1] != s:
            vertices.append((x, y))

    polygon = NewtonPolygon(
        points=list(enumerate(infos)),
        vertices=vertices,
        slopes=_compress(certified),
        certified_bound=bound,
        hull_low=hull_low,
    )
    logger.debug(f"newton polygon: {len(polygon.slopes)} certified slopes, bound {bound}")
    return polygon


def newton_polygon(f: TruncSeries, open_tail: bool = False, unit_span: Optional[int] = None) -> NewtonPolygon:
    """Certified polygon of a series with constant term 1; see newton_polygon_from_valuations."""
    if f.coeffs[0] != 1:
        raise NonUnitConstantTerm(f"constant term is {f.coeffs[0]}, expected 1")
    return newton_polygon_from_valuations([val(r) for r in f.residues], open_tail, unit_span)
