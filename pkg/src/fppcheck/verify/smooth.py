"""Smoothness of Z at the three g7-fixed coordinate points.

At a point P on Z the Jacobian of the 84 cubics has rank at most 7 = 9 - dim Z.
Rank exactly 7 means the tangent space is 2-dimensional, so Z is smooth at P.
Everything here is exact over Q(t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..arith import QQ_T
from ..corpus import EquationCorpus
from ..linalg import first_independent_rows
from ..poly import NVARS, poly_evaluate, poly_partial

SURFACE_CODIM = 7


def coordinate_point(i: int) -> tuple:
    return tuple(QQ_T.one if k == i else QQ_T.zero for k in range(NVARS))


# (0,...,0,1), (0,...,1,0), (0,...,1,0,0)
FIXED_POINTS = (coordinate_point(9), coordinate_point(8), coordinate_point(7))
NEGATIVE_CONTROL = coordinate_point(0)


@dataclass(frozen=True)
class SmoothnessOutcome:
    point: tuple[int, ...]
    nonvanishing: tuple[int, ...]
    jacobian_rank: int
    witnesses: tuple[int, ...] = field(default=())

    @property
    def on_variety(self) -> bool:
        return not self.nonvanishing

    @property
    def tangent_dim(self) -> int:
        return NVARS - 1 - self.jacobian_rank

    @property
    def status(self) -> str:
        if not self.on_variety:
            return "point not on variety"
        if self.jacobian_rank != SURFACE_CODIM:
            return "rank deficient" if self.jacobian_rank < SURFACE_CODIM else "rank excessive"
        return "smooth"

    @property
    def passed(self) -> bool:
        return self.status == "smooth"


def check_point(c: EquationCorpus, point) -> SmoothnessOutcome:
    """Evaluate every equation and its gradient at ``point``.

    Witnesses are the lexicographically first equations whose gradients are
    independent at the point (reported by equation index).
    """
    nonvanishing = tuple(e.index for e in c.entries if poly_evaluate(e.poly, point))
    jac = [[poly_evaluate(poly_partial(e.poly, i), point) for i in range(NVARS)] for e in c.entries]
    picked = first_independent_rows(jac)
    label = tuple(int(x.a) if x.is_rational() and x.a.denominator == 1 else str(x) for x in point)
    return SmoothnessOutcome(
        point=label,
        nonvanishing=nonvanishing,
        jacobian_rank=len(picked),
        witnesses=tuple(c.entries[k].index for k in picked),
    )


def fixed_point_check(c: EquationCorpus, points=FIXED_POINTS) -> list[SmoothnessOutcome]:
    return [check_point(c, p) for p in points]
