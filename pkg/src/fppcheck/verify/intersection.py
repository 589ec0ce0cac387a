"""Intersection numbers from the Hilbert polynomial, then Noether arithmetic.

Riemann-Roch on the surface gives h(d) = (D^2/2) d^2 - (D.K/2) d + chi for
the hyperplane class D.  Everything past the fit relies on two inputs that
this package does not verify: D = 2K and b1 = 0.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .hilbert import HilbertResult


class FitError(ValueError):
    pass


class InconsistentError(ValueError):
    pass


ASSUMPTIONS = (
    "D = 2K (bicanonical embedding): assumed per paper, not verified",
    "b1 = 0 (h^1(O_Z) = 0): assumed per paper, not verified",
)


@dataclass(frozen=True)
class IntersectionNumbers:
    D2: Fraction
    DK: Fraction
    chi: Fraction
    K2: Fraction
    euler: Fraction
    b2: Fraction
    degrees: tuple[int, ...]

    @property
    def noether_holds(self) -> bool:
        return 12 * self.chi == self.K2 + self.euler

    @property
    def fake_projective_plane(self) -> bool:
        # same Betti numbers as P^2 with chi = 1 and K^2 = 9
        return self.b2 == 1 and self.chi == 1 and self.K2 == 9 and self.noether_holds


def _fit(points: list[tuple[int, int]]) -> tuple[Fraction, Fraction, Fraction]:
    (x0, y0), (x1, y1), (x2, y2) = points[:3]
    # Newton divided differences
    f01 = Fraction(y1 - y0, x1 - x0)
    f12 = Fraction(y2 - y1, x2 - x1)
    a2 = (f12 - f01) / (x2 - x0)
    a1 = f01 - a2 * (x0 + x1)
    a0 = y0 - a1 * x0 - a2 * x0 * x0
    return a2, a1, a0


def intersection_numbers(hs: Iterable[HilbertResult | tuple[int, int]]) -> IntersectionNumbers:
    points = {}
    for h in hs:
        if isinstance(h, HilbertResult):
            if not h.passed:
                raise FitError(f"h({h.degree}) = {h.quotient} does not pass")
            d, v = h.degree, h.quotient
        else:
            d, v = h
        points[d] = v
    pts = sorted(points.items())
    if len(pts) < 3:
        raise FitError("need Hilbert values in at least three degrees")
    a2, a1, a0 = _fit(pts)
    for d, v in pts:
        if a2 * d * d + a1 * d + a0 != v:
            raise FitError(f"h({d}) = {v} is off the quadratic through the first three points")
    D2, DK, chi = 2 * a2, -2 * a1, a0
    K2 = D2 / 4
    if DK != 2 * K2:
        raise InconsistentError(f"D.K = {DK} but 2K^2 = {2 * K2} under D = 2K")
    euler = 12 * chi - K2
    return IntersectionNumbers(D2, DK, chi, K2, euler, euler - 2, tuple(d for d, _ in pts))
