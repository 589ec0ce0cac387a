"""Resolve uncertain coefficients by the Hilbert function test.

Each candidate value is substituted into the seed equation (orbit images are
re-derived), and the candidate passes if h(d) matches the expected formula for
every d in 3..max_degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import ModularEmbedding, NumberFieldElement
from ..corpus import EquationCorpus
from ..poly import Monomial
from .hilbert import HilbertResult, hilbert_function
from .resolution import Resolution

_T = NumberFieldElement(0, 1)


def _m(*pairs: tuple[int, int]) -> Monomial:
    e = [0] * 10
    for i, k in pairs:
        e[i] = k
    return Monomial(e)


# (seed index, monomial) -> candidates, the printed reading first
KNOWN_CANDIDATES: dict[tuple[int, Monomial], tuple[NumberFieldElement, ...]] = {
    (19, _m((1, 1), (7, 2))): tuple((-1 - _T) / n for n in (1, 2, 4, 8)),
    (1, _m((4, 1), (5, 1), (6, 1))): tuple((3 + _T) * n for n in (1, 2, 4, 8)),
    (10, _m((5, 1), (7, 1), (9, 1))): tuple((1 - _T) * Fraction(1, n) for n in (1, 2, 4, 8)),
}


def default_candidates(c: EquationCorpus, index: int, term: Monomial) -> tuple[NumberFieldElement, ...]:
    known = KNOWN_CANDIDATES.get((index, term))
    if known is not None:
        return known
    current = c[index].poly.terms[term]
    scales = (1, 2, Fraction(1, 2), 4, Fraction(1, 4), 8, Fraction(1, 8))
    return tuple(current * s for s in scales)


@dataclass(frozen=True)
class CalibrationResult:
    entry: int
    term: Monomial
    candidates: tuple[NumberFieldElement, ...]
    hilbert: dict[NumberFieldElement, tuple[HilbertResult, ...]]
    passing: tuple[NumberFieldElement, ...]
    current: NumberFieldElement

    @property
    def status(self) -> str:
        return "resolved" if len(self.passing) == 1 else "inconclusive"

    @property
    def resolved(self) -> bool:
        return self.status == "resolved"

    @property
    def current_passes(self) -> bool:
        return self.current in self.passing


def calibrate_ambiguous(
    c: EquationCorpus,
    entry: int,
    term: Monomial,
    candidates,
    e: ModularEmbedding,
    max_degree: int = 4,
) -> CalibrationResult:
    candidates = tuple(dict.fromkeys(candidates))
    if not candidates:
        raise ValueError("no candidate coefficients given")
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    hs: dict[NumberFieldElement, tuple[HilbertResult, ...]] = {}
    passing = []
    for value in candidates:
        trial = c.with_coefficient(entry, term, value)
        res = Resolution(trial, e)
        results = []
        for d in range(3, max_degree + 1):
            h = hilbert_function(trial, d, e, res)
            results.append(h)
            if not h.passed:
                break
        hs[value] = tuple(results)
        if all(h.passed for h in results) and len(results) == max_degree - 2:
            passing.append(value)
    return CalibrationResult(entry, term, candidates, hs, tuple(passing), c[entry].poly.terms[term])


def calibrate_entry(
    c: EquationCorpus, index: int, e: ModularEmbedding, max_degree: int = 4, candidates=None
) -> list[CalibrationResult]:
    """Calibrate every flagged term of an explicit entry."""
    entry = c[index]
    if not entry.flags:
        raise ValueError(f"eq {index} has no flagged coefficients")
    if not entry.provenance.explicit:
        raise ValueError(f"eq {index} is {entry.provenance}; calibrate eq {entry.provenance.source}")
    out = []
    for term in sorted(entry.flags, reverse=True):
        cands = candidates if candidates is not None else default_candidates(c, index, term)
        out.append(calibrate_ambiguous(c, index, term, cands, e, max_degree))
    return out
