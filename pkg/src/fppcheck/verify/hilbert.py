from __future__ import annotations

from dataclasses import dataclass

from ..arith import ModularEmbedding
from ..corpus import EquationCorpus
from .resolution import Resolution, ambient_dim


def hilbert_expected(d: int) -> int:
    """(6d-1)(6d-2)/2 = 18d^2 - 9d + 1."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return (6 * d - 1) * (6 * d - 2) // 2


@dataclass(frozen=True)
class HilbertResult:
    degree: int
    ambient: int
    ideal_dim: int
    quotient: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.quotient == self.expected


def hilbert_function(
    c: EquationCorpus,
    d: int,
    e: ModularEmbedding,
    resolution: Resolution | None = None,
) -> HilbertResult:
    """h(d) = dim S_d - rank of the degree-d multiplication matrix.

    Below degree 3 the ideal is empty, so h(d) is the ambient dimension.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    amb = ambient_dim(d)
    if d < 3:
        ideal = 0
    else:
        res = resolution if resolution is not None else Resolution(c, e)
        ideal = res.ideal_dim(d)
    return HilbertResult(d, amb, ideal, amb - ideal, hilbert_expected(d))
