"""Graded Betti numbers along the linear strand, one step at a time.

Step ``i`` produces beta_{i,i+2}.  Step 1 is the rank of the cubics.  For
``i >= 2`` the new generators are the kernel of phi_{i-1} in degree i+2, and
the step also checks exactness: the image of phi_{i-1} in that degree must
fill the kernel one level down, so no generators of another degree sneak in.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..arith import ModularEmbedding
from ..corpus import EquationCorpus
from .hilbert import hilbert_expected
from .resolution import PrerequisiteError, Resolution, ambient_dim

# Ranks of the free modules in the resolution of O_Z
EXPECTED_BETTI = {1: 84, 2: 378, 3: 756, 4: 840, 5: 540, 6: 189, 7: 28}


@dataclass(frozen=True)
class BettiResult:
    step: int
    degree: int
    value: int
    expected: int
    image_rank: int
    previous_kernel_dim: int

    @property
    def exact(self) -> bool:
        return self.image_rank == self.previous_kernel_dim

    @property
    def passed(self) -> bool:
        return self.value == self.expected and self.exact and self.value >= 0


def betti_step(c: EquationCorpus, i: int, e: ModularEmbedding, resolution: Resolution) -> BettiResult:
    """Compute beta_{i,i+2}; steps must be run in order on one ``resolution``."""
    if i < 1:
        raise ValueError("steps start at 1")
    if resolution.corpus is not c and resolution.corpus != c:
        raise ValueError("resolution was built for another corpus")
    if resolution.embedding != e:
        raise ValueError("resolution was built for another embedding")
    j = i + 2
    if i == 1:
        r = resolution.rank(1, 3)
        return BettiResult(1, 3, r, EXPECTED_BETTI[1], r, len(c))
    if i - 1 not in resolution.levels:
        raise PrerequisiteError(f"step {i} needs step {i - 1} first")
    gens = resolution.syzygies(i - 1, j)
    resolution.levels[i] = gens
    image = resolution.rank(i - 1, j)
    if i == 2:
        previous = ambient_dim(j) - hilbert_expected(j)
    else:
        previous = resolution.kernel_dim(i - 2, j)
    return BettiResult(i, j, len(gens), EXPECTED_BETTI.get(i, -1), image, previous)


def betti_numbers(
    c: EquationCorpus, e: ModularEmbedding, max_step: int, resolution: Resolution | None = None
) -> list[BettiResult]:
    res = resolution if resolution is not None else Resolution(c, e)
    return [betti_step(c, i, e, res) for i in range(1, max_step + 1)]
