"""Graded pieces of the ideal and of its linear syzygy modules over F_p.

Level 0 is the polynomial ring itself (one generator in degree 0).  Level 1
holds the 84 cubics.  A level-k generator is a vector in the level-(k-1) free
module, stored as ``{(g, exps): residue}`` where ``g`` indexes a level-(k-1)
generator and ``exps`` is a monomial.  The map ``phi_k`` in degree ``j`` sends
``(s, u)`` (a level-k generator times a monomial ``u``) to ``u * s``.

Every generator carries a g7-weight.  When the corpus is weight-homogeneous
all these maps are block diagonal by weight, which cuts each elimination
into seven much smaller ones.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import comb

from ..arith import ModularEmbedding
from ..corpus import EquationCorpus
from ..linalg import SparseMatrixModP, graded_left_kernel, graded_rank
from ..poly import (
    W7,
    Monomial,
    monomials_of_degree,
    poly_weight_homogeneous,
    reduce_to_ints,
)

log = logging.getLogger(__name__)

Exps = tuple[int, ...]


def _weight(e: Exps) -> int:
    return sum(a * w for a, w in zip(e, W7)) % 7


def _add(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class Generator:
    vector: dict[tuple[int, Exps], int]
    degree: int
    weight: int


@dataclass
class GradedMap:
    """Matrix of phi_k in one degree, rows = (generator, monomial) pairs."""

    level: int
    degree: int
    matrix: SparseMatrixModP
    row_labels: list[tuple[int, Exps]]
    row_grade: list[int] | None
    col_grade: list[int] | None


class PrerequisiteError(RuntimeError):
    pass


class Resolution:
    """Lazily computed linear strand of the minimal resolution mod p."""

    def __init__(self, corpus: EquationCorpus, embedding: ModularEmbedding, workers: int = 1) -> None:
        self.corpus = corpus
        self.embedding = embedding
        self.workers = workers
        self.p = embedding.p
        reduced = [reduce_to_ints(f, embedding) for f in corpus.polys]
        weights = []
        for f in corpus.polys:
            weights.append(poly_weight_homogeneous(f) if f else 0)
        self.graded = all(w is not None for w in weights)
        one = (0,) * 10
        self.levels: dict[int, list[Generator]] = {
            0: [Generator({(0, one): 1}, 0, 0)],
            1: [
                Generator({(0, m.exps): c for m, c in red.items()}, f.degree() if f else 3, w or 0)
                for red, f, w in zip(reduced, corpus.polys, weights)
            ],
        }
        self._maps: dict[tuple[int, int], GradedMap] = {}
        self._ranks: dict[tuple[int, int], int] = {}

    # -- matrices ---------------------------------------------------------

    def _columns(self, level: int, degree: int) -> tuple[dict[tuple[int, Exps], int], list[int]]:
        cols: dict[tuple[int, Exps], int] = {}
        grades: list[int] = []
        for g, gen in enumerate(self.levels[level]):
            if degree < gen.degree:
                continue
            for m in monomials_of_degree(degree - gen.degree):
                cols[(g, m.exps)] = len(grades)
                grades.append((gen.weight + _weight(m.exps)) % 7)
        return cols, grades

    def graded_map(self, level: int, degree: int) -> GradedMap:
        """Matrix of phi_level in ``degree`` (rows: level generators times monomials)."""
        key = (level, degree)
        if key in self._maps:
            return self._maps[key]
        if level not in self.levels:
            raise PrerequisiteError(f"level {level} generators not computed yet")
        cols, col_grade = self._columns(level - 1, degree)
        rows: list[dict[int, int]] = []
        labels: list[tuple[int, Exps]] = []
        row_grade: list[int] = []
        for s, gen in enumerate(self.levels[level]):
            if degree < gen.degree:
                continue
            for u in monomials_of_degree(degree - gen.degree):
                ue = u.exps
                rows.append({cols[(g, _add(v, ue))]: c for (g, v), c in gen.vector.items()})
                labels.append((s, ue))
                row_grade.append((gen.weight + _weight(ue)) % 7)
        matrix = SparseMatrixModP(len(rows), len(col_grade), self.p, rows)
        gm = GradedMap(
            level,
            degree,
            matrix,
            labels,
            row_grade if self.graded else None,
            col_grade if self.graded else None,
        )
        self._maps[key] = gm
        return gm

    def rank(self, level: int, degree: int) -> int:
        key = (level, degree)
        if key not in self._ranks:
            gm = self.graded_map(level, degree)
            log.debug("rank of phi_%d in degree %d: %dx%d", level, degree, *gm.matrix.shape)
            self._ranks[key] = graded_rank(gm.matrix, gm.row_grade, gm.col_grade, self.workers)
        return self._ranks[key]

    def kernel_dim(self, level: int, degree: int) -> int:
        """dim of the kernel of phi_level in ``degree`` (level >= 1)."""
        return self.graded_map(level, degree).matrix.nrows - self.rank(level, degree)

    def syzygies(self, level: int, degree: int) -> list[Generator]:
        """Basis of the kernel of phi_level in ``degree`` as new generators."""
        gm = self.graded_map(level, degree)
        vecs, grades = graded_left_kernel(gm.matrix, gm.row_grade, gm.col_grade, self.workers)
        gens = []
        for v, w in zip(vecs, grades):
            gens.append(Generator({gm.row_labels[i]: c for i, c in v.items()}, degree, w))
        self._ranks.setdefault((level, degree), gm.matrix.nrows - len(gens))
        return gens

    def multiplication_matrix(self, degree: int) -> SparseMatrixModP:
        return self.graded_map(1, degree).matrix

    def ideal_dim(self, degree: int) -> int:
        if degree < 3:
            return 0
        return self.rank(1, degree)


def multiplication_matrix(c: EquationCorpus, d: int, e: ModularEmbedding) -> SparseMatrixModP:
    """Rows (eq_i, monomial m of degree d-3) -> coefficients of m*eq_i mod p.

    Columns are the degree-d monomials in descending grevlex order.
    """
    if d < 3:
        raise ValueError("the ideal has no generators below degree 3")
    return Resolution(c, e).multiplication_matrix(d)


def ambient_dim(d: int) -> int:
    return comb(d + 9, 9) if d >= 0 else 0


def column_monomials(d: int) -> Sequence[Monomial]:
    return monomials_of_degree(d)
