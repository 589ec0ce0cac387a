"""Exact linear algebra over F_p, plus a small characteristic-0 path.

Mod-p elimination keeps a reduced row echelon basis and feeds it batches of
dense rows.  A batch is first reduced against the basis with one matrix
product, then eliminated internally, and the new pivots are cleared from the
old basis.  Products run in float64: every entry is below p, so a chunk of
the inner dimension of length ``L`` with ``L * (p-1)**2 < 2**53`` sums exactly.

The characteristic-0 path works on sparse dict rows with any exact field
elements (``Fraction``, ``NumberFieldElement``) and is meant for matrices with
a few hundred columns.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

_EXACT = float(2**53)
BATCH = 128


class GradingError(ValueError):
    """An entry connects a row and a column of different grades."""


@dataclass
class SparseMatrixModP:
    nrows: int
    ncols: int
    p: int
    rows: list[dict[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.rows:
            self.rows = [{} for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise ValueError(f"{len(self.rows)} rows given, nrows={self.nrows}")
        for r in self.rows:
            for c, v in r.items():
                if not 0 <= c < self.ncols:
                    raise ValueError(f"column {c} out of range")
                if not 0 < v < self.p:
                    raise ValueError(f"entry {v} not a nonzero residue mod {self.p}")

    @classmethod
    def from_dense(cls, a, p: int) -> SparseMatrixModP:
        a = np.asarray(a, dtype=np.int64) % p
        rows = [{int(c): int(row[c]) for c in np.flatnonzero(row)} for row in a]
        return cls(a.shape[0], a.shape[1], p, rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, int]], ncols: int, p: int) -> SparseMatrixModP:
        clean = []
        for r in rows:
            clean.append({c: v % p for c, v in r.items() if v % p})
        return cls(len(clean), ncols, p, clean)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_dense(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        stop = self.nrows if stop is None else stop
        out = np.zeros((max(stop - start, 0), self.ncols), dtype=np.float64)
        for i, r in enumerate(self.rows[start:stop]):
            if r:
                cols = np.fromiter(r.keys(), dtype=np.int64, count=len(r))
                vals = np.fromiter(r.values(), dtype=np.float64, count=len(r))
                out[i, cols] = vals
        return out

    def transpose(self) -> SparseMatrixModP:
        rows: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for c, v in r.items():
                rows[c][i] = v
        return SparseMatrixModP(self.ncols, self.nrows, self.p, rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> SparseMatrixModP:
        colmap = {c: j for j, c in enumerate(col_idx)}
        rows = []
        for i in row_idx:
            rows.append({colmap[c]: v for c, v in self.rows[i].items() if c in colmap})
        return SparseMatrixModP(len(rows), len(col_idx), self.p, rows)

    def dump(self) -> str:
        """Debug format: header ``rows cols p`` then sorted ``r c v`` triples."""
        lines = [f"{self.nrows} {self.ncols} {self.p}"]
        for i, r in enumerate(self.rows):
            for c in sorted(r):
                lines.append(f"{i} {c} {r[c]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> SparseMatrixModP:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols, p = map(int, lines[0].split())
        rows: list[dict[int, int]] = [{} for _ in range(nrows)]
        for ln in lines[1:]:
            i, c, v = map(int, ln.split())
            rows[i][c] = v
        return cls(nrows, ncols, p, rows)


def _chunk_len(p: int) -> int:
    return max(1, int((_EXACT - 1) // ((p - 1) ** 2)))


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for float64 arrays of residues, exact."""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.float64)
    step = _chunk_len(p)
    if step >= inner:
        return np.fmod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.float64)
    for s in range(0, inner, step):
        out = np.fmod(out + np.fmod(a[:, s : s + step] @ b[s : s + step], p), p)
    return out


def _rref_batch(x: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduce a dense batch in place to reduced echelon rows; drop zero rows."""
    pivots: list[int] = []
    keep: list[int] = []
    for i in range(x.shape[0]):
        row = x[i]
        nz = np.flatnonzero(row)
        if nz.size == 0:
            continue
        c = int(nz[0])
        inv = pow(int(row[c]), -1, p)
        if inv != 1:
            row[c:] = np.fmod(row[c:] * inv, p)
        col = x[:, c].copy()
        col[i] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            upd = x[np.ix_(hit, np.arange(c, x.shape[1]))] - np.outer(col[hit], row[c:])
            x[np.ix_(hit, np.arange(c, x.shape[1]))] = np.mod(upd, p)
        pivots.append(c)
        keep.append(i)
    return x[keep], pivots


class EchelonForm:
    """Reduced row echelon basis of a growing row space over F_p."""

    def __init__(self, ncols: int, p: int) -> None:
        self.ncols = ncols
        self.p = p
        self.basis = np.zeros((0, ncols), dtype=np.float64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, x: np.ndarray) -> np.ndarray:
        """Remainders of the rows of ``x`` modulo the current row space."""
        x = np.mod(np.asarray(x, dtype=np.float64), self.p)
        if self.pivots and x.size:
            x = np.mod(x - matmul_mod(x[:, self.pivots], self.basis, self.p), self.p)
        return x

    def add_rows(self, x: np.ndarray) -> int:
        if x.shape[0] == 0:
            return 0
        if self.rank == self.ncols:
            return 0
        y, newpiv = _rref_batch(self.reduce(x), self.p)
        if not newpiv:
            return 0
        if self.pivots:
            self.basis = np.mod(self.basis - matmul_mod(self.basis[:, newpiv], y, self.p), self.p)
        self.basis = np.vstack([self.basis, y])
        self.pivots.extend(newpiv)
        return len(newpiv)

    def add_matrix(self, m: SparseMatrixModP, batch: int = BATCH) -> None:
        for s in range(0, m.nrows, batch):
            if self.rank == self.ncols:
                break
            self.add_rows(m.to_dense(s, min(s + batch, m.nrows)))

    def sorted(self) -> tuple[np.ndarray, list[int]]:
        order = np.argsort(self.pivots, kind="stable")
        return self.basis[order], [self.pivots[i] for i in order]


def echelon(m: SparseMatrixModP) -> EchelonForm:
    e = EchelonForm(m.ncols, m.p)
    e.add_matrix(m)
    return e


def rank(m: SparseMatrixModP) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.ncols > m.nrows:
        m = m.transpose()
    return echelon(m).rank


def kernel_basis(m: SparseMatrixModP) -> np.ndarray:
    """Basis of {v : m v = 0}, one vector per free column in increasing order.

    Returned as an int64 array of shape (ncols - rank, ncols).
    """
    basis, pivots = echelon(m).sorted()
    n = m.ncols
    free = sorted(set(range(n)) - set(pivots))
    out = np.zeros((len(free), n), dtype=np.int64)
    if not free:
        return out
    free_arr = np.array(free, dtype=np.int64)
    out[np.arange(len(free)), free_arr] = 1
    if pivots:
        # v[pivot_i] = -basis[i, f]
        out[:, pivots] = np.mod(-basis[:, free_arr].T, m.p).astype(np.int64)
    return out


def left_kernel_basis(m: SparseMatrixModP) -> np.ndarray:
    """Basis of {v : v m = 0}."""
    return kernel_basis(m.transpose())


def in_row_span(m, v) -> bool:
    """Whether ``v`` is a combination of the rows of ``m``.

    ``m`` is either a :class:`SparseMatrixModP` or a sequence of exact-field
    rows (dicts or lists), in which case the test is exact in characteristic 0.
    """
    if isinstance(m, SparseMatrixModP):
        vec = np.asarray(v, dtype=np.float64).reshape(1, -1)
        if vec.shape[1] != m.ncols:
            raise ValueError(f"vector length {vec.shape[1]} != {m.ncols} columns")
        rem = echelon(m).reduce(vec)
        return not rem.any()
    rows = [_as_sparse(r) for r in m]
    vec = _as_sparse(v)
    width = len(v) if not isinstance(v, Mapping) else None
    if width is not None:
        for r, orig in zip(rows, m):
            if not isinstance(orig, Mapping) and len(orig) != width:
                raise ValueError("dimension mismatch")
    e = ExactEchelon()
    for r in rows:
        e.add(r)
    return not e.reduce(vec)


# --------------------------------------------------------------------------
# graded (block diagonal) splitting


@dataclass
class Block:
    rows: list[int]
    cols: list[int]
    matrix: SparseMatrixModP


def graded_blocks(
    m: SparseMatrixModP, row_grade: Sequence[int], col_grade: Sequence[int]
) -> list[Block]:
    """Split ``m`` into diagonal blocks, one per grade.

    Raises :class:`GradingError` if some entry joins different grades.
    """
    for i, r in enumerate(m.rows):
        g = row_grade[i]
        for c in r:
            if col_grade[c] != g:
                raise GradingError(f"entry ({i}, {c}) joins grades {g} and {col_grade[c]}")
    grades = sorted(set(row_grade) | set(col_grade))
    blocks = []
    for g in grades:
        ri = [i for i in range(m.nrows) if row_grade[i] == g]
        ci = [j for j in range(m.ncols) if col_grade[j] == g]
        blocks.append(Block(ri, ci, m.submatrix(ri, ci)))
    return blocks


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def graded_rank(
    m: SparseMatrixModP,
    row_grade: Sequence[int] | None = None,
    col_grade: Sequence[int] | None = None,
    workers: int = 1,
) -> int:
    """Rank of ``m``, block by block when a grading is supplied and respected."""
    if row_grade is None or col_grade is None:
        return rank(m)
    try:
        blocks = graded_blocks(m, row_grade, col_grade)
    except GradingError:
        return rank(m)
    return sum(_map(lambda b: rank(b.matrix), blocks, workers))


def graded_left_kernel(
    m: SparseMatrixModP,
    row_grade: Sequence[int] | None = None,
    col_grade: Sequence[int] | None = None,
    workers: int = 1,
) -> tuple[list[dict[int, int]], list[int]]:
    """Left kernel vectors (as sparse dicts over row indices) and their grades.

    With a valid grading every returned vector is homogeneous.
    """
    try:
        if row_grade is None or col_grade is None:
            raise GradingError("no grading")
        blocks = graded_blocks(m, row_grade, col_grade)
    except GradingError:
        blocks = [Block(list(range(m.nrows)), list(range(m.ncols)), m)]
        row_grade = [0] * m.nrows

    def solve(b: Block):
        if not b.rows:
            return []
        if b.cols:
            kb = left_kernel_basis(b.matrix)
        else:
            kb = np.eye(len(b.rows), dtype=np.int64)
        out = []
        for v in kb:
            nz = np.flatnonzero(v)
            out.append({b.rows[int(k)]: int(v[k]) for k in nz})
        return out

    vecs: list[dict[int, int]] = []
    grades: list[int] = []
    for b, kv in zip(blocks, _map(solve, blocks, workers)):
        for v in kv:
            vecs.append(v)
            grades.append(row_grade[b.rows[0]])
    return vecs, grades


# --------------------------------------------------------------------------
# characteristic 0


def _as_sparse(v) -> dict:
    if isinstance(v, Mapping):
        return {k: c for k, c in v.items() if c}
    return {i: c for i, c in enumerate(v) if c}


class ExactEchelon:
    """Row echelon form over an exact field, rows as sparse dicts.

    Each stored row has leading entry 1 at its pivot column.
    """

    def __init__(self) -> None:
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        v = {k: c for k, c in v.items() if c}
        for piv in sorted(self.rows):
            c = v.get(piv)
            if not c:
                continue
            for k, x in self.rows[piv].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; return True if it was independent of the rows so far."""
        rem = self.reduce(v)
        if not rem:
            return False
        piv = min(rem)
        lead = rem[piv]
        self.rows[piv] = {k: c / lead for k, c in rem.items()}
        return True


def exact_rank(rows: Iterable) -> int:
    e = ExactEchelon()
    for r in rows:
        e.add(_as_sparse(r))
    return e.rank


def first_independent_rows(rows: Sequence) -> list[int]:
    """Indices of the lexicographically first maximal independent subset."""
    e = ExactEchelon()
    return [i for i, r in enumerate(rows) if e.add(_as_sparse(r))]
