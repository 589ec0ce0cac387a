import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fppcheck.arith import NumberFieldElement
from fppcheck.linalg import (
    ExactEchelon,
    SparseMatrixModP,
    exact_rank,
    first_independent_rows,
    graded_left_kernel,
    graded_rank,
    in_row_span,
    kernel_basis,
    left_kernel_basis,
    matmul_mod,
    rank,
)
from fppcheck.poly import mono_g7_weight, monomials_of_degree
from fppcheck.verify import multiplication_matrix

N = NumberFieldElement


def oracle_rank(rows, p):
    """Plain Gaussian elimination on dict rows, no numpy."""
    pivots = {}
    r = 0
    for row in rows:
        v = {k: x % p for k, x in row.items() if x % p}
        while v:
            c = min(v)
            if c not in pivots:
                inv = pow(v[c], -1, p)
                pivots[c] = {k: x * inv % p for k, x in v.items()}
                r += 1
                break
            f = v[c]
            for k, x in pivots[c].items():
                nv = (v.get(k, 0) - f * x) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return r


primes = st.sampled_from([2, 3, 23, 263, 65521, 16777213])


@st.composite
def matrices(draw, max_dim=12):
    p = draw(primes)
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    a = rng.integers(0, p, size=(r, c)).astype(object)
    a[rng.random((r, c)) < draw(st.sampled_from([0.0, 0.5, 0.9]))] = 0
    k = draw(st.integers(0, max_dim))
    if r and c and k < min(r, c):
        # a product through a k-dimensional space forces rank <= k
        left = rng.integers(0, p, size=(r, k)).astype(object)
        right = rng.integers(0, p, size=(k, c)).astype(object)
        a = (left @ right) % p if k else np.zeros((r, c), dtype=object)
    a = [[int(x) for x in row] for row in a]
    return SparseMatrixModP.from_dense(np.array(a, dtype=np.int64).reshape(r, c), p), a, p


def test_rank_examples():
    assert rank(SparseMatrixModP.from_dense([[1, 2], [2, 4]], 263)) == 1
    assert rank(SparseMatrixModP.from_dense(np.zeros((3, 4), dtype=int), 263)) == 0
    assert rank(SparseMatrixModP(0, 5, 263, [])) == 0


def test_kernel_examples():
    assert kernel_basis(SparseMatrixModP.from_dense(np.eye(3, dtype=int), 263)).shape == (0, 3)
    k = kernel_basis(SparseMatrixModP.from_dense([[1, 1]], 263))
    assert k.tolist() == [[262, 1]]


def test_in_row_span_examples():
    m = SparseMatrixModP.from_dense([[1, 2, 3], [0, 1, 1]], 263)
    assert in_row_span(m, [1, 2, 3])
    assert in_row_span(m, [2, 5, 7])
    assert not in_row_span(m, [0, 0, 1])
    assert not in_row_span(SparseMatrixModP(2, 3, 263, [{}, {}]), [1, 1, 1])
    with pytest.raises(ValueError):
        in_row_span(m, [1, 2])


def test_exact_in_row_span():
    t = N(0, 1)
    rows = [[N(1), t, N(0)], [N(0), N(1), t]]
    assert in_row_span(rows, [N(1), t + 1, t])
    assert not in_row_span(rows, [N(0), N(0), N(1)])
    with pytest.raises(ValueError):
        in_row_span(rows, [N(1), N(0)])


def test_validation():
    with pytest.raises(ValueError):
        SparseMatrixModP(1, 2, 263, [{0: 0}])
    with pytest.raises(ValueError):
        SparseMatrixModP(1, 2, 263, [{5: 1}])
    with pytest.raises(ValueError):
        SparseMatrixModP(1, 2, 263, [{0: 263}])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_against_oracle(mp):
    m, a, p = mp
    expected = oracle_rank([{j: x for j, x in enumerate(row) if x} for row in a], p)
    assert rank(m) == expected
    assert rank(m.transpose()) == expected


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_properties(mp):
    m, a, p = mp
    k = kernel_basis(m)
    assert k.shape[0] + rank(m) == m.ncols
    if k.size and m.nrows:
        prod = (np.array(a, dtype=object) @ k.T.astype(object)) % p
        assert not prod.any()
    # kernel vectors are independent: one free coordinate each
    if k.size:
        assert rank(SparseMatrixModP.from_dense(k, p)) == k.shape[0]
    lk = left_kernel_basis(m)
    assert lk.shape[0] + rank(m) == m.nrows


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 50))
def test_span_membership_of_combinations(mp, seed):
    m, a, p = mp
    if not m.nrows or not m.ncols:
        return
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=m.nrows).astype(object)
    v = (coeffs @ np.array(a, dtype=object)) % p
    assert in_row_span(m, [int(x) for x in v])


def test_matmul_mod_exact_for_large_modulus():
    p = 16777213
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, size=(7, 400))
    b = rng.integers(0, p, size=(400, 5))
    expected = (a.astype(object) @ b.astype(object)) % p
    assert (matmul_mod(a.astype(np.float64), b.astype(np.float64), p).astype(np.int64) == expected.astype(np.int64)).all()


def test_dump_load_round_trip():
    m = SparseMatrixModP.from_dense([[0, 5, 0], [1, 0, 262]], 263)
    text = m.dump()
    assert text.splitlines()[0] == "2 3 263"
    assert text.splitlines()[1:] == ["0 1 5", "1 0 1", "1 2 262"]
    assert SparseMatrixModP.load(text) == m


def test_exact_echelon():
    e = ExactEchelon()
    assert e.add({0: N(1), 1: N(0, 1)})
    assert not e.add({0: N(2), 1: N(0, 2)})
    assert e.add({1: N(1)})
    assert e.rank == 2
    assert exact_rank([[N(1), N(2)], [N(2), N(4)]]) == 1
    assert first_independent_rows([[N(0)], [N(1)], [N(2)]]) == [1]


@pytest.mark.parametrize("d", [3, 4, 5])
def test_corpus_ranks_against_oracle(corpus, emb263, d):
    m = multiplication_matrix(corpus, d, emb263)
    assert m.shape == ({3: 84, 4: 840, 5: 4620}[d], {3: 220, 4: 715, 5: 2002}[d])
    expected = oracle_rank(m.rows, 263)
    assert expected == {3: 84, 4: 462, 5: 1596}[d]
    assert rank(m) == expected


def test_graded_paths_match_plain_path(corpus, emb263):
    m = multiplication_matrix(corpus, 4, emb263)
    cols = monomials_of_degree(4)
    col_grade = [mono_g7_weight(x) for x in cols]
    row_grade = []
    for row in m.rows:
        j = next(iter(row))
        row_grade.append(col_grade[j])
    r1 = graded_rank(m, row_grade, col_grade, workers=1)
    r4 = graded_rank(m, row_grade, col_grade, workers=4)
    assert r1 == r4 == rank(m) == 462
    k1, g1 = graded_left_kernel(m, row_grade, col_grade, workers=1)
    k4, g4 = graded_left_kernel(m, row_grade, col_grade, workers=4)
    assert k1 == k4 and g1 == g4
    assert len(k1) == 840 - 462
    dense = m.to_dense().astype(np.int64)
    for v in k1[:40]:
        acc = np.zeros(m.ncols, dtype=object)
        for i, c in v.items():
            acc = acc + c * dense[i].astype(object)
        assert not (acc % 263).any()
