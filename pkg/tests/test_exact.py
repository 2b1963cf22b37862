from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcent.schur_weyl.exact import (
    EchelonBuilder,
    ExactMatrix,
    GaussianRational,
    SubspaceBasis,
    nullspace,
    rank,
    to_integer_row,
)

small_int = st.integers(-3, 3)


def dense_rank(rows):
    # plain Fraction Gaussian elimination, kept separate from the sparse builder
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(
    lambda nr: st.integers(1, 6).flatmap(
        lambda nc: st.lists(st.lists(small_int, min_size=nc, max_size=nc), min_size=nr, max_size=nr)
    )
)


def test_gaussian_rational():
    i = GaussianRational(0, 1)
    assert i * i == -1
    z = GaussianRational(1, 2)
    assert z / z == 1
    assert z * z.conjugate() == 5
    assert (1 - z) == GaussianRational(0, -2)
    assert not GaussianRational(0, 0)
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)


def test_matrix_arithmetic():
    a = ExactMatrix.from_rows([[1, 2], [0, 1]])
    b = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [1, 0]]
    assert (a + b - a) == b
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
    assert a.scale(Fraction(1, 2))[(0, 1)] == 1
    assert a.kron(ExactMatrix.identity(2)).shape == (4, 4)
    assert b.tensor_power(2) == b.kron(b)
    assert ExactMatrix.zeros(2, 3).is_zero()
    with pytest.raises(IndexError):
        ExactMatrix(2, 2, {(2, 0): 1})


def test_permutation_matrix():
    m = ExactMatrix.from_permutation([1, 2, 0])
    assert m.permutation_images() == [1, 2, 0]
    assert (m @ m @ m) == ExactMatrix.identity(3)
    assert ExactMatrix.from_rows([[1, 1], [0, 1]]).permutation_images() is None


def _grid(nr, nc):
    return st.lists(st.lists(small_int, min_size=nc, max_size=nc), min_size=nr, max_size=nr)


@given(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda s: st.tuples(_grid(s[0], s[1]), _grid(s[1], s[2]))))
def test_product_matches_numpy(pair):
    a, b = pair
    got = (ExactMatrix.from_rows(a) @ ExactMatrix.from_rows(b)).to_dense()
    assert got == (np.array(a) @ np.array(b)).tolist()


@given(matrices)
def test_rank_matches_dense_elimination(rows):
    vecs = [{k: v for k, v in enumerate(r) if v} for r in rows]
    assert rank(vecs) == dense_rank(rows)


@settings(max_examples=100)
@given(matrices)
def test_nullspace(rows):
    ncols = len(rows[0])
    eb = EchelonBuilder()
    for r in rows:
        eb.insert({k: v for k, v in enumerate(r) if v})
    null = nullspace(eb, ncols)
    assert len(null) == ncols - dense_rank(rows)
    for v in null:
        for r in rows:
            assert sum(r[k] * x for k, x in v.items()) == 0


def test_echelon_membership():
    eb = EchelonBuilder()
    assert eb.insert({0: 1, 1: 1})
    assert eb.insert({1: 2})
    assert not eb.insert({0: 3, 1: -5})
    assert {0: 1} in eb
    assert {2: 1} not in eb
    assert eb.rank == 2


def test_to_integer_row():
    assert to_integer_row({0: Fraction(-1, 2), 3: Fraction(1, 3)}) == {0: 3, 3: -2}


def test_subspace_basis():
    mats = [ExactMatrix.identity(2), ExactMatrix.from_rows([[0, 1], [1, 0]]),
            ExactMatrix.from_rows([[2, 3], [3, 2]])]
    s = SubspaceBasis.from_matrices(mats)
    assert s.dim == 2
    assert s.contains_matrix(ExactMatrix.from_rows([[5, -1], [-1, 5]]))
    assert not s.contains_matrix(ExactMatrix.from_rows([[1, 0], [0, 0]]))
    assert SubspaceBasis.from_matrices(s.matrices()) == s
    assert SubspaceBasis.full(4, (2, 2)).dim == 4


def test_serialization_roundtrip():
    m = ExactMatrix(3, 2, {(0, 1): Fraction(-2, 3), (2, 0): 5})
    assert ExactMatrix.from_coo_text(m.to_coo_text()) == m
    assert ExactMatrix.from_json(m.to_json()) == m
    assert m.to_coo_text().splitlines()[0] == "3 2 2"
    with pytest.raises(TypeError):
        ExactMatrix(1, 1, {(0, 0): GaussianRational(0, 1)}).to_coo_text()
