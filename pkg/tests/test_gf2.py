import numpy as np
import pytest

from fischeralg.gf2 import BitMatrix, BitVector, EchelonBasis, nullspace, pack_rows, rank, rref, unpack_rows
from oracles import naive_rank, naive_rref, random_matrix


def test_pack_roundtrip():
    rng = np.random.default_rng(1)
    for cols in (1, 63, 64, 65, 200):
        M = rng.integers(0, 2, size=(7, cols), dtype=np.uint8)
        assert np.array_equal(unpack_rows(pack_rows(M), cols), M)


def test_bitvector_ops():
    a = BitVector.from_support([0, 5, 70], 100)
    b = BitVector.from_support([5, 99], 100)
    assert (a ^ b).support().tolist() == [0, 70, 99]
    assert a.dot(b) == 1
    assert a.weight() == 3
    with pytest.raises(ValueError):
        a ^ BitVector.zeros(99)


@pytest.mark.slow
def test_rank_and_nullspace_against_naive_oracle():
    rng = np.random.default_rng(2024)
    for trial in range(1000):
        M = random_matrix(rng, 512)
        B = BitMatrix.from_dense(M)
        r = naive_rank(M)
        assert rank(B) == r
        N = nullspace(B)
        assert N.nrows == M.shape[1] - r
        if N.nrows:
            assert not ((M.astype(np.int64) @ N.to_dense().T.astype(np.int64)) % 2).any()
            assert naive_rank(N.to_dense()) == N.nrows


def test_m4r_matches_gauss():
    rng = np.random.default_rng(7)
    for _ in range(60):
        M = random_matrix(rng, 300)
        B = BitMatrix.from_dense(M)
        for strip in (1, 4, 8):
            assert rank(B, method="m4r", strip=strip) == rank(B)


def test_rref_matches_oracle():
    rng = np.random.default_rng(3)
    for _ in range(50):
        M = random_matrix(rng, 100)
        R, piv = rref(BitMatrix.from_dense(M))
        want, want_piv = naive_rref(M)
        assert list(piv) == want_piv
        assert np.array_equal(R.to_dense(), want)


def test_echelon_basis_incremental():
    rng = np.random.default_rng(5)
    n = 150
    vecs = (rng.random((200, n)) < 0.1).astype(np.uint8)
    E = EchelonBasis(n)
    for k, v in enumerate(vecs):
        E.insert(BitVector.from_bits(v))
        assert E.dim == naive_rank(vecs[: k + 1])
    for v in vecs:
        assert BitVector.from_bits(v) in E
    C = E.complement()
    assert C.nrows == n - E.dim
    assert not ((vecs.astype(np.int64) @ C.to_dense().T.astype(np.int64)) % 2).any()


def test_insert_supports_matches_dense_insertion():
    rng = np.random.default_rng(11)
    n = 300
    sups = []
    for _ in range(400):
        k = int(rng.integers(1, 7))
        sups.append(np.sort(rng.choice(n, size=k, replace=False)))
    padded = np.full((len(sups), 6), -1, dtype=np.int64)
    for i, s in enumerate(sups):
        padded[i, : len(s)] = s
    A = EchelonBasis(n)
    A.insert_supports(padded)
    B = EchelonBasis(n)
    for s in sups:
        B.insert(BitVector.from_support(s, n))
    assert A.dim == B.dim
    dense = np.zeros((len(sups), n), dtype=np.uint8)
    for i, s in enumerate(sups):
        dense[i, s] = 1
    assert A.dim == naive_rank(dense)
    for row in dense:
        assert BitVector.from_bits(row) in A


def test_hex_rows_roundtrip():
    rng = np.random.default_rng(9)
    M = BitMatrix.from_dense(rng.integers(0, 2, size=(5, 77), dtype=np.uint8))
    assert BitMatrix.from_hex_rows(M.to_hex_rows(), 77) == M
