"""Independent reference implementations used to check the package.

Nothing here imports the package's own arithmetic: these are slow, direct
computations on dense integer arrays.
"""
import itertools

import numpy as np

# GF(4) as {0, 1, w, w^2} = {0, 1, 2, 3}; addition is XOR
_LOG = {1: 0, 2: 1, 3: 2}
_EXP = [1, 2, 3]
MUL4 = np.zeros((4, 4), dtype=np.int64)
for a, b in itertools.product(range(1, 4), repeat=2):
    MUL4[a, b] = _EXP[(_LOG[a] + _LOG[b]) % 3]
CONJ4 = np.array([0, 1, 3, 2])


def naive_rref(M):
    """Row reduce a dense 0/1 matrix; returns (reduced rows, pivot columns)."""
    A = np.array(M, dtype=np.uint8) & 1
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hit = np.flatnonzero(A[r:, c])
        if hit.size == 0:
            continue
        p = r + hit[0]
        A[[r, p]] = A[[p, r]]
        mask = A[:, c].astype(bool)
        mask[r] = False
        A[mask] ^= A[r]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def naive_rank(M) -> int:
    return len(naive_rref(M)[1])


def naive_nullspace_dim(M) -> int:
    return np.asarray(M).shape[1] - naive_rank(M)


def random_matrix(rng, max_side=512):
    """Random 0/1 matrix, sometimes of deliberately low rank."""
    r, c = (int(x) for x in rng.integers(1, max_side + 1, size=2))
    kind = rng.integers(3)
    if kind == 0:
        return rng.integers(0, 2, size=(r, c), dtype=np.uint8)
    if kind == 1:
        k = int(rng.integers(0, min(r, c) + 1))
        A = rng.integers(0, 2, size=(r, k), dtype=np.int64)
        B = rng.integers(0, 2, size=(k, c), dtype=np.int64)
        return ((A @ B) % 2).astype(np.uint8)
    return (rng.random((r, c)) < 0.05).astype(np.uint8)


def _point_products(third):
    """pair[e, f] = e*f as a dense 0/1 vector, straight from the definition."""
    third = np.asarray(third)
    n = third.shape[0]
    pair = np.zeros((n, n, n), dtype=np.uint8)
    for e, f in itertools.product(range(n), repeat=2):
        t = third[e, f]
        if t >= 0:
            pair[e, f, [e, f, t]] = 1
    return pair


def _mul(pair, x, y):
    """Bilinear extension of the point products."""
    xs, ys = np.flatnonzero(x), np.flatnonzero(y)
    if xs.size == 0 or ys.size == 0:
        return np.zeros(pair.shape[0], dtype=np.uint8)
    return np.bitwise_xor.reduce(pair[np.ix_(xs, ys)].reshape(-1, pair.shape[0]), axis=0)


def jacobiators(third) -> np.ndarray:
    """Rows J(d, e, f) = d(ef) + e(fd) + f(de) over all point triples, zeros dropped."""
    pair = _point_products(third)
    n = pair.shape[0]
    eye = np.eye(n, dtype=np.uint8)
    out = []
    for d, e, f in itertools.combinations(range(n), 3):
        j = _mul(pair, eye[d], pair[e, f]) ^ _mul(pair, eye[e], pair[f, d]) ^ _mul(pair, eye[f], pair[d, e])
        if j.any():
            out.append(j)
    return np.array(out, dtype=np.uint8).reshape(-1, n)


def jacobi_mod_radical(third) -> bool:
    """Whether A/V is a Lie algebra: every Jacobiator is orthogonal to all points."""
    J = jacobiators(third)
    adj = (np.asarray(third) >= 0).astype(np.int64)
    return not ((J.astype(np.int64) @ adj) % 2).any()


def ideal_dim(third, gens) -> int:
    """Dimension of the ideal generated by ``gens``, by closing the span under point products."""
    pair = _point_products(third)
    n = pair.shape[0]
    eye = np.eye(n, dtype=np.uint8)
    basis, _ = naive_rref(np.asarray(gens, dtype=np.uint8).reshape(-1, n))
    while True:
        prods = [_mul(pair, eye[d], b) for b in basis for d in range(n)]
        grown, _ = naive_rref(np.vstack([basis] + prods) if prods else basis)
        if len(grown) == len(basis):
            return len(basis)
        basis = grown


def mat_mul_gf4(A, B):
    prods = MUL4[A[:, :, None], B[None, :, :]]
    return np.bitwise_xor.reduce(prods, axis=1)


def transvection_gf4(v):
    """x -> x + h(x, v) v for the standard Hermitian form h(x, y) = sum x_i conj(y_i)."""
    v = np.asarray(v, dtype=np.int64)
    n = v.size
    T = np.eye(n, dtype=np.int64)
    T ^= MUL4[v[:, None], CONJ4[v][None, :]]
    return T


def reflection_gf3(y, diag):
    """x -> x + f(x, y) Q(y) y with f(x, y) = sum a_i x_i y_i and Q(y) = f(y, y)."""
    y = np.asarray(y, dtype=np.int64)
    a = np.asarray(diag, dtype=np.int64)
    q = int((a * y * y).sum()) % 3
    return (np.eye(y.size, dtype=np.int64) + q * np.outer(y, a * y)) % 3


def matrix_order(M, mul, ident, limit=12):
    P = M.copy()
    for k in range(1, limit + 1):
        if np.array_equal(P, ident):
            return k
        P = mul(P, M)
    return None
