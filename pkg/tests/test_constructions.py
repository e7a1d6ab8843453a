import itertools

import numpy as np
import pytest

from fischeralg import constructions as cons
from fischeralg import fischer as fs
from fischeralg.fields import FormSpace
from oracles import (mat_mul_gf4, matrix_order, reflection_gf3, transvection_gf4)


@pytest.mark.parametrize("n", range(3, 9))
def test_sym_counts(n):
    S = cons.build_sym(n)
    assert S.n == n * (n - 1) // 2
    assert set(S.valencies().tolist()) == {2 * (n - 2)}
    assert not fs.validate(S)


@pytest.mark.parametrize("kind,n,eps,size", [
    ("symplectic", 1, 1, 3), ("symplectic", 2, 1, 15), ("symplectic", 3, 1, 63),
    ("orthogonal", 2, 1, 6), ("orthogonal", 2, -1, 10), ("orthogonal", 3, 1, 28),
    ("orthogonal", 3, -1, 36), ("orthogonal", 4, 1, 120), ("orthogonal", 4, -1, 136),
])
def test_f2_family_sizes(kind, n, eps, size):
    S = cons.build_sp_or_o_f2(kind, n, eps)
    assert S.n == size
    assert not fs.validate(S)


@pytest.mark.parametrize("n,size", [(2, 3), (3, 9), (4, 45), (5, 165), (6, 693)])
def test_su_sizes(n, size):
    assert len(cons.su_points(n)) == size


def test_su_third_point_is_conjugate_transvection(su4):
    """t_x t_y has order 3 exactly on collinear pairs, and t_x t_y t_x = t_third."""
    P = cons.su_points(4).astype(np.int64)
    T = [transvection_gf4(v) for v in P]
    I = np.eye(4, dtype=np.int64)
    for i, j in itertools.combinations(range(len(P)), 2):
        prod = mat_mul_gf4(T[i], T[j])
        o = matrix_order(prod, mat_mul_gf4, I)
        k = su4.third[i, j]
        assert (o == 3) == (k >= 0)
        assert o in (1, 2, 3)
        if k >= 0:
            assert np.array_equal(mat_mul_gf4(prod, T[i]), T[k])


@pytest.mark.parametrize("dim,eps", [(4, "-"), (5, "+"), (5, "-"), (6, "+")])
def test_orth3_third_point_is_conjugate_reflection(dim, eps):
    S = cons.build_orth3(dim, eps, "+")
    diag = S.provenance["diag"]
    P = np.array([[int(c) for c in lab] for lab in S.labels])
    R = [reflection_gf3(v, diag) for v in P]
    I = np.eye(dim, dtype=np.int64)
    mul = lambda a, b: (a @ b) % 3
    for i, j in itertools.combinations(range(len(P)), 2):
        prod = mul(R[i], R[j])
        o = matrix_order(prod, mul, I)
        k = S.third[i, j]
        assert (o == 3) == (k >= 0)
        if k >= 0:
            assert np.array_equal(mul(prod, R[i]), R[k])


def test_orth3_points_have_the_right_norm():
    S = cons.build_orth3(5, "-", "+")
    diag = np.array(S.provenance["diag"])
    P = np.array([[int(c) for c in lab] for lab in S.labels])
    assert ((P * P) @ diag % 3 == 1).all()


def test_witt_sign_of_canonical_forms():
    # hyperbolic plane x^2 - y^2 is +, x^2 + y^2 is - over GF(3)
    assert cons.witt_sign(FormSpace.diagonal_f3((1, 2))) == 1
    assert cons.witt_sign(FormSpace.diagonal_f3((1, 1))) == -1
    for dim in range(3, 9):
        for eps in (1, -1):
            assert cons.witt_sign(cons.orth3_form(dim, eps)) == eps


@pytest.mark.parametrize("kind,n,size", [("A", 2, 9), ("A", 3, 18), ("D", 4, 36), ("E", 6, 108),
                                         ("E", 7, 189), ("E", 8, 360)])
def test_rootsys_sizes(kind, n, size):
    S = cons.build_rootsys(kind, n)
    assert S.n == size
    assert not fs.validate(S)


def test_family_spec():
    assert cons.FamilySpec("sym", {"n": 4}).build().n == 6
    assert cons.FamilySpec("orth3", {"dim": 7, "eps": "+", "gamma": "+"}).build().n == 351
    with pytest.raises(ValueError):
        cons.FamilySpec("nope")
    with pytest.raises(ValueError):
        cons.build_su(1)
