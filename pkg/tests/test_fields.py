import itertools

import numpy as np
import pytest

from fischeralg import fields as f


def test_gf4_is_a_field():
    els = range(4)
    for a, b, c in itertools.product(els, repeat=3):
        assert f.gf4_mul(a, f.gf4_add(b, c)) == f.gf4_add(f.gf4_mul(a, b), f.gf4_mul(a, c))
        assert f.gf4_mul(f.gf4_mul(a, b), c) == f.gf4_mul(a, f.gf4_mul(b, c))
    for a in f.GF4_NONZERO:
        assert f.gf4_mul(a, f.gf4_inv(a)) == f.ONE
    with pytest.raises(ZeroDivisionError):
        f.gf4_inv(0)


def test_w_satisfies_its_minimal_polynomial():
    # w^2 = w + 1
    assert f.gf4_mul(f.W, f.W) == f.gf4_add(f.W, f.ONE)


def test_frobenius():
    for a, b in itertools.product(range(4), repeat=2):
        assert f.gf4_conj(f.gf4_mul(a, b)) == f.gf4_mul(f.gf4_conj(a), f.gf4_conj(b))
        assert f.gf4_conj(f.gf4_add(a, b)) == f.gf4_add(f.gf4_conj(a), f.gf4_conj(b))
    assert [f.gf4_trace(a) for a in range(4)] == [0, 0, 1, 1]
    for a in f.GF4_NONZERO:
        assert f.gf4_mul(a, f.gf4_conj(a)) == f.ONE


def test_hermitian_form():
    H = f.FormSpace.hermitian_identity(3)
    u, v = (1, 2, 0), (3, 1, 1)
    # h(v, u) = conj(h(u, v))
    assert f.form_eval(H, v, u) == f.gf4_conj(f.form_eval(H, u, v))
    assert f.form_eval(H, (1, 1, 0), (1, 1, 0)) == 0
    assert f.form_eval(H, (1, 0, 0), (1, 0, 0)) == 1


def test_f3_quadratic_and_bilinear_agree_on_the_diagonal():
    sp = f.FormSpace.diagonal_f3((1, 1, 2))
    for v in itertools.product(range(3), repeat=3):
        assert f.quad_eval(sp, v) == f.form_eval(sp, v, v)
    assert f.discriminant_f3(sp) == -1
    assert f.discriminant_f3(f.FormSpace.diagonal_f3((1, 1, 1))) == 1


def test_form_space_validation():
    with pytest.raises(ValueError):
        f.FormSpace("bogus", np.eye(2))
    with pytest.raises(ValueError):
        f.FormSpace("orthogonal-F3", np.eye(2), quad_diag=(1,))
    sp = f.FormSpace.diagonal_f3((1, 1))
    with pytest.raises(ValueError):
        f.form_eval(sp, (1, 0, 0), (1, 0))
    with pytest.raises(ValueError):
        f.quad_eval(f.FormSpace.hermitian_identity(2), (1, 0))
