import itertools

import numpy as np
import pytest

from fischeralg.chevalley import (ChevalleyAlgebra, bracket, delta_bracket_check, expected_quotient, g2_dims,
                                  prop31_evidence, su_rank1_span)
from fischeralg.roots import RootSystem


def _basis(alg):
    out = []
    for i in range(alg.dim):
        e = alg.zero()
        e.coords[i] = 1
        out.append(e)
    return out


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 3), ("D", 4)])
def test_structure_constants_define_a_lie_algebra(kind, n):
    alg = ChevalleyAlgebra(RootSystem(kind, n))
    B = _basis(alg)
    for x in B:
        assert not bracket(alg, x, x).any()
    for a, b, c in itertools.combinations(B, 3):
        j = bracket(alg, a, bracket(alg, b, c)) + bracket(alg, b, bracket(alg, c, a)) \
            + bracket(alg, c, bracket(alg, a, b))
        assert not j.any()


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 3), ("D", 4), ("E", 6)])
def test_delta_bracket_cases(kind, n):
    check = delta_bracket_check(RootSystem(kind, n))
    assert check.ok, check.violations[:5]
    assert sum(check.counts.values()) == (3 * RootSystem(kind, n).n_positive) ** 2


TYPES = [("A", n) for n in range(1, 8)] + [("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7)]


@pytest.mark.parametrize("kind,n", TYPES)
def test_quotient_dimension_closed_forms(kind, n):
    dim, centre, quotient = g2_dims(RootSystem(kind, n))
    assert dim - centre == quotient == expected_quotient(kind, n)


def test_closed_forms():
    assert [expected_quotient("A", n) for n in range(2, 8)] == [8, 14, 24, 34, 48, 62]
    assert [expected_quotient("D", n) for n in (4, 5, 6)] == [26, 44, 64]
    assert expected_quotient("E", 6) == 78


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 4), ("D", 5), ("E", 6)])
def test_prop_evidence(kind, n):
    ev = prop31_evidence(RootSystem(kind, n))
    assert ev.ok


def test_unitary_rank_one_span():
    assert [su_rank1_span(m) for m in (2, 3, 5)] == [8, 14, 34]
    with pytest.raises(ValueError):
        su_rank1_span(1)
