import itertools

import numpy as np
import pytest

from fischeralg import constructions as cons
from fischeralg import fischer as fs
from fischeralg.fischer import FischerSpace


def affine_space(dim):
    """AG(dim, 3): every pair collinear, third point -(x + y)."""
    pts = list(itertools.product(range(3), repeat=dim))
    idx = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    third = np.full((n, n), -1, dtype=np.int32)
    for (i, x), (j, y) in itertools.permutations(enumerate(pts), 2):
        third[i, j] = idx[tuple((-a - b) % 3 for a, b in zip(x, y))]
    return FischerSpace(third)


def test_affine_plane():
    S = affine_space(2)
    assert len(fs.all_lines(S)) == 12
    assert fs.count_affine_planes(S) == 1
    (plane,) = list(fs.affine_planes(S))
    assert sorted(plane[0].tolist()) == list(range(9))
    assert not fs.validate(S)


def test_affine_3space():
    S = affine_space(3)
    assert len(fs.all_lines(S)) == 117
    # 13 directions of planes, 3 parallel planes each
    assert fs.count_affine_planes(S) == 39
    found, pts = fs.has_affine_3space(S)
    assert found and len(pts) == 27


def test_sym_has_no_affine_planes():
    S = cons.build_sym(6)
    assert fs.count_affine_planes(S) == 0
    lines = fs.all_lines(S)
    assert len(lines) == 20  # triangles of K6
    assert (lines[:, 0] < lines[:, 1]).all() and (lines[:, 1] < lines[:, 2]).all()


def test_lines_through_and_closure(su4):
    through = fs.lines_through(su4, 0)
    assert len(through) == su4.valencies()[0] // 2
    line = through[0]
    assert sorted(fs.subspace_closure(su4, line[:2]).tolist()) == sorted(line.tolist())
    # two intersecting lines generate a plane of 6 or 9 points
    other = next(l for l in through[1:])
    size = len(fs.subspace_closure(su4, np.array([line[1], line[2], other[1]])))
    assert size in (6, 9)


def test_planes_are_enumerated_once(su4):
    planes = np.concatenate(list(fs.affine_planes(su4)))
    canon = np.sort(planes, axis=1)
    assert len(np.unique(canon, axis=0)) == len(planes)
    census = fs.plane_census(su4)
    assert census["affinePlanes"] == len(planes)
    per_point = np.bincount(planes.ravel(), minlength=su4.n)
    assert census["affinePerPoint"] == sorted(set(per_point.tolist()))
    through0 = np.concatenate(list(fs.affine_planes(su4, through=0)))
    assert len(through0) == per_point[0]
    assert (through0 == 0).any(axis=1).all()


def test_plane_guard():
    S = cons.build_sym(4)
    old = fs.PLANE_GUARD
    try:
        fs.PLANE_GUARD = 3
        with pytest.raises(fs.SizeGuardError):
            list(fs.affine_planes(S))
        assert list(fs.affine_planes(S, override=True)) == []
    finally:
        fs.PLANE_GUARD = old


def test_tau_theta():
    S4 = cons.build_sym(4)
    assert sorted(map(len, fs.tau_classes(S4))) == [2, 2, 2]
    assert fs.class_summary(fs.tau_classes(cons.build_sym(5)))["trivial"]
    A2 = cons.build_rootsys("A", 2)
    # every pair of distinct points of the affine plane is collinear
    assert [len(c) for c in fs.theta_classes(A2)] == [9]


def test_srg_parameters():
    assert fs.srg_params(cons.build_sym(5)).astuple() == (10, 6, 3, 4)
    assert fs.srg_params(cons.build_su(4)).astuple() == (45, 32, 22, 24)
    assert fs.srg_params(fs.from_lines(4, [(0, 1, 2)])) is None


def test_conjugation_is_an_automorphism(su4):
    for d in range(0, su4.n, 7):
        p = su4.conjugation(d)
        assert sorted(p.tolist()) == list(range(su4.n))
        t = su4.third.astype(np.int64)
        # third(p(i), p(j)) = p(third(i, j))
        mapped = np.where(t >= 0, p[np.maximum(t, 0)], -1)
        assert np.array_equal(t[np.ix_(p, p)], mapped)


def test_validate_detects_broken_tables():
    t = cons.build_sym(5).third.copy()
    i, j = np.argwhere(t >= 0)[0]
    t[i, j] = -1
    assert fs.validate(FischerSpace(t))
    with pytest.raises(ValueError):
        fs.from_lines(4, [(0, 1, 2), (0, 1, 3)])


def test_components():
    S = fs.from_lines(6, [(0, 1, 2), (3, 4, 5)])
    assert [c.tolist() for c in fs.connected_components(S)] == [[0, 1, 2], [3, 4, 5]]
    comps = fs.noncollinearity_components(S)
    assert len(comps) == 1


def test_partition_property_needs_three_parts(su4):
    holds, sizes = fs.partition_property(su4)
    assert not holds and sizes == [45]
