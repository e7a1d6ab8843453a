import numpy as np
import pytest

from fischeralg import constructions as cons
from fischeralg import fischer as fs
from fischeralg import tralgebra as ta
from fischeralg.gf2 import BitVector
from oracles import ideal_dim, jacobi_mod_radical, jacobiators, naive_rank
from test_fischer import affine_space

SMALL = {
    "Sym4": lambda: cons.build_sym(4),
    "Sym5": lambda: cons.build_sym(5),
    "SU3": lambda: cons.build_su(3),
    "SU4": lambda: cons.build_su(4),
    "+O-3(3)": lambda: cons.build_orth3(3, "-", "+"),
    "+O-4(3)": lambda: cons.build_orth3(4, "-", "+"),
    "+O-5(3)": lambda: cons.build_orth3(5, "-", "+"),
    "+O+5(3)": lambda: cons.build_orth3(5, "+", "+"),
    "A2": lambda: cons.build_rootsys("A", 2),
    "A3": lambda: cons.build_rootsys("A", 3),
    "Sp4(2)": lambda: cons.build_sp_or_o_f2("symplectic", 2),
    "AG(3,3)": lambda: affine_space(3),
}


@pytest.mark.parametrize("name", SMALL)
def test_lie_criteria_against_jacobiators(name):
    S = SMALL[name]()
    J = jacobiators(S.third)
    assert ta.is_lie(S, scan="all") == jacobi_mod_radical(S.third)
    assert ta.jacobi_oracle(S) == jacobi_mod_radical(S.third)
    # A/I_Aff is the largest Lie quotient: I_Aff is the ideal generated by the Jacobiators
    want = ideal_dim(S.third, J) if len(J) else 0
    assert ta.affine_ideal(S, "closure")[0] == want
    assert ta.affine_ideal(S, "structural")[0] == want


@pytest.mark.parametrize("name", SMALL)
def test_dim_obar_is_adjacency_rank(name):
    S = SMALL[name]()
    assert ta.dim_obar(S) == naive_rank((S.third >= 0).astype(np.uint8))


def test_products_agree(su4):
    rng = np.random.default_rng(0)
    for _ in range(200):
        u = rng.choice(su4.n, size=int(rng.integers(0, 10)), replace=False)
        v = rng.choice(su4.n, size=int(rng.integers(0, 10)), replace=False)
        assert ta.product(su4, u, v) == ta.product_definitional(su4, u, v)
        # commutative over GF(2)
        assert ta.product(su4, u, v) == ta.product(su4, v, u)


def test_point_square_is_zero(sym5):
    for d in range(sym5.n):
        assert not ta.product(sym5, [d], [d]).any()


def test_form_is_associative_on_points(sym5):
    n = sym5.n
    for d in range(n):
        for e in range(n):
            for f in range(n):
                ef = ta.product(sym5, [e], [f])
                de = ta.product(sym5, [d], [e])
                assert ta.form(sym5, [d], ef) == ta.form(sym5, de, [f])


def test_full_set_vanishes(su4):
    assert ta.is_vanishing(su4, BitVector.from_bits(np.ones(su4.n, np.uint8)))
    assert not ta.is_vanishing(su4, BitVector.from_support([0], su4.n))


def test_symplectic_families_are_abelian():
    assert ta.is_abelian_quotient(cons.build_sym(6))
    assert ta.is_abelian_quotient(cons.build_sp_or_o_f2("symplectic", 3))
    assert not ta.is_abelian_quotient(cons.build_su(4))


def test_orbit_and_full_scans_agree(su4):
    assert ta.is_lie(su4, scan="orbit") == ta.is_lie(su4, scan="all")
    a = ta.plane_counts(su4, scan="orbit")
    b = ta.plane_counts(su4, scan="all")
    for key in ("lines", "linesPerPoint", "affinePlanes", "affinePerLine", "dualAffinePerLine", "affinePerPoint"):
        assert a[key] == b[key]


def test_report_rows():
    # values frozen from the independent Jacobiator and rank oracles above
    assert ta.report(cons.build_su(4)).row() == (45, 30, 14)
    assert ta.report(cons.build_rootsys("A", 3)).row() == (18, 15, 14)
    assert ta.report(affine_space(3)).row() == (27, 0, 26)
    r = ta.report(cons.build_sym(5))
    assert r.is_abelian_quotient and r.is_lie and r.srg == (10, 6, 3, 4)


def test_report_json_schema(su4):
    d = ta.report(su4).to_dict()
    assert set(d) == {"n", "dimObar", "dimV", "dimIAff", "dimAModIAff", "isLie", "isAbelianQuotient",
                      "tauTrivial", "thetaTrivial", "srg", "planeCounts", "provenance", "elapsedMs"}
    assert d["dimObar"] + d["dimV"] == d["n"]
    assert "elapsedMs" not in ta.report(su4).to_json(timing=False)


def test_guarded_report_marks_skipped(monkeypatch):
    monkeypatch.setattr(fs, "PLANE_GUARD", 5)
    d = ta.report(cons.build_sym(5)).to_dict()
    assert d["isLie"] == "skipped" and d["planeCounts"] == "skipped"
    assert d["dimObar"] == 4
