"""Property suites over the built-in spaces; each check yields a Verdict."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from numba import njit

from . import constructions as cons
from . import fischer as fs
from . import tralgebra as ta
from .chevalley import delta_bracket_check, prop31_evidence, su_rank1_span
from .gf2 import BitVector
from .roots import RootSystem, expected_positive_count
from .tables import CENSUS, CHEVALLEY_TYPES, ORTH3, UNITARY

SUITES = ("core", "planes", "counts", "chevalley")


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  {self.detail}" if self.detail else "")

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def builtin_specs():
    """(label, number of points, builder) for the built-in spaces used by the suites."""
    out = [(f"Sym{n}", n * (n - 1) // 2, lambda n=n: cons.build_sym(n)) for n in range(3, 9)]
    out += [(f"Sp{2 * n}(2)", 4**n - 1, lambda n=n: cons.build_sp_or_o_f2("symplectic", n))
            for n in range(1, 4)]
    # nonsingular vectors of O^eps_{2n}(2): 2^{2n-1} - eps 2^{n-1}
    out += [(f"O{s}{2 * n}(2)", 2 ** (2 * n - 1) - (1 if s == "+" else -1) * 2 ** (n - 1),
             lambda n=n, s=s: cons.build_sp_or_o_f2("orthogonal", n, s))
            for n in range(2, 5) for s in "+-"]
    out += [(f"SU{n}(2)", UNITARY[n][0], lambda n=n: cons.build_su(n)) for n in range(2, 9)]
    out += [(f"+O{s}{d}(3)", ORTH3[(d, s)][0], lambda d=d, s=s: cons.build_orth3(d, s, "+"))
            for d in range(3, 9) for s in "+-"]
    out += [(f"{k}{n}", 3 * expected_positive_count(k, n), lambda k=k, n=n: cons.build_rootsys(k, n))
            for k, n in CHEVALLEY_TYPES]
    return out


SYMPLECTIC_PREFIXES = ("Sym", "Sp", "O+", "O-")


def builtin_spaces(max_points: int = 700) -> Iterator:
    """Built-in spaces with at most ``max_points`` points."""
    for label, size, build in builtin_specs():
        if size <= max_points:
            S = build()
            if S.n != size:
                raise AssertionError(f"{label}: built {S.n} points, expected {size}")
            yield label, S


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


@njit(cache=True)
def _assoc_one(third, d, e, f):
    lhs = 0
    t = third[e, f]
    if t >= 0:
        lhs = (third[d, e] >= 0) ^ (third[d, f] >= 0) ^ (third[d, t] >= 0)
    rhs = 0
    s = third[d, e]
    if s >= 0:
        rhs = (third[d, f] >= 0) ^ (third[e, f] >= 0) ^ (third[s, f] >= 0)
    return lhs == rhs


@njit(cache=True)
def _assoc_exhaustive(third):
    """Violations of <d, e*f> = <d*e, f> over all point triples."""
    n = third.shape[0]
    bad = 0
    for d in range(n):
        for e in range(n):
            for f in range(n):
                if not _assoc_one(third, d, e, f):
                    bad += 1
    return bad


@njit(cache=True)
def _assoc_sampled(third, triples):
    bad = 0
    for k in range(triples.shape[0]):
        if not _assoc_one(third, triples[k, 0], triples[k, 1], triples[k, 2]):
            bad += 1
    return bad


@njit(cache=True)
def _definitional(third, us, vs, n):
    """Sum over pairs (d in us, e in vs) of the line through d, e when they are collinear."""
    out = np.zeros(n, dtype=np.uint8)
    for d in us:
        for e in vs:
            t = third[d, e]
            if t >= 0:
                out[d] ^= 1
                out[e] ^= 1
                out[t] ^= 1
    return out


@njit(cache=True)
def _radical_ideal_violations(adj, third, rad_rows, rad_piv_row):
    n = third.shape[0]
    nw = adj.shape[1]
    y = np.empty(nw, dtype=np.uint64)
    res = np.empty(nw, dtype=np.uint64)
    bad = 0
    for k in range(rad_rows.shape[0]):
        for d in range(n):
            ta._product_basis_words(adj, third, d, rad_rows[k], y)
            ta._reduce_dense(rad_rows, rad_piv_row, y, res)
            for t in range(nw):
                if res[t]:
                    bad += 1
                    break
    return bad


def check_form_associativity(S, rng, samples: int = 100_000) -> Verdict:
    if S.n <= 200:
        bad = _assoc_exhaustive(S.third)
        how = f"exhaustive over {S.n ** 3} triples"
    else:
        triples = rng.integers(0, S.n, size=(samples, 3))
        bad = _assoc_sampled(S.third, triples)
        how = f"{samples} random triples"
    return Verdict("form associativity", bad == 0, f"{how}, {bad} violations")


def check_radical_ideal(S) -> Verdict:
    R = ta.radical_index(S).basis
    bad = _radical_ideal_violations(S.adjacency.words, S.third, R._rows[: R.dim], R._piv_row)
    return Verdict("radical is an ideal", bad == 0, f"dim V = {R.dim}, {bad} products outside V")


def check_fast_product(S, rng, cases: int = 10_000) -> Verdict:
    bad = 0
    for _ in range(cases):
        d = int(rng.integers(S.n))
        weight = int(rng.integers(0, S.n + 1))
        X = rng.choice(S.n, size=weight, replace=False)
        fast = ta.product_basis(S, d, X).to_bits()
        slow = _definitional(S.third, np.array([d]), np.sort(X).astype(np.int64), S.n)
        bad += not np.array_equal(fast, slow)
    return Verdict("fast product = definitional product", bad == 0, f"{cases} random cases, {bad} differ")


def check_full_set_vanishes(S) -> Verdict:
    return Verdict("D lies in V", ta.is_vanishing(S, BitVector.from_bits(np.ones(S.n, np.uint8))))


def check_tau_classes(S) -> Verdict:
    """Points with equal collinearity rows never meet on a line, and their sum lies in V."""
    bad = 0
    for cls in fs.tau_classes(S):
        for e in cls[1:]:
            d = cls[0]
            x = np.zeros(S.n, np.uint8)
            x[[d, e]] = 1
            bad += bool(S.third[d, e] >= 0) or not ta.is_vanishing(S, BitVector.from_bits(x))
    sizes = fs.class_summary(fs.tau_classes(S))["sizes"]
    return Verdict("tau classes", bad == 0, f"sizes {sizes}, {bad} violations")


def check_jacobi_vs_lie(S) -> Verdict:
    j = ta.jacobi_oracle(S)
    lie = ta.is_lie(S, scan="all")
    return Verdict("jacobi oracle = plane criterion", j == lie, f"jacobi={j} lie={lie}")


def core_checks(label, S, rng, product_cases: int = 10_000) -> list:
    out = [
        Verdict("valid Fischer space", not (v := fs.validate(S)), "; ".join(v)),
        check_tau_classes(S),
        check_full_set_vanishes(S),
        check_form_associativity(S, rng),
        check_radical_ideal(S),
        check_fast_product(S, rng, product_cases),
        check_jacobi_vs_lie(S),
    ]
    if label.startswith(SYMPLECTIC_PREFIXES):
        out.append(Verdict("abelian quotient", ta.is_abelian_quotient(S)))
    return [Verdict(f"{label}: {v.name}", v.passed, v.detail) for v in out]


def suite_core(max_points: int = 700, seed: int = 0, product_cases: int = 10_000) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for label, S in builtin_spaces(max_points):
        out.extend(core_checks(label, S, rng, product_cases))
    return out


def plane_checks(label, S) -> list:
    out = []
    census = fs.plane_census(S)
    planes = list(fs.affine_planes(S))
    planes = np.concatenate(planes) if planes else np.empty((0, 9), dtype=np.int32)
    out.append(Verdict("planes listed once", len(np.unique(planes, axis=0)) == len(planes),
                       f"{len(planes)} planes"))
    closed = all(np.array_equal(fs.subspace_closure(S, p), p) for p in planes)
    collinear = all(((S.third[np.ix_(p, p)] >= 0).sum(axis=1) == 8).all() for p in planes)
    out.append(Verdict("planes are closed 9-point affine planes", closed and collinear))
    orbit = ta.plane_counts(S, scan="orbit")
    same = all(orbit[k] == census[k] for k in ("lines", "affinePlanes", "affinePerLine", "affinePerPoint"))
    out.append(Verdict("orbit plane counts = full enumeration", same))
    if S.n <= 400:
        a = ta.affine_ideal(S, "closure")
        b = ta.affine_ideal(S, "structural")
        out.append(Verdict("ideal by closure = structural ideal", a == b, f"{a} vs {b}"))
    lie_all = ta.is_lie(S, scan="all")
    out.append(Verdict("plane criterion agrees across scans", lie_all == ta.is_lie(S, scan="orbit")))
    if lie_all:
        found, _ = fs.has_affine_3space(S)
        out.append(Verdict("no affine 3-space", not found))
    return [Verdict(f"{label}: {v.name}", v.passed, v.detail) for v in out]


def suite_planes(max_points: int = 700) -> list:
    out = []
    for label, S in builtin_spaces(max_points):
        out.extend(plane_checks(label, S))
    return out


def suite_counts(S=None) -> list:
    """Plane census of a space against the expected Lemma values for its size."""
    if S is None:
        S = cons.build_su(6)
    expected = next((v for v in CENSUS.values() if v["n"] == S.n), None)
    if expected is None:
        return [Verdict("census available", False, f"no expected census for n={S.n}")]
    mode = "all" if S.n <= 1000 else "orbit"
    counts = ta.plane_counts(S, scan=mode)
    out = []
    for key in ("linesPerPoint", "affinePerLine", "dualAffinePerLine", "affinePerPoint"):
        got = counts[key]
        out.append(Verdict(key, got == [expected[key]], f"got {got}, expected {expected[key]}"))
    for key in ("lines", "affinePlanes"):
        out.append(Verdict(key, counts[key] == expected[key], f"got {counts[key]}, expected {expected[key]}"))
    srg = fs.srg_params(S)
    got = srg.astuple() if srg else None
    out.append(Verdict("srg", got == expected["srg"], f"got {got}"))
    vanishing = ta.is_lie(S, scan=mode)
    out.append(Verdict("affine planes vanish", vanishing))
    return out


def suite_chevalley(types=None) -> list:
    out = []
    for k, n in [("A", 2), ("A", 3), ("D", 4), ("E", 6)]:
        c = delta_bracket_check(RootSystem(k, n))
        out.append(Verdict(f"{k}{n}: delta bracket cases", c.ok,
                           ", ".join(f"{a}={b}" for a, b in c.counts.items())))
    for k, n in types or CHEVALLEY_TYPES:
        ev = prop31_evidence(RootSystem(k, n))
        out.append(Verdict(f"{k}{n}: bracket matches collinearity and thirds", not ev.mismatches,
                           f"{ev.pairs_checked} pairs"))
        out.append(Verdict(f"{k}{n}: dim A-bar = dim g2/Z", ev.dim_obar == ev.g2_quotient,
                           f"{ev.dim_obar} vs {ev.g2_quotient}"))
    for m, want in ((3, 8), (4, 14), (6, 34)):
        got = su_rank1_span(m - 1)
        out.append(Verdict(f"rank-one span in su_{m}", got == want, f"{got}"))
    return out


def run_suite(name: str, **kw) -> list:
    fn: Callable = {"core": suite_core, "planes": suite_planes, "counts": suite_counts,
                    "chevalley": suite_chevalley}[name]
    return fn(**kw)
