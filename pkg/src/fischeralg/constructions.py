"""Builders for the classical families of Fischer spaces plus generic ingestion."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .fields import GF4_CONJ, GF4_INV, GF4_MUL, GF4_NAMES, FormSpace, discriminant_f3
from .fischer import FischerSpace
from .roots import RootSystem

FAMILIES = ("sym", "sp2n", "o2n", "su", "orth3", "rootsys", "ingest")


class UnrealizableSign(ValueError):
    """No canonical diagonal form realizes the requested Witt sign."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")

    def build(self) -> FischerSpace:
        p = dict(self.params)
        if self.family == "sym":
            return build_sym(p["n"])
        if self.family == "sp2n":
            return build_sp_or_o_f2("symplectic", p["n"])
        if self.family == "o2n":
            return build_sp_or_o_f2("orthogonal", p["n"], p.get("eps", 1))
        if self.family == "su":
            return build_su(p["n"])
        if self.family == "orth3":
            return build_orth3(p["dim"], p.get("eps", 1), p.get("gamma", 1))
        if self.family == "rootsys":
            return build_rootsys(p["type"], p["n"])
        return build_ingest(p["file"], p.get("seed"))


def _sign(eps) -> int:
    if eps in (1, "+", "+1"):
        return 1
    if eps in (-1, "-", "-1"):
        return -1
    raise ValueError(f"sign must be + or -, got {eps!r}")


def _sign_char(s: int) -> str:
    return "+" if s > 0 else "-"


# ---------------------------------------------------------------------------
# symmetric groups
# ---------------------------------------------------------------------------


def build_sym(n: int) -> FischerSpace:
    """Transpositions of Sym_n as 2-subsets; third point is the symmetric difference."""
    if n < 3:
        raise ValueError("Sym_n needs n >= 3")
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    m = len(pairs)
    third = np.full((m, m), -1, dtype=np.int32)
    for i, a in enumerate(pairs):
        for j, b in enumerate(pairs):
            if len(set(a) & set(b)) == 1:
                third[i, j] = index[tuple(sorted(set(a) ^ set(b)))]
    labels = [f"({a + 1},{b + 1})" for a, b in pairs]
    return FischerSpace(third, labels, {"family": "sym", "n": n, "label": f"Sym{n}"})


# ---------------------------------------------------------------------------
# symplectic and orthogonal spaces over GF(2)
# ---------------------------------------------------------------------------


def _f2_forms(n: int, eps: int):
    """Bit masks of the standard symplectic pairing and the quadratic form on GF(2)^{2n}."""
    dim = 2 * n

    def bilinear(u, v):
        s = 0
        for i in range(n):
            s ^= ((u >> (2 * i)) & 1) & ((v >> (2 * i + 1)) & 1)
            s ^= ((u >> (2 * i + 1)) & 1) & ((v >> (2 * i)) & 1)
        return s

    def quad(v):
        s = 0
        for i in range(n):
            s ^= ((v >> (2 * i)) & 1) & ((v >> (2 * i + 1)) & 1)
        if eps < 0:
            # last hyperbolic pair replaced by the anisotropic x^2 + xy + y^2
            s ^= ((v >> (dim - 2)) & 1) ^ ((v >> (dim - 1)) & 1)
        return s

    return bilinear, quad


def build_sp_or_o_f2(kind: str, n: int, eps=1) -> FischerSpace:
    """Transvections of Sp_{2n}(2) or of O^eps_{2n}(2).

    Points are nonzero vectors (symplectic) or vectors with Q(v)=1
    (orthogonal); u, v collinear iff f(u, v) = 1, third point u + v.
    """
    if n < 1:
        raise ValueError("n must be positive")
    kind = {"sp": "symplectic", "sp2n": "symplectic", "o": "orthogonal", "o2n": "orthogonal"}.get(kind, kind)
    if kind not in ("symplectic", "orthogonal"):
        raise ValueError(f"unknown kind {kind!r}")
    s = _sign(eps)
    bilinear, quad = _f2_forms(n, s)
    dim = 2 * n
    if kind == "symplectic":
        pts = list(range(1, 2**dim))
        label = f"Sp{dim}(2)"
    else:
        pts = [v for v in range(1, 2**dim) if quad(v) == 1]
        label = f"O{_sign_char(s)}{dim}(2)"
    index = {v: i for i, v in enumerate(pts)}
    m = len(pts)
    third = np.full((m, m), -1, dtype=np.int32)
    for i, u in enumerate(pts):
        for j, v in enumerate(pts):
            if bilinear(u, v):
                third[i, j] = index[u ^ v]
    labels = [format(v, f"0{dim}b")[::-1] for v in pts]
    prov = {"family": "sp2n" if kind == "symplectic" else "o2n", "n": n, "label": label}
    if kind == "orthogonal":
        prov["eps"] = _sign_char(s)
    return FischerSpace(third, labels, prov)


# ---------------------------------------------------------------------------
# unitary spaces over GF(4)
# ---------------------------------------------------------------------------


def su_points(n: int) -> np.ndarray:
    """Isotropic points of the standard Hermitian form on GF(4)^n.

    One representative per 1-space (first nonzero coordinate 1), in
    lexicographic order of GF(4) codes. A vector is isotropic iff it has an
    even number of nonzero coordinates, since x * conj(x) = 1 for x != 0.
    """
    out = []
    for lead in range(n):
        for tail in itertools.product(range(4), repeat=n - lead - 1):
            v = (0,) * lead + (1,) + tail
            if sum(1 for x in v if x) % 2 == 0:
                out.append(v)
    out.sort()
    return np.array(out, dtype=np.uint8).reshape(-1, n)


@njit(cache=True)
def _encode4(v):
    c = 0
    for x in v:
        c = 4 * c + x
    return c


@njit(cache=True)
def _su_third(P, lookup, mul, conj, inv):
    m, n = P.shape
    third = np.full((m, m), -1, dtype=np.int32)
    w = np.empty(n, dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            f = 0
            for k in range(n):
                f ^= mul[P[i, k], conj[P[j, k]]]
            if f == 0:
                continue
            lead = 0
            for k in range(n):
                w[k] = P[i, k] ^ mul[f, P[j, k]]
                if lead == 0 and w[k] != 0:
                    lead = w[k]
            s = inv[lead]
            for k in range(n):
                w[k] = mul[s, w[k]]
            t = lookup[_encode4(w)]
            if t < 0:
                raise ValueError("transvection image left the point set")
            third[i, j] = t
            third[j, i] = t
    return third


def build_su(n: int) -> FischerSpace:
    """Transvections x -> x + f(x, v) v of the unitary space GF(4)^n."""
    if n < 2:
        raise ValueError("SU_n(2) needs n >= 2")
    P = su_points(n)
    lookup = np.full(4**n, -1, dtype=np.int64)
    codes = np.zeros(len(P), dtype=np.int64)
    for k in range(n):
        codes = 4 * codes + P[:, k]
    lookup[codes] = np.arange(len(P))
    third = _su_third(P.astype(np.int64), lookup, GF4_MUL.astype(np.int64),
                      GF4_CONJ.astype(np.int64), GF4_INV.astype(np.int64))
    labels = ["".join(GF4_NAMES[x] if x < 2 else "wW"[x - 2] for x in row) for row in P]
    return FischerSpace(third, labels, {"family": "su", "n": n, "label": f"SU{n}(2)"})


# ---------------------------------------------------------------------------
# orthogonal spaces over GF(3)
# ---------------------------------------------------------------------------


def _all_vectors_f3(dim: int) -> np.ndarray:
    return np.array(list(itertools.product(range(3), repeat=dim)), dtype=np.int64).reshape(-1, dim)


def witt_index_f3(space: FormSpace) -> int:
    """Dimension of a maximal totally singular subspace, by greedy extension.

    All maximal totally singular subspaces have the same dimension, so any
    maximal chain found greedily gives the Witt index.
    """
    diag = np.array(space.quad_diag if space.quad_diag is not None else np.diag(space.gram)) % 3
    if not np.array_equal(space.gram % 3, np.diag(diag)):
        raise ValueError("only diagonal forms are supported")
    vecs = _all_vectors_f3(space.dim)
    Q = (vecs * vecs) @ diag % 3
    singular = vecs[(Q == 0) & vecs.any(axis=1)]
    basis = []
    span = {tuple([0] * space.dim)}
    while True:
        found = None
        for v in singular:
            if tuple(v) in span:
                continue
            if all((v * diag) @ b % 3 == 0 for b in basis):
                found = v
                break
        if found is None:
            return len(basis)
        basis.append(found)
        span = {tuple((np.array(s) + c * found) % 3) for s in span for c in range(3)}


def witt_sign(space: FormSpace) -> int:
    """+1 or -1. Even dimension: from the Witt index; odd: via eps*delta = (-1)^{n(n+1)/2}."""
    if space.kind != "orthogonal-F3":
        raise ValueError("witt_sign expects an orthogonal-F3 space")
    n = space.dim
    if n > 10:
        raise ValueError("dimension above 10 is not supported")
    if n % 2 == 0:
        idx = witt_index_f3(space)
        if idx == n // 2:
            return 1
        if idx == n // 2 - 1:
            return -1
        raise AssertionError(f"unexpected Witt index {idx} in dimension {n}")
    return discriminant_f3(space) * (-1) ** ((n + 1) * n // 2)


def orth3_form(dim: int, eps) -> FormSpace:
    """The canonical diagonal form (all ones, or last entry -1) with Witt sign ``eps``."""
    s = _sign(eps)
    for diag in ((1,) * dim, (1,) * (dim - 1) + (2,)):
        space = FormSpace.diagonal_f3(diag)
        if witt_sign(space) == s:
            return space
    raise UnrealizableSign(f"no canonical form of dimension {dim} has sign {s:+d}")


def orth3_points(diag, gamma: int) -> np.ndarray:
    """1-spaces <x> with Q(x) = gamma, first nonzero coordinate 1, lexicographic."""
    dim = len(diag)
    vecs = _all_vectors_f3(dim)
    nz = vecs.any(axis=1)
    first = vecs[np.arange(len(vecs)), np.argmax(vecs != 0, axis=1)]
    Q = (vecs * vecs) @ np.asarray(diag) % 3
    return vecs[nz & (first == 1) & (Q == gamma % 3)]


@njit(cache=True)
def _encode3(v):
    c = 0
    for x in v:
        c = 3 * c + x
    return c


@njit(cache=True)
def _orth3_third(P, diag, gamma, lookup):
    m, n = P.shape
    third = np.full((m, m), -1, dtype=np.int32)
    w = np.empty(n, dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            b = 0
            for k in range(n):
                b += diag[k] * P[i, k] * P[j, k]
            b %= 3
            if b == 0:
                continue
            # r_y(x) = x + f(x, y) Q(y) y with f(x, y) = sum(diag * x * y), so f(y, y) = Q(y)
            c = (b * gamma) % 3
            lead = 0
            for k in range(n):
                w[k] = (P[i, k] + c * P[j, k]) % 3
                if lead == 0 and w[k] != 0:
                    lead = w[k]
            for k in range(n):
                w[k] = (w[k] * lead) % 3  # lead is its own inverse mod 3
            t = lookup[_encode3(w)]
            if t < 0:
                raise ValueError("reflection image left the point set")
            third[i, j] = t
            third[j, i] = t
    return third


def build_orth3(dim: int, eps=1, gamma=1) -> FischerSpace:
    """Reflections r_x with Q(x) = gamma in the orthogonal space of sign ``eps`` over GF(3)."""
    if not 3 <= dim <= 10:
        raise ValueError("orth3 supports 3 <= dim <= 10")
    s, g = _sign(eps), _sign(gamma)
    space = orth3_form(dim, s)
    diag = np.array(space.quad_diag, dtype=np.int64)
    P = orth3_points(diag, g % 3)
    lookup = np.full(3**dim, -1, dtype=np.int64)
    codes = np.zeros(len(P), dtype=np.int64)
    for k in range(dim):
        codes = 3 * codes + P[:, k]
    lookup[codes] = np.arange(len(P))
    third = _orth3_third(P, diag, g % 3, lookup)
    labels = ["".join(str(int(x)) for x in row) for row in P]
    prov = {
        "family": "orth3", "dim": dim, "eps": _sign_char(s), "gamma": _sign_char(g),
        "diag": [int(x) for x in diag],
        "label": f"{_sign_char(g)}O{_sign_char(s)}{dim}(3)",
    }
    return FischerSpace(third, labels, prov)


# ---------------------------------------------------------------------------
# root systems
# ---------------------------------------------------------------------------


def rootsys_third(rs: RootSystem) -> np.ndarray:
    """Third-point table on pairs (positive root, omega) following the bracket cases."""
    P = rs.n_positive
    mul, conj = GF4_MUL, GF4_CONJ
    n = 3 * P
    third = np.full((n, n), -1, dtype=np.int32)

    def pt(r, w):
        return 3 * r + (w - 1)

    for a in range(P):
        for b in range(P):
            if a == b:
                for mu in (1, 2, 3):
                    for nu in (1, 2, 3):
                        if mu != nu:
                            third[pt(a, mu), pt(b, nu)] = pt(a, mu ^ nu)
                continue
            s = rs.sum_index(a, b)
            if s >= 0:
                for mu in (1, 2, 3):
                    for nu in (1, 2, 3):
                        third[pt(a, mu), pt(b, nu)] = pt(s, int(mul[mu, nu]))
                continue
            d = rs.sum_index(a, rs.negate(b))
            if d >= 0:
                for mu in (1, 2, 3):
                    for nu in (1, 2, 3):
                        tau = int(mul[mu, conj[nu]])
                        if d >= P:
                            # x(delta, tau) = x(-delta, conj(tau))
                            third[pt(a, mu), pt(b, nu)] = pt(d - P, int(conj[tau]))
                        else:
                            third[pt(a, mu), pt(b, nu)] = pt(d, tau)
    return third


def build_rootsys(kind: str, n: int) -> FischerSpace:
    """The Fischer space of 3^n:W(X_n) on pairs (alpha, omega), alpha positive."""
    rs = RootSystem(kind, n)
    third = rootsys_third(rs)
    names = ("1", "w", "W")
    labels = [
        "[" + ",".join(str(int(x)) for x in rs.positive[r]) + "]" + names[w]
        for r in range(rs.n_positive) for w in range(3)
    ]
    return FischerSpace(third, labels, {"family": "rootsys", "type": rs.kind, "n": n,
                                        "label": rs.label})


# ---------------------------------------------------------------------------
# ingestion of permutation generators
# ---------------------------------------------------------------------------


def space_from_class(D: list, label: str = "", extra: dict | None = None) -> FischerSpace:
    from .permgrp import collinearity_from_orders

    _, third = collinearity_from_orders(D)
    labels = [str(i + 1) for i in range(len(D))]
    prov = {"family": "ingest", "label": label}
    prov.update(extra or {})
    return FischerSpace(third, labels, prov)


def build_ingest(path, seed: str | None = None, cap: int = 500_000) -> FischerSpace:
    """Conjugacy class of the seed involution under the generators in ``path``."""
    from .io import read_generators
    from .permgrp import class_closure

    gs = read_generators(path, seed=seed)
    D = class_closure(gs, cap=cap)
    return space_from_class(D, gs.label, {"degree": gs.degree})
