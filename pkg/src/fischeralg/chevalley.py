"""Chevalley-basis Lie algebras of simply-laced type reduced mod 2, over GF(4).

Basis order: h_1..h_n (simple coroots), then x_r for every root r in the
order of ``RootSystem.roots`` (positive roots, then their negatives).

In characteristic 2 every structure constant N_{a,b} = +-1 of a simply-laced
Chevalley basis becomes 1, and [h_i, x_b] = (b, a_i) x_b only needs its
parity, so no sign conventions are carried. This is not valid for
non-simply-laced types, which RootSystem does not produce.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .fields import GF4_CONJ, GF4_MUL
from .gf2 import BitMatrix, BitVector, EchelonBasis, pack_rows, rank
from .roots import RootSystem

_MUL = GF4_MUL.astype(np.int64)


class ChevalleyAlgebra:
    """Structure constants of the mod-2 Chevalley algebra of ``rs`` as a sparse table."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n, R = rs.rank, len(rs.roots)
        self.dim = n + R
        pairing = rs.cartan_pairing() % 2
        coeffs = np.concatenate([rs.coeffs, rs.coeffs]) % 2
        table = [[() for _ in range(self.dim)] for _ in range(self.dim)]
        for i in range(n):
            for r in range(R):
                if pairing[r, i]:
                    table[i][n + r] = table[n + r][i] = (n + r,)
        for r in range(R):
            for s in range(R):
                if s == rs.negate(r):
                    table[n + r][n + s] = tuple(np.flatnonzero(coeffs[r]).tolist())
                else:
                    t = rs.sum_index(r, s)
                    if t >= 0:
                        table[n + r][n + s] = (n + t,)
        ptr = np.zeros(self.dim * self.dim + 1, dtype=np.int64)
        flat = []
        for i in range(self.dim):
            for j in range(self.dim):
                flat.extend(table[i][j])
                ptr[i * self.dim + j + 1] = len(flat)
        self.ptr = ptr
        self.idx = np.array(flat, dtype=np.int64)
        self.h_coeffs = coeffs

    def zero(self) -> "LieElement":
        return LieElement(np.zeros(self.dim, dtype=np.uint8), self.rs.rank)

    def basis_x(self, r: int, c: int = 1) -> "LieElement":
        e = self.zero()
        e.coords[self.rs.rank + r] = c
        return e

    def h_root(self, r: int) -> "LieElement":
        """h_r = [x_r, x_{-r}] written in simple coroots mod 2."""
        e = self.zero()
        e.coords[: self.rs.rank] = self.h_coeffs[r]
        return e

    def delta(self, r: int, omega: int) -> "LieElement":
        """x(r, w) = w x_r + conj(w) x_{-r} + w conj(w) h_r, for any root index r."""
        e = self.zero()
        n = self.rs.rank
        e.coords[n + r] = omega
        e.coords[n + self.rs.negate(r)] = GF4_CONJ[omega]
        e.coords[:n] = self.h_coeffs[r] * _MUL[omega, GF4_CONJ[omega]]
        return e


@dataclass
class LieElement:
    coords: np.ndarray
    rank: int

    @property
    def h_coords(self) -> np.ndarray:
        return self.coords[: self.rank]

    @property
    def x_coords(self) -> np.ndarray:
        return self.coords[self.rank:]

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(self.coords ^ other.coords, self.rank)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and np.array_equal(self.coords, other.coords)

    def any(self) -> bool:
        return bool(self.coords.any())

    def flatten(self) -> np.ndarray:
        """Coordinates over GF(2) in the basis {1, w} of each GF(4) coefficient."""
        out = np.empty(2 * self.coords.size, dtype=np.uint8)
        out[0::2] = self.coords & 1
        out[1::2] = self.coords >> 1
        return out


@njit(cache=True)
def _bracket(a, b, ptr, idx, mul, dim):
    out = np.zeros(dim, dtype=np.uint8)
    for i in range(dim):
        if a[i] == 0:
            continue
        for j in range(dim):
            if b[j] == 0:
                continue
            c = mul[a[i], b[j]]
            base = i * dim + j
            for t in range(ptr[base], ptr[base + 1]):
                out[idx[t]] ^= c
    return out


def bracket(alg: ChevalleyAlgebra, a: LieElement, b: LieElement) -> LieElement:
    if a.coords.size != alg.dim or b.coords.size != alg.dim:
        raise ValueError("element does not belong to this algebra")
    return LieElement(_bracket(a.coords, b.coords, alg.ptr, alg.idx, _MUL, alg.dim), a.rank)


def _algebra(rs) -> ChevalleyAlgebra:
    return rs if isinstance(rs, ChevalleyAlgebra) else ChevalleyAlgebra(rs)


def delta_points(rs: RootSystem):
    """(positive root index, omega) in the point order used by build_rootsys."""
    return [(r, w) for r in range(rs.n_positive) for w in (1, 2, 3)]


@dataclass
class DeltaCheck:
    counts: dict
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def delta_bracket_check(rs, max_positive: int = 120) -> DeltaCheck:
    """Expand the bracket of every pair of Delta elements and compare with the case formulas."""
    alg = _algebra(rs)
    rs = alg.rs
    if rs.n_positive > max_positive:
        raise ValueError(f"{rs.label} exceeds the rank guard of {max_positive} positive roots")
    x = alg.delta
    counts = {"equal": 0, "same-root": 0, "sum": 0, "difference": 0, "zero": 0}
    bad = []
    pts = delta_points(rs)
    elems = [x(r, w) for r, w in pts]
    for p, (a, mu) in enumerate(pts):
        for q, (b, nu) in enumerate(pts):
            got = bracket(alg, elems[p], elems[q])
            if a == b:
                if mu == nu:
                    case, want = "equal", alg.zero()
                else:
                    case, want = "same-root", x(a, mu) + x(a, nu) + x(a, mu ^ nu)
            elif (s := rs.sum_index(a, b)) >= 0:
                case, want = "sum", x(a, mu) + x(b, nu) + x(s, int(_MUL[mu, nu]))
            elif (d := rs.sum_index(a, rs.negate(b))) >= 0:
                nub = int(GF4_CONJ[nu])
                case = "difference"
                want = x(a, mu) + x(rs.negate(b), nub) + x(d, int(_MUL[mu, nub]))
            else:
                case, want = "zero", alg.zero()
            counts[case] += 1
            if got != want:
                bad.append((p, q, case))
    return DeltaCheck(counts, bad)


def g2_basis(rs):
    """Indices of Delta elements forming an F2-basis of their span, and the span dimension."""
    alg = _algebra(rs)
    pts = delta_points(alg.rs)
    E = EchelonBasis(2 * alg.dim, capacity=2 * alg.dim)
    chosen = []
    for k, (r, w) in enumerate(pts):
        if E.insert(BitVector.from_bits(alg.delta(r, w).flatten())):
            chosen.append(k)
    return chosen, E.dim


def g2_dims(rs):
    """(dim g2, dim of its centre, dim g2 / centre) where g2 is the F2-span of Delta."""
    alg = _algebra(rs)
    pts = delta_points(alg.rs)
    elems = [alg.delta(r, w) for r, w in pts]
    chosen, dim_g2 = g2_basis(alg)
    rows = []
    for k in chosen:
        parts = [bracket(alg, elems[k], e).flatten() for e in elems]
        rows.append(np.concatenate(parts))
    r = rank(BitMatrix(pack_rows(np.array(rows)), len(rows[0]))) if rows else 0
    centre = dim_g2 - r
    return dim_g2, centre, dim_g2 - centre


@dataclass
class Prop31Evidence:
    pairs_checked: int
    mismatches: list
    dim_obar: int
    g2_quotient: int

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.dim_obar == self.g2_quotient


def prop31_evidence(rs) -> Prop31Evidence:
    """Compare Delta brackets with the Fischer space from build_rootsys, and the dimensions.

    Nonzero bracket iff collinear, and then [x_p, x_q] = x_p + x_q + x_t with t
    the third point. This is evidence for the isomorphism, not a certificate.
    """
    from .constructions import rootsys_third
    from .fischer import FischerSpace
    from .tralgebra import dim_obar

    alg = _algebra(rs)
    pts = delta_points(alg.rs)
    elems = [alg.delta(r, w) for r, w in pts]
    third = rootsys_third(alg.rs)
    bad = []
    checked = 0
    for p in range(len(pts)):
        for q in range(p, len(pts)):
            got = bracket(alg, elems[p], elems[q])
            t = third[p, q]
            want = elems[p] + elems[q] + elems[t] if t >= 0 else alg.zero()
            checked += 1
            if got != want:
                bad.append((p, q))
    space = FischerSpace(third)
    return Prop31Evidence(checked, bad, dim_obar(space), g2_dims(alg)[2])


def expected_quotient(kind: str, n: int) -> int:
    """Closed forms for dim g2 / Z(g2) by type."""
    kind = kind.upper()
    if kind == "A":
        return (n + 1) ** 2 - (2 if n % 2 else 1)
    if kind == "D":
        return 2 * n * n - n - (2 if n % 2 == 0 else 1)
    return {6: 78, 7: 132, 8: 248}[n]


def su_rank1_span(n: int) -> int:
    """F2-dimension of the span of v conj(v)^T over isotropic points of GF(4)^{n+1}, modulo scalars."""
    from .constructions import su_points

    m = n + 1
    if not 3 <= m <= 8:
        raise ValueError("requires 3 <= n + 1 <= 8")
    P = su_points(m).astype(np.int64)
    mats = _MUL[P[:, :, None], GF4_CONJ.astype(np.int64)[P[:, None, :]]].reshape(len(P), -1)

    def flat(codes):
        out = np.empty((codes.shape[0], 2 * codes.shape[1]), dtype=np.uint8)
        out[:, 0::2] = codes & 1
        out[:, 1::2] = codes >> 1
        return out

    E = EchelonBasis(2 * m * m, capacity=2 * m * m)
    for row in flat(mats):
        E.insert(BitVector.from_bits(row))
    ident = flat(np.eye(m, dtype=np.int64).reshape(1, -1))[0]
    return E.dim - (1 if BitVector.from_bits(ident) in E else 0)
