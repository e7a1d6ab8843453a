"""The algebra A(D) over GF(2) attached to a Fischer space.

The product of two collinear points is the sum of the three points of their
line, and of two commuting points is zero. The symmetric bilinear form is the
collinearity matrix. Elements are BitVectors over the point set.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from numba import njit

from . import fischer as fs
from .fischer import FischerSpace, SizeGuardError
from .gf2 import (BitMatrix, BitVector, EchelonBasis, _adjoin, _nullspace_from_rref,
                  _popcount64, _reduce_dense, nullspace, rank, rref)

ORBIT_THRESHOLD = 2000  # above this many points plane scans use one point per component
JACOBI_GUARD = 2000


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _parity_and(a, b):
    acc = np.uint64(0)
    for t in range(a.shape[0]):
        acc ^= a[t] & b[t]
    return _popcount64(acc) & 1


@njit(cache=True)
def _product_basis_words(adj, third, d, x, out):
    """out = <d, x> d + x + x^d, as packed words."""
    one = np.uint64(1)
    nw = x.shape[0]
    for t in range(nw):
        out[t] = 0
    if _parity_and(adj[d], x):
        out[d >> 6] ^= one << np.uint64(d & 63)
    for t in range(nw):
        word = x[t] & adj[d, t]
        while word:
            low = word & (~word + one)
            b = 0
            y = low
            while y > one:
                y >>= one
                b += 1
            word ^= low
            e = t * 64 + b
            f = third[d, e]
            out[t] ^= low
            out[f >> 6] ^= one << np.uint64(f & 63)


@njit(cache=True)
def _permute_words(perm, x, out):
    one = np.uint64(1)
    for t in range(out.shape[0]):
        out[t] = 0
    for t in range(x.shape[0]):
        word = x[t]
        while word:
            low = word & (~word + one)
            b = 0
            y = low
            while y > one:
                y >>= one
                b += 1
            word ^= low
            e = perm[t * 64 + b]
            out[e >> 6] ^= one << np.uint64(e & 63)


@njit(cache=True)
def _ideal_closure(adj, third, rows, piv_row, pivots, dim, q):
    """Worklist closure: multiply rows q, q+1, ... by every point and insert (FIFO)."""
    n = third.shape[0]
    nw = adj.shape[1]
    x = np.empty(nw, dtype=np.uint64)
    y = np.empty(nw, dtype=np.uint64)
    res = np.empty(nw, dtype=np.uint64)
    while q < dim and dim < n:
        for t in range(nw):
            x[t] = rows[q, t]
        for d in range(n):
            _product_basis_words(adj, third, d, x, y)
            _reduce_dense(rows, piv_row, y, res)
            nz = False
            for t in range(nw):
                if res[t]:
                    nz = True
                    break
            if nz:
                dim = _adjoin(rows, piv_row, pivots, dim, res)
                if dim == n:
                    return dim
        q += 1
    return dim


@njit(cache=True)
def _count_nonvanishing(adj, sets):
    """Number of rows of ``sets`` (point lists) whose characteristic vector is not in the radical."""
    nw = adj.shape[1]
    acc = np.empty(nw, dtype=np.uint64)
    bad = 0
    for k in range(sets.shape[0]):
        for t in range(nw):
            acc[t] = 0
        for p in sets[k]:
            for t in range(nw):
                acc[t] ^= adj[p, t]
        for t in range(nw):
            if acc[t]:
                bad += 1
                break
    return bad


@njit(cache=True)
def _jacobi_kernel(adj, third, rad_rows, rad_piv_row):
    """Count triples d < e < f whose Jacobi sum is not in the radical."""
    n = third.shape[0]
    nw = adj.shape[1]
    one = np.uint64(1)
    J = np.zeros(nw, dtype=np.uint64)
    res = np.empty(nw, dtype=np.uint64)
    trip = np.empty(3, dtype=np.int64)
    bad = 0
    for d in range(n):
        for e in range(d + 1, n):
            for f in range(e + 1, n):
                # only triples with at least two collinear pairs can give a nonzero sum
                c = 0
                if third[d, e] >= 0:
                    c += 1
                if third[e, f] >= 0:
                    c += 1
                if third[f, d] >= 0:
                    c += 1
                if c == 0:
                    continue
                for t in range(nw):
                    J[t] = 0
                for r in range(3):
                    if r == 0:
                        a, b, z = d, e, f
                    elif r == 1:
                        a, b, z = e, f, d
                    else:
                        a, b, z = f, d, e
                    t3 = third[a, b]
                    if t3 < 0:
                        continue
                    trip[0] = a
                    trip[1] = b
                    trip[2] = t3
                    for s in range(3):
                        x = trip[s]
                        y = third[x, z]
                        if y < 0:
                            continue
                        J[x >> 6] ^= one << np.uint64(x & 63)
                        J[z >> 6] ^= one << np.uint64(z & 63)
                        J[y >> 6] ^= one << np.uint64(y & 63)
                _reduce_dense(rad_rows, rad_piv_row, J, res)
                for t in range(nw):
                    if res[t]:
                        bad += 1
                        break
    return bad


# ---------------------------------------------------------------------------
# products and the form
# ---------------------------------------------------------------------------


def _vec(S: FischerSpace, X) -> BitVector:
    if isinstance(X, BitVector):
        if X.length != S.n:
            raise ValueError(f"element of length {X.length} in a space of {S.n} points")
        return X
    return BitVector.from_support(list(X), S.n)


def point(S: FischerSpace, d: int) -> BitVector:
    return BitVector.from_support([d], S.n)


def product_basis(S: FischerSpace, d: int, X) -> BitVector:
    """d * X computed as <d, X> d + X + X^d."""
    X = _vec(S, X)
    out = np.zeros_like(X.words)
    _product_basis_words(S.adjacency.words, S.third, int(d), X.words, out)
    return BitVector(out, S.n)


def product(S: FischerSpace, u, v) -> BitVector:
    u, v = _vec(S, u), _vec(S, v)
    acc = np.zeros_like(v.words)
    tmp = np.zeros_like(v.words)
    for d in u.support():
        _product_basis_words(S.adjacency.words, S.third, int(d), v.words, tmp)
        acc ^= tmp
    return BitVector(acc, S.n)


def product_definitional(S: FischerSpace, u, v) -> BitVector:
    """Bilinear expansion over pairs of points: d * e is the line on d, e or 0."""
    u, v = _vec(S, u), _vec(S, v)
    bits = np.zeros(S.n, dtype=np.uint8)
    for d in u.support():
        for e in v.support():
            t = S.third[d, e]
            if t >= 0:
                bits[[d, e, t]] ^= 1
    return BitVector.from_bits(bits)


def form(S: FischerSpace, u, v) -> int:
    u, v = _vec(S, u), _vec(S, v)
    return S.adjacency.matvec(v).dot(u)


# ---------------------------------------------------------------------------
# the radical
# ---------------------------------------------------------------------------


class RadicalIndex:
    """Reduced echelon basis of the radical V, for membership tests."""

    def __init__(self, S: FischerSpace):
        basis = radical_basis(S)
        self.basis = EchelonBasis(S.n, capacity=max(basis.nrows, 1))
        for row in basis.rows():
            self.basis.insert(row)

    def __contains__(self, x: BitVector) -> bool:
        return x in self.basis

    @property
    def dim(self) -> int:
        return self.basis.dim


def radical_basis(S: FischerSpace) -> BitMatrix:
    if "radical" not in S._cache:
        S._cache["radical"] = nullspace(S.adjacency)
    return S._cache["radical"]


def radical_index(S: FischerSpace) -> RadicalIndex:
    if "radical_index" not in S._cache:
        S._cache["radical_index"] = RadicalIndex(S)
    return S._cache["radical_index"]


def dim_obar(S: FischerSpace) -> int:
    """dim A/V, the rank of the collinearity matrix."""
    if "rank" not in S._cache:
        S._cache["rank"] = rank(S.adjacency, method="m4r" if S.n >= 2048 else "gauss")
    return S._cache["rank"]


def is_vanishing(S: FischerSpace, X) -> bool:
    return not S.adjacency.matvec(_vec(S, X)).any()


def is_abelian_quotient(S: FischerSpace) -> bool:
    """Every line vanishes, so all products lie in V."""
    lines = fs.all_lines(S)
    return _count_nonvanishing(S.adjacency.words, lines.astype(np.int64)) == 0


# ---------------------------------------------------------------------------
# plane scans
# ---------------------------------------------------------------------------


@dataclass
class ComponentScan:
    points: np.ndarray
    rep: int
    planes_through_rep: int
    vanishing: bool


def _scan_mode(S: FischerSpace, scan: str) -> str:
    if scan not in ("auto", "all", "orbit"):
        raise ValueError(f"scan must be auto, all or orbit, not {scan!r}")
    if scan == "auto":
        return "all" if S.n <= ORBIT_THRESHOLD else "orbit"
    return scan


def component_scans(S: FischerSpace, override: bool = False) -> list:
    """Planes through the smallest point of each component.

    The conjugation maps act transitively on the points of each component, so
    every affine plane is an image of one through the representative.
    """
    if "component_scans" in S._cache:
        return S._cache["component_scans"]
    out = []
    adj = S.adjacency.words
    for comp in fs.connected_components(S):
        rep = int(comp[0])
        count = 0
        bad = 0
        for block in fs.affine_planes(S, through=rep, override=override):
            count += len(block)
            bad += _count_nonvanishing(adj, block.astype(np.int64))
        out.append(ComponentScan(comp, rep, count, bad == 0))
    S._cache["component_scans"] = out
    return out


def is_lie(S: FischerSpace, scan: str = "auto", override: bool = False) -> bool:
    """True iff every affine plane lies in the radical."""
    mode = _scan_mode(S, scan)
    if mode == "orbit":
        return all(c.vanishing for c in component_scans(S, override))
    adj = S.adjacency.words
    for block in fs.affine_planes(S, override=override):
        if _count_nonvanishing(adj, block.astype(np.int64)):
            return False
    return True


def jacobi_oracle(S: FischerSpace) -> bool:
    """Brute force: (d*e)*f + (e*f)*d + (f*d)*e lies in V for all points d, e, f.

    Triples with a repeated point give zero identically and are skipped.
    """
    if S.n > JACOBI_GUARD:
        raise SizeGuardError(f"jacobi_oracle is limited to n <= {JACOBI_GUARD}")
    R = radical_index(S).basis
    return _jacobi_kernel(S.adjacency.words, S.third, R._rows[: R.dim], R._piv_row) == 0


# ---------------------------------------------------------------------------
# the affine ideal
# ---------------------------------------------------------------------------


def affine_ideal(S: FischerSpace, method: str = "auto", override: bool = False):
    """(dim I_Aff, dim A/I_Aff) for the ideal generated by the affine planes.

    ``closure`` seeds an echelon basis with every plane and multiplies new basis
    vectors by every point until nothing changes. ``structural`` works per
    component: where some plane is not vanishing the ideal contains the whole
    component, otherwise the span of the planes is already an ideal, because
    d * pi = pi + pi^d for a vanishing plane pi. ``auto`` uses closure for
    small spaces.
    """
    if method == "auto":
        method = "closure" if S.n <= 400 else "structural"
    if method == "closure":
        dim = _affine_ideal_closure(S, override)
    elif method == "structural":
        dim = _affine_ideal_structural(S, override)
    else:
        raise ValueError(f"unknown method {method!r}")
    return dim, S.n - dim


def _affine_ideal_closure(S: FischerSpace, override: bool) -> int:
    E = EchelonBasis(S.n, capacity=max(S.n, 1))
    for block in fs.affine_planes(S, override=override):
        E.insert_supports(block)
        if E.dim == S.n:
            return S.n
    return _ideal_closure(S.adjacency.words, S.third, E._rows, E._piv_row, E._pivots, E.dim, 0)


def _affine_ideal_structural(S: FischerSpace, override: bool) -> int:
    total = 0
    for scan in component_scans(S, override):
        if scan.planes_through_rep == 0:
            continue
        if not scan.vanishing:
            total += len(scan.points)
            continue
        total += _plane_span_dim(S, scan, override)
    return total


def _plane_span_dim(S: FischerSpace, scan: ComponentScan, override: bool) -> int:
    """dim of the span of the affine planes inside one component.

    Planes through successive points are added until the span stops growing
    and is invariant under the conjugation maps of a generating set of the
    component; such a span contains every image of a plane through the
    representative, hence every plane.
    """
    comp = scan.points
    E = EchelonBasis(S.n, capacity=min(S.n, 4096))
    if len(comp) <= ORBIT_THRESHOLD:
        member = np.zeros(S.n, dtype=bool)
        member[comp] = True
        for block in fs.affine_planes(S, override=override):
            E.insert_supports(block[member[block[:, 0]]])
        return E.dim
    gens = fs.generating_points(S, comp)
    gen_set = set(gens)
    order = [scan.rep] + [g for g in gens if g != scan.rep] + [int(p) for p in comp if p not in gen_set]
    for count, p in enumerate(order, 1):
        before = E.dim
        for block in fs.affine_planes(S, through=int(p), override=override):
            # planes through p that also contain an earlier point are already in
            E.insert_supports(block)
        if gens and count > 1 and E.dim == before and _invariant(S, E, gens):
            break
    return E.dim


def _invariant(S: FischerSpace, E: EchelonBasis, gens) -> bool:
    """Whether span(E) is mapped into itself by each conjugation map in ``gens``."""
    Y = _nullspace_from_rref(E._rows[: E.dim], E._pivots[: E.dim], S.n)
    perp = EchelonBasis(S.n, capacity=max(len(Y), 1))
    for row in Y:
        perp.insert(BitVector(row, S.n))
    out = np.empty(Y.shape[1], dtype=np.uint64)
    res = np.empty(Y.shape[1], dtype=np.uint64)
    for g in gens:
        perm = S.conjugation(g)
        for row in Y:
            _permute_words(perm, row, out)
            _reduce_dense(perp._rows, perp._piv_row, out, res)
            if res.any():
                return False
    return True


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass
class AlgebraReport:
    n: int
    dim_obar: int
    dim_V: int
    dim_I_aff: Optional[int]
    dim_A_mod_I_aff: Optional[int]
    is_lie: Optional[bool]
    is_abelian_quotient: bool
    tau_trivial: bool
    theta_trivial: bool
    srg: Optional[tuple]
    plane_counts: Optional[dict]
    provenance: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    _JSON_KEYS = {
        "n": "n", "dim_obar": "dimObar", "dim_V": "dimV", "dim_I_aff": "dimIAff",
        "dim_A_mod_I_aff": "dimAModIAff", "is_lie": "isLie",
        "is_abelian_quotient": "isAbelianQuotient", "tau_trivial": "tauTrivial",
        "theta_trivial": "thetaTrivial", "srg": "srg", "plane_counts": "planeCounts",
        "provenance": "provenance", "elapsed_ms": "elapsedMs",
    }

    def to_dict(self) -> dict:
        raw = asdict(self)
        out = {self._JSON_KEYS[k]: raw[k] for k in self._JSON_KEYS}
        if out["srg"] is not None:
            out["srg"] = list(out["srg"])
        for key in ("dimIAff", "dimAModIAff", "isLie"):
            if out[key] is None:
                out[key] = "skipped"
        if out["planeCounts"] is None:
            out["planeCounts"] = "skipped"
        return out

    def to_json(self, timing: bool = True) -> str:
        import json

        d = self.to_dict()
        if not timing:
            d.pop("elapsedMs")
        return json.dumps(d, sort_keys=True, indent=2)

    def row(self) -> tuple:
        """The three table columns: |D|, dim A/I_Aff, dim A-bar."""
        return (self.n, self.dim_A_mod_I_aff, self.dim_obar)


def plane_counts(S: FischerSpace, scan: str = "auto", override: bool = False) -> dict:
    """Line and affine-plane counts; per-line and per-point values as distinct-value lists."""
    mode = _scan_mode(S, scan)
    if mode == "all":
        counts = fs.plane_census(S, override=override)
        counts["mode"] = "all"
        return counts
    lines_per_point, per_line, dual_per_line, per_point = set(), set(), set(), set()
    total = 0
    for c in component_scans(S, override):
        through = fs.lines_through(S, c.rep)
        lines_per_point.add(len(through))
        a, d = fs.line_plane_profile(S, through)
        per_line.update(a.tolist())
        dual_per_line.update(d.tolist())
        per_point.add(c.planes_through_rep)
        total += len(c.points) * c.planes_through_rep
    if total % 9:
        raise AssertionError("plane count is not divisible by 9")
    return {
        "lines": S.n_adjacent_pairs // 3,
        "linesPerPoint": sorted(int(x) for x in lines_per_point),
        "affinePlanes": total // 9,
        "affinePerLine": sorted(int(x) for x in per_line),
        "dualAffinePerLine": sorted(int(x) for x in dual_per_line),
        "affinePerPoint": sorted(int(x) for x in per_point),
        "mode": "orbit",
    }


def report(S: FischerSpace, scan: str = "auto", override: bool = False,
           with_srg: bool = True) -> AlgebraReport:
    t0 = time.perf_counter()
    r = dim_obar(S)
    taus = fs.tau_classes(S)
    thetas = fs.theta_classes(S)
    try:
        lie = is_lie(S, scan=scan, override=override)
        dim_i, quotient = affine_ideal(S, method="structural" if _scan_mode(S, scan) == "orbit" else "auto",
                                       override=override)
        counts = plane_counts(S, scan=scan, override=override)
    except SizeGuardError:
        lie = dim_i = quotient = counts = None
    srg = fs.srg_params(S) if with_srg else None
    return AlgebraReport(
        n=S.n,
        dim_obar=r,
        dim_V=S.n - r,
        dim_I_aff=dim_i,
        dim_A_mod_I_aff=quotient,
        is_lie=lie,
        is_abelian_quotient=is_abelian_quotient(S),
        tau_trivial=all(len(c) == 1 for c in taus),
        theta_trivial=all(len(c) == 1 for c in thetas),
        srg=srg.astuple() if srg is not None else None,
        plane_counts=counts,
        provenance=dict(S.provenance),
        elapsed_ms=int(round(1000 * (time.perf_counter() - t0))),
    )
