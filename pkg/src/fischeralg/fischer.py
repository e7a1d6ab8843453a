"""Fischer spaces: points, lines, planes and the conjugation action.

A space is stored as its third-point table ``third[i, j]`` (the index ``k`` with
``{i, j, k}`` a line, or -1 when ``i`` and ``j`` commute) plus the packed
collinearity matrix derived from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

import numpy as np
from numba import njit

from .gf2 import BitMatrix, pack_rows, _popcount64

PLANE_GUARD = 50_000


class Line(NamedTuple):
    points: tuple


class Plane(NamedTuple):
    points: tuple
    kind: str  # "dual-affine-2" or "affine-3"


class SizeGuardError(RuntimeError):
    """Raised when an enumeration would exceed a configured size guard."""


@dataclass(eq=False)
class FischerSpace:
    third: np.ndarray
    labels: list = None
    provenance: dict = field(default_factory=dict)
    adjacency: BitMatrix = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        third = np.asarray(self.third)
        if third.ndim != 2 or third.shape[0] != third.shape[1]:
            raise ValueError("third-point table must be square")
        n = third.shape[0]
        dtype = np.int16 if n < 2**15 else np.int32
        third = np.ascontiguousarray(third, dtype=dtype)
        third.setflags(write=False)
        self.third = third
        if self.labels is None:
            self.labels = [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("one label per point is required")
        self.adjacency = BitMatrix(pack_rows(third >= 0), n)

    @property
    def n(self) -> int:
        return self.third.shape[0]

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.third[i, j] >= 0)

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.third[i] >= 0)

    def valencies(self) -> np.ndarray:
        return (self.third >= 0).sum(axis=1)

    def conjugation(self, d: int) -> np.ndarray:
        """The permutation e -> e^d: neighbors of d swap along their line, the rest stay."""
        row = self.third[d].astype(np.int64)
        return np.where(row >= 0, row, np.arange(self.n))

    @property
    def n_adjacent_pairs(self) -> int:
        return int(self.valencies().sum()) // 2

    def __repr__(self):
        label = self.provenance.get("label", "?")
        return f"FischerSpace(n={self.n}, label={label!r})"


def from_lines(n: int, lines, labels=None, provenance=None) -> FischerSpace:
    """Build a space from an explicit list of point triples."""
    third = np.full((n, n), -1, dtype=np.int32)
    for a, b, c in lines:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for p, q in ((x, y), (y, x)):
                if third[p, q] not in (-1, z):
                    raise ValueError(f"points {p},{q} lie on two different lines")
                third[p, q] = z
    return FischerSpace(third, labels, provenance or {"family": "lines"})


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _count_lines(third):
    n = third.shape[0]
    m = 0
    for a in range(n):
        for b in range(a + 1, n):
            c = third[a, b]
            if c > b:
                m += 1
    return m


@njit(cache=True)
def _lines(third, m):
    n = third.shape[0]
    out = np.empty((m, 3), dtype=np.int32)
    k = 0
    for a in range(n):
        for b in range(a + 1, n):
            c = third[a, b]
            if c > b:
                out[k, 0] = a
                out[k, 1] = b
                out[k, 2] = c
                k += 1
    return out


@njit(cache=True)
def _closure(third, seed, cap, stamp, tag):
    """Smallest set containing ``seed`` closed under the third-point map.

    Stops early once the set exceeds ``cap`` points. ``stamp`` is scratch
    storage marked with ``tag`` for membership.
    """
    n = third.shape[0]
    pts = np.empty(min(n, cap + 1) if cap < n else n, dtype=np.int64)
    m = 0
    for x in seed:
        if stamp[x] != tag:
            stamp[x] = tag
            pts[m] = x
            m += 1
            if m > cap:
                return pts[:m]
    i = 1
    while i < m:
        x = pts[i]
        for j in range(i):
            y = pts[j]
            z = third[x, y]
            if z >= 0 and stamp[z] != tag:
                stamp[z] = tag
                if m == pts.shape[0]:
                    return pts[:m]
                pts[m] = z
                m += 1
                if m > cap:
                    return pts[:m]
        i += 1
    return pts[:m]


@njit(cache=True)
def _plane_from_line_point(third, a, b, c, p, out6):
    """Fill the six off-line points of the affine plane on line {a,b,c} and p."""
    ap = third[p, a]
    bp = third[p, b]
    cp = third[p, c]
    if ap < 0 or bp < 0 or cp < 0:
        return False
    u = third[a, bp]
    v = third[a, cp]
    if u < 0 or v < 0:
        return False
    out6[0] = p
    out6[1] = ap
    out6[2] = bp
    out6[3] = cp
    out6[4] = u
    out6[5] = v
    return True


@njit(cache=True)
def _common3(adj, a, b, c, w):
    return adj[a, w] & adj[b, w] & adj[c, w]


@njit(cache=True)
def _planes_on_lines(third, adj, lines, start, out, stamp, through):
    """Enumerate canonical affine planes on ``lines[start:]`` into ``out``.

    With ``through < 0`` a plane is emitted on the line through its two
    smallest points; otherwise only planes containing ``through`` are
    emitted, on the line through ``through`` and the smallest other point.
    Returns (number of planes written, next line index).
    """
    nw = adj.shape[1]
    one = np.uint64(1)
    cap = out.shape[0]
    k = 0
    off = np.empty(6, dtype=np.int64)
    for li in range(start, lines.shape[0]):
        if k + 64 * nw * 2 > cap and k > 0:
            return k, li
        a = lines[li, 0]
        b = lines[li, 1]
        c = lines[li, 2]
        if through >= 0:
            # the line is kept iff it holds the smallest plane point besides `through`
            lo = b if a == through else a
            bound = -1
        else:
            lo = b
            bound = b
        tag = li + 1
        for w in range(nw):
            word = _common3(adj, a, b, c, w)
            while word:
                low = word & (~word + one)
                bit = 0
                x = low
                while x > one:
                    x >>= one
                    bit += 1
                word ^= low
                p = w * 64 + bit
                if p <= bound or stamp[p] == tag:
                    continue
                if not _plane_from_line_point(third, a, b, c, p, off):
                    continue
                ok = True
                for t in range(6):
                    stamp[off[t]] = tag
                    if off[t] <= lo:
                        ok = False
                if ok:
                    if k == cap:
                        return k, li
                    pts = np.empty(9, dtype=np.int64)
                    pts[0] = a
                    pts[1] = b
                    pts[2] = c
                    for t in range(6):
                        pts[3 + t] = off[t]
                    pts.sort()
                    for t in range(9):
                        out[k, t] = pts[t]
                    k += 1
    return k, lines.shape[0]


@njit(cache=True)
def _line_profile(adj, lines):
    """Per line: number of points collinear with all three, and with exactly two."""
    nw = adj.shape[1]
    m = lines.shape[0]
    all3 = np.zeros(m, dtype=np.int64)
    two = np.zeros(m, dtype=np.int64)
    for li in range(m):
        a = lines[li, 0]
        b = lines[li, 1]
        c = lines[li, 2]
        s3 = 0
        s2 = 0
        for w in range(nw):
            x = adj[a, w]
            y = adj[b, w]
            z = adj[c, w]
            s3 += _popcount64(x & y & z)
            s2 += _popcount64((x & y & ~z) | (x & ~y & z) | (~x & y & z))
        all3[li] = s3
        # the line's own points are each collinear with exactly the other two
        two[li] = s2 - 3
    return all3, two


@njit(cache=True)
def _check_conjugation(third, ds):
    """Count (d, e, f) where e -> e^d fails to preserve collinearity or thirds."""
    n = third.shape[0]
    bad = 0
    img = np.empty(n, dtype=np.int64)
    for d in ds:
        for e in range(n):
            t = third[d, e]
            img[e] = t if t >= 0 else e
        for e in range(n):
            ie = img[e]
            for f in range(n):
                t = third[e, f]
                s = third[ie, img[f]]
                if t < 0:
                    if s >= 0:
                        bad += 1
                elif s < 0 or s != img[t]:
                    bad += 1
    return bad


@njit(cache=True)
def _check_plane_pairs(third, adj, pairs, stamp):
    """For each (x, y, z) with lines xy and xz, classify the generated plane.

    Returns counts [dual-affine, affine, broken].
    """
    counts = np.zeros(3, dtype=np.int64)
    seed = np.empty(3, dtype=np.int64)
    for k in range(pairs.shape[0]):
        seed[0] = pairs[k, 0]
        seed[1] = pairs[k, 1]
        seed[2] = pairs[k, 2]
        pts = _closure(third, seed, 9, stamp, k + 1)
        m = pts.shape[0]
        if m == 6 or m == 9:
            need = 4 if m == 6 else 8
            good = True
            for i in range(m):
                deg = 0
                for j in range(m):
                    if third[pts[i], pts[j]] >= 0:
                        deg += 1
                if deg != need:
                    good = False
            if good:
                counts[0 if m == 6 else 1] += 1
                continue
        counts[2] += 1
    return counts


@njit(cache=True)
def _srg_counts(adj, n):
    """Common-neighbour counts: min/max over adjacent pairs and over non-adjacent pairs."""
    nw = adj.shape[1]
    one = np.uint64(1)
    lam_min = 1 << 62
    lam_max = -1
    mu_min = 1 << 62
    mu_max = -1
    for i in range(n):
        for j in range(i + 1, n):
            s = 0
            for w in range(nw):
                s += _popcount64(adj[i, w] & adj[j, w])
            if (adj[i, j >> 6] >> np.uint64(j & 63)) & one:
                lam_min = min(lam_min, s)
                lam_max = max(lam_max, s)
            else:
                mu_min = min(mu_min, s)
                mu_max = max(mu_max, s)
    return lam_min, lam_max, mu_min, mu_max


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def all_lines(S: FischerSpace) -> np.ndarray:
    """Every line once, as sorted rows (a < b < c) in lexicographic order."""
    if "lines" not in S._cache:
        third = S.third
        lines = _lines(third, _count_lines(third))
        lines.setflags(write=False)
        S._cache["lines"] = lines
    return S._cache["lines"]


def lines_through(S: FischerSpace, x: int) -> np.ndarray:
    nb = S.neighbors(x)
    t = S.third[x, nb].astype(np.int64)
    keep = nb < t
    rows = np.stack([np.full(keep.sum(), x), nb[keep], t[keep]], axis=1)
    return np.sort(rows, axis=1).astype(np.int32)


def subspace_closure(S: FischerSpace, seed, cap: Optional[int] = None) -> np.ndarray:
    """Least superset of ``seed`` closed under the third-point map, sorted."""
    seed = np.unique(np.asarray(list(seed), dtype=np.int64))
    if seed.size == 0:
        return seed
    stamp = np.zeros(S.n, dtype=np.int64)
    pts = _closure(S.third, seed, S.n if cap is None else cap, stamp, 1)
    return np.sort(pts)


def connected_components(S: FischerSpace) -> list:
    """Components of the collinearity graph, each a sorted index array."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components as cc

    rows, cols = np.nonzero(S.third >= 0)
    graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(S.n, S.n))
    _, labels = cc(graph, directed=False)
    comps = {}
    for i, lab in enumerate(labels):
        comps.setdefault(lab, []).append(i)
    return sorted((np.array(v) for v in comps.values()), key=lambda a: a[0])


def noncollinearity_components(S: FischerSpace) -> list:
    """Components of the graph joining distinct non-collinear points."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components as cc

    mask = S.third < 0
    np.fill_diagonal(mask, False)
    rows, cols = np.nonzero(mask)
    graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(S.n, S.n))
    _, labels = cc(graph, directed=False)
    comps = {}
    for i, lab in enumerate(labels):
        comps.setdefault(lab, []).append(i)
    return sorted((np.array(v) for v in comps.values()), key=lambda a: a[0])


def partition_property(S: FischerSpace, parts: int = 3, override: bool = False):
    """Whether the non-collinearity graph has ``parts`` equal components and every
    affine plane meets each component in a line. Returns (holds, component sizes)."""
    comps = noncollinearity_components(S)
    sizes = [len(c) for c in comps]
    if len(comps) != parts or len(set(sizes)) != 1:
        return False, sizes
    label = np.empty(S.n, dtype=np.int64)
    for k, c in enumerate(comps):
        label[c] = k
    for block in affine_planes(S, override=override):
        lab = label[block]
        for k in range(parts):
            hit = block[lab == k]
            if len(hit) != 3 or S.third[hit[0], hit[1]] != hit[2]:
                return False, sizes
    return True, sizes


def generating_points(S: FischerSpace, component) -> list:
    """A small set of points whose subspace closure is ``component``.

    Greedy: repeatedly adjoin the smallest point not yet in the closure.
    """
    component = np.asarray(component)
    target = set(component.tolist())
    gens = [int(component[0])]
    closed = set(subspace_closure(S, gens).tolist())
    while closed != target:
        nxt = min(target - closed)
        gens.append(int(nxt))
        closed = set(subspace_closure(S, gens).tolist())
    return gens


def _guard(S: FischerSpace, override: bool):
    if S.n > PLANE_GUARD and not override:
        raise SizeGuardError(
            f"plane enumeration refused for n={S.n} > {PLANE_GUARD}; pass override=True"
        )


def affine_planes(
    S: FischerSpace, through: Optional[int] = None, batch: int = 1 << 16, override: bool = False
) -> Iterator[np.ndarray]:
    """Stream the affine planes of ``S`` as (k, 9) arrays of sorted point indices.

    Each plane appears exactly once. With ``through`` only planes containing
    that point are produced.
    """
    _guard(S, override)
    if through is None:
        lines = all_lines(S)
        tag_through = -1
    else:
        lines = lines_through(S, through)
        tag_through = int(through)
    stamp = np.zeros(S.n, dtype=np.int64)
    nw = S.adjacency.words.shape[1]
    cap = max(batch, 2 * 64 * nw + 1)
    out = np.empty((cap, 9), dtype=np.int32)
    start = 0
    tagbase = 0
    while start < lines.shape[0]:
        # line tags must never repeat across calls
        k, nxt = _planes_on_lines(
            S.third, S.adjacency.words, lines, start, out, stamp, tag_through
        )
        if k:
            yield out[:k].copy()
        if nxt == start and k == 0:
            raise RuntimeError("plane enumeration made no progress")
        start = nxt
        tagbase += 1


def count_affine_planes(S: FischerSpace, through: Optional[int] = None, override: bool = False) -> int:
    return sum(len(b) for b in affine_planes(S, through=through, override=override))


def line_plane_profile(S: FischerSpace, lines: Optional[np.ndarray] = None):
    """Affine and dual-affine plane counts on each line.

    Every point off a line ``l`` collinear with all three points of ``l`` lies in
    exactly one affine plane on ``l`` (six such points per plane); every point
    collinear with exactly two lies in one dual affine plane (three per plane).
    """
    if lines is None:
        lines = all_lines(S)
    all3, two = _line_profile(S.adjacency.words, np.asarray(lines, dtype=np.int32))
    if (all3 % 6).any() or (two % 3).any():
        raise ValueError("line profile is not consistent with a Fischer space")
    return all3 // 6, two // 3


def plane_census(S: FischerSpace, override: bool = False) -> dict:
    """Exact counts of lines and affine planes by full enumeration."""
    _guard(S, override)
    lines = all_lines(S)
    per_point_lines = S.valencies() // 2
    affine_per_line, dual_per_line = line_plane_profile(S, lines)
    per_point = np.zeros(S.n, dtype=np.int64)
    total = 0
    for block in affine_planes(S, override=override):
        total += len(block)
        np.add.at(per_point, block.ravel(), 1)
    if int(affine_per_line.sum()) != 12 * total:
        raise AssertionError("double count of (line, affine plane) incidences failed")
    return {
        "lines": int(lines.shape[0]),
        "linesPerPoint": _distinct(per_point_lines),
        "affinePlanes": int(total),
        "affinePerLine": _distinct(affine_per_line),
        "dualAffinePerLine": _distinct(dual_per_line),
        "affinePerPoint": _distinct(per_point),
    }


def _distinct(values) -> list:
    return sorted(int(v) for v in np.unique(values))


def tau_classes(S: FischerSpace) -> list:
    """Classes of points with identical collinearity rows (A_d = A_e)."""
    return _group_rows(S.adjacency.words)


def theta_classes(S: FischerSpace) -> list:
    """Classes of points with identical non-collinear sets (D_d = D_e)."""
    rows = S.adjacency.words.copy()
    idx = np.arange(S.n)
    rows[idx, idx >> 6] |= np.uint64(1) << (idx & 63).astype(np.uint64)
    return _group_rows(rows)


def _group_rows(rows: np.ndarray) -> list:
    groups = {}
    for i in range(rows.shape[0]):
        groups.setdefault(rows[i].tobytes(), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def class_summary(classes: list) -> dict:
    sizes = sorted({len(c) for c in classes})
    return {"sizes": sizes, "trivial": sizes == [1] or sizes == []}


@dataclass(frozen=True)
class SRG:
    v: int
    k: int
    lam: int
    mu: int

    def astuple(self):
        return (self.v, self.k, self.lam, self.mu)


def srg_params(S: FischerSpace) -> Optional[SRG]:
    """(v, k, lambda, mu) if the collinearity graph is strongly regular, else None.

    Complete and edgeless graphs count as not strongly regular here.
    """
    val = S.valencies()
    if S.n < 3 or val.min() != val.max():
        return None
    k = int(val[0])
    if k == 0 or k == S.n - 1:
        return None
    lmin, lmax, mmin, mmax = _srg_counts(S.adjacency.words, S.n)
    if lmin != lmax or mmin != mmax or mmax == 0:
        return None
    return SRG(S.n, k, int(lmin), int(mmin))


def has_affine_3space(S: FischerSpace, override: bool = False):
    """Search for a 27-point subspace in which every two points are collinear.

    Returns (found, witness) with witness a sorted point array or None.
    """
    third = S.third
    adj = S.adjacency.words
    stamp = np.zeros(S.n, dtype=np.int64)
    tag = 0
    for block in affine_planes(S, override=override):
        for plane in block:
            common = np.bitwise_and.reduce(adj[plane], axis=0)
            cand = np.flatnonzero(_unpack_row(common, S.n))
            for p in cand:
                tag += 1
                pts = _closure(third, np.append(plane, p).astype(np.int64), 27, stamp, tag)
                if len(pts) == 27:
                    sub = third[np.ix_(pts, pts)]
                    if ((sub >= 0).sum(axis=1) == 26).all():
                        return True, np.sort(pts)
    return False, None


def _unpack_row(words, n):
    from .gf2 import unpack_rows

    return unpack_rows(words.reshape(1, -1), n)[0]


def plane_collinearity_profile(S: FischerSpace, planes: np.ndarray) -> list:
    """Distinct numbers of plane points collinear with an outside point."""
    adj = S.adjacency.to_dense() if S.n <= 4000 else None
    seen = set()
    for plane in planes:
        if adj is not None:
            counts = adj[:, plane].sum(axis=1)
        else:
            counts = (S.third[:, plane] >= 0).sum(axis=1)
        mask = np.ones(S.n, dtype=bool)
        mask[plane] = False
        seen.update(np.unique(counts[mask]).tolist())
    return sorted(int(x) for x in seen)


def validate(S: FischerSpace, max_pairs: int = 100_000, seed: int = 0,
             exhaustive_limit: int = 1000) -> list:
    """Check the structural invariants of a Fischer space; returns violations.

    Pairs of intersecting lines are checked exhaustively when ``n`` is at most
    ``exhaustive_limit``, otherwise ``max_pairs`` random pairs are drawn.
    """
    problems = []
    third = S.third.astype(np.int64)
    n = S.n
    adj = third >= 0
    if not np.array_equal(adj, adj.T):
        problems.append("collinearity is not symmetric")
    if adj[np.arange(n), np.arange(n)].any():
        problems.append("a point is collinear with itself")
    if not np.array_equal(np.where(adj, third, -1), np.where(adj.T, third.T, -1)):
        problems.append("third-point map is not symmetric")
    ii, jj = np.nonzero(adj)
    kk = third[ii, jj]
    if (kk == ii).any() or (kk == jj).any():
        problems.append("third point coincides with a line point")
    if not (adj[ii, kk].all() and adj[jj, kk].all()):
        problems.append("line points are not pairwise collinear")
    elif not (np.array_equal(third[ii, kk], jj) and np.array_equal(third[jj, kk], ii)):
        problems.append("third-point map is not involutive on lines")
    if problems:
        return problems

    rng = np.random.default_rng(seed)
    ds = np.arange(n) if n <= exhaustive_limit else rng.choice(n, size=min(n, 64), replace=False)
    if _check_conjugation(S.third, ds.astype(np.int64)):
        problems.append("a conjugation map does not preserve collinearity")

    triples = _intersecting_line_pairs(S, rng, max_pairs, exhaustive=n <= exhaustive_limit)
    if len(triples):
        stamp = np.zeros(n, dtype=np.int64)
        counts = _check_plane_pairs(S.third, S.adjacency.words, triples, stamp)
        if counts[2]:
            problems.append(f"{int(counts[2])} pairs of intersecting lines generate no plane")
    return problems


def _intersecting_line_pairs(S: FischerSpace, rng, max_pairs: int, exhaustive: bool) -> np.ndarray:
    """Triples (x, y, z): lines xy and xz distinct."""
    third = S.third
    out = []
    if exhaustive:
        for x in range(S.n):
            nb = np.flatnonzero(third[x] >= 0)
            t = third[x, nb]
            reps = nb[nb < t]
            if len(reps) < 2:
                continue
            iu, ju = np.triu_indices(len(reps), 1)
            out.append(np.stack([np.full(len(iu), x), reps[iu], reps[ju]], axis=1))
        return np.concatenate(out).astype(np.int64) if out else np.empty((0, 3), np.int64)
    val = S.valencies()
    centers = np.flatnonzero(val >= 4)
    if len(centers) == 0:
        return np.empty((0, 3), np.int64)
    res = np.empty((max_pairs, 3), dtype=np.int64)
    m = 0
    while m < max_pairs:
        x = int(rng.choice(centers))
        nb = np.flatnonzero(third[x] >= 0)
        y, z = rng.choice(nb, size=2, replace=False)
        if third[x, y] == z:
            continue
        res[m] = (x, y, z)
        m += 1
    return res
