"""Permutations, conjugacy-class closure and the pairwise structure of a class.

Permutations act on the right: ``compose(p, q)`` first applies ``p`` then ``q``,
so ``compose(p, q)[i] == q[p[i]]``. Images are stored 0-based; text formats use
1-based points.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import reduce

import numpy as np
from numba import njit


class OrbitCapExceeded(RuntimeError):
    """The conjugacy orbit grew beyond the configured cap."""


class NotThreeTransposition(ValueError):
    """Some product of two class elements has order outside {1, 2, 3}."""


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("images must be 1-d")
        check = np.zeros(arr.size, dtype=bool)
        if arr.size and (arr.min() < 0 or arr.max() >= arr.size):
            raise ValueError("images out of range")
        check[arr] = True
        if not check.all():
            raise ValueError("images do not form a bijection")
        arr.setflags(write=False)
        self.images = arr

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(np.arange(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        """Cycles given as sequences of 1-based points."""
        img = np.arange(degree)
        seen = set()
        for cyc in cycles:
            pts = [int(x) - 1 for x in cyc]
            if any(p < 0 or p >= degree for p in pts):
                raise ValueError(f"cycle {tuple(cyc)} leaves 1..{degree}")
            if seen.intersection(pts) or len(set(pts)) != len(pts):
                raise ValueError("cycles are not disjoint")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return self.images.size

    def cycles(self):
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(self.images[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(self.images[x])
            if len(cyc) > 1:
                out.append(tuple(c + 1 for c in cyc))
        return out

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Permutation(inv)

    def key(self) -> bytes:
        return self.images.tobytes()

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return tuple(self.images) < tuple(other.images)

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, k: int):
        k = int(k)
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def __repr__(self):
        cyc = "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation({cyc or '()'}, degree={self.degree})"


def _same_degree(p: Permutation, q: Permutation):
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    _same_degree(p, q)
    return Permutation(q.images[p.images])


def order(p: Permutation) -> int:
    lengths = [len(c) for c in p.cycles()]
    return reduce(math.lcm, lengths, 1)


def conjugate(d: Permutation, g: Permutation) -> Permutation:
    """d^g = g^-1 d g."""
    _same_degree(d, g)
    ginv = g.inverse()
    return Permutation(g.images[d.images[ginv.images]])


@dataclass(frozen=True)
class GeneratorSet:
    degree: int
    gens: tuple
    seed: Permutation
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")
        if self.seed.degree != self.degree:
            raise ValueError("seed degree mismatch")
        if order(self.seed) != 2:
            raise ValueError("seed must be an involution")


def class_closure(gs: GeneratorSet, cap: int = 500_000) -> list:
    """The conjugacy class of the seed under the group generated by ``gs.gens``.

    Breadth-first over conjugation by each generator; returned sorted by image
    arrays so the order is canonical.
    """
    pairs = [(g.images, g.inverse().images) for g in gs.gens]
    seen = {gs.seed.key(): gs.seed.images}
    queue = deque([gs.seed.images])
    while queue:
        d = queue.popleft()
        for g, ginv in pairs:
            c = g[d[ginv]]
            k = c.tobytes()
            if k not in seen:
                seen[k] = c
                if len(seen) > cap:
                    raise OrbitCapExceeded(f"orbit exceeds cap {cap}")
                queue.append(c)
    arr = np.array(list(seen.values()), dtype=np.int32)
    order_idx = np.lexsort(arr.T[::-1])
    return [Permutation(arr[i]) for i in order_idx]


def _distinguishing_base(images: np.ndarray) -> np.ndarray:
    """Points whose images separate all the given permutations."""
    n, degree = images.shape
    base = []
    ids = np.zeros(n, dtype=np.int64)
    for x in range(degree):
        _, new_ids = np.unique(np.stack([ids, images[:, x]], axis=1), axis=0, return_inverse=True)
        new_ids = new_ids.ravel()
        if new_ids.max() > ids.max():
            base.append(x)
            ids = new_ids
            if ids.max() == n - 1:
                break
    if n and ids.max() != n - 1:
        raise ValueError("class contains repeated elements")
    return np.array(base, dtype=np.int64)


@njit(cache=True)
def _hash_tuple(vals):
    h = np.uint64(1469598103934665603)
    for v in vals:
        h = (h ^ np.uint64(v + 1)) * np.uint64(1099511628211)
    return h


@njit(cache=True)
def _conjugation_table(images, base):
    """t[i, j] = index of d_j d_i d_j, located through images on ``base``."""
    n = images.shape[0]
    m = base.shape[0]
    keys = np.empty((n, m), dtype=np.int64)
    hashes = np.empty(n, dtype=np.uint64)
    for i in range(n):
        for b in range(m):
            keys[i, b] = images[i, base[b]]
        hashes[i] = _hash_tuple(keys[i])
    order = np.argsort(hashes)
    sorted_h = hashes[order]
    t = np.full((n, n), -1, dtype=np.int64)
    q = np.empty(m, dtype=np.int64)
    for j in range(n):
        dj = images[j]
        for i in range(n):
            di = images[i]
            for b in range(m):
                q[b] = dj[di[dj[base[b]]]]
            h = _hash_tuple(q)
            lo = np.searchsorted(sorted_h, h)
            while lo < n and sorted_h[lo] == h:
                cand = order[lo]
                same = True
                for b in range(m):
                    if keys[cand, b] != q[b]:
                        same = False
                        break
                if same:
                    t[i, j] = cand
                    break
                lo += 1
    return t


def collinearity_from_orders(D: list):
    """Adjacency and third-point table of a class of involutions.

    ``d_i`` and ``d_j`` are collinear iff their product has order 3, which for
    involutions means they do not commute and d_i^{d_j} = d_j^{d_i}; that
    common conjugate is the third point. Raises NotThreeTransposition if some
    product has order other than 1, 2 or 3, or if the class is not closed.
    """
    from .gf2 import BitMatrix

    if not D:
        return BitMatrix.zeros(0, 0), np.zeros((0, 0), dtype=np.int32)
    images = np.stack([d.images for d in D]).astype(np.int64)
    base = _distinguishing_base(images)
    t = _conjugation_table(images, base)
    if (t < 0).any():
        raise NotThreeTransposition("the set is not closed under conjugation")
    n = len(D)
    idx = np.arange(n)
    commute = t == idx[:, None]
    if not np.array_equal(commute, commute.T):
        raise NotThreeTransposition("commutation is not symmetric")
    bad = ~commute & (t != t.T)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise NotThreeTransposition(
            f"product of elements {i} and {j} has order {order(compose(D[i], D[j]))}"
        )
    third = np.where(commute, -1, t).astype(np.int32)
    return BitMatrix.from_dense(~commute), third
