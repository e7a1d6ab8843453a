"""Simply-laced root systems in their standard lattice models.

A_n lives in Z^{n+1} (e_i - e_j), D_n in Z^n (+-e_i +- e_j). E_8 uses the
even-coordinate-sum model with every coordinate doubled so all roots are
integral; E_7 and E_6 are the roots of E_8 orthogonal to fixed vectors.
A root is positive when its first nonzero coordinate is positive.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

SUPPORTED = ("A", "D", "E")


def _lex_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _roots_a(n):
    out = []
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                v = [0] * (n + 1)
                v[i], v[j] = 1, -1
                out.append(tuple(v))
    return out


def _roots_d(n):
    out = []
    for i, j in itertools.combinations(range(n), 2):
        for si in (1, -1):
            for sj in (1, -1):
                v = [0] * n
                v[i], v[j] = si, sj
                out.append(tuple(v))
    return out


def _roots_e8():
    out = []
    for v in _roots_d(8):
        out.append(tuple(2 * x for x in v))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            out.append(signs)
    return out


# E_7 = roots orthogonal to one E_8 root; E_6 = roots orthogonal to an A_2
# spanned by two E_8 roots. Both vectors below are roots of the doubled model.
_E7_PERP = [(1, 1, 1, 1, 1, 1, 1, 1)]
_E6_PERP = [(1, 1, 1, 1, 1, 1, 1, 1), (0, 0, 0, 0, 0, 0, 2, 2)]


@dataclass(eq=False)
class RootSystem:
    """Roots, positive roots, simple roots and addition table of a simply-laced system."""

    kind: str
    rank: int
    roots: np.ndarray = field(init=False, repr=False)
    positive: np.ndarray = field(init=False, repr=False)
    simple: np.ndarray = field(init=False, repr=False)
    coeffs: np.ndarray = field(init=False, repr=False)
    scale: int = field(init=False, default=1)

    def __post_init__(self):
        kind, n = self.kind.upper(), int(self.rank)
        self.kind = kind
        if kind == "A" and n >= 1:
            roots = _roots_a(n)
        elif kind == "D" and n >= 4:
            roots = _roots_d(n)
        elif kind == "E" and n in (6, 7, 8):
            roots = _roots_e8()
            self.scale = 2
            perp = {8: [], 7: _E7_PERP, 6: _E6_PERP}[n]
            roots = [r for r in roots if all(np.dot(r, p) == 0 for p in perp)]
        else:
            raise ValueError(f"unsupported root system {kind}{n}")
        pos = sorted((r for r in roots if _lex_positive(r)), reverse=True)
        self.positive = np.array(pos, dtype=np.int64)
        self.roots = np.concatenate([self.positive, -self.positive])
        self._index = {tuple(r): i for i, r in enumerate(self.roots.tolist())}
        pos_set = set(map(tuple, pos))
        decomposable = set()
        for a, b in itertools.combinations(pos, 2):
            s = tuple(x + y for x, y in zip(a, b))
            if s in pos_set:
                decomposable.add(s)
        self.simple = np.array([r for r in pos if r not in decomposable], dtype=np.int64)
        if len(self.simple) != n:
            raise AssertionError(f"found {len(self.simple)} simple roots, expected {n}")
        sol, *_ = np.linalg.lstsq(self.simple.T.astype(float), self.positive.T.astype(float), rcond=None)
        coeffs = np.rint(sol.T).astype(np.int64)
        if not np.array_equal(coeffs @ self.simple, self.positive) or (coeffs < 0).any():
            raise AssertionError("positive roots are not non-negative simple-root combinations")
        self.coeffs = coeffs

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def n_positive(self) -> int:
        return len(self.positive)

    def index(self, vec) -> int:
        """Index in ``roots`` (positives first, then their negatives), or -1."""
        return self._index.get(tuple(int(x) for x in vec), -1)

    def inner(self, a, b) -> int:
        return int(np.dot(a, b)) // (self.scale * self.scale)

    def sum_index(self, i: int, j: int) -> int:
        """Index of roots[i] + roots[j] if it is a root, else -1."""
        return self.index(self.roots[i] + self.roots[j])

    def negate(self, i: int) -> int:
        p = self.n_positive
        return i + p if i < p else i - p

    def cartan_pairing(self) -> np.ndarray:
        """Pairings (alpha, alpha_i) of every root with every simple root."""
        return (self.roots @ self.simple.T) // (self.scale * self.scale)


def expected_positive_count(kind: str, n: int) -> int:
    kind = kind.upper()
    if kind == "A":
        return n * (n + 1) // 2
    if kind == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]
