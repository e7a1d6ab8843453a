"""Arithmetic in GF(2), GF(3), GF(4) and the forms used by the classical constructions.

GF(4) elements are 2-bit codes: 0 -> 0, 1 -> 1, w -> 2, w^2 = w + 1 -> 3.
Addition is XOR of codes, multiplication is a table lookup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

ZERO, ONE, W, W2 = 0, 1, 2, 3
GF4_NONZERO = (ONE, W, W2)
GF4_NAMES = ("0", "1", "w", "w^2")

# log table over the cyclic group <w>: 1 = w^0, w = w^1, w^2 = w^2
_LOG = {ONE: 0, W: 1, W2: 2}
_EXP = (ONE, W, W2)

GF4_MUL = np.zeros((4, 4), dtype=np.uint8)
for _a in GF4_NONZERO:
    for _b in GF4_NONZERO:
        GF4_MUL[_a, _b] = _EXP[(_LOG[_a] + _LOG[_b]) % 3]
GF4_MUL.setflags(write=False)

GF4_CONJ = np.array([ZERO, ONE, W2, W], dtype=np.uint8)
GF4_CONJ.setflags(write=False)
GF4_INV = np.array([0, ONE, W2, W], dtype=np.uint8)  # entry 0 unused
GF4_INV.setflags(write=False)


def gf4_add(a: int, b: int) -> int:
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    return int(GF4_MUL[a, b])


def gf4_conj(a: int) -> int:
    """Frobenius map a -> a^2, the non-trivial automorphism of GF(4)."""
    return int(GF4_CONJ[a])


def gf4_inv(a: int) -> int:
    if a == ZERO:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return int(GF4_INV[a])


def gf4_trace(a: int) -> int:
    """Absolute trace a + a^2, an element of GF(2)."""
    return a ^ gf4_conj(a)


def gf3(x: int) -> int:
    return x % 3


KINDS = ("symplectic-F2", "orthogonal-F2", "orthogonal-F3", "hermitian-F4")
_MODULUS = {"symplectic-F2": 2, "orthogonal-F2": 2, "orthogonal-F3": 3}


@dataclass(frozen=True)
class FormSpace:
    """A vector space with a nondegenerate form given by its Gram matrix.

    For the orthogonal kinds ``quad_diag`` optionally stores the diagonal of a
    quadratic form (F3 forms are always kept diagonal).
    """

    kind: str
    gram: np.ndarray
    quad_diag: Optional[tuple] = None
    dim: int = field(init=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown form kind {self.kind!r}")
        gram = np.array(self.gram, dtype=np.int64)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise ValueError("gram must be a square matrix")
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "dim", gram.shape[0])
        if self.quad_diag is not None:
            if not self.kind.startswith("orthogonal"):
                raise ValueError("quad_diag only applies to orthogonal kinds")
            if len(self.quad_diag) != self.dim:
                raise ValueError("quad_diag length must equal dim")
            object.__setattr__(self, "quad_diag", tuple(int(q) for q in self.quad_diag))

    @classmethod
    def diagonal_f3(cls, diag) -> "FormSpace":
        diag = tuple(int(d) % 3 for d in diag)
        return cls("orthogonal-F3", np.diag(diag), quad_diag=diag)

    @classmethod
    def hermitian_identity(cls, dim: int) -> "FormSpace":
        return cls("hermitian-F4", np.eye(dim, dtype=np.int64))

    def _check(self, *vectors):
        for v in vectors:
            if len(v) != self.dim:
                raise ValueError(f"vector of length {len(v)} in a space of dimension {self.dim}")


def form_eval(space: FormSpace, u, v) -> int:
    """Evaluate u^T . gram . sigma(v); sigma is conjugation for the Hermitian kind."""
    space._check(u, v)
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if space.kind == "hermitian-F4":
        vbar = GF4_CONJ[v]
        acc = 0
        for i in range(space.dim):
            for j in range(space.dim):
                g = int(space.gram[i, j])
                if g and u[i] and vbar[j]:
                    acc ^= gf4_mul(gf4_mul(int(u[i]), g), int(vbar[j]))
        return acc
    return int(u @ space.gram @ v) % _MODULUS[space.kind]


def quad_eval(space: FormSpace, v) -> int:
    """Q(v) = sum of quad_diag[i] * v[i]^2."""
    if space.quad_diag is None or not space.kind.startswith("orthogonal"):
        raise ValueError(f"{space.kind} space carries no quadratic form")
    space._check(v)
    v = np.asarray(v, dtype=np.int64)
    return int(np.dot(space.quad_diag, v * v)) % _MODULUS[space.kind]


def discriminant_f3(space: FormSpace) -> int:
    """Determinant of the Gram matrix as +1 / -1."""
    if space.kind != "orthogonal-F3":
        raise ValueError("discriminant is only defined here for orthogonal-F3 spaces")
    det = int(round(np.linalg.det(space.gram))) % 3
    if det == 0:
        raise ValueError("degenerate form")
    return 1 if det == 1 else -1
