"""Dense linear algebra over GF(2) on bit-packed rows.

Rows are packed little-endian into uint64 words: column ``j`` lives in word
``j >> 6`` at bit ``j & 63``. Padding bits past ``ncols`` are always zero.
"""
from __future__ import annotations

import numpy as np
from numba import njit

WORD = 64


def nwords(ncols: int) -> int:
    return (ncols + WORD - 1) // WORD


def pack_rows(dense) -> np.ndarray:
    """Pack a 2-d 0/1 array into uint64 words, one row per matrix row."""
    dense = np.asarray(dense)
    if dense.ndim != 2:
        raise ValueError("expected a 2-d array")
    nrows, ncols = dense.shape
    nw = nwords(ncols)
    padded = np.zeros((nrows, nw * WORD), dtype=np.uint8)
    padded[:, :ncols] = dense.astype(bool)
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(nrows, nw)


def unpack_rows(words: np.ndarray, ncols: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.uint64)
    nrows = words.shape[0]
    if nrows == 0 or words.shape[1] == 0:
        return np.zeros((nrows, ncols), dtype=np.uint8)
    as_bytes = words.astype("<u8", copy=False).view(np.uint8).reshape(nrows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :ncols]


class BitVector:
    """A vector over GF(2) of fixed length stored as packed words."""

    __slots__ = ("words", "length")

    def __init__(self, words: np.ndarray, length: int):
        self.words = np.ascontiguousarray(words, dtype=np.uint64)
        self.length = int(length)
        if self.words.shape != (nwords(self.length),):
            raise ValueError("word array does not match the vector length")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(np.zeros(nwords(length), dtype=np.uint64), length)

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = np.asarray(bits)
        return cls(pack_rows(bits.reshape(1, -1))[0], bits.size)

    @classmethod
    def from_support(cls, support, length: int) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        for i in support:
            bits[i] ^= 1
        return cls.from_bits(bits)

    def to_bits(self) -> np.ndarray:
        return unpack_rows(self.words.reshape(1, -1), self.length)[0]

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.to_bits())

    def __getitem__(self, j: int) -> int:
        return int((self.words[j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def __xor__(self, other: "BitVector") -> "BitVector":
        _same_length(self, other)
        return BitVector(self.words ^ other.words, self.length)

    __add__ = __xor__

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and self.length == other.length and bool(
            np.array_equal(self.words, other.words)
        )

    def __hash__(self):
        return hash((self.length, self.words.tobytes()))

    def dot(self, other: "BitVector") -> int:
        _same_length(self, other)
        return _parity_words(self.words & other.words)

    def weight(self) -> int:
        return int(_popcount_words(self.words))

    def any(self) -> bool:
        return bool(self.words.any())

    def __repr__(self):
        return f"BitVector({''.join(map(str, self.to_bits()))})"


def _same_length(a, b):
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} != {b.length}")


class BitMatrix:
    """A rectangular matrix over GF(2), rows packed into uint64 words."""

    __slots__ = ("words", "ncols")

    def __init__(self, words: np.ndarray, ncols: int):
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.ndim != 2 or words.shape[1] != nwords(ncols):
            raise ValueError("word array does not match the column count")
        self.words = words
        self.ncols = int(ncols)

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.asarray(dense)
        return cls(pack_rows(dense), dense.shape[1])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(np.zeros((nrows, nwords(ncols)), dtype=np.uint64), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows, ncols: int) -> "BitMatrix":
        rows = list(rows)
        if not rows:
            return cls.zeros(0, ncols)
        for r in rows:
            if r.length != ncols:
                raise ValueError("row length mismatch")
        return cls(np.stack([r.words for r in rows]), ncols)

    @property
    def nrows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.words, self.ncols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.words[i].copy(), self.ncols)

    def rows(self):
        return [self.row(i) for i in range(self.nrows)]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.words.copy(), self.ncols)

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.ncols == other.ncols
            and np.array_equal(self.words, other.words)
        )

    def matvec(self, v: BitVector) -> BitVector:
        """Product M.v over GF(2)."""
        if v.length != self.ncols:
            raise ValueError("length mismatch")
        bits = _matvec_kernel(self.words, v.words)
        return BitVector.from_bits(bits)

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        a = self.to_dense().astype(np.int64)
        b = other.to_dense().astype(np.int64)
        return BitMatrix.from_dense((a @ b) & 1)

    def to_hex_rows(self):
        """Each row as a big-endian hex string of ceil(ncols/4) digits, column 0 first."""
        dense = self.to_dense()
        width = (self.ncols + 3) // 4
        pad = width * 4 - self.ncols
        out = []
        for r in dense:
            bits = np.concatenate([r, np.zeros(pad, dtype=np.uint8)])
            nibbles = bits.reshape(-1, 4) @ np.array([8, 4, 2, 1])
            out.append("".join("0123456789abcdef"[x] for x in nibbles))
        return out

    @classmethod
    def from_hex_rows(cls, rows, ncols: int) -> "BitMatrix":
        width = (ncols + 3) // 4
        dense = np.zeros((len(rows), width * 4), dtype=np.uint8)
        for i, h in enumerate(rows):
            if len(h) != width:
                raise ValueError(f"hex row {i} has length {len(h)}, expected {width}")
            nib = np.array([int(c, 16) for c in h], dtype=np.uint8)
            dense[i] = ((nib[:, None] >> np.array([3, 2, 1, 0])) & 1).reshape(-1)
        if dense[:, ncols:].any():
            raise ValueError("nonzero padding bits in hex row")
        return cls.from_dense(dense[:, :ncols])

    def __repr__(self):
        return f"BitMatrix({self.nrows}x{self.ncols})"


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def _popcount_words(words):
    total = 0
    for w in words:
        total += _popcount64(w)
    return total


def _parity_words(words) -> int:
    return int(_popcount_words(words)) & 1


@njit(cache=True)
def _matvec_kernel(words, v):
    n = words.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        acc = np.uint64(0)
        for w in range(words.shape[1]):
            acc ^= words[i, w] & v[w]
        out[i] = _popcount64(acc) & np.uint64(1)
    return out


@njit(cache=True)
def _eliminate(a, ncols, reduced):
    """In-place Gaussian elimination with lowest-index pivoting.

    Returns the pivot columns; rows ``0..len(pivots)-1`` hold the echelon form
    (fully reduced when ``reduced`` is true).
    """
    nrows, nw = a.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    one = np.uint64(1)
    for col in range(ncols):
        if r == nrows:
            break
        w = col >> 6
        mask = one << np.uint64(col & 63)
        p = -1
        for i in range(r, nrows):
            if a[i, w] & mask:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(w, nw):
                t = a[p, k]
                a[p, k] = a[r, k]
                a[r, k] = t
        start = 0 if reduced else r + 1
        for i in range(start, nrows):
            if i != r and (a[i, w] & mask):
                for k in range(w, nw):
                    a[i, k] ^= a[r, k]
        pivots[r] = col
        r += 1
    return pivots[:r]


@njit(cache=True)
def _eliminate_m4r(a, ncols, k):
    """Forward elimination using Method-of-Four-Russians lookup tables.

    Columns are processed in strips of ``k``; pivots found in a strip are kept
    mutually reduced on their pivot columns so that every other row can be
    cleared with one table lookup.
    """
    nrows, nw = a.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    one = np.uint64(1)
    r = 0
    table = np.zeros((1 << k, nw), dtype=np.uint64)
    strip_piv = np.empty(k, dtype=np.int64)
    col = 0
    while col < ncols and r < nrows:
        end = min(col + k, ncols)
        npiv = 0
        for c in range(col, end):
            if r + npiv == nrows:
                break
            w = c >> 6
            mask = one << np.uint64(c & 63)
            p = -1
            for i in range(r + npiv, nrows):
                # reduce candidate against strip pivots on their pivot columns
                for q in range(npiv):
                    pc = strip_piv[q]
                    if a[i, pc >> 6] & (one << np.uint64(pc & 63)):
                        for t in range(col >> 6, nw):
                            a[i, t] ^= a[r + q, t]
                if a[i, w] & mask:
                    p = i
                    break
            if p < 0:
                continue
            dst = r + npiv
            if p != dst:
                for t in range(col >> 6, nw):
                    tmp = a[p, t]
                    a[p, t] = a[dst, t]
                    a[dst, t] = tmp
            for q in range(npiv):
                if a[r + q, w] & mask:
                    for t in range(col >> 6, nw):
                        a[r + q, t] ^= a[dst, t]
            strip_piv[npiv] = c
            npiv += 1
        if npiv > 0:
            w0 = col >> 6
            # table[idx] = XOR of strip pivot rows selected by the bits of idx
            for t in range(w0, nw):
                table[0, t] = 0
            for idx in range(1, 1 << npiv):
                low = 0
                while not (idx >> low) & 1:
                    low += 1
                prev = idx & (idx - 1)
                for t in range(w0, nw):
                    table[idx, t] = table[prev, t] ^ a[r + low, t]
            for i in range(r + npiv, nrows):
                idx = 0
                for q in range(npiv):
                    pc = strip_piv[q]
                    if a[i, pc >> 6] & (one << np.uint64(pc & 63)):
                        idx |= 1 << q
                if idx:
                    for t in range(w0, nw):
                        a[i, t] ^= table[idx, t]
            for q in range(npiv):
                pivots[r + q] = strip_piv[q]
            r += npiv
        col = end
    return pivots[:r]


def _work_copy(M: BitMatrix, inplace: bool) -> np.ndarray:
    return M.words if inplace else M.words.copy()


def rank(M: BitMatrix, method: str = "gauss", inplace: bool = False, strip: int = 8) -> int:
    """Rank over GF(2). ``method`` is ``"gauss"`` or ``"m4r"``; both are exact."""
    a = _work_copy(M, inplace)
    if a.shape[0] == 0 or M.ncols == 0:
        return 0
    if method == "gauss":
        return len(_eliminate(a, M.ncols, False))
    if method == "m4r":
        if not 1 <= strip <= 16:
            raise ValueError("strip width must be in 1..16")
        return len(_eliminate_m4r(a, M.ncols, strip))
    raise ValueError(f"unknown elimination method {method!r}")


def rref(M: BitMatrix, inplace: bool = False):
    """Reduced row echelon form; returns (matrix of nonzero rows, pivot columns)."""
    a = _work_copy(M, inplace)
    pivots = _eliminate(a, M.ncols, True)
    return BitMatrix(a[: len(pivots)].copy(), M.ncols), pivots


@njit(cache=True)
def _nullspace_from_rref(r_words, pivots, ncols):
    nw = r_words.shape[1]
    is_piv = np.full(ncols, -1, dtype=np.int64)
    for i in range(len(pivots)):
        is_piv[pivots[i]] = i
    nfree = ncols - len(pivots)
    out = np.zeros((nfree, nw), dtype=np.uint64)
    one = np.uint64(1)
    j = 0
    for f in range(ncols):
        if is_piv[f] >= 0:
            continue
        out[j, f >> 6] |= one << np.uint64(f & 63)
        fw = f >> 6
        fm = one << np.uint64(f & 63)
        for i in range(len(pivots)):
            if r_words[i, fw] & fm:
                p = pivots[i]
                out[j, p >> 6] |= one << np.uint64(p & 63)
        j += 1
    return out


def nullspace(M: BitMatrix) -> BitMatrix:
    """Basis (as rows) of {x : M x = 0}; it has ncols - rank(M) rows."""
    R, pivots = rref(M)
    return BitMatrix(_nullspace_from_rref(R.words, pivots, M.ncols), M.ncols)


# ---------------------------------------------------------------------------
# incremental echelon basis
# ---------------------------------------------------------------------------


@njit(cache=True)
def _reduce_dense(rows, piv_row, v, out):
    """out = v reduced against a fully reduced basis."""
    nw = v.shape[0]
    one = np.uint64(1)
    for t in range(nw):
        out[t] = v[t]
    for t in range(nw):
        word = v[t]
        while word:
            low = word & (~word + one)
            b = 0
            x = low
            while x > one:
                x >>= one
                b += 1
            col = t * 64 + b
            r = piv_row[col]
            if r >= 0:
                for s in range(nw):
                    out[s] ^= rows[r, s]
            word ^= low


@njit(cache=True)
def _reduce_sparse(rows, piv_row, support, out):
    """out = (sum of unit vectors in support) reduced against the basis."""
    nw = out.shape[0]
    one = np.uint64(1)
    for t in range(nw):
        out[t] = 0
    for x in support:
        out[x >> 6] ^= one << np.uint64(x & 63)
        r = piv_row[x]
        if r >= 0:
            # e_x + row_r clears the pivot and leaves the row's non-pivot tail
            for s in range(nw):
                out[s] ^= rows[r, s]


@njit(cache=True)
def _lowest_bit(v):
    one = np.uint64(1)
    for t in range(v.shape[0]):
        word = v[t]
        if word:
            b = 0
            while not (word >> np.uint64(b)) & one:
                b += 1
            return t * 64 + b
    return -1


@njit(cache=True)
def _adjoin(rows, piv_row, pivots, dim, residue):
    """Add a nonzero reduced residue as a new basis row; keep the basis reduced."""
    col = _lowest_bit(residue)
    w = col >> 6
    mask = np.uint64(1) << np.uint64(col & 63)
    nw = residue.shape[0]
    for i in range(dim):
        if rows[i, w] & mask:
            for s in range(nw):
                rows[i, s] ^= residue[s]
    for s in range(nw):
        rows[dim, s] = residue[s]
    piv_row[col] = dim
    pivots[dim] = col
    return dim + 1


@njit(cache=True)
def _insert_sparse_batch(rows, piv_row, pivots, dim, supports, scratch):
    """Insert each row of ``supports`` (index lists, -1 padded) into the basis."""
    for k in range(supports.shape[0]):
        sup = supports[k]
        m = 0
        while m < sup.shape[0] and sup[m] >= 0:
            m += 1
        _reduce_sparse(rows, piv_row, sup[:m], scratch)
        nz = False
        for s in range(scratch.shape[0]):
            if scratch[s]:
                nz = True
                break
        if nz:
            if dim == rows.shape[0]:
                return dim, k
            dim = _adjoin(rows, piv_row, pivots, dim, scratch)
    return dim, supports.shape[0]


class EchelonBasis:
    """A fully reduced echelon basis of a subspace of GF(2)^n, grown by insertion.

    Pivots are the lowest set bit of each row; no two rows share a pivot and
    every row is zero on the other rows' pivot columns. Single-writer.
    """

    def __init__(self, length: int, capacity: int | None = None):
        self.length = int(length)
        self._nw = nwords(self.length)
        cap = min(self.length, capacity if capacity is not None else 64) or 1
        self._rows = np.zeros((cap, self._nw), dtype=np.uint64)
        self._piv_row = np.full(max(self.length, 1), -1, dtype=np.int64)
        self._pivots = np.zeros(cap, dtype=np.int64)
        self.dim = 0
        self._scratch = np.zeros(self._nw, dtype=np.uint64)

    def _grow(self):
        cap = min(self.length, max(2 * self._rows.shape[0], 64))
        rows = np.zeros((cap, self._nw), dtype=np.uint64)
        rows[: self.dim] = self._rows[: self.dim]
        piv = np.zeros(cap, dtype=np.int64)
        piv[: self.dim] = self._pivots[: self.dim]
        self._rows, self._pivots = rows, piv

    def _check(self, v: BitVector):
        if v.length != self.length:
            raise ValueError(f"length mismatch: {v.length} != {self.length}")

    def reduce(self, v: BitVector) -> BitVector:
        self._check(v)
        out = np.zeros(self._nw, dtype=np.uint64)
        _reduce_dense(self._rows, self._piv_row, v.words, out)
        return BitVector(out, self.length)

    def __contains__(self, v: BitVector) -> bool:
        return not self.reduce(v).any()

    def insert(self, v: BitVector) -> bool:
        """Reduce ``v``; if a nonzero residue remains, adjoin it and return True."""
        residue = self.reduce(v)
        if not residue.any():
            return False
        if self.dim == self._rows.shape[0]:
            self._grow()
        self.dim = _adjoin(self._rows, self._piv_row, self._pivots, self.dim, residue.words)
        return True

    def insert_supports(self, supports: np.ndarray) -> int:
        """Insert many sparse vectors given as rows of indices (-1 padded).

        Returns the number of vectors that enlarged the basis.
        """
        supports = np.ascontiguousarray(supports, dtype=np.int64)
        if supports.ndim != 2:
            raise ValueError("supports must be 2-d")
        before = self.dim
        start = 0
        while start < supports.shape[0]:
            if self.dim == self._rows.shape[0]:
                self._grow()
            self.dim, done = _insert_sparse_batch(
                self._rows, self._piv_row, self._pivots, self.dim, supports[start:], self._scratch
            )
            start += done
        return self.dim - before

    @property
    def pivots(self) -> np.ndarray:
        return self._pivots[: self.dim].copy()

    def matrix(self) -> BitMatrix:
        return BitMatrix(self._rows[: self.dim].copy(), self.length)

    def complement(self) -> BitMatrix:
        """Basis of the orthogonal complement {y : y.b = 0 for all basis rows b}."""
        return BitMatrix(
            _nullspace_from_rref(self._rows[: self.dim], self._pivots[: self.dim], self.length),
            self.length,
        )

    def __len__(self):
        return self.dim
