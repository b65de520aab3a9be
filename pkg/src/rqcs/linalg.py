"""Dense linear algebra over GF(2) and subspaces of GF(2^m).

Two elimination engines live here.  Small problems (subspaces of GF(2^m),
at most a few hundred rows) use Python ints as bit rows.  ``rref``/``solve``
on a :class:`BitMatrix` run a packed uint64 Gauss-Jordan in numpy, which is
what the key-recovery system (thousands of rows) needs.

Column j of a matrix is bit j of an int row; pivots are the lowest set bit,
so RREF here is the usual left-to-right RREF of the 0/1 array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import Field


class InconsistentSystemError(ValueError):
    """The linear system has no solution."""


# --- bit matrices ------------------------------------------------------------

class BitMatrix:
    """rows x cols matrix over GF(2), stored as a dense uint8 0/1 array."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        a = np.asarray(bits, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError("BitMatrix needs a 2-d array")
        self.bits = a & 1
        self.bits.flags.writeable = False

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], cols: int) -> "BitMatrix":
        return cls(ints_to_bits(rows, cols))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    def int_rows(self) -> list[int]:
        return bits_to_ints(self.bits)

    def rank(self) -> int:
        return rref(self)[1]

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        prod = self.bits.astype(np.int64) @ other.bits.astype(np.int64)
        return BitMatrix(prod & 1)

    def mul_vec(self, v) -> np.ndarray:
        return (self.bits.astype(np.int64) @ np.asarray(v, dtype=np.int64)) & 1

    def __eq__(self, other):
        return isinstance(other, BitMatrix) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.shape, self.bits.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"


def ints_to_bits(rows: Sequence[int], cols: int) -> np.ndarray:
    nbytes = max(1, (cols + 7) // 8)
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    raw = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


def bits_to_ints(bits: np.ndarray) -> list[int]:
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _pack64(bits: np.ndarray) -> np.ndarray:
    rows, cols = bits.shape
    words = max(1, (cols + 63) // 64)
    packed = np.packbits(bits, axis=1, bitorder="little")
    out = np.zeros((rows, words * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").copy()


def _unpack64(words: np.ndarray, cols: int) -> np.ndarray:
    raw = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


def _gauss_jordan(a: np.ndarray, pivot_cols: int) -> list[int]:
    """In-place RREF of packed rows ``a``; pivots searched in the first
    ``pivot_cols`` columns only.  Returns the pivot columns."""
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(pivot_cols):
        if r == nrows:
            break
        word, bit = divmod(c, 64)
        col = (a[:, word] >> np.uint64(bit)) & np.uint64(1)
        below = np.flatnonzero(col[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
            col[r], col[p] = col[p], col[r]
        hits = np.flatnonzero(col)
        hits = hits[hits != r]
        if hits.size:
            a[hits] ^= a[r]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, 0, []
    a = _pack64(m.bits)
    pivots = _gauss_jordan(a, m.cols)
    return BitMatrix(_unpack64(a, m.cols)), len(pivots), pivots


def solve(a: BitMatrix, b) -> tuple[np.ndarray, BitMatrix]:
    """Solve ``a @ v = b`` over GF(2).

    Returns a particular solution and a basis of the kernel (one row per
    free column).  Raises :class:`InconsistentSystemError` if there is none.
    """
    nrows, ncols = a.shape
    b = np.asarray(b, dtype=np.uint8).reshape(-1) & 1
    if b.shape[0] != nrows:
        raise ValueError(f"right-hand side has {b.shape[0]} entries, expected {nrows}")
    aug = np.zeros((nrows, ncols + 1), dtype=np.uint8)
    aug[:, :ncols] = a.bits
    aug[:, ncols] = b
    packed = _pack64(aug)
    pivots = _gauss_jordan(packed, ncols)
    red = _unpack64(packed, ncols + 1)
    rank = len(pivots)
    if red[rank:, ncols].any():
        raise InconsistentSystemError("system is inconsistent")

    particular = np.zeros(ncols, dtype=np.uint8)
    particular[pivots] = red[:rank, ncols]

    free = np.setdiff1d(np.arange(ncols), pivots)
    kernel = np.zeros((free.size, ncols), dtype=np.uint8)
    for k, f in enumerate(free):
        kernel[k, f] = 1
        kernel[k, pivots] = red[:rank, f]
    return particular, BitMatrix(kernel)


# --- int-row echelon bases (the small-problem engine) -------------------------

def echelon_insert(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against a fully reduced basis {pivot_bit: row} and add it
    if independent.  Returns the reduced remainder (0 if dependent)."""
    for low, row in basis.items():
        if v & low:
            v ^= row
    if v:
        low = v & -v
        for k, row in basis.items():
            if row & low:
                basis[k] = row ^ v
        basis[low] = v
    return v


def reduced_basis(vectors: Iterable[int]) -> tuple[int, ...]:
    """Canonical RREF basis of the span, sorted by pivot column."""
    basis: dict[int, int] = {}
    for v in vectors:
        echelon_insert(basis, v)
    return tuple(basis[k] for k in sorted(basis))


def int_rank(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    rank = 0
    for v in vectors:
        if echelon_insert(basis, v):
            rank += 1
    return rank


def reduce_by(basis: Sequence[int], v: int) -> int:
    """Remainder of ``v`` modulo a reduced basis (0 iff v is in the span)."""
    for row in basis:
        if v & (row & -row):
            v ^= row
    return v


def express_in(basis: Sequence[int], v: int) -> list[int] | None:
    """Coordinates of ``v`` over a reduced basis, or None if v is outside."""
    coords = []
    for row in basis:
        if v & (row & -row):
            v ^= row
            coords.append(1)
        else:
            coords.append(0)
    return coords if v == 0 else None


# --- subspaces of GF(2^m) ----------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """An F_2-subspace of GF(2^m) held as its canonical RREF basis.

    Equality is equality of the bases, which is equality of the spaces.
    """

    ambient_m: int
    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> BitMatrix:
        return BitMatrix.from_int_rows(self.rows, self.ambient_m)

    def __contains__(self, x: int) -> bool:
        return reduce_by(self.rows, x) == 0

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(v in self for v in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace(self.ambient_m, reduced_basis(self.rows + other.rows))

    def elements(self) -> list[int]:
        """Every vector of the space (2^dim of them); for small tests."""
        out = [0]
        for row in self.rows:
            out += [x ^ row for x in out]
        return out


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_m != v.ambient_m:
        raise ValueError(f"ambient mismatch: m={u.ambient_m} vs m={v.ambient_m}")


def zero_space(m: int) -> Subspace:
    return Subspace(m, ())


def subspace_from_generators(vectors: Iterable[int], m: int) -> Subspace:
    vectors = list(vectors)
    for v in vectors:
        if v < 0 or v >> m:
            raise ValueError(f"0x{v:x} is not an element of GF(2^{m})")
    return Subspace(m, reduced_basis(vectors))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """U ∩ V by the Zassenhaus block method.

    Rows (u|u) and (v|0) are reduced with the left block taking the pivots
    first; the rows whose left block vanishes carry a basis of U ∩ V on the
    right.
    """
    _check_ambient(u, v)
    m = u.ambient_m
    if not u.rows or not v.rows:
        return zero_space(m)
    low_mask = (1 << m) - 1
    basis: dict[int, int] = {}
    for x in u.rows:
        echelon_insert(basis, x | (x << m))
    for x in v.rows:
        echelon_insert(basis, x)
    meet = [row >> m for row in basis.values() if row & low_mask == 0]
    return Subspace(m, reduced_basis(meet))


def subspace_scale(gamma: int, u: Subspace, field: Field) -> Subspace:
    """{gamma * x : x in U}."""
    if gamma == 0:
        raise ValueError("cannot scale a subspace by zero")
    if field.m != u.ambient_m:
        raise ValueError("field does not match the subspace ambient space")
    return Subspace(u.ambient_m, reduced_basis(field.mul(gamma, x) for x in u.rows))
