"""Vectors over GF(2^m) with rank-metric semantics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import Field
from .linalg import (
    BitMatrix,
    Subspace,
    bits_to_ints,
    express_in,
    int_rank,
    ints_to_bits,
    subspace_from_generators,
)


@dataclass(frozen=True)
class RkVector:
    """Length-n vector over GF(2^m); coordinates are int-encoded elements."""

    field: Field
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        for c in self.coords:
            if c < 0 or c >> self.field.m:
                raise ValueError(f"0x{c:x} is not an element of GF(2^{self.field.m})")

    @classmethod
    def zero(cls, field: Field, n: int) -> "RkVector":
        return cls(field, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.coords)

    def _check(self, other: "RkVector") -> None:
        if other.field != self.field:
            raise ValueError("modulus mismatch")
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "RkVector") -> "RkVector":
        self._check(other)
        return RkVector(self.field, tuple(a ^ b for a, b in zip(self.coords, other.coords)))

    __sub__ = __add__

    def scale(self, gamma: int) -> "RkVector":
        mul = self.field.mul
        return RkVector(self.field, tuple(mul(gamma, c) for c in self.coords))

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def unfold(v: RkVector) -> BitMatrix:
    """m x n matrix over GF(2); column j holds the coefficients of v_j."""
    return BitMatrix(ints_to_bits(v.coords, v.field.m).T)


def fold(mat: BitMatrix, field: Field) -> RkVector:
    if mat.rows != field.m:
        raise ValueError(f"expected {field.m} rows, got {mat.rows}")
    return RkVector(field, bits_to_ints(mat.bits.T))


def rank_weight(v: RkVector) -> int:
    return int_rank(v.coords)


def support(v: RkVector) -> Subspace:
    return subspace_from_generators(v.coords, v.field.m)


@dataclass(frozen=True)
class SupportDecomposition:
    """v = basis · matrix with basis in GF(2^m)^w and matrix in GF(2)^{w x n}."""

    basis: tuple[int, ...]
    matrix: BitMatrix

    @property
    def w(self) -> int:
        return len(self.basis)


def support_decompose(v: RkVector) -> SupportDecomposition:
    """Split v over the canonical (RREF) basis of its support."""
    supp = support(v)
    if supp.dim == 0:
        raise ValueError("the zero vector has no support basis")
    cols = [express_in(supp.rows, c) for c in v.coords]
    matrix = np.array(cols, dtype=np.uint8).T
    return SupportDecomposition(supp.rows, BitMatrix(matrix))


def recompose(field: Field, basis: Sequence[int], matrix: BitMatrix) -> RkVector:
    """basis · matrix; matrix is binary so each coordinate is an XOR."""
    if matrix.rows != len(basis):
        raise ValueError("basis length and matrix rows disagree")
    coords = [0] * matrix.cols
    for e, row in zip(basis, matrix.bits):
        for j in np.flatnonzero(row):
            coords[j] ^= e
    return RkVector(field, tuple(coords))


def sample_rank_vector(rng, field: Field, n: int, w: int) -> RkVector:
    """Vector of rank weight exactly w.

    ``rng`` only needs ``getrandbits``.  Both factors are drawn by rejection:
    w independent field elements, then a rank-w binary w x n matrix.
    """
    m = field.m
    if not 0 <= w <= min(m, n):
        raise ValueError(f"rank weight {w} out of range for m={m}, n={n}")
    if w == 0:
        return RkVector.zero(field, n)
    while True:
        basis = [rng.getrandbits(m) for _ in range(w)]
        if int_rank(basis) == w:
            break
    while True:
        rows = [rng.getrandbits(n) for _ in range(w)]
        if int_rank(rows) == w:
            break
    coords = [0] * n
    for e, row in zip(basis, rows):
        while row:
            low = row & -row
            coords[low.bit_length() - 1] ^= e
            row ^= low
    return RkVector(field, tuple(coords))


def random_vector(rng, field: Field, n: int) -> RkVector:
    return RkVector(field, tuple(rng.getrandbits(field.m) for _ in range(n)))
