"""Rotational (circulant) product on GF(2^m)^n.

a·b is the coefficient vector of a(X)·b(X) mod (X^n - 1) over GF(2^m), so
(a·b)_k = sum over i+j = k (mod n) of a_i b_j.  This makes
a·b = a [rot(b)]^T with [rot(b)]^T the circulant whose row i is b shifted
right by i.

The fast path lifts both vectors to 0/1 arrays indexed by (position, power
of z), convolves them with a 2-d FFT (cyclic in position, linear in z), takes
the result mod 2 and reduces the z-polynomials mod f.  Every entry of the
integer convolution is at most n*m, far inside float64's exact range.
"""

from __future__ import annotations

import numpy as np

from .field import Field
from .linalg import bits_to_ints, ints_to_bits
from .rank import RkVector


def _reduction_matrix(field: Field) -> np.ndarray:
    return ints_to_bits(field.reduction_table, field.m).astype(np.int64)


def _spectrum(v: RkVector, zlen: int) -> np.ndarray:
    bits = ints_to_bits(v.coords, v.field.m)
    return np.fft.rfft2(bits.astype(np.float64), s=(v.n, zlen))


def _from_spectrum(spec: np.ndarray, field: Field, n: int, zlen: int) -> RkVector:
    m = field.m
    conv = np.rint(np.fft.irfft2(spec, s=(n, zlen))).astype(np.int64) & 1
    out = conv[:, :m]
    if m > 1:
        out = (out + conv[:, m : 2 * m - 1] @ _reduction_matrix(field)) & 1
    return RkVector(field, tuple(bits_to_ints(out.astype(np.uint8))))


def _zlen(m: int) -> int:
    return 2 * m - 1


def rot_product(a: RkVector, b: RkVector) -> RkVector:
    a._check(b)
    z = _zlen(a.field.m)
    return _from_spectrum(_spectrum(a, z) * _spectrum(b, z), a.field, a.n, z)


def pair_product(ab: tuple[RkVector, RkVector], c: RkVector) -> tuple[RkVector, RkVector]:
    """(a, b)·c = (a·c, b·c), sharing the transform of c."""
    a, b = ab
    a._check(c)
    b._check(c)
    z = _zlen(c.field.m)
    sc = _spectrum(c, z)
    return (
        _from_spectrum(_spectrum(a, z) * sc, c.field, c.n, z),
        _from_spectrum(_spectrum(b, z) * sc, c.field, c.n, z),
    )


def rot_product_direct(a: RkVector, b: RkVector) -> RkVector:
    """Schoolbook O(n^2) convolution with field multiplications."""
    a._check(b)
    n = a.n
    mul = a.field.mul
    out = [0] * n
    for i, ai in enumerate(a.coords):
        if not ai:
            continue
        for j, bj in enumerate(b.coords):
            if bj:
                out[(i + j) % n] ^= mul(ai, bj)
    return RkVector(a.field, tuple(out))


def rot(b: RkVector) -> list[list[int]]:
    """rot(b) as an n x n list of field elements: entry (k, i) = b_{k-i}."""
    n = b.n
    return [[b.coords[(k - i) % n] for i in range(n)] for k in range(n)]


def vec_mat(a: RkVector, mat: list[list[int]]) -> RkVector:
    """a · mat for an n x n matrix over GF(2^m)."""
    mul = a.field.mul
    n = len(mat[0])
    out = [0] * n
    for ai, row in zip(a.coords, mat):
        if ai:
            for k, x in enumerate(row):
                if x:
                    out[k] ^= mul(ai, x)
    return RkVector(a.field, tuple(out))


def transpose(mat: list[list[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*mat)]
