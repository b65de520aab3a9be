import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rqcs.field import Field
from rqcs.linalg import (
    BitMatrix,
    InconsistentSystemError,
    reduced_basis,
    rref,
    solve,
    subspace_from_generators,
    subspace_intersect,
    subspace_scale,
    zero_space,
)

from oracles import span


def random_matrix(r: random.Random, rows, cols, density=0.5):
    return BitMatrix([[int(r.random() < density) for _ in range(cols)] for _ in range(rows)])


def is_rref(bits: np.ndarray, rank: int, pivots: list[int]) -> bool:
    if bits[rank:].any():
        return False
    for row, p in enumerate(pivots):
        if bits[row, :p].any() or bits[row, p] != 1:
            return False
        if bits[:, p].sum() != 1:
            return False
    return pivots == sorted(pivots)


def test_rref_examples():
    eye = BitMatrix.identity(3)
    assert rref(eye) == (eye, 3, [0, 1, 2])
    z = BitMatrix.zeros(3, 4)
    assert rref(z)[:2] == (z, 0)
    red, rank, piv = rref(BitMatrix([[1, 1], [1, 1]]))
    assert red == BitMatrix([[1, 1], [0, 0]]) and rank == 1 and piv == [0]


def test_rref_properties(rng):
    for _ in range(200):
        rows, cols = rng.randint(1, 40), rng.randint(1, 90)
        m = random_matrix(rng, rows, cols, rng.choice([0.1, 0.5]))
        red, rank, piv = rref(m)
        assert is_rref(red.bits, rank, piv)
        assert rref(red)[0] == red
        # same row space as the input
        assert reduced_basis(m.int_rows()) == reduced_basis(red.int_rows())


def test_rref_rank_matches_int_engine(rng):
    for _ in range(200):
        m = random_matrix(rng, rng.randint(1, 70), rng.randint(1, 140))
        rows = m.int_rows()
        red, rank, _ = rref(m)
        assert rank == len(reduced_basis(rows))
        assert tuple(r for r in red.int_rows() if r) == reduced_basis(rows)


def test_solve_identity():
    b = np.array([1, 0, 1, 1], dtype=np.uint8)
    v, kernel = solve(BitMatrix.identity(4), b)
    assert np.array_equal(v, b) and kernel.rows == 0


def test_solve_inconsistent():
    with pytest.raises(InconsistentSystemError):
        solve(BitMatrix.zeros(3, 3), [1, 0, 0])


def test_solve_planted_full_column_rank(rng):
    for _ in range(20):
        while True:
            a = random_matrix(rng, 60, 40)
            if a.rank() == 40:
                break
        planted = np.array([rng.getrandbits(1) for _ in range(40)], dtype=np.uint8)
        v, kernel = solve(a, a.mul_vec(planted))
        assert np.array_equal(v, planted) and kernel.rows == 0


def test_solve_fuzz(rng):
    for _ in range(1000):
        rows, cols = rng.randint(1, 20), rng.randint(1, 20)
        a = random_matrix(rng, rows, cols)
        x = np.array([rng.getrandbits(1) for _ in range(cols)], dtype=np.uint8)
        b = a.mul_vec(x)
        v, kernel = solve(a, b)
        assert np.array_equal(a.mul_vec(v), b)
        assert kernel.rows == cols - a.rank()
        for k in kernel.bits:
            assert not a.mul_vec(k).any()
        if kernel.rows:
            combo = np.array([rng.getrandbits(1) for _ in range(kernel.rows)])
            assert np.array_equal(a.mul_vec((v + combo @ kernel.bits) & 1), b)


def test_solve_inconsistent_fuzz(rng):
    # A with a zero column block forces some b outside the column space
    for _ in range(100):
        a = random_matrix(rng, 12, 5)
        b = np.array([rng.getrandbits(1) for _ in range(12)], dtype=np.uint8)
        cols = {tuple(a.mul_vec([(c >> i) & 1 for i in range(5)])) for c in range(32)}
        if tuple(b) in cols:
            solve(a, b)
        else:
            with pytest.raises(InconsistentSystemError):
                solve(a, b)


def test_subspace_from_generators_examples():
    s = subspace_from_generators([0b10, 0b100, 0b110], 5)
    assert s.dim == 2 and s.rows == (0b10, 0b100)
    assert subspace_from_generators([], 5) == zero_space(5)


def test_subspace_membership_vs_enumeration(rng):
    for _ in range(500):
        m = rng.randint(2, 10)
        gens = [rng.getrandbits(m) for _ in range(rng.randint(0, 6))]
        s = subspace_from_generators(gens, m)
        elements = span(gens)
        assert set(s.elements()) == elements
        for x in range(1 << m):
            assert (x in s) == (x in elements)


def test_canonical_equality(rng):
    for _ in range(200):
        m = 10
        gens = [rng.getrandbits(m) for _ in range(4)]
        mixed = gens + [gens[0] ^ gens[1]]
        rng.shuffle(mixed)
        assert subspace_from_generators(gens, m) == subspace_from_generators(mixed, m)


def random_subspace(rng, m, max_dim=None):
    k = rng.randint(0, max_dim if max_dim is not None else m)
    return subspace_from_generators([rng.getrandbits(m) for _ in range(k)], m)


def test_intersect_examples(rng):
    u = random_subspace(rng, 10)
    assert subspace_intersect(u, u) == u
    assert subspace_intersect(u, zero_space(10)) == zero_space(10)


def test_intersect_vs_enumeration(rng):
    for _ in range(1000):
        m = rng.randint(2, 10)
        u, v = random_subspace(rng, m), random_subspace(rng, m)
        meet = subspace_intersect(u, v)
        assert set(meet.elements()) == set(u.elements()) & set(v.elements())


def test_dimension_formula(rng):
    for _ in range(1000):
        m = rng.randint(2, 40)
        u, v = random_subspace(rng, m), random_subspace(rng, m)
        assert (u + v).dim + subspace_intersect(u, v).dim == u.dim + v.dim


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        subspace_intersect(zero_space(3), zero_space(4))


def test_scale_examples(rng):
    F = Field.of_degree(10)
    u = random_subspace(rng, 10)
    assert subspace_scale(1, u, F) == u
    for _ in range(50):
        g = rng.getrandbits(10) or 1
        assert subspace_scale(F.inv(g), subspace_scale(g, u, F), F) == u
    with pytest.raises(ValueError):
        subspace_scale(0, u, F)


def test_scale_vs_enumeration(rng):
    for _ in range(300):
        m = rng.randint(3, 10)
        F = Field.of_degree(m)
        u = random_subspace(rng, m)
        g = rng.getrandbits(m) or 1
        scaled = subspace_scale(g, u, F)
        assert set(scaled.elements()) == {F.mul(g, x) for x in u.elements()}
        assert scaled.dim == u.dim


def test_scale_distributes_over_sum(rng):
    F = Field.of_degree(20)
    for _ in range(200):
        u, v = random_subspace(rng, 20, 8), random_subspace(rng, 20, 8)
        g = rng.getrandbits(20) or 1
        assert subspace_scale(g, u + v, F) == subspace_scale(g, u, F) + subspace_scale(g, v, F)


def test_basis_matrix_is_rref(rng):
    for _ in range(100):
        s = random_subspace(rng, 30)
        red, rank, _ = rref(s.basis)
        assert rank == s.dim and red == s.basis


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2**16 - 1), max_size=20))
def test_rref_idempotent(rows):
    m = BitMatrix.from_int_rows(rows, 16) if rows else BitMatrix.zeros(1, 16)
    red = rref(m)[0]
    assert rref(red)[0] == red
