"""Exact modular linear solver, checked against exhaustive search."""

import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from zcenter.snf import solve_modular_linear


def brute_solvable(A, b, N):
    cols = len(A[0]) if A else 0
    for x in itertools.product(range(N), repeat=cols):
        if all(sum(a * xi for a, xi in zip(row, x)) % N == r % N
               for row, r in zip(A, b)):
            return True
    return False


def check_witness(A, b, N, x):
    assert x is not None
    assert all(v % N == v for v in x)
    for row, r in zip(A, b):
        assert sum(a * xi for a, xi in zip(row, x)) % N == r % N


def test_small_random_grid():
    rng = np.random.default_rng(42)
    for trial in range(60):
        N = int(rng.integers(2, 13))
        rows = int(rng.integers(1, 4))
        cols = int(rng.integers(1, 4))
        A = rng.integers(-10, 10, size=(rows, cols)).tolist()
        b = rng.integers(-10, 10, size=rows).tolist()
        x = solve_modular_linear(A, b, N)
        if x is None:
            assert not brute_solvable(A, b, N)
        else:
            check_witness(A, b, N, x)


def test_known_instances():
    # 2x = 1 mod 4 has no solution; 2x = 2 mod 4 does
    assert solve_modular_linear([[2]], [1], 4) is None
    x = solve_modular_linear([[2]], [2], 4)
    check_witness([[2]], [2], 4, x)
    # inconsistent pair
    assert solve_modular_linear([[1], [1]], [0, 1], 5) is None
    # underdetermined
    x = solve_modular_linear([[1, 1]], [3], 7)
    check_witness([[1, 1]], [3], 7, x)


def test_modulus_one_always_solvable():
    x = solve_modular_linear([[3, 1], [2, 2]], [5, 7], 1)
    assert x == [0, 0]


def test_degenerate_shapes():
    assert solve_modular_linear([], [], 6) == []
    x = solve_modular_linear([[0, 0]], [0], 6)
    check_witness([[0, 0]], [0], 6, x)
    assert solve_modular_linear([[0]], [3], 6) is None
    # zero row with zero rhs and a live row
    x = solve_modular_linear([[0], [2]], [0, 4], 6)
    check_witness([[0], [2]], [0, 4], 6, x)


def test_large_entries_stay_exact():
    A = [[10 ** 12 + 7, -(10 ** 9)], [3, 10 ** 15]]
    b = [123456789, -987654321]
    N = 997
    x = solve_modular_linear(A, b, N)
    if x is not None:
        check_witness(A, b, N, x)
    # compare against brute force on the reduced system
    Ar = [[a % N for a in row] for row in A]
    br = [v % N for v in b]
    xr = solve_modular_linear(Ar, br, N)
    assert (x is None) == (xr is None)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9),
       st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2),
                min_size=1, max_size=3),
       st.lists(st.integers(0, 8), min_size=1, max_size=3))
def test_planted_solutions_found(N, A, xs):
    """If b is built from a known x0, the solver must report solvable."""
    x0 = [xs[0] % N, xs[-1] % N]
    b = [sum(a * xi for a, xi in zip(row, x0)) % N for row in A]
    x = solve_modular_linear(A, b, N)
    check_witness(A, b, N, x)
