"""
Tests for arithmetic and linear algebra over Z_p.
"""

import numpy as np
import pytest

from heisenberg_hsp.exceptions import InconsistentSystem, ZeroInverse
from heisenberg_hsp.zp_linalg import (
    BilinearForm,
    FormKind,
    SubspaceBasis,
    complement_basis,
    inv_mod,
    is_isotropic,
    is_square,
    is_totally_singular,
    kernel_basis,
    random_isotropic,
    rank_mod,
    solve_mod,
    sqrt_mod,
)


def test_inv_mod():
    assert inv_mod(2, 5) == 3
    assert inv_mod(1, 7) == 1
    assert inv_mod(4, 7) == 2
    with pytest.raises(ZeroInverse):
        inv_mod(0, 5)
    with pytest.raises(ZeroInverse):
        inv_mod(10, 5)


def test_sqrt_mod_picks_smaller_root():
    assert sqrt_mod(4, 5) == 2
    assert sqrt_mod(2, 5) is None
    assert sqrt_mod(2, 7) == 3
    assert sqrt_mod(0, 7) == 0
    assert is_square(1, 3) and not is_square(2, 3)


def test_kernel_basis():
    p = 3
    assert kernel_basis(np.eye(2, dtype=int), p).rank == 0
    assert kernel_basis(np.zeros((2, 2), dtype=int), p) == SubspaceBasis.full(p, 2)
    assert kernel_basis([[1, 1], [2, 2]], p).rows == ((1, 2),)


def test_kernel_vectors_are_annihilated():
    rng = np.random.default_rng(3)
    p = 5
    M = rng.integers(0, p, size=(3, 6))
    K = kernel_basis(M, p)
    assert K.rank == 6 - rank_mod(M, p)
    for row in K.rows:
        assert not np.any((M @ np.array(row)) % p)


def test_solve_mod():
    p = 7
    A = np.array([[1, 2], [3, 4]])
    b = np.array([5, 6])
    x = solve_mod(A, b, p)
    assert np.array_equal((A @ np.array(x)) % p, b % p)
    with pytest.raises(InconsistentSystem):
        solve_mod([[1, 1], [2, 2]], [1, 0], 3)


def test_complements():
    symplectic = BilinearForm(FormKind.SYMPLECTIC, 1)
    euclidean = BilinearForm(FormKind.EUCLIDEAN, 1)
    line = SubspaceBasis.span([(1, 1)], 3, 2)
    assert complement_basis(line, symplectic) == line
    assert complement_basis(SubspaceBasis.span([(1, 0)], 3, 2), euclidean) == SubspaceBasis.span([(0, 1)], 3, 2)
    assert complement_basis(SubspaceBasis(5, 2, ()), symplectic) == SubspaceBasis.full(5, 2)


def test_complement_dimension_and_double_complement():
    rng = np.random.default_rng(8)
    p, n = 5, 2
    form = BilinearForm(FormKind.SYMPLECTIC, n)
    for d in range(n + 1):
        S = random_isotropic(n, d, p, rng)
        perp = complement_basis(S, form)
        assert perp.rank == 2 * n - d
        assert S.is_subspace_of(perp)
        assert complement_basis(perp, form) == S


def test_random_isotropic():
    rng = np.random.default_rng(1)
    assert random_isotropic(1, 0, 3, rng).rank == 0
    assert random_isotropic(1, 1, 3, rng).rank == 1
    S = random_isotropic(2, 2, 3, rng)
    assert S.rank == 2 and is_isotropic(S)
    singular = random_isotropic(2, 2, 2, rng, singular=True)
    assert is_totally_singular(singular)


def test_subspace_equality_is_basis_independent():
    p = 5
    a = SubspaceBasis.span([(1, 2, 0, 0), (0, 0, 1, 3)], p, 4)
    b = SubspaceBasis.span([(1, 2, 1, 3), (2, 4, 0, 0)], p, 4)
    assert a == b
    assert a.contains((3, 1, 2, 1))
    assert a.reduce((3, 1, 2, 1)) == (0, 0, 0, 0)
    v = a.combination((2, 4))
    assert a.coordinates(v) == (2, 4)


if __name__ == '__main__':
    tests = [(name, fn) for name, fn in sorted(globals().items()) if name.startswith("test_") and callable(fn)]
    failures = 0
    for name, fn in tests:
        try:
            fn()
            print(f"PASS  {name}")
        except Exception as err:
            failures += 1
            print(f"FAIL  {name}: {type(err).__name__}: {err}")
    print(f"\n{'=' * 60}\n{len(tests) - failures}/{len(tests)} passed\n{'=' * 60}")
