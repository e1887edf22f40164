"""
Tests for irreps, characters, projectors, the Plancherel distribution and the dense QFT.
"""

from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from heisenberg_hsp.data import GroupElement, GroupParams, IrrepLabel, SubgroupClass
from heisenberg_hsp.exceptions import TooLarge, ZeroLabel
from heisenberg_hsp.group import all_elements, center_subgroup, full_group, random_element, random_subgroup, trivial_subgroup
from heisenberg_hsp.reps import (
    character,
    character_rank,
    chi,
    irrep_matrix,
    plancherel,
    projector,
    qft_dense,
    rho,
    rho_pauli,
)

G31 = GroupParams(3, 1)


def test_chi_examples():
    g = GroupElement(G31, (1,), (1,), 0)
    assert abs(chi((0,), (0,), g) - 1) < 1e-12
    assert abs(chi((1,), (2,), g) - 1) < 1e-12
    with pytest.raises(ValueError):
        chi((1, 0), (0,), g)


def test_rho_is_a_unitary_homomorphism():
    rng = np.random.default_rng(0)
    for params in (G31, GroupParams(5, 1), GroupParams(2, 2)):
        for _ in range(20):
            g, h = random_element(params, rng), random_element(params, rng)
            for k in range(1, params.p):
                R = rho(k, g)
                assert np.allclose(R @ R.conj().T, np.eye(params.register_dim))
                assert np.allclose(R @ rho(k, h), rho(k, g * h))
                assert np.allclose(rho_pauli(k, g), R)


def test_rho_shift_and_zero_label():
    params = GroupParams(5, 1)
    shift = rho(1, GroupElement(params, (2,), (0,), 0))
    assert np.allclose(shift, np.roll(np.eye(5), 2, axis=0))
    with pytest.raises(ZeroLabel):
        rho(5, GroupElement.identity(params))
    with pytest.raises(ZeroLabel):
        IrrepLabel.high_dim(0, 5)


def test_character_orthogonality():
    params = G31
    elements = list(all_elements(params))
    labels = [IrrepLabel.high_dim(k, 3) for k in (1, 2)]
    labels += [IrrepLabel.one_dim((a,), (b,), 3) for a in range(3) for b in range(3)]
    for a in labels:
        for b in labels:
            inner = sum(character(a, g) * np.conj(character(b, g)) for g in elements) / len(elements)
            assert abs(inner - (1 if a == b else 0)) < 1e-9
    assert sum(label.dimension(params) ** 2 for label in labels) == params.order


def test_character_is_trace_of_irrep_matrix():
    rng = np.random.default_rng(1)
    params = GroupParams(3, 2)
    for _ in range(10):
        g = random_element(params, rng)
        for label in (IrrepLabel.high_dim(2, 3), IrrepLabel.one_dim((1, 0), (2, 2), 3)):
            assert abs(np.trace(irrep_matrix(label, g)) - character(label, g)) < 1e-9


def test_projector_rank_matches_character_rank():
    rng = np.random.default_rng(2)
    params = GroupParams(3, 2)
    assert np.allclose(projector(IrrepLabel.high_dim(1, 3), trivial_subgroup(params)), np.eye(9))
    for cls in SubgroupClass:
        H = random_subgroup(params, cls, rng)
        for label in (IrrepLabel.high_dim(1, 3), IrrepLabel.one_dim((0, 1), (0, 0), 3)):
            P = projector(label, H)
            assert np.allclose(P @ P, P)
            assert abs(np.trace(P).real - float(character_rank(label, H))) < 1e-9


def test_plancherel_exact_masses():
    rng = np.random.default_rng(3)
    params = GroupParams(5, 1)
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=1)
    dist = plancherel(H)
    assert dist.total() == 1
    assert dist.one_dim_mass() == Fraction(1, 5)
    for k in range(1, 5):
        assert dist.probability(IrrepLabel.high_dim(k, 5)) == Fraction(1, 5)

    assert plancherel(full_group(params)).labels == [IrrepLabel.one_dim((0,), (0,), 5)]
    center = plancherel(center_subgroup(params))
    assert len(center.labels) == 25
    assert all(center.probability(label) == Fraction(1, 25) for label in center.labels)


GRID = [GroupParams(p, n) for p in (3, 5) for n in (1, 2)]


def character_sum_mass(label, H, elements):
    """d_rho / |G| * sum over H of the character, evaluated numerically."""
    params = H.params
    total = sum(character(label, h) for h in elements)
    return label.dimension(params) * total / params.order


def test_plancherel_masses_over_the_grid():
    rng = np.random.default_rng(5)
    for params in GRID:
        p, n = params.p, params.n
        for cls in SubgroupClass:
            for _ in range(20):
                H = random_subgroup(params, cls, rng)
                dist = plancherel(H)
                assert dist.total() == 1
                if cls is SubgroupClass.ABELIAN_NON_CENTRAL:
                    assert dist.one_dim_mass() == Fraction(1, p)
                    assert all(dist.probability(IrrepLabel.high_dim(k, p)) == Fraction(1, p) for k in range(1, p))
                else:
                    assert dist.high_dim_mass() == 0
                    assert dist.one_dim_mass() == 1
                one_dim = [label for label in dist.labels if not label.is_high_dim]
                assert len(one_dim) == p ** (2 * n - H.dim)
                assert all(dist.probability(label) == Fraction(H.order, params.order) for label in one_dim)

                if H.order > 125:
                    continue
                elements = list(H.elements())
                outside = [
                    IrrepLabel.one_dim([int(e) for e in rng.integers(0, p, n)], [int(e) for e in rng.integers(0, p, n)], p)
                    for _ in range(10)
                ]
                high = [IrrepLabel.high_dim(k, p) for k in range(1, p)]
                for label in one_dim + outside + high:
                    exact = dist.probability(label)
                    assert abs(character_sum_mass(label, H, elements) - float(exact)) < 1e-9


def test_plancherel_sampler_goodness_of_fit():
    rng = np.random.default_rng(4)
    H = random_subgroup(G31, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=1)
    dist = plancherel(H)
    draws = 6000
    counts = Counter(dist.sample(rng) for _ in range(draws))
    observed = [counts[label] for label in dist.labels]
    expected = [float(dist.probability(label)) * draws for label in dist.labels]
    assert chisquare(observed, expected).pvalue > 1e-4


def test_plancherel_sampler_frequencies_over_the_grid():
    rng = np.random.default_rng(6)
    draws = 10000
    for params in GRID:
        for cls in SubgroupClass:
            dist = plancherel(random_subgroup(params, cls, rng))
            counts = Counter(dist.sample(rng) for _ in range(draws))
            assert set(counts) <= set(dist.labels)
            for label in dist.labels:
                q = float(dist.probability(label))
                assert abs(counts[label] - draws * q) <= 5 * np.sqrt(draws * q * (1 - q)) + 1, label


def test_qft_dense_is_unitary():
    for params in (GroupParams(2, 1), GroupParams(2, 2), G31, GroupParams(5, 1)):
        Q = qft_dense(params)
        assert np.allclose(Q @ Q.conj().T, np.eye(params.order), atol=1e-9)


def test_qft_dense_cap():
    with pytest.raises(TooLarge):
        qft_dense(GroupParams(5, 3))


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
