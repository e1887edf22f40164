"""
Tests for coset states, weak Fourier sampling, label change, Clebsch-Gordan and rounds.
Dense computations serve as the reference for the structured and analytic backends.
"""

from fractions import Fraction

import numpy as np
import pytest

from heisenberg_hsp.data import (
    GroupElement,
    GroupParams,
    IrrepLabel,
    OutcomeTag,
    StructuredState,
    Subgroup,
    SubgroupClass,
)
from heisenberg_hsp.exceptions import BackendCapExceeded, EvenCharacteristic, ZeroAlpha
from heisenberg_hsp.experiment.verify import check_cg_blocks, check_sampler, corrected_sample, expected_cg_image
from heisenberg_hsp.group import find_conjugator, full_group, random_element, random_subgroup, trivial_subgroup
from heisenberg_hsp.oracle import make
from heisenberg_hsp.reps import projector, rho
from heisenberg_hsp.simulator import (
    RESOLVED_CONVENTION,
    ComplementConvention,
    abelian_fourier_sample,
    analytic_round,
    apply_u_alpha,
    apply_u_alpha_dense,
    check_backend,
    clebsch_gordan,
    clebsch_gordan_matrix,
    collapsed_state,
    coordinate_subgroup,
    coordinates_of,
    coset_state,
    element_from_coordinates,
    label_change_available,
    measurement_distribution,
    mixed_coset_state,
    p2_round,
    round_source,
    screen_labels,
    two_register_round,
    u_alpha_matrix,
    verify_label_change_theorem,
    weak_fourier_sample,
)
from heisenberg_hsp.zp_linalg import random_isotropic

G31 = GroupParams(3, 1)


def high(k, p):
    return IrrepLabel.high_dim(k, p)


# ---- Coset states and weak Fourier sampling ----
def test_coset_state_shapes_and_cost():
    rng = np.random.default_rng(0)
    f = make(trivial_subgroup(G31))
    state = coset_state(f, rng)
    assert len(state.ket_terms) == 1 and f.query_count == 1
    whole = coset_state(make(full_group(G31)), rng)
    assert np.allclose(whole.to_ket(), np.full(27, 27 ** -0.5))


def test_collapsed_state_is_normalised_conjugate_projector():
    rng = np.random.default_rng(1)
    params = GroupParams(3, 2)
    for _ in range(5):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        for k in (1, 2):
            state = collapsed_state(high(k, 3), H)
            assert state.trace() == 1
            P = projector(high(-k, 3), H)
            assert np.allclose(state.to_dense(), P / np.trace(P).real)


def test_dense_weak_sampling_matches_collapsed_state():
    rng = np.random.default_rng(2)
    for params in (G31, GroupParams(2, 1), GroupParams(5, 1)):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        sigma = mixed_coset_state(H)
        assert abs(np.trace(sigma) - 1) < 1e-12
        seen = 0
        for _ in range(40):
            label, block = weak_fourier_sample(sigma, rng, params)
            if not label.is_high_dim:
                assert block.shape == (1, 1)
                continue
            seen += 1
            assert np.allclose(block, collapsed_state(label, H).to_dense(), atol=1e-9)
        assert seen > 0


def test_structured_sampling_needs_a_subgroup():
    with pytest.raises(ValueError):
        weak_fourier_sample(StructuredState(3, 3, ()), np.random.default_rng(0))


# ---- Label change ----
def test_u_alpha_structured_matches_dense():
    rng = np.random.default_rng(3)
    params = GroupParams(5, 1)
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=1)
    state = collapsed_state(high(2, 5), H)
    for alpha in range(1, 5):
        U = u_alpha_matrix(5, 1, alpha)
        expected = U @ state.to_dense() @ U.conj().T
        assert np.allclose(apply_u_alpha(state, alpha).to_dense(), expected)
        assert np.allclose(apply_u_alpha_dense(state.to_dense(), 5, 1, alpha), expected)
    assert np.allclose(apply_u_alpha(state, 1).to_dense(), state.to_dense())
    with pytest.raises(ZeroAlpha):
        apply_u_alpha(state, 5)


def test_label_change_theorem():
    rng = np.random.default_rng(4)
    H = random_subgroup(GroupParams(5, 1), SubgroupClass.ABELIAN_NON_CENTRAL, rng)
    assert verify_label_change_theorem(GroupParams(5, 1), 1, 1, H) == 0.0
    assert verify_label_change_theorem(GroupParams(5, 1), 1, 2, H) <= 1e-9
    H = random_subgroup(GroupParams(3, 2), SubgroupClass.ABELIAN_NON_CENTRAL, rng)
    assert verify_label_change_theorem(GroupParams(3, 2), 2, 2, H) <= 1e-9
    N = random_subgroup(GroupParams(5, 1), SubgroupClass.NORMAL_CONTAINS_CENTER, rng)
    assert verify_label_change_theorem(GroupParams(5, 1), 3, 4, N) <= 1e-9


# ---- Clebsch-Gordan ----
def test_cg_basis_map_example():
    U = clebsch_gordan_matrix(5, 1, 1, 2)
    assert U[0 * 5 + 1, 1 * 5 + 1] == 1


def test_cg_matrices_are_unitary_and_block_the_product():
    rng = np.random.default_rng(5)
    for params in (G31, GroupParams(2, 1), GroupParams(5, 1), GroupParams(2, 2)):
        p, n = params.p, params.n
        for k in range(1, p):
            for l in range(1, p):
                U = clebsch_gordan_matrix(p, n, k, l)
                assert np.allclose(U @ U.conj().T, np.eye(p ** (2 * n)))
                g = random_element(params, rng)
                image = U @ np.kron(rho(k, g), rho(l, g)) @ U.conj().T
                assert np.allclose(image, expected_cg_image(params, k, l, g))


def test_cg_check_passes_at_p3():
    assert check_cg_blocks(G31, np.random.default_rng(6)).status == "PASS"


def test_structured_cg_and_distribution_match_dense():
    rng = np.random.default_rng(7)
    for params in (G31, GroupParams(2, 1), GroupParams(5, 1)):
        p = params.p
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        for k in range(1, p):
            for l in range(1, p):
                # observed labels (k, l) leave the registers in rho_-k, rho_-l
                kk, ll = (-k) % p, (-l) % p
                first, second = collapsed_state(high(k, p), H), collapsed_state(high(l, p), H)
                U = clebsch_gordan_matrix(p, params.n, kk, ll)
                dense = U @ np.kron(first.to_dense(), second.to_dense()) @ U.conj().T
                assert np.allclose(clebsch_gordan(first.tensor(second), kk, ll).to_dense(), dense)
                dist = measurement_distribution(first, second, kk, ll)
                assert sum(dist.values()) == 1
                D = params.register_dim
                for (s, w), prob in dist.items():
                    assert abs(float(prob) - dense[s * D + w, s * D + w].real) < 1e-9


# ---- Screening ----
def test_screen_labels():
    discard, alpha = screen_labels((IrrepLabel.one_dim((0,), (1,), 5), high(1, 5)), 5)
    assert discard.tag is OutcomeTag.ONE_DIM
    assert screen_labels((high(2, 5), high(3, 5)), 5) == (None, None)
    assert screen_labels((high(1, 5), high(1, 5)), 5) == (None, 2)
    discard, _ = screen_labels((high(1, 5), high(2, 5)), 5)
    assert discard.tag is OutcomeTag.NON_SQUARE
    discard, _ = screen_labels((high(1, 7), high(1, 7)), 7)
    assert discard.tag is OutcomeTag.NON_SQUARE


def test_label_change_availability():
    assert not label_change_available(2)
    assert not label_change_available(3)
    assert label_change_available(5) and label_change_available(7)


def test_backend_caps():
    check_backend(GroupParams(5, 2), "dense")
    check_backend(GroupParams(7, 3), "analytic")
    with pytest.raises(BackendCapExceeded):
        check_backend(GroupParams(7, 2), "dense")
    with pytest.raises(ValueError):
        check_backend(G31, "quantum")


# ---- Rounds ----
def test_convention_guard_at_p3():
    """H = <(1,1,2)>: symplectic reading gives u = v, the Euclidean (v, u) reading u = -v."""
    rng = np.random.default_rng(8)
    H = Subgroup(G31, [GroupElement(G31, (1,), (1,), 2)])
    f = make(H)
    samples = []
    while len(samples) < 30:
        outcome = two_register_round(f, rng, "dense", harvest=True)
        if outcome.sample is not None:
            samples.append(outcome.sample)
    symplectic = RESOLVED_CONVENTION.complement(H.s_basis)
    assert RESOLVED_CONVENTION is ComplementConvention.SYMPLECTIC_UV
    assert all(symplectic.contains(RESOLVED_CONVENTION.orient(s.u, s.v)) for s in samples)
    assert any(s.u != (0,) for s in samples)
    euclidean = ComplementConvention.EUCLIDEAN_VU
    assert not all(euclidean.complement(H.s_basis).contains(euclidean.orient(s.u, s.v)) for s in samples)


def test_accepted_dense_samples_lie_in_the_shifted_complement():
    rng = np.random.default_rng(9)
    params = GroupParams(5, 1)
    for _ in range(3):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        f = make(H)
        conj = find_conjugator(H)
        complement = RESOLVED_CONVENTION.complement(H.s_basis)
        accepted = 0
        for _ in range(60):
            outcome = two_register_round(f, rng, "dense")
            if outcome.is_accepted:
                accepted += 1
                sample = outcome.sample
                assert sample.satisfies_label_relation(5)
                assert complement.contains(corrected_sample(sample, conj, 5))
        assert f.query_count == 120
        assert accepted > 0


def test_structured_rounds_agree_with_the_support():
    rng = np.random.default_rng(10)
    params = GroupParams(5, 1)
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=1)
    f = make(H)
    conj = find_conjugator(H)
    complement = RESOLVED_CONVENTION.complement(H.s_basis)
    for _ in range(60):
        outcome = two_register_round(f, rng, "structured", harvest=True)
        if outcome.sample is not None:
            assert complement.contains(corrected_sample(outcome.sample, conj, 5))


def test_analytic_round_law():
    rng = np.random.default_rng(11)
    params = GroupParams(7, 2)
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
    conj = find_conjugator(H)
    complement = RESOLVED_CONVENTION.complement(H.s_basis)
    for _ in range(200):
        outcome = analytic_round(H, conj, rng)
        if outcome.is_accepted:
            assert complement.contains(corrected_sample(outcome.sample, conj, 7))
        else:
            assert outcome.sample is None
    with pytest.raises(EvenCharacteristic):
        analytic_round(trivial_subgroup(GroupParams(2, 1)), None, rng)


def test_sampler_cross_validation_p3():
    result = check_sampler(G31, np.random.default_rng(12), samples=2000)
    assert result.status == "PASS", result.detail


def test_dense_and_analytic_backends_agree_at_p5():
    rng = np.random.default_rng(16)
    params = GroupParams(5, 1)
    for dim, samples, harvest in ((0, 5000, True), (1, 2000, False)):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=dim)
        result = check_sampler(params, rng, samples=samples, subgroup=H, harvest=harvest)
        assert result.status == "PASS", result.detail
        assert result.deviation <= 0.05

    N = random_subgroup(params, SubgroupClass.NORMAL_CONTAINS_CENTER, rng)
    assert check_sampler(params, rng, subgroup=N).status == "SKIPPED"
    dense, analytic = round_source(make(N), "dense"), round_source(make(N), "analytic")
    for _ in range(200):
        assert dense(rng).tag is OutcomeTag.ONE_DIM
        assert analytic(rng).tag is OutcomeTag.ONE_DIM


def test_p2_rounds():
    rng = np.random.default_rng(13)
    params = GroupParams(2, 2)
    trivial = make(trivial_subgroup(params))
    seen = set()
    for _ in range(800):
        outcome = p2_round(trivial, rng, "dense")
        if outcome.is_accepted:
            seen.add(outcome.sample.vector)
    assert len(seen) == 16
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=2)
    complement = RESOLVED_CONVENTION.complement(H.s_basis)
    f = make(H)
    for _ in range(50):
        outcome = p2_round(f, rng, "structured")
        if outcome.is_accepted:
            assert complement.contains(RESOLVED_CONVENTION.orient(outcome.sample.u, outcome.sample.v))
    with pytest.raises(EvenCharacteristic):
        two_register_round(f, rng)


# ---- Abelian stage coordinates ----
def test_coordinates_form_a_homomorphism():
    rng = np.random.default_rng(14)
    for p, singular in ((5, False), (2, True), (3, False)):
        params = GroupParams(p, 2)
        S = random_isotropic(2, 2, p, rng, singular=singular)
        for _ in range(20):
            a = tuple(int(e) for e in rng.integers(0, p, size=3))
            b = tuple(int(e) for e in rng.integers(0, p, size=3))
            ga = element_from_coordinates(params, S, a)
            gb = element_from_coordinates(params, S, b)
            total = tuple((x + y) % p for x, y in zip(a, b))
            assert ga * gb == element_from_coordinates(params, S, total)
            assert coordinates_of(params, S, ga) == a


def test_abelian_samples_annihilate_the_subgroup():
    rng = np.random.default_rng(15)
    params = GroupParams(5, 2)
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=2)
    f = make(H)
    L = coordinate_subgroup(H, H.s_basis)
    assert L.rank == 2
    for _ in range(20):
        sample = abelian_fourier_sample(f, H.s_basis, rng)
        assert all(sum(a * b for a, b in zip(sample, row)) % 5 == 0 for row in L.rows)
    assert f.query_count == 20


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
