"""
Tests for case detection, the recovery branches and the end-to-end driver.
"""

import sys

import numpy as np
import pytest

from heisenberg_hsp.data import Conjugator, GroupElement, GroupParams, RecoveryResult, RoundSample, Subgroup, SubgroupClass
from heisenberg_hsp.exceptions import EvenCharacteristic, HspError, InsufficientSamples
from heisenberg_hsp.experiment import ExperimentConfig, run_experiment
from heisenberg_hsp.group import (
    all_elements,
    canonical_h0,
    center_subgroup,
    full_group,
    random_subgroup,
    trivial_subgroup,
)
from heisenberg_hsp.oracle import HiddenFunction, make
from heisenberg_hsp.recovery import (
    SpanTracker,
    choose_route,
    detect_case,
    normal_recover,
    p2_recover,
    quiet_rounds,
    reconstruct,
    run_full,
    scaled_sample,
    solve_samples,
)
from heisenberg_hsp.zp_linalg import SubspaceBasis

G31 = GroupParams(3, 1)


def query_identity_holds(result):
    expected = 2 * result.rounds + result.fourier_samples + result.abelian_samples + 2 + result.verification_queries
    return result.oracle_queries == expected


# ---- Detection and routing ----
def test_detect_case_costs_two_queries():
    rng = np.random.default_rng(0)
    for cls in SubgroupClass:
        f = make(random_subgroup(GroupParams(5, 2), cls, rng))
        assert detect_case(f) is cls
        assert f.query_count == 2


def test_choose_route():
    abelian, normal = SubgroupClass.ABELIAN_NON_CENTRAL, SubgroupClass.NORMAL_CONTAINS_CENTER
    assert choose_route(GroupParams(5, 1), abelian) == "label_change"
    assert choose_route(GroupParams(5, 1), abelian, "always") == "complement"
    assert choose_route(G31, abelian) == "complement"
    assert choose_route(GroupParams(2, 2), abelian) == "p2"
    assert choose_route(GroupParams(7, 1), normal) == "normal"
    with pytest.raises(ValueError):
        choose_route(G31, abelian, "sometimes")


# ---- Post-processing ----
def test_solve_samples_needs_two_records():
    record = RoundSample(1, 1, 2, (1,), (0,))
    with pytest.raises(InsufficientSamples):
        solve_samples([record], GroupParams(5, 1))
    with pytest.raises(InsufficientSamples):
        solve_samples([], GroupParams(5, 1))


def test_scaled_sample_rejects_alpha_one():
    with pytest.raises(ValueError):
        scaled_sample(RoundSample(1, 4, 1, (1,), (1,)), 5)


def test_reconstruct_h0_at_p3():
    S_perp = SubspaceBasis.span([(1, 1)], 3, 2)
    H = reconstruct(S_perp, Conjugator((0,), (0,), 0), G31)
    assert H == canonical_h0(SubspaceBasis.span([(1, 1)], 3, 2), G31)
    assert H.s_basis.rows == ((1, 1),)
    with pytest.raises(EvenCharacteristic):
        reconstruct(SubspaceBasis(2, 2, ()), Conjugator((0,), (0,), 0), GroupParams(2, 1))


def test_span_tracker_stop_rule():
    tracker = SpanTracker(3, 2, cap=50, stable_rounds=3)
    assert tracker.add((1, 0))
    assert not tracker.add((2, 0))
    assert tracker.add((0, 1))
    assert tracker.rank == 2 and not tracker.done
    for _ in range(3):
        tracker.add((1, 1))
    assert tracker.done

    capped = SpanTracker(3, 2, cap=2, stable_rounds=10)
    capped.add((1, 0))
    capped.add((0, 1))
    assert capped.done


def test_affine_span_tracker_uses_differences():
    tracker = SpanTracker(5, 2, cap=50, stable_rounds=2, affine=True)
    tracker.add((1, 1))
    assert tracker.rank == 0
    assert not tracker.add((1, 1))
    assert tracker.add((2, 3))
    assert tracker.basis.contains((1, 2))


# ---- End to end ----
def test_label_change_route_p5():
    rng = np.random.default_rng(1)
    for _ in range(10):
        H = random_subgroup(GroupParams(5, 2), SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        f = make(H)
        result = run_full(f, rng=rng)
        assert result.route == "label_change"
        assert result.subgroup == H
        assert result.s_basis == H.s_basis
        assert query_identity_holds(result)
        assert result.oracle_queries == f.query_count


def test_complement_route_p3():
    rng = np.random.default_rng(2)
    for _ in range(10):
        H = random_subgroup(GroupParams(3, 2), SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        result = run_full(make(H), rng=rng)
        assert result.route == "complement"
        assert result.subgroup == H
        assert result.harvested_rounds > 0
        assert query_identity_holds(result)


def recovered_count(params, cls, trials, seed, **kwargs):
    """Plants recovered exactly; every finished run must satisfy the query identity."""
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(trials):
        H = random_subgroup(params, cls, rng)
        try:
            result = run_full(make(H), rng=rng, **kwargs)
        except HspError:
            continue
        assert query_identity_holds(result)
        hits += result.subgroup == H
    return hits


def test_p2_route():
    assert choose_route(GroupParams(2, 2), SubgroupClass.ABELIAN_NON_CENTRAL) == "p2"
    for n in (1, 2, 3):
        assert recovered_count(GroupParams(2, n), SubgroupClass.ABELIAN_NON_CENTRAL, 100, seed=3 + n) >= 95


def all_subgroups(params):
    """Every subgroup generated by at most two elements, deduplicated."""
    elements = list(all_elements(params))
    return {Subgroup(params, [g, h]) for g in elements for h in elements}


def test_every_subgroup_at_p2_n1():
    params = GroupParams(2, 1)
    subgroups = sorted(all_subgroups(params), key=lambda H: H.to_literal())
    assert len(subgroups) == 10
    assert sum(H.classification is SubgroupClass.ABELIAN_NON_CENTRAL for H in subgroups) == 5
    for H in subgroups:
        for seed in range(20):
            result = run_full(make(H), rng=np.random.default_rng(seed))
            assert result.subgroup == H, f"{H.to_literal()} seed {seed}"
            assert query_identity_holds(result)


def test_normal_route():
    rng = np.random.default_rng(4)
    for params in (G31, GroupParams(5, 2)):
        for _ in range(5):
            N = random_subgroup(params, SubgroupClass.NORMAL_CONTAINS_CENTER, rng)
            result = run_full(make(N), rng=rng)
            assert result.route == "normal"
            assert result.subgroup == N
            assert result.rounds == 0 and result.fourier_samples > 0
            assert query_identity_holds(result)
    assert recovered_count(GroupParams(2, 2), SubgroupClass.NORMAL_CONTAINS_CENTER, 40, seed=9) >= 38


def test_normal_recover_extremes():
    rng = np.random.default_rng(5)
    params = GroupParams(3, 2)
    whole = normal_recover(make(full_group(params)), rng=rng)
    assert whole.subgroup == full_group(params)
    center = normal_recover(make(center_subgroup(params)), rng=rng)
    assert center.subgroup == center_subgroup(params)
    line = Subgroup(params, [GroupElement.from_vector(params, (1, 0, 0, 0)), GroupElement.central(params, 1)])
    result = normal_recover(make(line), rng=rng)
    assert result.subgroup == line and result.subgroup.order == 9


def test_p2_recover_trivial():
    rng = np.random.default_rng(6)
    params = GroupParams(2, 2)
    hits = 0
    for _ in range(5):
        try:
            result = p2_recover(make(trivial_subgroup(params)), rng=rng)
        except HspError:
            continue
        assert result.oracle_queries == 2 * result.rounds + result.abelian_samples + 1 + result.verification_queries
        hits += result.subgroup == trivial_subgroup(params)
    assert hits >= 3
    with pytest.raises(ValueError):
        p2_recover(make(trivial_subgroup(G31)), rng=rng)


def test_structured_backend_agrees():
    rng = np.random.default_rng(7)
    for params in (G31, GroupParams(5, 1)):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=1)
        assert run_full(make(H), rng=rng, backend="structured").subgroup == H


def test_oracle_params_must_match():
    f = make(trivial_subgroup(G31))
    with pytest.raises(ValueError):
        run_full(f, params=GroupParams(5, 1))


class SimulatorOnlyOracle(HiddenFunction):
    """Oracle whose planted subgroup may be read by the oracle and the simulator only."""

    @property
    def _hidden(self):
        caller = sys._getframe(1).f_globals.get("__name__", "")
        assert not caller.startswith("heisenberg_hsp.recovery"), f"{caller} read the planted subgroup"
        return self.__dict__["planted"]

    @_hidden.setter
    def _hidden(self, subgroup):
        self.__dict__["planted"] = subgroup


def test_recovery_reads_the_oracle_through_queries_only():
    rng = np.random.default_rng(11)
    abelian, normal = SubgroupClass.ABELIAN_NON_CENTRAL, SubgroupClass.NORMAL_CONTAINS_CENTER
    cases = [
        (GroupParams(5, 1), abelian, "analytic"),
        (GroupParams(5, 1), abelian, "structured"),
        (G31, abelian, "analytic"),
        (G31, abelian, "dense"),
        (GroupParams(2, 1), abelian, "analytic"),
        (GroupParams(2, 1), abelian, "structured"),
        (G31, normal, "analytic"),
        (G31, normal, "structured"),
    ]
    for params, cls, backend in cases:
        H = random_subgroup(params, cls, rng)
        f = SimulatorOnlyOracle(H)
        result = run_full(f, rng=rng, backend=backend)
        assert result.subgroup == H, (params, backend)
        assert result.oracle_queries == f.query_count


def test_quiet_rounds_scale_with_p():
    assert [quiet_rounds(p) for p in (2, 3, 5, 7, 101)] == [10, 6, 4, 4, 4]
    assert SpanTracker(2, 2, cap=50).stable_rounds == 10


def test_span_tracker_rank_target():
    tracker = SpanTracker(2, 3, cap=50, target_rank=1)
    tracker.add((0, 0, 0))
    assert not tracker.done
    tracker.add((1, 0, 1))
    assert tracker.done and tracker.rank == 1


def test_discard_rates_match_predictions():
    config = ExperimentConfig.from_mapping({"p": 5, "n": 1, "case": "abelian", "trials": 80, "seed": 21})
    rates = run_experiment(config, write=False)["discard_rates"]
    rounds = rates["rounds"]
    q = rates["predicted_acceptance_stage"]
    assert abs(rates["observed_acceptance_stage"] - q) <= 4 * np.sqrt(q * (1 - q) / rounds)
    stage = round(rates["observed_acceptance_stage"] * rounds)
    s = rates["exact_square_rate"]
    assert abs(rates["observed_square_rate"] - s) <= 4 * np.sqrt(s * (1 - s) / stage)


def test_seeded_plants_at_p3():
    rng = np.random.default_rng(2024)
    params = GroupParams(3, 2)
    successes = 0
    for _ in range(100):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        try:
            successes += run_full(make(H), rng=rng).subgroup == H
        except HspError:
            pass
    assert successes >= 95


def test_result_dict_has_statistics():
    rng = np.random.default_rng(8)
    H = random_subgroup(GroupParams(5, 1), SubgroupClass.ABELIAN_NON_CENTRAL, rng, dim=1)
    record = run_full(make(H), rng=rng).to_dict()
    assert record["recovered"] == H.to_literal()
    assert record["route"] == "label_change"
    assert isinstance(RecoveryResult().discards, dict)


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
