"""
Recovery branches.

  label_change  p >= 5: accepted two-register rounds -> S_H^perp and the conjugator
  complement    p = 2, and p = 3 where no label change exists: alpha = 1 samples span
                S_H^perp directly, then the abelian stage on HG' pins down H
  normal        H contains the center: one-dimensional labels span the annihilator of S_H

Every branch writes its statistics into the RecoveryResult it is handed and returns
the candidate subgroup; verification happens in verify_candidate.
"""

from typing import Optional

from config.numerics import TOTAL_ROUND_FACTOR
from ..data import (
    GroupElement,
    GroupParams,
    RecoveryResult,
    Subgroup,
    SubgroupClass,
)
from ..exceptions import SampleBudgetExceeded, VerificationFailed
from ..oracle import HiddenFunction
from ..simulator import (
    RESOLVED_CONVENTION,
    ComplementConvention,
    abelian_fourier_sample,
    check_coordinates,
    element_from_coordinates,
    fourier_label,
    round_source,
)
from ..zp_linalg import BilinearForm, FormKind, SubspaceBasis, complement_basis, kernel_basis
from .solve import SpanTracker, reconstruct, scaled_sample, solve_samples, subgroup_projection


def round_budget(params: GroupParams) -> int:
    return TOTAL_ROUND_FACTOR * params.round_cap()


def _check_budget(result: RecoveryResult, params: GroupParams, what: str):
    if result.rounds >= round_budget(params):
        raise SampleBudgetExceeded(f"{what}: {result.rounds} rounds used without stabilising the span")


# ---- Label change ----
def label_change_recover(
    f: HiddenFunction,
    rng,
    result: RecoveryResult,
    backend: str = "analytic",
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> Subgroup:
    params = f.params
    draw = round_source(f, backend, False, convention)
    tracker = SpanTracker(params.p, 2 * params.n, params.round_cap(), affine=True)
    records = []
    while not tracker.done:
        _check_budget(result, params, "label-change rounds")
        outcome = draw(rng)
        result.record_round(outcome)
        if outcome.is_accepted:
            records.append(outcome.sample)
            tracker.add(scaled_sample(outcome.sample, params.p, convention))
    S_perp, conj = solve_samples(records, params, convention)
    H = reconstruct(S_perp, conj, params, convention)
    result.s_basis = subgroup_projection(S_perp, convention)
    result.conjugator = conj
    return H


# ---- Complement route and abelian stage ----
def complement_recover(
    f: HiddenFunction,
    rng,
    result: RecoveryResult,
    backend: str = "analytic",
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> Subgroup:
    """
    S_H from alpha = 1 samples (p = 2 accepted rounds, or harvested k + l = 0 rounds),
    then H from abelian Fourier sampling on the preimage of S_H.
    """
    params = f.params
    draw = round_source(f, backend, True, convention)
    tracker = SpanTracker(params.p, 2 * params.n, params.round_cap())
    while not tracker.done:
        _check_budget(result, params, "complement rounds")
        outcome = draw(rng)
        result.record_round(outcome)
        if outcome.sample is not None and outcome.sample.alpha == 1:
            if not outcome.is_accepted:
                result.harvested_rounds += 1
            tracker.add(convention.orient(outcome.sample.u, outcome.sample.v))
    S = subgroup_projection(tracker.basis, convention)
    result.s_basis = S
    return abelian_stage(f, S, rng, result)


def abelian_stage(f: HiddenFunction, S: SubspaceBasis, rng, result: RecoveryResult) -> Subgroup:
    """
    Recover H inside the abelian preimage K of S; the t coordinate is the center.

    H meets K in a rank-d lattice that misses the center, so the sampled annihilator
    has rank exactly one once S = S_H; the stage stops on that rank.
    """
    params = f.params
    check_coordinates(S)
    d = S.rank
    tracker = SpanTracker(params.p, d + 1, params.round_cap(), target_rank=1)
    while not tracker.done:
        tracker.add(abelian_fourier_sample(f, S, rng))
        result.abelian_samples += 1
    L = kernel_basis(tracker.basis.as_array(), params.p)
    if d in L.pivots:
        raise VerificationFailed("abelian stage found the center inside an abelian non-central subgroup")
    generators = [element_from_coordinates(params, S, row) for row in L.rows]
    return Subgroup(params, generators)


# ---- Normal subgroups ----
def normal_branch(
    f: HiddenFunction,
    rng,
    result: RecoveryResult,
    backend: str = "analytic",
) -> Subgroup:
    """One-dimensional labels (a, b) span the Euclidean annihilator of S_H."""
    params = f.params
    p, n = params.p, params.n
    tracker = SpanTracker(p, 2 * n, params.round_cap())
    while not tracker.done:
        if result.fourier_samples >= round_budget(params):
            raise SampleBudgetExceeded(f"normal branch: {result.fourier_samples} samples without a stable span")
        label = fourier_label(f, rng, backend)
        result.fourier_samples += 1
        result.record_labels([label])
        if not label.is_high_dim:
            tracker.add(label.vector)
    S = complement_basis(tracker.basis, BilinearForm(FormKind.EUCLIDEAN, n))
    result.s_basis = S
    generators = [GroupElement.from_vector(params, row) for row in S.rows]
    return Subgroup(params, generators + [GroupElement.central(params, 1)])


# ---- Verification ----
def verify_candidate(
    f: HiddenFunction,
    H: Subgroup,
    identity_label: str,
    result: RecoveryResult,
    expected: Optional[SubgroupClass] = None,
):
    """f must be constant on the generators of H; one query per generator."""
    labels = [f.query(g) for g in H.canonical_generators]
    result.verification_queries += len(labels)
    if any(label != identity_label for label in labels):
        raise VerificationFailed(f"candidate {H} is not contained in the hidden subgroup")
    if expected is not None and H.classification is not expected:
        raise VerificationFailed(f"candidate {H} is {H.classification.value}, expected {expected.value}")
    if result.s_basis is not None and H.s_basis != result.s_basis:
        raise VerificationFailed(f"candidate {H} does not project onto the sampled S_H")
