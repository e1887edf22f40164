"""
Top-level recovery: case detection, branch dispatch, verification and retry.
"""

from typing import Optional, Tuple

import numpy as np

from ..data import GroupElement, GroupParams, RecoveryResult, SubgroupClass
from ..exceptions import InsufficientSamples, NotIsotropic, VerificationFailed
from ..group import find_conjugator
from ..oracle import HiddenFunction
from ..simulator import RESOLVED_CONVENTION, ComplementConvention, check_backend, label_change_available
from .branches import complement_recover, label_change_recover, normal_branch, verify_candidate

HARVEST_MODES = ("auto", "always", "never")
ROUTES = ("label_change", "complement", "p2", "normal")

_RETRYABLE = (VerificationFailed, NotIsotropic, InsufficientSamples)


def _detect(f: HiddenFunction) -> Tuple[SubgroupClass, str]:
    """Case and f(identity); two queries."""
    params = f.params
    at_identity = f.query(GroupElement.identity(params))
    at_center = f.query(GroupElement.central(params, 1))
    if at_identity == at_center:
        return SubgroupClass.NORMAL_CONTAINS_CENTER, at_identity
    return SubgroupClass.ABELIAN_NON_CENTRAL, at_identity


def detect_case(f: HiddenFunction) -> SubgroupClass:
    """NORMAL_CONTAINS_CENTER iff f(e) = f((0, 0, 1)); costs exactly two queries."""
    return _detect(f)[0]


def choose_route(params: GroupParams, case: SubgroupClass, harvest: str = "auto") -> str:
    if harvest not in HARVEST_MODES:
        raise ValueError(f"harvest must be one of {HARVEST_MODES}, got {harvest!r}")
    if case is SubgroupClass.NORMAL_CONTAINS_CENTER:
        return "normal"
    if params.p == 2:
        return "p2"
    if harvest == "always" or (harvest == "auto" and not label_change_available(params.p)):
        return "complement"
    return "label_change"


def _attempt(f, route, rng, result, backend, convention):
    if route == "normal":
        return normal_branch(f, rng, result, backend)
    if route == "label_change":
        return label_change_recover(f, rng, result, backend, convention)
    return complement_recover(f, rng, result, backend, convention)


def run_full(
    f: HiddenFunction,
    params: Optional[GroupParams] = None,
    rng=None,
    backend: str = "analytic",
    harvest: str = "auto",
    retry: bool = True,
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> RecoveryResult:
    """
    Recover the hidden subgroup behind f.

    Args:
        f: hidden function
        params: group parameters (defaults to f's)
        rng: numpy Generator
        backend: "analytic", "structured" or "dense"
        harvest: "auto", "always" or "never" (use of k + l = 0 rounds for odd p)
        retry: one fresh attempt after VerificationFailed / NotIsotropic
        convention: complement convention used to read samples

    Returns:
        RecoveryResult with the verified subgroup and the run statistics
    """
    params = params or f.params
    if params != f.params:
        raise ValueError(f"oracle is over {f.params}, not {params}")
    check_backend(params, backend)
    rng = rng if rng is not None else np.random.default_rng()
    before = f.query_count

    case, identity_label = _detect(f)
    route = choose_route(params, case, harvest)
    result = RecoveryResult(route=route)
    attempts = 2 if retry else 1
    for attempt in range(attempts):
        try:
            H = _attempt(f, route, rng, result, backend, convention)
            verify_candidate(f, H, identity_label, result, case)
            break
        except _RETRYABLE:
            if attempt == attempts - 1:
                result.oracle_queries = f.query_count - before
                raise
            result.retries += 1
            result.s_basis = None
            result.conjugator = None

    result.subgroup = H
    if result.conjugator is None and route in ("label_change", "complement"):
        result.conjugator = find_conjugator(H)
    result.oracle_queries = f.query_count - before
    return result


def normal_recover(f: HiddenFunction, params: Optional[GroupParams] = None, rng=None, backend: str = "analytic") -> RecoveryResult:
    """Normal-subgroup branch on its own: f(identity) is queried once for verification."""
    params = params or f.params
    rng = rng if rng is not None else np.random.default_rng()
    before = f.query_count
    identity_label = f.query(GroupElement.identity(params))
    result = RecoveryResult(route="normal")
    H = normal_branch(f, rng, result, backend)
    verify_candidate(f, H, identity_label, result, SubgroupClass.NORMAL_CONTAINS_CENTER)
    result.subgroup = H
    result.oracle_queries = f.query_count - before
    return result


def p2_recover(
    f: HiddenFunction,
    params: Optional[GroupParams] = None,
    rng=None,
    backend: str = "analytic",
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> RecoveryResult:
    """p = 2 abelian branch on its own: f(identity) is queried once for verification."""
    params = params or f.params
    if params.p != 2:
        raise ValueError(f"p2_recover needs p = 2, got p = {params.p}")
    rng = rng if rng is not None else np.random.default_rng()
    before = f.query_count
    identity_label = f.query(GroupElement.identity(params))
    result = RecoveryResult(route="p2")
    H = complement_recover(f, rng, result, backend, convention)
    verify_candidate(f, H, identity_label, result, SubgroupClass.ABELIAN_NON_CENTRAL)
    result.subgroup = H
    result.oracle_queries = f.query_count - before
    return result
