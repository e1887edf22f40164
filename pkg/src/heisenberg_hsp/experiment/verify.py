"""
Invariant-verification suite: every algebraic identity the simulator relies on,
checked numerically or exactly, reported one line per check.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

import numpy as np
from scipy.stats import chisquare

from config.numerics import DENSE_TOLERANCE, MAX_DENSE_MATRIX
from ..data import GroupElement, GroupParams, IrrepLabel, Subgroup, SubgroupClass
from ..exceptions import HspError
from ..group import (
    canonical_h0,
    conjugate_subgroup,
    find_conjugator,
    matrix_realization,
    random_element,
    random_subgroup,
)
from ..oracle import make
from ..qft_circuit import verify_circuit
from ..recovery import run_full
from ..reps import plancherel, qft_dense, rho, rho_pauli
from ..simulator import (
    RESOLVED_CONVENTION,
    clebsch_gordan_matrix,
    collapsed_state,
    mixed_coset_state,
    round_source,
    verify_label_change_theorem,
    weak_fourier_sample,
)
from .config import load_yaml_config

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass
class CheckResult:
    name: str
    status: str
    deviation: Optional[float] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAIL


def _judge(name: str, deviation: float, tolerance: float = DENSE_TOLERANCE, detail: str = "") -> CheckResult:
    return CheckResult(name, PASS if deviation <= tolerance else FAIL, float(deviation), detail)


# ---- Individual checks ----
def check_group_axioms(params: GroupParams, rng, samples: int = 200) -> CheckResult:
    failures = 0
    e = GroupElement.identity(params)
    for _ in range(samples):
        g, h, k = (random_element(params, rng) for _ in range(3))
        failures += (g * h) * k != g * (h * k)
        failures += g * e != g or e * g != g
        failures += not (g * g.inverse()).is_identity()
        product = (matrix_realization(g) @ matrix_realization(h)) % params.p
        failures += not np.array_equal(product, matrix_realization(g * h))
    return _judge("group_axioms", failures, 0, f"{samples} random triples")


def check_rep_identities(params: GroupParams, rng, samples: int = 50) -> CheckResult:
    deviation = 0.0
    for _ in range(samples):
        g, h = random_element(params, rng), random_element(params, rng)
        for k in range(1, params.p):
            deviation = max(deviation, np.max(np.abs(rho(k, g) @ rho(k, h) - rho(k, g * h))))
            deviation = max(deviation, np.max(np.abs(rho_pauli(k, g) - rho(k, g))))
    return _judge("rep_identities", deviation, detail="rho homomorphism and Pauli form")


def check_qft_unitarity(cases) -> CheckResult:
    deviation = 0.0
    for p, n in cases:
        params = GroupParams(p, n)
        if params.order > MAX_DENSE_MATRIX:
            continue
        Q = qft_dense(params)
        deviation = max(deviation, np.max(np.abs(Q @ Q.conj().T - np.eye(params.order))))
    return _judge("qft_unitarity", deviation, detail=f"cases {list(map(tuple, cases))}")


def check_circuit(cases, permute_wires: bool = False) -> CheckResult:
    deviation = 0.0
    for p, n in cases:
        params = GroupParams(p, n)
        wires = 2 * n + 1
        wire_map = list(reversed(range(wires))) if permute_wires else None
        deviation = max(deviation, verify_circuit(params, wire_map))
    detail = "permuted wire order" if permute_wires else f"cases {list(map(tuple, cases))}"
    return _judge("circuit_vs_dense", deviation, detail=detail)


def expected_cg_image(params: GroupParams, k: int, l: int, g) -> np.ndarray:
    """I (x) rho_(k+l)(g) for k + l != 0, diag w^(k y.s + l x.w) over (s, w) otherwise."""
    p, D = params.p, params.register_dim
    if (k + l) % p:
        return np.kron(np.eye(D), rho(k + l, g))
    V = params.vectors
    ys = (V @ np.array(g.y, dtype=np.int64)) % p
    xs = (V @ np.array(g.x, dtype=np.int64)) % p
    phases = (k * ys[:, None] + l * xs[None, :]) % p
    return np.diag(np.exp(2j * np.pi * phases.ravel() / p))


def check_cg_blocks(params: GroupParams, rng, samples: int = 10) -> CheckResult:
    p, n = params.p, params.n
    deviation = 0.0
    for k in range(1, p):
        for l in range(1, p):
            U = clebsch_gordan_matrix(p, n, k, l)
            for _ in range(samples):
                g = random_element(params, rng)
                image = U @ np.kron(rho(k, g), rho(l, g)) @ U.conj().T
                deviation = max(deviation, np.max(np.abs(image - expected_cg_image(params, k, l, g))))
    return _judge("cg_blocks", deviation, detail=f"all k, l at p={p}, n={n}")


def check_label_change(params: GroupParams, rng, triples: int = 50) -> CheckResult:
    p = params.p
    if p == 2:
        return CheckResult("label_change", SKIPPED, None, "needs p > 2")
    deviation = 0.0
    for _ in range(triples):
        k = int(rng.integers(1, p))
        alpha = int(rng.integers(1, p))
        cls = SubgroupClass.ABELIAN_NON_CENTRAL if rng.integers(0, 2) else SubgroupClass.NORMAL_CONTAINS_CENTER
        H = random_subgroup(params, cls, rng)
        deviation = max(deviation, verify_label_change_theorem(params, k, alpha, H))
    return _judge("label_change", deviation, detail=f"{triples} random (k, alpha, H)")


def check_conjugator(params: GroupParams, rng, samples: int = 20) -> CheckResult:
    if params.p == 2:
        return CheckResult("conjugator", SKIPPED, None, "H_0 needs p > 2")
    failures = 0
    for _ in range(samples):
        H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
        g = find_conjugator(H).as_element(params)
        failures += conjugate_subgroup(H, g) != canonical_h0(H.s_basis, params)
    return _judge("conjugator", failures, 0, f"{samples} planted abelian subgroups")


def check_plancherel(params: GroupParams, rng, draws: int = 10000) -> CheckResult:
    """Exact masses (total 1, high-dimensional 1/p each) and a chi-square test of the sampler."""
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
    dist = plancherel(H)
    p = params.p
    exact_errors = int(dist.total() != 1) + int(dist.one_dim_mass() != Fraction(1, p))
    exact_errors += sum(dist.probability(IrrepLabel.high_dim(k, p)) != Fraction(1, p) for k in range(1, p))
    labels = dist.labels
    counts = Counter(dist.sample(rng) for _ in range(draws))
    observed = np.array([counts[label] for label in labels], dtype=float)
    expected = np.array([float(dist.probability(label)) for label in labels]) * draws
    pvalue = float(chisquare(observed, expected).pvalue) if len(labels) > 1 else 1.0
    status = PASS if exact_errors == 0 and pvalue >= 1e-3 else FAIL
    return CheckResult("plancherel", status, float(exact_errors), f"chi-square p-value {pvalue:.4f}")


def check_collapsed_state(params: GroupParams, rng) -> CheckResult:
    """Dense QFT of the mixed coset state, collapsed on a high-dimensional label, against rho*(H)/r."""
    if params.order > MAX_DENSE_MATRIX:
        return CheckResult("collapsed_state", SKIPPED, None, "|G| above the dense cap")
    H = random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
    sigma = mixed_coset_state(H)
    for _ in range(200):
        label, column = weak_fourier_sample(sigma, rng, params)
        if label.is_high_dim:
            deviation = np.max(np.abs(column - collapsed_state(label, H).to_dense()))
            return _judge("collapsed_state", deviation, detail=f"label {label}")
    return CheckResult("collapsed_state", FAIL, None, "no high-dimensional label in 200 draws")


def corrected_sample(sample, conj, p, convention=RESOLVED_CONVENTION):
    """orient(u + (1-alpha) x^, v + (1-alpha) y^), which lies in complement(S_H)."""
    shift = (1 - sample.alpha) % p
    u = tuple((a + shift * b) % p for a, b in zip(sample.u, conj.xhat))
    v = tuple((a + shift * b) % p for a, b in zip(sample.v, conj.yhat))
    return convention.orient(u, v)


def _measured_samples(draw, rng, wanted: int, read) -> Counter:
    """Corrected vectors of the first `wanted` rounds that carry a sample."""
    counts = Counter()
    collected = 0
    for _ in range(wanted * 50):
        if collected >= wanted:
            break
        outcome = draw(rng)
        if outcome.sample is not None:
            counts[read(outcome.sample)] += 1
            collected += 1
    return counts


def total_variation(first: Counter, second: Counter) -> float:
    n1, n2 = sum(first.values()), sum(second.values())
    return 0.5 * sum(abs(first[key] / n1 - second[key] / n2) for key in set(first) | set(second))


def check_sampler(
    params: GroupParams,
    rng,
    samples: int = 2000,
    convention=RESOLVED_CONVENTION,
    subgroup: Optional[Subgroup] = None,
    analytic_factor: int = 4,
    harvest: bool = True,
) -> CheckResult:
    """
    Dense-backend (u, v) samples against the analytic backend on the same subgroup:
    support membership must be exact and the corrected vectors of the two backends
    within total variation 0.05. With harvest=False only accepted (alpha != 1)
    rounds count.
    """
    p = params.p
    if params.order > MAX_DENSE_MATRIX:
        return CheckResult("sampler", SKIPPED, None, "|G| above the dense cap")
    H = subgroup if subgroup is not None else random_subgroup(params, SubgroupClass.ABELIAN_NON_CENTRAL, rng)
    if H.contains_center:
        return CheckResult("sampler", SKIPPED, None, "no high-dimensional labels when H contains the center")
    conj = find_conjugator(H) if p > 2 else None

    def read(sample):
        if p == 2:
            return convention.orient(sample.u, sample.v)
        return corrected_sample(sample, conj, p, convention)

    dense = _measured_samples(round_source(make(H), "dense", harvest, convention), rng, samples, read)
    analytic = _measured_samples(round_source(make(H), "analytic", harvest, convention), rng, samples * analytic_factor, read)
    if not dense or not analytic:
        return CheckResult("sampler", FAIL, None, "no measured rounds")
    complement = convention.complement(H.s_basis)
    outside = sum(count for r, count in dense.items() if not complement.contains(r))
    tv = total_variation(dense, analytic)
    status = PASS if outside == 0 and tv <= 0.05 else FAIL
    detail = f"{sum(dense.values())} dense vs {sum(analytic.values())} analytic samples, {outside} outside the support"
    return CheckResult("sampler", status, float(tv), detail)


def check_recovery(params: GroupParams, rng, trials: int = 10, backend: str = "analytic") -> CheckResult:
    failures = 0
    for _ in range(trials):
        cls = SubgroupClass.ABELIAN_NON_CENTRAL if rng.integers(0, 2) else SubgroupClass.NORMAL_CONTAINS_CENTER
        H = random_subgroup(params, cls, rng)
        try:
            failures += run_full(make(H), params, rng, backend).subgroup != H
        except HspError:
            failures += 1
    return _judge("end_to_end", failures, 0, f"{trials} trials, {backend} backend")


# ---- Suite ----
def verify_settings(overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    settings = dict(load_yaml_config().get('verify', {}) or {})
    settings.update(overrides or {})
    return settings


def verify_suite(settings: Optional[Mapping[str, Any]] = None, verbose: bool = False) -> List[CheckResult]:
    """
    Run every check for the configured (p, n); the circuit checks run over circuit_cases.

    Args:
        settings: the `verify` section of config.yaml, optionally overridden
        verbose: print the report
    """
    settings = verify_settings(settings)
    params = GroupParams(int(settings.get('p', 3)), int(settings.get('n', 1)))
    rng = np.random.default_rng(int(settings.get('seed', 11)))
    cases = [tuple(c) for c in settings.get('circuit_cases', [(params.p, params.n)])]
    samples = int(settings.get('samples', 2000))

    report = [
        check_group_axioms(params, rng),
        check_rep_identities(params, rng),
        check_qft_unitarity(cases),
        check_circuit(cases, bool(settings.get('permute_wires', False))),
        check_cg_blocks(params, rng),
        check_label_change(params, rng),
        check_conjugator(params, rng),
        check_plancherel(params, rng),
        check_collapsed_state(params, rng),
        check_sampler(params, rng, samples),
        check_recovery(params, rng),
    ]
    if verbose:
        print_verification_report(report, params)
    return report


def print_verification_report(report: List[CheckResult], params: Optional[GroupParams] = None) -> bool:
    """Print one line per check; returns True when nothing failed."""
    title = f"VERIFICATION REPORT: {params}" if params is not None else "VERIFICATION REPORT"
    print(f"\n{'=' * 60}")
    print(title)
    print(f"{'=' * 60}")
    for check in report:
        mark = {PASS: "✓", FAIL: "✗", SKIPPED: "-"}[check.status]
        deviation = "" if check.deviation is None else f"  max deviation {check.deviation:.3e}"
        print(f"{mark} {check.status:<7} {check.name:<18}{deviation}  {check.detail}")
    failed = [check for check in report if check.status == FAIL]
    if failed:
        print(f"\n✗ {len(failed)} check(s) failed")
    else:
        print(f"\n✓ All verification checks passed!")
    print(f"{'=' * 60}\n")
    return not failed
