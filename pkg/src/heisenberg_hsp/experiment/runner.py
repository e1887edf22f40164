"""
Batch experiments: planted subgroups, independent seeded trials, merged statistics.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from config.numerics import ROUND_CAP_SLOPE
from ..data import DISCARD_REASONS, GroupParams, Subgroup, SubgroupClass
from ..exceptions import ConfigInvalid, HspError
from ..group import parse_subgroup, random_subgroup
from ..oracle import make
from ..recovery import run_full
from ..simulator import CONVENTION_ID, check_backend
from ..zp_linalg import ISOTROPIC_SAMPLER
from .config import ExperimentConfig, load_yaml_config
from .export import write_histograms, write_result_document

SCHEMA_VERSION = 1


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (master seed, trial index)."""
    return np.random.default_rng([seed, trial])


def plant_subgroup(config: ExperimentConfig, params: GroupParams, rng, trial: int) -> Subgroup:
    if config.subgroup is not None:
        return parse_subgroup(config.subgroup)
    case = config.case
    if case == "mixed":
        case = "abelian" if trial % 2 == 0 else "normal"
    cls = SubgroupClass.ABELIAN_NON_CENTRAL if case == "abelian" else SubgroupClass.NORMAL_CONTAINS_CENTER
    return random_subgroup(params, cls, rng, dim=config.subgroup_dim)


def run_trial(config: ExperimentConfig, trial: int) -> Dict:
    """One planted subgroup, one recovery; returns the per-trial record."""
    params = GroupParams(config.p, config.n)
    rng = trial_rng(config.seed, trial)
    H = plant_subgroup(config, params, rng, trial)
    f = make(H)
    record = {
        "trial": trial,
        "case": H.classification.value,
        "planted": H.to_literal(),
    }
    try:
        result = run_full(
            f, params, rng,
            backend=config.backend,
            harvest=config.harvest_sum_zero,
            retry=config.retry_on_failure,
        )
        record.update(result.to_dict())
        record["success"] = result.subgroup == H
        record["error"] = None
        record["label_counts"] = dict(result.label_counts)
    except HspError as err:
        record.update({
            "recovered": None,
            "route": None,
            "rounds": 0,
            "accepted_rounds": 0,
            "harvested_rounds": 0,
            "discards": {reason: 0 for reason in DISCARD_REASONS},
            "fourier_samples": 0,
            "abelian_samples": 0,
            "verification_queries": 0,
            "queries": f.query_count,
            "retries": 0,
            "conjugator": None,
            "success": False,
            "error": f"{type(err).__name__}: {err}",
            "label_counts": {},
        })
    return record


def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) else 0.0


def discard_rates(per_trial: List[Dict], p: int) -> Dict:
    """Observed screening rates next to their combinatorial predictions (odd p only)."""
    rounds = sum(r["rounds"] for r in per_trial)
    accepted = sum(r["accepted_rounds"] for r in per_trial)
    discards = {reason: sum(r["discards"][reason] for r in per_trial) for reason in DISCARD_REASONS}
    stage = rounds - discards["one_dim"] - discards["sum_zero"]
    out = {
        "rounds": rounds,
        "observed_acceptance_stage": stage / rounds if rounds else None,
        "observed_square_rate": accepted / stage if stage and p > 2 else None,
        "predicted_acceptance_stage": None,
        "stated_acceptance_figure": None,
        "exact_square_rate": None,
    }
    if p > 2:
        out["predicted_acceptance_stage"] = float(Fraction((p - 1) * (p - 2), p * p))
        out["stated_acceptance_figure"] = float(Fraction(p - 1, p * p))
        out["exact_square_rate"] = float(Fraction(p - 3, 2 * (p - 2)))
    return out


def summarize(config: ExperimentConfig, per_trial: List[Dict]) -> Dict:
    return {
        "schema": SCHEMA_VERSION,
        "p": config.p,
        "n": config.n,
        "case": config.case,
        "trials": config.trials,
        "successes": sum(1 for r in per_trial if r["success"]),
        "mean_rounds": _mean([r["rounds"] for r in per_trial]),
        "mean_accepted_rounds": _mean([r["accepted_rounds"] for r in per_trial]),
        "mean_discards_by_reason": {
            reason: _mean([r["discards"][reason] for r in per_trial]) for reason in DISCARD_REASONS
        },
        "mean_queries": _mean([r["queries"] for r in per_trial]),
        "seed": config.seed,
        "backend": config.backend,
        "convention_id": CONVENTION_ID,
        "sampler": ISOTROPIC_SAMPLER,
        "discard_rates": discard_rates(per_trial, config.p),
        "per_trial": per_trial,
    }


def collect_trials(config: ExperimentConfig) -> List[Dict]:
    """Run every trial, in a process pool when workers > 1, merged in trial order."""
    trials = range(config.trials)
    if config.workers > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(run_trial, [config] * config.trials, trials))
    return [run_trial(config, i) for i in trials]


def run_experiment(config: ExperimentConfig, write: bool = True, verbose: bool = False) -> Dict:
    """
    Args:
        config: validated experiment configuration
        write: write the JSON document (and CSV histograms) to config.out
        verbose: print a summary

    Returns:
        the result document
    """
    is_valid, errors = config.validate()
    if not is_valid:
        raise ConfigInvalid(errors)
    check_backend(GroupParams(config.p, config.n), config.backend)

    records = collect_trials(config)
    label_counts = Counter()
    for record in records:
        label_counts.update(record.pop("label_counts"))
    document = summarize(config, records)

    if write:
        write_result_document(document, config.out)
        if config.histograms:
            rounds_hist = Counter(r["rounds"] for r in records)
            write_histograms(config.out, rounds_hist, label_counts)
    if verbose:
        print_experiment_summary(document)
    return document


def print_experiment_summary(document: Dict):
    print(f"\n{'=' * 60}")
    print(f"EXPERIMENT: p={document['p']} n={document['n']} case={document['case']} backend={document['backend']}")
    print(f"{'=' * 60}")
    trials = document["trials"]
    mark = "✓" if trials == 0 or document["successes"] >= 0.95 * trials else "✗"
    print(f"{mark} {document['successes']}/{trials} planted subgroups recovered")
    print(f"  mean rounds:          {document['mean_rounds']:.2f}")
    print(f"  mean accepted rounds: {document['mean_accepted_rounds']:.2f}")
    print(f"  mean queries:         {document['mean_queries']:.2f}")
    for reason, mean in document["mean_discards_by_reason"].items():
        print(f"  mean {reason} discards: {mean:.2f}")
    rates = document["discard_rates"]
    if rates["predicted_acceptance_stage"] is not None and rates["observed_acceptance_stage"] is not None:
        print(f"  acceptance stage: observed {rates['observed_acceptance_stage']:.4f}, "
              f"predicted {rates['predicted_acceptance_stage']:.4f} "
              f"(stated figure {rates['stated_acceptance_figure']:.4f})")
    print(f"{'=' * 60}\n")


def fit_round_scaling(ns: Sequence[int], mean_rounds: Sequence[float]) -> Dict[str, float]:
    """Least-squares line rounds ~ slope * n + intercept."""
    if len(ns) < 2:
        raise ValueError("fitting round scaling needs at least two values of n")
    slope, intercept = np.polyfit(np.asarray(ns, dtype=float), np.asarray(mean_rounds, dtype=float), 1)
    return {"slope": float(slope), "intercept": float(intercept)}


def scaling_settings(overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    settings = dict(load_yaml_config().get('scaling', {}) or {})
    settings.update(overrides or {})
    return settings


def scaling_study(config: ExperimentConfig, ns: Sequence[int], verbose: bool = False) -> Dict:
    """
    Mean accepted rounds per n at fixed p, the fitted line, and whether every mean
    stays under the hard cap ROUND_CAP_SLOPE * n + ROUND_CAP_OFFSET with a slope no
    steeper than ROUND_CAP_SLOPE. Planted dimensions are drawn per trial.
    """
    means, caps = [], []
    for n in ns:
        sub = ExperimentConfig(**{**config.to_dict(), "n": n, "subgroup": None, "subgroup_dim": None})
        means.append(run_experiment(sub, write=False)["mean_accepted_rounds"])
        caps.append(GroupParams(config.p, n).round_cap())
    fit = fit_round_scaling(ns, means)
    within_cap = fit["slope"] <= ROUND_CAP_SLOPE and all(mean <= cap for mean, cap in zip(means, caps))
    if verbose:
        print(f"\n{'=' * 60}")
        print(f"ROUND SCALING: p={config.p} case={config.case} backend={config.backend} trials={config.trials}")
        print(f"{'=' * 60}")
        for n, mean, cap in zip(ns, means, caps):
            print(f"  n={n}: mean accepted rounds {mean:.2f} (cap {cap})")
        mark = "✓" if within_cap else "✗"
        print(f"{mark} fit: rounds ~ {fit['slope']:.2f} n + {fit['intercept']:.2f}")
        print(f"{'=' * 60}\n")
    return {
        "p": config.p,
        "case": config.case,
        "backend": config.backend,
        "trials": config.trials,
        "seed": config.seed,
        "ns": list(ns),
        "mean_accepted_rounds": means,
        "round_caps": caps,
        **fit,
        "within_cap": within_cap,
    }
