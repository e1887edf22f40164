"""
Two-register rounds of the algorithm.

A round takes two coset states, weak-Fourier-samples both, and screens the label pair:
  one-dimensional label            -> ONE_DIM discard
  k + l = 0                        -> SUM_ZERO discard (measured anyway when harvesting)
  -k/l not a square mod p          -> NON_SQUARE discard
Otherwise alpha = sqrt(-k/l), U_alpha on the first register turns its irrep label
-k into l, the k+l=0 Clebsch-Gordan transform with labels (l, -l) is applied and both
registers are measured. Every round costs two queries.
"""

from typing import Callable, Optional, Tuple

import numpy as np

from config.numerics import MAX_DENSE_MATRIX, MAX_TWO_REGISTER_DIM
from ..data import Conjugator, GroupParams, IrrepLabel, RoundOutcome, RoundSample, Subgroup
from ..exceptions import BackendCapExceeded, EvenCharacteristic
from ..group import find_conjugator
from ..oracle import HiddenFunction
from ..zp_linalg import inv_mod, sqrt_mod
from .conventions import RESOLVED_CONVENTION, ComplementConvention, column_label
from .coset import coset_state, plancherel_for, weak_fourier_sample
from .transforms import (
    apply_u_alpha,
    apply_u_alpha_dense,
    clebsch_gordan_matrix,
    measurement_distribution,
    sample_exact,
)

BACKENDS = ("analytic", "structured", "dense")


def check_backend(params: GroupParams, backend: str):
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
    if backend != "dense":
        return
    if params.order > MAX_DENSE_MATRIX:
        raise BackendCapExceeded(f"dense backend: |G|={params.order} exceeds {MAX_DENSE_MATRIX}")
    if params.register_dim ** 2 > MAX_TWO_REGISTER_DIM:
        raise BackendCapExceeded(f"dense backend: p^(2n)={params.register_dim ** 2} exceeds {MAX_TWO_REGISTER_DIM}")


def screen_labels(labels: Tuple[IrrepLabel, IrrepLabel], p: int) -> Tuple[Optional[RoundOutcome], Optional[int]]:
    """
    Returns (discard, None) for a rejected pair, (None, alpha) for an accepted one and
    (None, None) for a k + l = 0 pair, which the caller may still measure.
    """
    first, second = labels
    if not (first.is_high_dim and second.is_high_dim):
        return RoundOutcome.one_dim(labels), None
    k, l = first.k, second.k
    if (k + l) % p == 0:
        return None, None
    alpha = sqrt_mod(-k * inv_mod(l, p), p)
    if alpha is None:
        return RoundOutcome.non_square(k, l, labels), None
    return None, alpha


def _measure(params: GroupParams, registers, labels, alpha: int, backend: str, rng) -> Tuple[tuple, tuple]:
    """Label change, Clebsch-Gordan and standard-basis measurement; returns (u, v)."""
    p, n, D = params.p, params.n, params.register_dim
    first, second = registers
    rep_first = (column_label(labels[0].k, p) * inv_mod(alpha * alpha, p)) % p
    rep_second = column_label(labels[1].k, p)

    if backend == "dense":
        moved = apply_u_alpha_dense(first, p, n, alpha)
        if moved.ndim == 1:
            amplitudes = clebsch_gordan_matrix(p, n, rep_first, rep_second) @ np.kron(moved, second)
            weights = np.abs(amplitudes) ** 2
        else:
            U = clebsch_gordan_matrix(p, n, rep_first, rep_second)
            weights = np.real(np.diag(U @ np.kron(moved, second) @ U.conj().T)).clip(min=0)
        s, w = divmod(int(rng.choice(D * D, p=weights / weights.sum())), D)
    else:
        dist = measurement_distribution(apply_u_alpha(first, alpha), second, rep_first, rep_second)
        s, w = sample_exact(dist, rng)
    return params.index_vector(s), params.index_vector(w)


def _sampled_registers(f: HiddenFunction, rng, backend: str):
    params = f.params
    labels, registers = [], []
    for _ in range(2):
        state = coset_state(f, rng)
        if backend == "dense":
            label, column = weak_fourier_sample(state.to_ket(), rng, params)
        else:
            label, column = weak_fourier_sample(state, rng)
        labels.append(label)
        registers.append(column)
    return tuple(labels), tuple(registers)


def two_register_round(f: HiddenFunction, rng, backend: str = "structured", harvest: bool = False) -> RoundOutcome:
    """
    One round on two fresh coset states (two queries).

    Args:
        f: hidden function
        rng: numpy Generator
        backend: "structured" (exact terms) or "dense"
        harvest: measure k + l = 0 rounds with alpha = 1 and attach the sample
    """
    params = f.params
    if params.p == 2:
        raise EvenCharacteristic("two_register_round needs p > 2, use p2_round")
    check_backend(params, backend)
    labels, registers = _sampled_registers(f, rng, backend)
    discard, alpha = screen_labels(labels, params.p)
    if discard is not None:
        return discard
    k, l = labels[0].k, labels[1].k
    if alpha is None:
        if not harvest:
            return RoundOutcome.sum_zero(k, l, labels)
        u, v = _measure(params, registers, labels, 1, backend, rng)
        return RoundOutcome.sum_zero(k, l, labels, RoundSample(k, l, 1, u, v))
    u, v = _measure(params, registers, labels, alpha, backend, rng)
    return RoundOutcome.accepted(RoundSample(k, l, alpha, u, v), labels)


def analytic_round(
    H: Subgroup,
    conj: Conjugator,
    rng,
    convention: ComplementConvention = RESOLVED_CONVENTION,
    harvest: bool = False,
) -> RoundOutcome:
    """
    Closed-form round: labels from the Plancherel distribution, (u, v) uniform over
    the translate  orient(u + (1-alpha) x^, v + (1-alpha) y^) in complement(S_H).
    No queries are charged here; the driver accounts two per round.
    """
    params = H.params
    p = params.p
    if p == 2:
        raise EvenCharacteristic("analytic_round needs p > 2")
    dist = plancherel_for(H)
    labels = (dist.sample(rng), dist.sample(rng))
    discard, alpha = screen_labels(labels, p)
    if discard is not None:
        return discard
    k, l = labels[0].k, labels[1].k
    if alpha is None and not harvest:
        return RoundOutcome.sum_zero(k, l, labels)

    shift_alpha = 1 if alpha is None else alpha
    u, v = convention.unorient(convention.complement(H.s_basis).random_element(rng))
    shift = (1 - shift_alpha) % p
    u = tuple((a - shift * b) % p for a, b in zip(u, conj.xhat))
    v = tuple((a - shift * b) % p for a, b in zip(v, conj.yhat))
    sample = RoundSample(k, l, shift_alpha, u, v)
    if alpha is None:
        return RoundOutcome.sum_zero(k, l, labels, sample)
    return RoundOutcome.accepted(sample, labels)


def p2_round(
    f: HiddenFunction,
    rng,
    backend: str = "structured",
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> RoundOutcome:
    """
    p = 2 round: both labels high-dimensional forces k = l = 1; the (-1)^(w.v) kernel
    is applied directly and the measured (u, v) lies in the complement of S_H.
    """
    params = f.params
    if params.p != 2:
        raise ValueError(f"p2_round needs p = 2, got p = {params.p}")
    check_backend(params, backend)
    if backend == "analytic":
        f._charge(2)
        dist = plancherel_for(f._hidden)
        labels = (dist.sample(rng), dist.sample(rng))
        if not (labels[0].is_high_dim and labels[1].is_high_dim):
            return RoundOutcome.one_dim(labels)
        u, v = convention.unorient(convention.complement(f._hidden.s_basis).random_element(rng))
        return RoundOutcome.accepted(RoundSample(1, 1, 1, u, v), labels)

    labels, registers = _sampled_registers(f, rng, backend)
    if not (labels[0].is_high_dim and labels[1].is_high_dim):
        return RoundOutcome.one_dim(labels)
    u, v = _measure(params, registers, labels, 1, backend, rng)
    return RoundOutcome.accepted(RoundSample(1, 1, 1, u, v), labels)


RoundSource = Callable[[object], RoundOutcome]


def round_source(
    f: HiddenFunction,
    backend: str = "analytic",
    harvest: bool = False,
    convention: ComplementConvention = RESOLVED_CONVENTION,
) -> RoundSource:
    """rng -> RoundOutcome for the chosen backend; every call costs two queries."""
    params = f.params
    if params.p == 2:
        return lambda rng: p2_round(f, rng, backend, convention)
    if backend == "analytic":
        H = f._hidden
        # subgroups containing the center only give one-dimensional labels
        conj = None if H.contains_center else find_conjugator(H)

        def draw(rng):
            f._charge(2)
            return analytic_round(H, conj, rng, convention, harvest)

        return draw
    return lambda rng: two_register_round(f, rng, backend, harvest)


def fourier_label(f: HiddenFunction, rng, backend: str = "analytic") -> IrrepLabel:
    """Irrep label of one weak Fourier sample on a fresh coset state; one query."""
    if backend == "analytic":
        f._charge(1)
        return plancherel_for(f._hidden).sample(rng)
    state = coset_state(f, rng)
    if backend == "dense":
        label, _ = weak_fourier_sample(state.to_ket(), rng, f.params)
        return label
    label, _ = weak_fourier_sample(state, rng)
    return label
