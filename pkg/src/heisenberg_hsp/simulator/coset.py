"""
Coset-state preparation and weak Fourier sampling.

Structured backend: the label is drawn from the exact Plancherel distribution and
the column register is returned as rho*_k(H)/r, the state left after averaging over
the unknown coset and the discarded row index.
Dense backend: QFT over G applied to a ket or density matrix, label and row
measured, column block renormalised.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from config.numerics import MAX_DENSE_MATRIX
from ..data import (
    GroupParams,
    IrrepLabel,
    StructuredState,
    Subgroup,
    Term,
    add_table,
    dot_table,
    vector_index,
)
from ..exceptions import BackendCapExceeded
from ..group import random_element
from ..oracle import HiddenFunction, coset_partition
from ..reps import PlancherelDist, plancherel, qft_dense
from .conventions import column_label


@lru_cache(maxsize=64)
def plancherel_for(H: Subgroup) -> PlancherelDist:
    return plancherel(H)


def coset_state(f: HiddenFunction, rng) -> StructuredState:
    """|gH> for uniform g; one oracle query."""
    H = f._hidden
    params = H.params
    f._charge(1)
    g = random_element(params, rng)
    ket = [(0, (g * h).index) for h in H.elements()]
    return StructuredState.pure(params.p, params.order, ket, Fraction(1, H.order), subgroup=H)


def mixed_coset_state(H: Subgroup) -> np.ndarray:
    """sigma_H^G = (1/|G|) sum_g |gH><gH|, densely: 1/|G| on pairs in a common coset."""
    params = H.params
    if params.order > MAX_DENSE_MATRIX:
        raise BackendCapExceeded(f"|G|={params.order} exceeds the dense matrix cap {MAX_DENSE_MATRIX}")
    labels = coset_partition(H)
    reps = np.array([labels[i] for i in range(params.order)])
    return (reps[:, None] == reps[None, :]).astype(np.complex128) / params.order


def collapsed_state(label: IrrepLabel, H: Subgroup) -> StructuredState:
    """rho*_k(H) / r_k(H) for a high-dimensional label, the 1x1 state for a one-dimensional one."""
    params = H.params
    p, D = params.p, params.register_dim
    if not label.is_high_dim:
        return StructuredState(p, 1, [Term(Fraction(1), 0, 0, 0)])
    kappa = column_label(label.k, p)
    coeff = Fraction(1, D)
    adds = add_table(p, params.n)
    dots = dot_table(p, params.n)
    cols = np.arange(D)
    terms = []
    for h in H.elements():
        rows = adds[vector_index(h.x, p), cols]
        phases = (kappa * (h.z + dots[vector_index(h.y, p), cols])) % p
        terms.extend(Term(coeff, int(e), int(r), int(c)) for e, r, c in zip(phases, rows, cols))
    return StructuredState(p, D, terms).merged()


def weak_fourier_sample(
    state: Union[StructuredState, Subgroup, np.ndarray],
    rng,
    params: GroupParams = None,
) -> Tuple[IrrepLabel, Union[StructuredState, np.ndarray]]:
    """
    Measure the irrep label (and row) after the QFT over G.

    Args:
        state: a structured coset state or a subgroup (structured backend), or a dense
            ket / density matrix over G (dense backend, params required)
        rng: numpy Generator
        params: group parameters for dense input

    Returns:
        (label, column state): StructuredState for the structured backend, dense ket or
        density matrix for the dense backend
    """
    if isinstance(state, Subgroup) or isinstance(state, StructuredState):
        H = state if isinstance(state, Subgroup) else state.subgroup
        if H is None:
            raise ValueError("structured weak Fourier sampling needs a coset state of a known subgroup")
        label = plancherel_for(H).sample(rng)
        return label, collapsed_state(label, H)
    if params is None:
        raise ValueError("dense weak Fourier sampling needs params")
    return _weak_fourier_sample_dense(np.asarray(state), params, rng)


def _weak_fourier_sample_dense(state: np.ndarray, params: GroupParams, rng):
    p, D = params.p, params.register_dim
    Q = qft_dense(params)
    if state.ndim == 1:
        phi = Q @ state
        weights = (np.abs(phi) ** 2).reshape(p, D, D)
    else:
        R = Q @ state @ Q.conj().T
        weights = np.real(np.diag(R)).clip(min=0).reshape(p, D, D)

    label_weights = np.concatenate([weights[0].ravel(), weights[1:].sum(axis=(1, 2))])
    choice = int(rng.choice(label_weights.size, p=label_weights / label_weights.sum()))
    if choice < D * D:
        a, b = divmod(choice, D)
        label = IrrepLabel.one_dim(params.index_vector(a), params.index_vector(b), p)
        return label, (np.ones(1, dtype=np.complex128) if state.ndim == 1 else np.ones((1, 1), dtype=np.complex128))

    k = choice - D * D + 1
    row_weights = weights[k].sum(axis=1)
    a = int(rng.choice(D, p=row_weights / row_weights.sum()))
    label = IrrepLabel.high_dim(k, p)
    if state.ndim == 1:
        column = phi.reshape(p, D, D)[k, a, :]
        return label, column / np.linalg.norm(column)
    block = R.reshape(p, D, D, p, D, D)[k, a, :, k, a, :]
    return label, block / np.trace(block).real
