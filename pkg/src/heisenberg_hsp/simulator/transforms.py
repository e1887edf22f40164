"""
Register transforms of a two-register round: the label change U_alpha and the
Clebsch-Gordan transform, in structured (exact) and dense form, plus the exact
measurement distribution of the transformed product state.

Clebsch-Gordan unitaries on |u, v> for irrep labels (k, l) of the two registers:
  k + l != 0:        |u - v, (k u + l v)/(k + l)>
  k + l = 0, p odd:  p^(-n/2) sum_w w^((l/2)(u + v).w) |u - v, w>
  p = 2:             2^(-n/2) sum_w (-1)^(w.v) |u + v, w>
"""

from bisect import bisect_right
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from math import lcm
from typing import Dict, List, Optional, Tuple

import numpy as np

from config.numerics import MAX_STRUCTURED_TERMS, MAX_TWO_REGISTER_DIM
from ..data import (
    StructuredState,
    Term,
    add_table,
    dot_table,
    exact_cyclotomic_value,
    omega_powers,
    scale_table,
    sub_table,
    vector_table,
)
from ..exceptions import TooLarge, ZeroAlpha, ZeroLabel
from ..zp_linalg import inv_mod

Outcome = Tuple[int, int]


def register_exponent(dim: int, p: int) -> int:
    """n with p^n = dim."""
    n = 0
    while p ** n < dim:
        n += 1
    if p ** n != dim:
        raise ValueError(f"register dimension {dim} is not a power of {p}")
    return n


# ---- Label change ----
def apply_u_alpha(state: StructuredState, alpha: int) -> StructuredState:
    """U_alpha (x) I: relabel first-register kets and bras u -> alpha u."""
    p = state.p
    if alpha % p == 0:
        raise ZeroAlpha(f"U_alpha needs alpha != 0 mod {p}")
    D = state.register_dim
    scale = scale_table(p, register_exponent(D, p), alpha % p)

    if state.registers == 1:
        def relabel(i):
            return int(scale[i])
    else:
        def relabel(i):
            first, second = divmod(i, D)
            return int(scale[first]) * D + second

    if state.is_pure:
        ket = [(phase, relabel(i)) for phase, i in state.ket_terms]
        return StructuredState.pure(p, state.dim, ket, state.scale)
    terms = [Term(t.coeff, t.phase, relabel(t.ket), relabel(t.bra)) for t in state.terms]
    return StructuredState(p, state.dim, terms, state.registers)


def u_alpha_matrix(p: int, n: int, alpha: int) -> np.ndarray:
    if alpha % p == 0:
        raise ZeroAlpha(f"U_alpha needs alpha != 0 mod {p}")
    D = p ** n
    out = np.zeros((D, D), dtype=np.complex128)
    out[scale_table(p, n, alpha % p), np.arange(D)] = 1.0
    return out


def apply_u_alpha_dense(a: np.ndarray, p: int, n: int, alpha: int) -> np.ndarray:
    """U_alpha on a dense single-register ket or density matrix."""
    if alpha % p == 0:
        raise ZeroAlpha(f"U_alpha needs alpha != 0 mod {p}")
    scale = scale_table(p, n, alpha % p)
    out = np.zeros_like(a)
    if a.ndim == 1:
        out[scale] = a
    else:
        out[np.ix_(scale, scale)] = a
    return out


# ---- Clebsch-Gordan ----
@lru_cache(maxsize=None)
def _cg_tables(p: int, n: int, k: int, l: int) -> Tuple[np.ndarray, Optional[np.ndarray], Optional[np.ndarray]]:
    """
    Index tables over (u, v): the first output register, then either the second
    output register (k + l != 0) or the index of the phase vector paired with w.
    """
    if k % p == 0 or l % p == 0:
        raise ZeroLabel(f"Clebsch-Gordan labels must be nonzero mod {p}, got ({k}, {l})")
    V = vector_table(p, n)
    D = p ** n
    weights = p ** np.arange(n, dtype=np.int64)
    if (k + l) % p:
        first = np.array(sub_table(p, n))
        combined = (k * V[:, None, :] + l * V[None, :, :]) * inv_mod(k + l, p)
        return first, (combined % p) @ weights, None
    if p == 2:
        return np.array(add_table(p, n)), None, np.broadcast_to(np.arange(D)[None, :], (D, D)).copy()
    c = (l * inv_mod(2, p)) % p
    phase_vectors = ((c * (V[:, None, :] + V[None, :, :])) % p) @ weights
    return np.array(sub_table(p, n)), None, phase_vectors


def clebsch_gordan(state: StructuredState, k: int, l: int) -> StructuredState:
    """Apply the Clebsch-Gordan unitary for labels (k, l) to a two-register state."""
    if state.registers != 2:
        raise ValueError("Clebsch-Gordan acts on a two-register state")
    p, D = state.p, state.register_dim
    first, second, phases = _cg_tables(p, register_exponent(D, p), k % p, l % p)

    if phases is None:
        perm = (first * D + second).ravel()
        terms = [Term(t.coeff, t.phase, int(perm[t.ket]), int(perm[t.bra])) for t in state.terms]
        return StructuredState(p, state.dim, terms, 2)

    if len(state.terms) * D * D > MAX_STRUCTURED_TERMS:
        raise TooLarge(f"Clebsch-Gordan of {len(state.terms)} terms exceeds {MAX_STRUCTURED_TERMS}")
    dots = dot_table(p, register_exponent(D, p))
    terms = []
    for t in state.terms:
        u, v = divmod(t.ket, D)
        u2, v2 = divmod(t.bra, D)
        s_ket, s_bra = int(first[u, v]), int(first[u2, v2])
        ket_phase, bra_phase = dots[phases[u, v]], dots[phases[u2, v2]]
        coeff = t.coeff / D
        for w in range(D):
            for w2 in range(D):
                phase = (t.phase + int(ket_phase[w]) - int(bra_phase[w2])) % p
                terms.append(Term(coeff, phase, s_ket * D + w, s_bra * D + w2))
    return StructuredState(p, state.dim, terms, 2).merged()


def clebsch_gordan_matrix(p: int, n: int, k: int, l: int) -> np.ndarray:
    D = p ** n
    if D * D > MAX_TWO_REGISTER_DIM:
        raise TooLarge(f"two-register dimension {D * D} exceeds {MAX_TWO_REGISTER_DIM}")
    first, second, phases = _cg_tables(p, n, k % p, l % p)
    out = np.zeros((D * D, D * D), dtype=np.complex128)
    cols = np.arange(D * D)
    if phases is None:
        out[(first * D + second).ravel(), cols] = 1.0
        return out
    w = omega_powers(p)
    dots = dot_table(p, n)
    rows = first.ravel()[:, None] * D + np.arange(D)[None, :]
    values = w[dots[phases.ravel()]] / np.sqrt(D)
    out[rows, np.broadcast_to(cols[:, None], rows.shape)] = values
    return out


# ---- Measurement ----
def measurement_distribution(first: StructuredState, second: StructuredState, k: int, l: int) -> Dict[Outcome, Fraction]:
    """
    Exact standard-basis distribution of CG_(k,l) (first (x) second) CG^dagger.

    Returns {(output register 1 index, output register 2 index): probability}.
    The product state is never formed: for the k + l = 0 kernel a diagonal entry
    (s, w) collects term pairs with ket_1 - ket_2 = bra_1 - bra_2 = s.
    """
    p, D = first.p, first.register_dim
    if second.p != p or second.register_dim != D:
        raise ValueError("both registers must have the same p and dimension")
    n = register_exponent(D, p)
    out_first, out_second, phases = _cg_tables(p, n, k % p, l % p)

    if phases is None:
        d1, d2 = first.diagonal(), second.diagonal()
        return {
            (int(out_first[u, v]), int(out_second[u, v])): a * b
            for u, a in d1.items()
            for v, b in d2.items()
        }

    second_terms: Dict[Tuple[int, int], List[Tuple[Fraction, int]]] = defaultdict(list)
    for t in second.terms:
        second_terms[(t.ket, t.bra)].append((t.coeff, t.phase))
    dots = dot_table(p, n)
    sub = sub_table(p, n)
    counts: Dict[Outcome, List[Fraction]] = defaultdict(lambda: [Fraction(0)] * p)
    for a in first.terms:
        u, u2 = a.ket, a.bra
        for s in range(D):
            # u - v = s for odd p, u + v = s for p = 2: v = u - s either way
            v, v2 = int(sub[u, s]), int(sub[u2, s])
            matches = second_terms.get((v, v2))
            if not matches:
                continue
            base = (dots[phases[u, v]] - dots[phases[u2, v2]]) % p
            for coeff, phase in matches:
                weight = a.coeff * coeff / D
                shift = a.phase + phase
                for w in range(D):
                    counts[(s, w)][(shift + int(base[w])) % p] += weight
    dist = {}
    for outcome in sorted(counts):
        value = exact_cyclotomic_value(counts[outcome], p)
        if value:
            dist[outcome] = value
    return dist


def sample_exact(dist: Dict[Outcome, Fraction], rng) -> Outcome:
    """Inverse-CDF draw from an exact rational distribution."""
    outcomes = sorted(dist)
    denominator = lcm(*(dist[o].denominator for o in outcomes))
    cumulative = list(accumulate(dist[o].numerator * (denominator // dist[o].denominator) for o in outcomes))
    draw = int(rng.integers(0, cumulative[-1]))
    return outcomes[bisect_right(cumulative, draw)]
