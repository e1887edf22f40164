"""
Irreducible representations of the Weyl-Heisenberg group.

One-dimensional: chi_(a,b)(x,y,z) = w^(a.x + b.y).
High-dimensional: rho_k(x,y,z) = sum_u w^(k(z + y.u)) |u+x><u|, k != 0.
"""

from typing import Sequence

import numpy as np

from ..data import GroupElement, IrrepLabel, Subgroup, add_table, omega_powers, vector_index
from ..exceptions import ZeroLabel
from ..zp_linalg import dot


def chi(a: Sequence[int], b: Sequence[int], g: GroupElement) -> complex:
    p = g.params.p
    if len(a) != g.params.n or len(b) != g.params.n:
        raise ValueError(f"character label ({a}, {b}) does not match n={g.params.n}")
    return complex(omega_powers(p)[(dot(a, g.x, p) + dot(b, g.y, p)) % p])


def rho(k: int, g: GroupElement) -> np.ndarray:
    params = g.params
    p = params.p
    if k % p == 0:
        raise ZeroLabel("rho_k needs k != 0 mod p")
    V = params.vectors
    cols = np.arange(params.register_dim)
    rows = add_table(p, params.n)[vector_index(g.x, p), cols]
    phases = (k * (g.z + V @ np.array(g.y, dtype=np.int64))) % p
    out = np.zeros((params.register_dim, params.register_dim), dtype=np.complex128)
    out[rows, cols] = omega_powers(p)[phases]
    return out


def shift_operator(params, x: Sequence[int]) -> np.ndarray:
    """X^x |u> = |u + x>."""
    p, D = params.p, params.register_dim
    out = np.zeros((D, D), dtype=np.complex128)
    cols = np.arange(D)
    out[add_table(p, params.n)[vector_index(x, p), cols], cols] = 1.0
    return out


def clock_operator(params, k: int, y: Sequence[int]) -> np.ndarray:
    """Z_k^y |u> = w^(k y.u) |u>."""
    p = params.p
    phases = (k * (params.vectors @ np.array(y, dtype=np.int64))) % p
    return np.diag(omega_powers(p)[phases])


def rho_pauli(k: int, g: GroupElement) -> np.ndarray:
    """rho_k(x,y,z) = w^(kz) X^x Z_k^y."""
    p = g.params.p
    if k % p == 0:
        raise ZeroLabel("rho_k needs k != 0 mod p")
    return omega_powers(p)[(k * g.z) % p] * shift_operator(g.params, g.x) @ clock_operator(g.params, k, g.y)


def irrep_matrix(label: IrrepLabel, g: GroupElement) -> np.ndarray:
    if label.is_high_dim:
        return rho(label.k, g)
    return np.array([[chi(label.a, label.b, g)]], dtype=np.complex128)


def character(label: IrrepLabel, g: GroupElement) -> complex:
    """Trace of the irrep: p^n w^(kz) on the center, 0 elsewhere, for rho_k."""
    if not label.is_high_dim:
        return chi(label.a, label.b, g)
    if not g.is_central():
        return 0j
    params = g.params
    return params.register_dim * complex(omega_powers(params.p)[(label.k * g.z) % params.p])


def projector(label: IrrepLabel, H: Subgroup) -> np.ndarray:
    """rho(H) = (1/|H|) sum_h rho(h), by enumeration of H."""
    elements = list(H.elements())
    dim = label.dimension(H.params)
    out = np.zeros((dim, dim), dtype=np.complex128)
    for h in elements:
        out += irrep_matrix(label, h)
    return out / len(elements)
