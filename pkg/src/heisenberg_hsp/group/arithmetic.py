"""
Arithmetic of the Weyl-Heisenberg group G = Z_p^(n+1) x| Z_p^n.
"""

import numpy as np

from ..data import GroupAutomorphism, GroupElement, GroupParams
from ..exceptions import ZeroAlpha
from ..zp_linalg import MatZp


def identity(params: GroupParams) -> GroupElement:
    return GroupElement.identity(params)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def power(g: GroupElement, a: int) -> GroupElement:
    return g.power(a)


def conjugate(h: GroupElement, g: GroupElement) -> GroupElement:
    """g^-1 h g."""
    return h.conjugate_by(g)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """g^-1 h^-1 g h, always central."""
    return g.inverse() * h.inverse() * g * h


def random_element(params: GroupParams, rng) -> GroupElement:
    return GroupElement.from_index(params, int(rng.integers(0, params.order)))


def all_elements(params: GroupParams):
    for i in range(params.order):
        yield GroupElement.from_index(params, i)


def apply_phi_alpha(aut: GroupAutomorphism, g: GroupElement) -> GroupElement:
    p = g.params.p
    alpha, beta = aut.scalars
    if alpha % p == 0 or beta % p == 0:
        raise ZeroAlpha(f"automorphism scalars {aut.scalars} vanish modulo {p}")
    return GroupElement(
        g.params,
        tuple(alpha * e for e in g.x),
        tuple(beta * e for e in g.y),
        alpha * beta * g.z,
    )


def matrix_realization(g: GroupElement) -> MatZp:
    """
    Upper unitriangular (n+2)x(n+2) matrix

        [1  y  z]
        [0  I  x]
        [0  0  1]

    whose product matches the group law.
    """
    n, p = g.params.n, g.params.p
    M = np.eye(n + 2, dtype=np.int64)
    M[0, 1:n + 1] = g.y
    M[0, n + 1] = g.z
    M[1:n + 1, n + 1] = g.x
    return M % p


def element_from_matrix(params: GroupParams, M: MatZp) -> GroupElement:
    n = params.n
    M = np.asarray(M, dtype=np.int64) % params.p
    return GroupElement(params, tuple(M[1:n + 1, n + 1]), tuple(M[0, 1:n + 1]), int(M[0, n + 1]))
