"""
The abelian stage on K = preimage of an isotropic S in G (K = HG' once S = S_H).

With S spanned by echelon rows B_1..B_d, K is elementary abelian of rank d+1 through
coordinates (c, t):

    (c, t)  ->  (x(c), y(c), t + beta(c)),   (x(c), y(c)) = sum_j c_j B_j

    beta(c) = x(c).y(c) / 2                       p odd
    beta(c) = sum_(i<j) c_i c_j x_i.y_j            p = 2 (rows totally singular)

Abelian Fourier sampling of a coset state of L = H cap K inside K returns a uniform
element of the Euclidean annihilator of L in Z_p^(d+1).
"""

from functools import lru_cache
from typing import Sequence

from ..data import GroupElement, GroupParams, Subgroup
from ..exceptions import NotIsotropic
from ..oracle import HiddenFunction
from ..zp_linalg import (
    BilinearForm,
    FormKind,
    SubspaceBasis,
    VecZp,
    complement_basis,
    dot,
    inv_mod,
    is_isotropic,
    is_totally_singular,
    kernel_basis,
)


def check_coordinates(S: SubspaceBasis):
    if not is_isotropic(S):
        raise NotIsotropic(f"{S.rows} is not isotropic, its preimage is not abelian")
    if S.p == 2 and not is_totally_singular(S):
        raise NotIsotropic(f"{S.rows} has a row with x.y != 0, its lift has order 4")


def center_offset(S: SubspaceBasis, coeffs: Sequence[int]) -> int:
    """beta(c)."""
    p, n = S.p, S.dim // 2
    if p != 2:
        v = S.combination(coeffs)
        return (dot(v[:n], v[n:], p) * inv_mod(2, p)) % p
    total = 0
    for i, row_i in enumerate(S.rows):
        for j in range(i + 1, S.rank):
            if coeffs[i] and coeffs[j]:
                total += dot(row_i[:n], S.rows[j][n:], p)
    return total % p


def element_from_coordinates(params: GroupParams, S: SubspaceBasis, coords: Sequence[int]) -> GroupElement:
    c, t = tuple(coords[:-1]), coords[-1]
    v = S.combination(c)
    n = params.n
    return GroupElement(params, v[:n], v[n:], t + center_offset(S, c))


def coordinates_of(params: GroupParams, S: SubspaceBasis, g: GroupElement) -> VecZp:
    c = S.coordinates(g.vector)
    return c + (((g.z - center_offset(S, c)) % params.p),)


@lru_cache(maxsize=256)
def coordinate_subgroup(H: Subgroup, S: SubspaceBasis) -> SubspaceBasis:
    """L = H cap K written in (c, t) coordinates, as a subspace of Z_p^(d+1)."""
    check_coordinates(S)
    params = H.params
    p, d = params.p, S.rank
    annihilator = complement_basis(H.s_basis, BilinearForm(FormKind.EUCLIDEAN, params.n))
    if d == 0:
        combos = SubspaceBasis(p, 0, ())
    elif annihilator.rank == 0:
        combos = SubspaceBasis.full(p, d)
    else:
        combos = kernel_basis((annihilator.as_array() @ S.as_array().T) % p, p)
    rows = []
    for c in combos.rows:
        h = H.element_over(S.combination(c))
        rows.append(tuple(c) + ((h.z - center_offset(S, c)) % p,))
    if H.contains_center:
        rows.append((0,) * d + (1,))
    return SubspaceBasis.span(rows, p, d + 1)


def abelian_fourier_sample(f: HiddenFunction, S: SubspaceBasis, rng) -> VecZp:
    """One abelian Fourier sample on K; one oracle query."""
    f._charge(1)
    L = coordinate_subgroup(f._hidden, S)
    if L.rank == 0:
        return SubspaceBasis.full(S.p, S.rank + 1).random_element(rng)
    return kernel_basis(L.as_array(), S.p).random_element(rng)
