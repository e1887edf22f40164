"""
Subgroup machinery: S_H, the two-case classification, the canonical
representative H_0 of a conjugacy class, conjugators and random planting.
"""

from typing import Optional

from ..data import (
    Conjugator,
    GroupAutomorphism,
    GroupElement,
    GroupParams,
    Subgroup,
    SubgroupClass,
)
from ..exceptions import EvenCharacteristic, NotIsotropic
from ..zp_linalg import (
    BilinearForm,
    FormKind,
    SubspaceBasis,
    complement_basis,
    dot,
    inv_mod,
    is_isotropic,
    random_isotropic,
    random_subspace,
    solve_mod,
)
from .arithmetic import apply_phi_alpha


def s_basis(H: Subgroup) -> SubspaceBasis:
    return H.s_basis


def classify(H: Subgroup) -> SubgroupClass:
    return H.classification


def symplectic_form(params: GroupParams) -> BilinearForm:
    return BilinearForm(FormKind.SYMPLECTIC, params.n)


def euclidean_form(params: GroupParams) -> BilinearForm:
    return BilinearForm(FormKind.EUCLIDEAN, params.n)


def canonical_h0(S: SubspaceBasis, params: GroupParams) -> Subgroup:
    """H_0 = {(x, y, x.y/2) : (x, y) in S}."""
    if params.p == 2:
        raise EvenCharacteristic("H_0 needs 1/2 and is undefined for p=2")
    if not is_isotropic(S):
        raise NotIsotropic(f"S={S.rows} is not isotropic; no abelian subgroup projects onto it")
    half = inv_mod(2, params.p)
    gens = []
    for row in S.rows:
        g = GroupElement.from_vector(params, row)
        gens.append(GroupElement(params, g.x, g.y, dot(g.x, g.y, params.p) * half))
    return Subgroup(params, gens)


def conjugate_subgroup(H: Subgroup, g: GroupElement) -> Subgroup:
    """H^g = g^-1 H g."""
    return Subgroup(H.params, [h.conjugate_by(g) for h in H.canonical_generators])


def image_subgroup(aut: GroupAutomorphism, H: Subgroup) -> Subgroup:
    return Subgroup(H.params, [apply_phi_alpha(aut, h) for h in H.canonical_generators])


def find_conjugator(H: Subgroup) -> Conjugator:
    """
    Conjugator (x^, y^, 0) with H^g = H_0.

    Each lift (x_j, y_j, z_j) gives x_j.y^ - y_j.x^ = z_j - x_j.y_j/2; the solution is
    reduced modulo S_H^perp to its canonical representative.
    """
    params = H.params
    p, n = params.p, params.n
    if p == 2:
        raise EvenCharacteristic("conjugators to H_0 exist only for odd p")
    if H.classification is not SubgroupClass.ABELIAN_NON_CENTRAL:
        raise ValueError(f"{H} contains the center; it is normal and has no conjugator to H_0")
    half = inv_mod(2, p)
    rows, rhs = [], []
    for lift in H.lifts:
        rows.append([(-e) % p for e in lift.y] + list(lift.x))
        rhs.append((lift.z - dot(lift.x, lift.y, p) * half) % p)
    if rows:
        solution = solve_mod(rows, rhs, p)
    else:
        solution = (0,) * (2 * n)
    perp = complement_basis(H.s_basis, symplectic_form(params))
    solution = perp.reduce(solution)
    return Conjugator(solution[:n], solution[n:], 0)


def stabilizer(H: Subgroup) -> Subgroup:
    """{g : H^g = H}; for non-central abelian H these are the g over S_H^perp."""
    params = H.params
    if H.contains_center:
        return full_group(params)
    perp = complement_basis(H.s_basis, symplectic_form(params))
    gens = [GroupElement.from_vector(params, row) for row in perp.rows]
    gens.append(GroupElement.central(params, 1))
    return Subgroup(params, gens)


def conjugacy_class_size(H: Subgroup) -> int:
    return H.params.order // stabilizer(H).order


def is_normal(H: Subgroup) -> bool:
    return H.contains_center or H.dim == 0


def full_group(params: GroupParams) -> Subgroup:
    gens = [GroupElement.from_vector(params, row) for row in SubspaceBasis.full(params.p, 2 * params.n).rows]
    gens.append(GroupElement.central(params, 1))
    return Subgroup(params, gens)


def center_subgroup(params: GroupParams) -> Subgroup:
    return Subgroup(params, [GroupElement.central(params, 1)])


def trivial_subgroup(params: GroupParams) -> Subgroup:
    return Subgroup(params, [])


def random_subgroup(params: GroupParams, cls: SubgroupClass, rng, dim: Optional[int] = None) -> Subgroup:
    """
    Plant a random subgroup of the given class.

    AbelianNonCentral: isotropic S of dimension dim (uniform in [0, n] when not pinned),
    each basis vector lifted with an independent uniform z. At p=2 the basis is also
    chosen with x.y = 0 so the lifts have order 2.
    NormalContainsCenter: random S of dimension dim (uniform in [0, 2n]), full preimage.
    """
    p, n = params.p, params.n
    if cls is SubgroupClass.ABELIAN_NON_CENTRAL:
        d = int(rng.integers(0, n + 1)) if dim is None else dim
        S = random_isotropic(n, d, p, rng, singular=(p == 2))
        gens = [GroupElement.from_vector(params, row, int(rng.integers(0, p))) for row in S.rows]
        return Subgroup(params, gens)
    d = int(rng.integers(0, 2 * n + 1)) if dim is None else dim
    S = random_subspace(2 * n, d, p, rng)
    gens = [GroupElement.from_vector(params, row) for row in S.rows]
    gens.append(GroupElement.central(params, 1))
    return Subgroup(params, gens)


def parse_subgroup(text: str) -> Subgroup:
    return Subgroup.from_literal(text)


def format_subgroup(H: Subgroup) -> str:
    return H.to_literal()
