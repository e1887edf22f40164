"""Dense check of U_alpha rho_k(H) U_alpha^dag = rho_(k/(alpha beta))(phi_(alpha,beta)(H))."""

from typing import Optional

import numpy as np

from config.numerics import MAX_DENSE_MATRIX
from ..data import GroupAutomorphism, GroupParams, IrrepLabel, Subgroup
from ..exceptions import TooLarge, ZeroAlpha, ZeroLabel
from ..group import image_subgroup
from ..reps import projector
from .transforms import u_alpha_matrix


def verify_label_change_theorem(
    params: GroupParams,
    k: int,
    alpha: int,
    H: Subgroup,
    beta: Optional[int] = None,
) -> float:
    """
    Max entrywise deviation between both sides, computed densely.

    beta = None gives phi_alpha (beta = alpha). U_alpha only rescales the first
    coordinate, so other beta values exercise the two-parameter family.
    """
    p = params.p
    if k % p == 0:
        raise ZeroLabel(f"label k must be nonzero mod {p}")
    if alpha % p == 0 or (beta is not None and beta % p == 0):
        raise ZeroAlpha(f"alpha and beta must be nonzero mod {p}")
    if params.register_dim ** 2 > MAX_DENSE_MATRIX:
        raise TooLarge(f"p^(2n)={params.register_dim ** 2} exceeds the dense matrix cap {MAX_DENSE_MATRIX}")

    aut = GroupAutomorphism(alpha % p, None if beta is None else beta % p)
    U = u_alpha_matrix(p, params.n, alpha)
    left = U @ projector(IrrepLabel.high_dim(k, p), H) @ U.conj().T
    target = IrrepLabel.high_dim(k * aut.label_factor(p), p)
    right = projector(target, image_subgroup(aut, H))
    return float(np.max(np.abs(left - right)))
