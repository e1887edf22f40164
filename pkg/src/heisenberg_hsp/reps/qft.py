from functools import lru_cache

import numpy as np

from config.numerics import MAX_DENSE_MATRIX
from ..data import GroupParams, dot_table, omega_powers, sub_table
from ..exceptions import TooLarge


def qft_dense(params: GroupParams) -> np.ndarray:
    """
    Dense QFT over G.

    Row (k, a, b) sits at k*p^(2n) + idx(a)*p^n + idx(b), column (z, x, y) likewise.
      k = 0:   p^(-(2n+1)/2) w^(a.x + b.y)
      k != 0:  p^(-(n+1)/2)  w^(k(z + b.y)) if x = a - b, else 0
    """
    if params.order > MAX_DENSE_MATRIX:
        raise TooLarge(f"|G|={params.order} exceeds the dense matrix cap {MAX_DENSE_MATRIX}")
    return _qft_dense(params.p, params.n).copy()


@lru_cache(maxsize=8)
def _qft_dense(p: int, n: int) -> np.ndarray:
    D = p ** n
    w = omega_powers(p)
    dots = dot_table(p, n)
    Q = np.zeros((p, D, D, p, D, D), dtype=np.complex128)

    one_dim = w[(dots[:, None, :, None] + dots[None, :, None, :]) % p]   # (a, b, x, y)
    Q[0] = p ** (-(2 * n + 1) / 2) * one_dim[:, :, None, :, :]

    aa, bb = np.meshgrid(np.arange(D), np.arange(D), indexing="ij")
    xx = sub_table(p, n)[aa, bb]
    scale = p ** (-(n + 1) / 2)
    for k in range(1, p):
        for z in range(p):
            Q[k, aa, bb, z, xx, :] = scale * w[(k * (z + dots[bb, :])) % p]
    Q = Q.reshape(p * D * D, p * D * D)
    Q.setflags(write=False)
    return Q
