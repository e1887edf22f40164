from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from config.numerics import ROUND_CAP_OFFSET, ROUND_CAP_SLOPE
from ..zp_linalg import FieldParams, VecZp


@lru_cache(maxsize=None)
def vector_table(p: int, n: int) -> np.ndarray:
    """All vectors of Z_p^n as rows, row i holding the little-endian digits of i."""
    idx = np.arange(p ** n, dtype=np.int64)
    digits = np.empty((p ** n, n), dtype=np.int64)
    for j in range(n):
        digits[:, j] = (idx // p ** j) % p
    digits.setflags(write=False)
    return digits


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def dot_table(p: int, n: int) -> np.ndarray:
    """dot_table[i, j] = v_i . v_j mod p."""
    V = vector_table(p, n)
    return _frozen((V @ V.T) % p)


@lru_cache(maxsize=None)
def sub_table(p: int, n: int) -> np.ndarray:
    """sub_table[i, j] = index of v_i - v_j."""
    V = vector_table(p, n)
    weights = p ** np.arange(n, dtype=np.int64)
    return _frozen(((V[:, None, :] - V[None, :, :]) % p) @ weights)


@lru_cache(maxsize=None)
def add_table(p: int, n: int) -> np.ndarray:
    """add_table[i, j] = index of v_i + v_j."""
    V = vector_table(p, n)
    weights = p ** np.arange(n, dtype=np.int64)
    return _frozen(((V[:, None, :] + V[None, :, :]) % p) @ weights)


@lru_cache(maxsize=None)
def scale_table(p: int, n: int, c: int) -> np.ndarray:
    """scale_table[i] = index of c * v_i."""
    V = vector_table(p, n)
    weights = p ** np.arange(n, dtype=np.int64)
    return _frozen(((c * V) % p) @ weights)


def vector_index(v: Sequence[int], p: int) -> int:
    """Little-endian mixed-radix rank of v."""
    return sum(int(e) * p ** j for j, e in enumerate(v))


def index_vector(i: int, p: int, n: int) -> VecZp:
    return tuple((i // p ** j) % p for j in range(n))


@dataclass(frozen=True)
class GroupParams:
    """
    Parameters of the Weyl-Heisenberg group of order p^(2n+1).

    Basis layout used everywhere: element (x, y, z) sits at index
    z*p^(2n) + idx(x)*p^n + idx(y), idx the little-endian rank.
    """

    p: int
    n: int

    def __post_init__(self):
        FieldParams(self.p)
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "n", int(self.n))

    @property
    def field(self) -> FieldParams:
        return FieldParams(self.p)

    @property
    def order(self) -> int:
        return self.p ** (2 * self.n + 1)

    @property
    def register_dim(self) -> int:
        """Dimension p^n of a high-dimensional irrep."""
        return self.p ** self.n

    @property
    def vectors(self) -> np.ndarray:
        return vector_table(self.p, self.n)

    def vector_index(self, v: Sequence[int]) -> int:
        return vector_index(v, self.p)

    def index_vector(self, i: int) -> VecZp:
        return index_vector(i, self.p, self.n)

    def round_cap(self) -> int:
        return ROUND_CAP_SLOPE * self.n + ROUND_CAP_OFFSET

    def __str__(self):
        return f"G(p={self.p}, n={self.n})"


def split_pair(v: Sequence[int], n: int) -> Tuple[VecZp, VecZp]:
    return tuple(v[:n]), tuple(v[n:])
