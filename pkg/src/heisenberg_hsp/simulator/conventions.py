"""
Complement conventions for reading Clebsch-Gordan measurement outcomes.

After the label change and the k+l=0 Clebsch-Gordan transform, the measured (u, v)
satisfies  orient(u + (1-alpha) x^, v + (1-alpha) y^)  in  complement(S_H).
The dense backend fixes which reading is right; RESOLVED_CONVENTION records it and
test_simulator guards it.
"""

from enum import Enum
from typing import Sequence, Tuple

from ..zp_linalg import (
    BilinearForm,
    FormKind,
    SubspaceBasis,
    VecZp,
    complement_basis,
    inv_mod,
    is_square,
)


class ComplementConvention(Enum):
    SYMPLECTIC_UV = "symplectic-uv"   # (u, v) in the symplectic complement
    EUCLIDEAN_VU = "euclidean-vu"     # (v, u) in the Euclidean complement

    def form(self, n: int) -> BilinearForm:
        kind = FormKind.SYMPLECTIC if self is ComplementConvention.SYMPLECTIC_UV else FormKind.EUCLIDEAN
        return BilinearForm(kind, n)

    def complement(self, S: SubspaceBasis) -> SubspaceBasis:
        return complement_basis(S, self.form(S.dim // 2))

    def orient(self, u: Sequence[int], v: Sequence[int]) -> VecZp:
        if self is ComplementConvention.SYMPLECTIC_UV:
            return tuple(u) + tuple(v)
        return tuple(v) + tuple(u)

    def unorient(self, w: Sequence[int]) -> Tuple[VecZp, VecZp]:
        n = len(w) // 2
        first, second = tuple(w[:n]), tuple(w[n:])
        if self is ComplementConvention.SYMPLECTIC_UV:
            return first, second
        return second, first


RESOLVED_CONVENTION = ComplementConvention.SYMPLECTIC_UV


def column_label(k: int, p: int) -> int:
    """Observing rho_k leaves the column register in the conjugate irrep rho_(-k)."""
    return (-k) % p


def label_change_available(p: int) -> bool:
    """Whether some pair k, l with k + l != 0 has -k/l a square (false for p = 2, 3)."""
    if p == 2:
        return False
    return any(
        is_square(-k * inv_mod(l, p), p)
        for k in range(1, p)
        for l in range(1, p)
        if (k + l) % p
    )
