from dataclasses import dataclass
from typing import Sequence

from ..exceptions import ZeroLabel
from ..zp_linalg import VecZp, vec
from .params import GroupParams

ONE_DIM = "one_dim"
HIGH_DIM = "high_dim"


@dataclass(frozen=True)
class IrrepLabel:
    """OneDim(a, b): chi_(a,b)(x,y,z) = w^(a.x + b.y).  HighDim(k): rho_k of dimension p^n."""

    kind: str
    a: VecZp = ()
    b: VecZp = ()
    k: int = 0

    @classmethod
    def one_dim(cls, a: Sequence[int], b: Sequence[int], p: int) -> "IrrepLabel":
        return cls(ONE_DIM, vec(a, p), vec(b, p), 0)

    @classmethod
    def high_dim(cls, k: int, p: int) -> "IrrepLabel":
        if k % p == 0:
            raise ZeroLabel(f"high-dimensional irrep label must be nonzero mod {p}")
        return cls(HIGH_DIM, (), (), k % p)

    @property
    def is_high_dim(self) -> bool:
        return self.kind == HIGH_DIM

    @property
    def vector(self) -> VecZp:
        return self.a + self.b

    def dimension(self, params: GroupParams) -> int:
        return params.register_dim if self.is_high_dim else 1

    def sort_key(self, params: GroupParams):
        if self.is_high_dim:
            return (1, self.k)
        return (0, params.vector_index(self.a) * params.register_dim + params.vector_index(self.b))

    def __str__(self):
        if self.is_high_dim:
            return f"rho[{self.k}]"
        return f"chi[{','.join(map(str, self.a))};{','.join(map(str, self.b))}]"
