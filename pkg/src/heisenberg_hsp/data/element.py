from dataclasses import dataclass
from typing import Sequence

from ..exceptions import ParamsMismatch
from ..zp_linalg import VecZp, dot, vec
from .params import GroupParams


@dataclass(frozen=True)
class GroupElement:
    """
    Element (x, y, z) of Z_p^(n+1) x| Z_p^n with the law
    (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x'.y).
    """

    params: GroupParams
    x: VecZp
    y: VecZp
    z: int

    def __post_init__(self):
        p, n = self.params.p, self.params.n
        if len(self.x) != n or len(self.y) != n:
            raise ValueError(f"x and y must have length {n}, got {self.x}, {self.y}")
        object.__setattr__(self, "x", vec(self.x, p))
        object.__setattr__(self, "y", vec(self.y, p))
        object.__setattr__(self, "z", int(self.z) % p)

    @classmethod
    def identity(cls, params: GroupParams) -> "GroupElement":
        zero = (0,) * params.n
        return cls(params, zero, zero, 0)

    @classmethod
    def central(cls, params: GroupParams, z: int = 1) -> "GroupElement":
        zero = (0,) * params.n
        return cls(params, zero, zero, z)

    @classmethod
    def from_vector(cls, params: GroupParams, v: Sequence[int], z: int = 0) -> "GroupElement":
        n = params.n
        return cls(params, tuple(v[:n]), tuple(v[n:]), z)

    @classmethod
    def from_index(cls, params: GroupParams, i: int) -> "GroupElement":
        p, n = params.p, params.n
        block = p ** n
        z, rest = divmod(i, block * block)
        ix, iy = divmod(rest, block)
        return cls(params, params.index_vector(ix), params.index_vector(iy), z)

    @property
    def vector(self) -> VecZp:
        return self.x + self.y

    @property
    def index(self) -> int:
        block = self.params.p ** self.params.n
        return (self.z * block + self.params.vector_index(self.x)) * block + self.params.vector_index(self.y)

    def is_identity(self) -> bool:
        return self.z == 0 and not any(self.x) and not any(self.y)

    def is_central(self) -> bool:
        return not any(self.x) and not any(self.y)

    def _check(self, other: "GroupElement"):
        if self.params != other.params:
            raise ParamsMismatch(f"elements of {self.params} and {other.params} cannot be combined")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        p = self.params.p
        return GroupElement(
            self.params,
            tuple((a + b) % p for a, b in zip(self.x, other.x)),
            tuple((a + b) % p for a, b in zip(self.y, other.y)),
            self.z + other.z + dot(other.x, self.y, p),
        )

    def inverse(self) -> "GroupElement":
        p = self.params.p
        return GroupElement(
            self.params,
            tuple(-a % p for a in self.x),
            tuple(-a % p for a in self.y),
            -self.z + dot(self.x, self.y, p),
        )

    def power(self, a: int) -> "GroupElement":
        p = self.params.p
        if p == 2:
            # order divides 4; no division by 2 available
            result = GroupElement.identity(self.params)
            for _ in range(a % 4):
                result = result * self
            return result
        a = a % p
        return GroupElement(
            self.params,
            tuple(a * e for e in self.x),
            tuple(a * e for e in self.y),
            a * self.z + (a * (a - 1) // 2) * dot(self.x, self.y, p),
        )

    def conjugate_by(self, g: "GroupElement") -> "GroupElement":
        """g^-1 self g = (x, y, z + x'.y - x.y') for g = (x', y', z')."""
        self._check(g)
        p = self.params.p
        return GroupElement(self.params, self.x, self.y, self.z + dot(g.x, self.y, p) - dot(self.x, g.y, p))

    def to_literal(self) -> str:
        return "|".join([",".join(map(str, self.x)), ",".join(map(str, self.y)), str(self.z)])

    @classmethod
    def from_literal(cls, params: GroupParams, text: str) -> "GroupElement":
        parts = text.strip().split("|")
        if len(parts) != 3:
            raise ValueError(f"element literal must be 'x|y|z', got {text!r}")

        def _entries(s):
            return tuple(int(e) for e in s.split(",")) if s else ()

        return cls(params, _entries(parts[0]), _entries(parts[1]), int(parts[2]))

    def __str__(self):
        return f"({self.to_literal()})"
