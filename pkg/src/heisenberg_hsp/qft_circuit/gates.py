"""
Qupit gates of the recursive QFT circuit and their local dense forms.

Local matrices act on the gate's wires in the order they are listed, the first
wire being the most significant digit.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..data import omega_powers


class GateKind(Enum):
    QFT = "QFT"                                   # (target,)
    QFT_ZERO_CONTROLLED = "QFT_ZERO_CONTROLLED"   # (control, target): QFT iff control = 0
    PK_CONTROLLED = "PK_CONTROLLED"               # (control, target): P_k with k = control value
    ADDER_V = "ADDER_V"                           # (target, source[, condition]): target += source


_ARITY = {
    GateKind.QFT: (1,),
    GateKind.QFT_ZERO_CONTROLLED: (2,),
    GateKind.PK_CONTROLLED: (2,),
    GateKind.ADDER_V: (2, 3),
}


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    wires: Tuple[int, ...]
    param: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if len(self.wires) not in _ARITY[self.kind]:
            raise ValueError(f"{self.kind.value} takes {_ARITY[self.kind]} wires, got {self.wires}")
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"gate wires must be distinct, got {self.wires}")

    def to_line(self) -> str:
        line = f"{self.kind.value} {','.join(map(str, self.wires))}"
        return line if self.param is None else f"{line} {self.param}"

    @classmethod
    def from_line(cls, line: str) -> "Gate":
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"gate line must be 'KIND wire[,wire] [param]', got {line!r}")
        param = int(parts[2]) if len(parts) == 3 else None
        return cls(GateKind(parts[0]), tuple(int(w) for w in parts[1].split(",")), param)


def qft_zp(p: int) -> np.ndarray:
    """(1/sqrt p) sum_(k,z) w^(kz) |k><z|."""
    k = np.arange(p)
    return omega_powers(p)[np.outer(k, k) % p] / np.sqrt(p)


def qft_zp_scaled(p: int, k: int) -> np.ndarray:
    """QFT^(k) = (1/sqrt p) sum_(u,v) w^(kuv) |u><v|."""
    u = np.arange(p)
    return omega_powers(p)[(k * np.outer(u, u)) % p] / np.sqrt(p)


def pk_matrix(p: int, k: int) -> np.ndarray:
    """
    P_k acting on amplitudes as (P_k psi)_u = psi_(k u), so that QFT^(k) = P_k QFT.
    P_0 is the identity (the k = 0 branch of the controlled gate).
    """
    if k % p == 0:
        return np.eye(p, dtype=np.complex128)
    out = np.zeros((p, p), dtype=np.complex128)
    u = np.arange(p)
    out[u, (k * u) % p] = 1.0
    return out


def adder_v(p: int) -> np.ndarray:
    """V = sum_(u,v) |u+v, v><u, v|."""
    out = np.zeros((p * p, p * p), dtype=np.complex128)
    for u in range(p):
        for v in range(p):
            out[((u + v) % p) * p + v, u * p + v] = 1.0
    return out


def gate_matrix(gate: Gate, p: int) -> np.ndarray:
    eye = np.eye(p, dtype=np.complex128)
    if gate.kind is GateKind.QFT:
        return qft_zp(p)
    if gate.kind is GateKind.QFT_ZERO_CONTROLLED:
        blocks = [qft_zp(p)] + [eye] * (p - 1)
        return _controlled(blocks)
    if gate.kind is GateKind.PK_CONTROLLED:
        return _controlled([pk_matrix(p, c) for c in range(p)])
    V = adder_v(p)
    if len(gate.wires) == 2:
        return V
    # condition wire last: V when it is nonzero, identity otherwise
    out = np.zeros((p ** 3, p ** 3), dtype=np.complex128)
    for c in range(p):
        block = np.eye(p * p, dtype=np.complex128) if c == 0 else V
        idx = np.arange(p * p) * p + c
        out[np.ix_(idx, idx)] = block
    return out


def _controlled(blocks) -> np.ndarray:
    """Block diagonal sum_c |c><c| (x) blocks[c], control most significant."""
    p = len(blocks)
    out = np.zeros((p * p, p * p), dtype=np.complex128)
    for c, block in enumerate(blocks):
        out[c * p:(c + 1) * p, c * p:(c + 1) * p] = block
    return out


def qft_from_pk(p: int, k: int) -> np.ndarray:
    return pk_matrix(p, k) @ qft_zp(p)
