"""
Recursive QFT circuit for the Weyl-Heisenberg group.

QFT_(G_n) = U_n (QFT_(G_(n-1)) (x) I), with QFT over Z_p on the z wire as base case and

    U = |0><0| (x) QFT (x) QFT + sum_(k != 0) |k><k| (x) V (I (x) QFT^(k))

acting on (z, x_i, y_i). Each U-stage is four gates: a zero-controlled QFT on x_i, a QFT on
y_i, a k-controlled P_k on y_i (P_0 = I, so the k = 0 branch keeps the plain QFT), and the
adder V conditioned on the z wire being nonzero.

Register layout: wire 0 = z, then x_n .. x_1, then y_n .. y_1, matching the index
z*p^(2n) + idx(x)*p^n + idx(y) of the dense matrices.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from config.numerics import MAX_DENSE_MATRIX, MAX_DENSE_ORDER
from ..data import GroupParams
from ..exceptions import TooLarge
from ..reps import qft_dense
from .gates import Gate, GateKind, gate_matrix


@dataclass(frozen=True)
class Circuit:
    p: int
    num_wires: int
    gates: Tuple[Gate, ...] = ()
    params: Optional[GroupParams] = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if any(not 0 <= w < self.num_wires for w in gate.wires):
                raise ValueError(f"{gate.to_line()} uses a wire outside 0..{self.num_wires - 1}")

    @property
    def dim(self) -> int:
        return self.p ** self.num_wires

    def __len__(self):
        return len(self.gates)


def z_wire(params: GroupParams) -> int:
    return 0


def x_wire(params: GroupParams, i: int) -> int:
    """Wire of x_i, i = 1..n."""
    return 1 + params.n - i


def y_wire(params: GroupParams, i: int) -> int:
    return 1 + 2 * params.n - i


def build_circuit(params: GroupParams, wire_map: Optional[Sequence[int]] = None) -> Circuit:
    """
    Args:
        params: group parameters
        wire_map: optional permutation, logical wire -> physical wire (layout test hook)
    """
    num_wires = 2 * params.n + 1
    if wire_map is None:
        wire_map = list(range(num_wires))
    if sorted(wire_map) != list(range(num_wires)):
        raise ValueError(f"wire_map must permute 0..{num_wires - 1}, got {list(wire_map)}")

    def gate(kind, *wires):
        return Gate(kind, tuple(wire_map[w] for w in wires))

    z = z_wire(params)
    gates = [gate(GateKind.QFT, z)]
    for i in range(1, params.n + 1):
        x, y = x_wire(params, i), y_wire(params, i)
        gates.append(gate(GateKind.QFT_ZERO_CONTROLLED, z, x))
        gates.append(gate(GateKind.QFT, y))
        gates.append(gate(GateKind.PK_CONTROLLED, z, y))
        gates.append(gate(GateKind.ADDER_V, x, y, z))
    return Circuit(params.p, num_wires, tuple(gates), params)


def apply_gate(tensor: np.ndarray, gate: Gate, p: int) -> np.ndarray:
    """Apply a gate to a tensor whose leading axes are the circuit wires."""
    local = gate_matrix(gate, p)
    k = len(gate.wires)
    front = list(range(k))
    moved = np.moveaxis(tensor, gate.wires, front)
    shape = moved.shape
    out = (local @ moved.reshape(p ** k, -1)).reshape(shape)
    return np.moveaxis(out, front, gate.wires)


def apply_circuit(c: Circuit, state: np.ndarray) -> np.ndarray:
    if c.dim > MAX_DENSE_ORDER:
        raise TooLarge(f"circuit dimension {c.dim} exceeds the dense cap {MAX_DENSE_ORDER}")
    tensor = np.asarray(state, dtype=np.complex128).reshape((c.p,) * c.num_wires + (-1,))
    for gate in c.gates:
        tensor = apply_gate(tensor, gate, c.p)
    return tensor.reshape(np.shape(state))


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Ordered product of the embedded gates, first gate applied first."""
    if c.dim > MAX_DENSE_MATRIX:
        raise TooLarge(f"circuit dimension {c.dim} exceeds the dense matrix cap {MAX_DENSE_MATRIX}")
    return apply_circuit(c, np.eye(c.dim, dtype=np.complex128))


def verify_circuit(params: GroupParams, wire_map: Optional[Sequence[int]] = None) -> float:
    """Max entrywise deviation between the circuit and the dense QFT."""
    U = circuit_unitary(build_circuit(params, wire_map))
    return float(np.max(np.abs(U - qft_dense(params))))


def dump_circuit(c: Circuit) -> str:
    lines = [f"# p={c.p} wires={c.num_wires}"]
    lines += [gate.to_line() for gate in c.gates]
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    header = None
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(item.split("=") for item in line[1:].split())
            header = (int(fields["p"]), int(fields["wires"]))
            continue
        gates.append(Gate.from_line(line))
    if header is None:
        raise ValueError("gate list needs a '# p=<p> wires=<count>' header")
    return Circuit(header[0], header[1], tuple(gates))
