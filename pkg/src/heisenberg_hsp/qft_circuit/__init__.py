from .circuit import (
    Circuit,
    apply_circuit,
    apply_gate,
    build_circuit,
    circuit_unitary,
    dump_circuit,
    parse_circuit,
    verify_circuit,
    x_wire,
    y_wire,
    z_wire,
)
from .gates import Gate, GateKind, adder_v, gate_matrix, pk_matrix, qft_from_pk, qft_zp, qft_zp_scaled

__all__ = [
    'Circuit',
    'Gate',
    'GateKind',
    'adder_v',
    'apply_circuit',
    'apply_gate',
    'build_circuit',
    'circuit_unitary',
    'dump_circuit',
    'gate_matrix',
    'parse_circuit',
    'pk_matrix',
    'qft_from_pk',
    'qft_zp',
    'qft_zp_scaled',
    'verify_circuit',
    'x_wire',
    'y_wire',
    'z_wire',
]
