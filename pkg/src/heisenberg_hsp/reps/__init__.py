from .characters import (
    character,
    chi,
    clock_operator,
    irrep_matrix,
    projector,
    rho,
    rho_pauli,
    shift_operator,
)
from .plancherel import PlancherelDist, character_rank, one_dim_support, plancherel
from .qft import qft_dense

__all__ = [
    'PlancherelDist',
    'character',
    'character_rank',
    'chi',
    'clock_operator',
    'irrep_matrix',
    'one_dim_support',
    'plancherel',
    'projector',
    'qft_dense',
    'rho',
    'rho_pauli',
    'shift_operator',
]
