from .element import GroupElement
from .irrep import HIGH_DIM, ONE_DIM, IrrepLabel
from .params import (
    GroupParams,
    add_table,
    dot_table,
    index_vector,
    scale_table,
    sub_table,
    vector_index,
    vector_table,
)
from .records import DISCARD_REASONS, OutcomeTag, RecoveryResult, RoundOutcome, RoundSample
from .state import StructuredState, Term, exact_cyclotomic_value, omega_powers
from .subgroup import Conjugator, GroupAutomorphism, Subgroup, SubgroupClass

# Define what is available when the package is imported
__all__ = [
    'Conjugator',
    'DISCARD_REASONS',
    'GroupAutomorphism',
    'GroupElement',
    'GroupParams',
    'HIGH_DIM',
    'IrrepLabel',
    'ONE_DIM',
    'OutcomeTag',
    'RecoveryResult',
    'RoundOutcome',
    'RoundSample',
    'StructuredState',
    'Subgroup',
    'SubgroupClass',
    'Term',
    'add_table',
    'dot_table',
    'scale_table',
    'sub_table',
    'exact_cyclotomic_value',
    'index_vector',
    'omega_powers',
    'vector_index',
    'vector_table',
]
