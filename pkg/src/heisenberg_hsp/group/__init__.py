from .arithmetic import (
    all_elements,
    apply_phi_alpha,
    commutator,
    conjugate,
    element_from_matrix,
    identity,
    inverse,
    matrix_realization,
    multiply,
    power,
    random_element,
)
from .subgroups import (
    canonical_h0,
    center_subgroup,
    classify,
    conjugacy_class_size,
    conjugate_subgroup,
    euclidean_form,
    find_conjugator,
    format_subgroup,
    full_group,
    image_subgroup,
    is_normal,
    parse_subgroup,
    random_subgroup,
    s_basis,
    stabilizer,
    symplectic_form,
    trivial_subgroup,
)

__all__ = [
    'all_elements',
    'apply_phi_alpha',
    'canonical_h0',
    'center_subgroup',
    'classify',
    'commutator',
    'conjugacy_class_size',
    'conjugate',
    'conjugate_subgroup',
    'element_from_matrix',
    'euclidean_form',
    'find_conjugator',
    'format_subgroup',
    'full_group',
    'identity',
    'image_subgroup',
    'inverse',
    'is_normal',
    'matrix_realization',
    'multiply',
    'parse_subgroup',
    'power',
    'random_element',
    'random_subgroup',
    's_basis',
    'stabilizer',
    'symplectic_form',
    'trivial_subgroup',
]
