from .abelian import (
    abelian_fourier_sample,
    center_offset,
    check_coordinates,
    coordinate_subgroup,
    coordinates_of,
    element_from_coordinates,
)
from .conventions import (
    RESOLVED_CONVENTION,
    ComplementConvention,
    column_label,
    label_change_available,
)
from .coset import (
    collapsed_state,
    coset_state,
    mixed_coset_state,
    plancherel_for,
    weak_fourier_sample,
)
from .label_change import verify_label_change_theorem
from .rounds import (
    BACKENDS,
    RoundSource,
    analytic_round,
    check_backend,
    fourier_label,
    p2_round,
    round_source,
    screen_labels,
    two_register_round,
)
from .transforms import (
    apply_u_alpha,
    apply_u_alpha_dense,
    clebsch_gordan,
    clebsch_gordan_matrix,
    measurement_distribution,
    sample_exact,
    u_alpha_matrix,
)

CONVENTION_ID = RESOLVED_CONVENTION.value

# Define what is available when the package is imported
__all__ = [
    'BACKENDS',
    'CONVENTION_ID',
    'ComplementConvention',
    'RESOLVED_CONVENTION',
    'RoundSource',
    'abelian_fourier_sample',
    'analytic_round',
    'apply_u_alpha',
    'apply_u_alpha_dense',
    'center_offset',
    'check_backend',
    'check_coordinates',
    'clebsch_gordan',
    'clebsch_gordan_matrix',
    'collapsed_state',
    'column_label',
    'coordinate_subgroup',
    'coordinates_of',
    'coset_state',
    'element_from_coordinates',
    'fourier_label',
    'label_change_available',
    'measurement_distribution',
    'mixed_coset_state',
    'p2_round',
    'plancherel_for',
    'round_source',
    'sample_exact',
    'screen_labels',
    'two_register_round',
    'u_alpha_matrix',
    'verify_label_change_theorem',
]
