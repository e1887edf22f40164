from .branches import (
    abelian_stage,
    complement_recover,
    label_change_recover,
    normal_branch,
    round_budget,
    verify_candidate,
)
from .driver import (
    HARVEST_MODES,
    ROUTES,
    choose_route,
    detect_case,
    normal_recover,
    p2_recover,
    run_full,
)
from .solve import (
    SpanTracker,
    quiet_rounds,
    reconstruct,
    scaled_sample,
    solve_samples,
    subgroup_projection,
)

# Define what is available when the package is imported
__all__ = [
    'HARVEST_MODES',
    'ROUTES',
    'SpanTracker',
    'abelian_stage',
    'choose_route',
    'complement_recover',
    'detect_case',
    'label_change_recover',
    'normal_branch',
    'normal_recover',
    'p2_recover',
    'quiet_rounds',
    'reconstruct',
    'round_budget',
    'run_full',
    'scaled_sample',
    'solve_samples',
    'subgroup_projection',
    'verify_candidate',
]
