from .config import CASES, ExperimentConfig, default_mapping, load_yaml_config, parse_key_value_file
from .export import (
    histogram_paths,
    load_schema,
    validate_result_document,
    write_histograms,
    write_result_document,
)
from .runner import (
    SCHEMA_VERSION,
    collect_trials,
    discard_rates,
    fit_round_scaling,
    plant_subgroup,
    print_experiment_summary,
    run_experiment,
    run_trial,
    scaling_settings,
    scaling_study,
    summarize,
    trial_rng,
)
from .verify import CheckResult, print_verification_report, verify_settings, verify_suite

# Define what is available when the package is imported
__all__ = [
    'CASES',
    'CheckResult',
    'ExperimentConfig',
    'SCHEMA_VERSION',
    'collect_trials',
    'default_mapping',
    'discard_rates',
    'fit_round_scaling',
    'histogram_paths',
    'load_schema',
    'load_yaml_config',
    'parse_key_value_file',
    'plant_subgroup',
    'print_experiment_summary',
    'print_verification_report',
    'run_experiment',
    'run_trial',
    'scaling_settings',
    'scaling_study',
    'summarize',
    'trial_rng',
    'validate_result_document',
    'verify_settings',
    'verify_suite',
    'write_histograms',
    'write_result_document',
]
