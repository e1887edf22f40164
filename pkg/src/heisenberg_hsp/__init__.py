# src/heisenberg_hsp/__init__.py

# Version information
__version__ = "0.1.0"

from .data import (
    GroupElement,
    GroupParams,
    IrrepLabel,
    RecoveryResult,
    RoundSample,
    StructuredState,
    Subgroup,
    SubgroupClass,
)
from .exceptions import HspError
from .group import find_conjugator, parse_subgroup, random_subgroup
from .oracle import HiddenFunction, make
from .reps import plancherel, qft_dense, rho
from .qft_circuit import build_circuit, verify_circuit
from .simulator import RESOLVED_CONVENTION, coset_state, two_register_round, weak_fourier_sample
from .recovery import normal_recover, p2_recover, run_full
from .experiment import ExperimentConfig, run_experiment, verify_suite

# Define what is available when the package is imported
__all__ = [
    "__version__",
    "ExperimentConfig",
    "GroupElement",
    "GroupParams",
    "HiddenFunction",
    "HspError",
    "IrrepLabel",
    "RESOLVED_CONVENTION",
    "RecoveryResult",
    "RoundSample",
    "StructuredState",
    "Subgroup",
    "SubgroupClass",
    "build_circuit",
    "coset_state",
    "find_conjugator",
    "make",
    "normal_recover",
    "p2_recover",
    "parse_subgroup",
    "plancherel",
    "qft_dense",
    "random_subgroup",
    "rho",
    "run_experiment",
    "run_full",
    "two_register_round",
    "verify_circuit",
    "verify_suite",
    "weak_fourier_sample",
]
