"""
Experiment configuration: yaml defaults, key=value override files and validation.
"""

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import yaml
from sympy import isprime

from config import CONFIG_FILE
from config.numerics import MAX_PRIME
from ..exceptions import ConfigInvalid
from ..recovery import HARVEST_MODES
from ..simulator import BACKENDS

CASES = ("abelian", "normal", "mixed")


def load_yaml_config(path: Path = CONFIG_FILE) -> Dict[str, Any]:
    with Path(path).open("r") as f:
        return yaml.safe_load(f) or {}


def parse_key_value_file(path) -> Dict[str, Any]:
    """`key=value` per line, '#' starts a comment; values are read as yaml scalars."""
    values: Dict[str, Any] = {}
    with Path(path).open("r") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigInvalid(f"{path}:{number}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = yaml.safe_load(value.strip()) if value.strip() else None
    return values


@dataclass
class ExperimentConfig:
    p: int = 3
    n: int = 1
    case: str = "abelian"
    trials: int = 100
    seed: int = 7
    backend: str = "analytic"
    subgroup: Optional[str] = None
    subgroup_dim: Optional[int] = None
    out: str = "results/experiment.json"
    workers: int = 1
    histograms: bool = True
    retry_on_failure: bool = True
    harvest_sum_zero: str = "auto"

    def validate(self) -> Tuple[bool, List[str]]:
        """
        Check every field without raising.

        Returns:
            (is_valid, errors)
        """
        errors = []

        def _is_int(value):
            return isinstance(value, int) and not isinstance(value, bool)

        if not _is_int(self.p) or not isprime(self.p) or self.p >= MAX_PRIME:
            errors.append(f"p must be a prime below {MAX_PRIME}, got {self.p!r}")
        if not _is_int(self.n) or self.n < 1:
            errors.append(f"n must be an integer >= 1, got {self.n!r}")
        if self.case not in CASES:
            errors.append(f"case must be one of {CASES}, got {self.case!r}")
        if not _is_int(self.trials) or self.trials < 0:
            errors.append(f"trials must be a non-negative integer, got {self.trials!r}")
        if not _is_int(self.seed) or self.seed < 0:
            errors.append(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.backend not in BACKENDS:
            errors.append(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if not _is_int(self.workers) or self.workers < 1:
            errors.append(f"workers must be an integer >= 1, got {self.workers!r}")
        if self.harvest_sum_zero not in HARVEST_MODES:
            errors.append(f"harvest_sum_zero must be one of {HARVEST_MODES}, got {self.harvest_sum_zero!r}")
        if not isinstance(self.out, str) or not self.out.endswith(".json"):
            errors.append(f"out must be a .json path, got {self.out!r}")
        if self.subgroup_dim is not None and (not _is_int(self.subgroup_dim) or self.subgroup_dim < 0):
            errors.append(f"subgroup_dim must be a non-negative integer, got {self.subgroup_dim!r}")
        elif self.subgroup_dim is not None and _is_int(self.n):
            limit = 2 * self.n if self.case == "normal" else self.n
            if self.subgroup_dim > limit:
                errors.append(f"subgroup_dim must be at most {limit} for case {self.case!r}, got {self.subgroup_dim}")
        if self.subgroup is not None:
            errors.extend(self._subgroup_errors())
        return len(errors) == 0, errors

    def _subgroup_errors(self) -> List[str]:
        from ..group import parse_subgroup

        try:
            H = parse_subgroup(self.subgroup)
        except (ValueError, KeyError, IndexError) as err:
            return [f"subgroup literal {self.subgroup!r} does not parse: {err}"]
        if (H.params.p, H.params.n) != (self.p, self.n):
            return [f"subgroup literal is over p={H.params.p}, n={H.params.n}, config has p={self.p}, n={self.n}"]
        return []

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "ExperimentConfig":
        """Build and validate; unknown keys and invalid values raise ConfigInvalid with every error."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(mapping) - known)
        config = cls(**{k: v for k, v in mapping.items() if k in known})
        is_valid, errors = config.validate()
        errors = [f"unknown config key {key!r}" for key in unknown] + errors
        if errors:
            raise ConfigInvalid(errors)
        return config

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def default_mapping(cfg: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    """Flatten the experiment and recovery sections of config.yaml."""
    cfg = load_yaml_config() if cfg is None else cfg
    mapping = dict(cfg.get('experiment', {}) or {})
    recovery_cfg = cfg.get('recovery', {}) or {}
    for key in ("retry_on_failure", "harvest_sum_zero"):
        if key in recovery_cfg:
            mapping[key] = recovery_cfg[key]
    return mapping
