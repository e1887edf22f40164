import argparse
import sys
import time

from .data import GroupParams
from .exceptions import BackendCapExceeded, ConfigInvalid
from .experiment import (
    ExperimentConfig,
    default_mapping,
    load_yaml_config,
    parse_key_value_file,
    print_verification_report,
    run_experiment,
    scaling_settings,
    scaling_study,
    verify_settings,
    verify_suite,
    write_result_document,
)

EXIT_PASS = 0
EXIT_FAILURES = 1
EXIT_CONFIG_ERROR = 2

RUN_FLAGS = ("p", "n", "case", "trials", "seed", "backend", "subgroup", "out", "workers")
VERIFY_FLAGS = ("p", "n", "seed", "samples")
SCALING_FLAGS = ("p", "ns", "case", "trials", "seed", "backend", "out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisenberg_hsp",
        description="Exact simulation of hidden subgroup recovery over Weyl-Heisenberg groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a batch experiment and write the result document")
    run.add_argument("--config", help="key=value file overriding config.yaml")
    run.add_argument("--p", type=int)
    run.add_argument("--n", type=int)
    run.add_argument("--case", choices=("abelian", "normal", "mixed"))
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--backend", choices=("dense", "structured", "analytic"))
    run.add_argument("--subgroup", help='planted subgroup literal, e.g. "3,1;gen=1|1|2"')
    run.add_argument("--out", help="result JSON path")
    run.add_argument("--workers", type=int)

    verify = sub.add_parser("verify", help="run the invariant-verification suite")
    verify.add_argument("--config", help="key=value file overriding the verify section of config.yaml")
    verify.add_argument("--p", type=int)
    verify.add_argument("--n", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--permute-wires", dest="permute_wires", action="store_true", default=None,
                        help="negative control: build the circuit on a permuted wire order")

    scaling = sub.add_parser("scaling", help="fit mean accepted rounds against n at fixed p")
    scaling.add_argument("--config", help="key=value file overriding the scaling section of config.yaml")
    scaling.add_argument("--p", type=int)
    scaling.add_argument("--ns", type=int, nargs="+", help="values of n, at least two")
    scaling.add_argument("--case", choices=("abelian", "normal", "mixed"))
    scaling.add_argument("--trials", type=int)
    scaling.add_argument("--seed", type=int)
    scaling.add_argument("--backend", choices=("dense", "structured", "analytic"))
    scaling.add_argument("--out", help="optional JSON path for the fitted line")
    return parser


def merged_mapping(base: dict, args: argparse.Namespace, flags) -> dict:
    """yaml defaults < --config file < explicit flags."""
    mapping = dict(base)
    if args.config:
        mapping.update(parse_key_value_file(args.config))
    for name in flags:
        value = getattr(args, name, None)
        if value is not None:
            mapping[name] = value
    return mapping


def run_command(args: argparse.Namespace) -> int:
    start_time = time.time()
    mapping = merged_mapping(default_mapping(load_yaml_config()), args, RUN_FLAGS)
    config = ExperimentConfig.from_mapping(mapping)
    document = run_experiment(config, write=True, verbose=True)
    print("--- %.2f seconds ---" % (time.time() - start_time))
    print(f"Results written to {config.out}")
    failures = document["trials"] - document["successes"]
    return EXIT_PASS if failures == 0 else EXIT_FAILURES


def verify_command(args: argparse.Namespace) -> int:
    mapping = merged_mapping(verify_settings(), args, VERIFY_FLAGS + ("permute_wires",))
    try:
        GroupParams(mapping.get('p', 3), mapping.get('n', 1))
    except ValueError as err:
        raise ConfigInvalid(str(err))
    report = verify_suite(mapping)
    return EXIT_PASS if print_verification_report(report) else EXIT_FAILURES


def scaling_command(args: argparse.Namespace) -> int:
    settings = merged_mapping(scaling_settings(), args, SCALING_FLAGS)
    ns = settings.pop("ns", None) or []
    if isinstance(ns, str):
        ns = ns.replace(",", " ").split()
    elif isinstance(ns, int):
        ns = [ns]
    try:
        ns = [int(n) for n in ns]
    except ValueError:
        raise ConfigInvalid(f"ns must be integers, got {ns!r}")
    if len(ns) < 2:
        raise ConfigInvalid(f"ns needs at least two values, got {ns}")
    out = settings.pop("out", None)
    mapping = default_mapping(load_yaml_config())
    mapping.update(settings)
    mapping.update({"n": ns[0], "subgroup": None, "subgroup_dim": None})
    config = ExperimentConfig.from_mapping(mapping)
    study = scaling_study(config, ns, verbose=True)
    if out:
        write_result_document(study, out)
        print(f"Results written to {out}")
    return EXIT_PASS if study["within_cap"] else EXIT_FAILURES


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return run_command(args)
        if args.command == "scaling":
            return scaling_command(args)
        return verify_command(args)
    except (ConfigInvalid, BackendCapExceeded) as err:
        print(f"✗ Configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == '__main__':
    sys.exit(main())
