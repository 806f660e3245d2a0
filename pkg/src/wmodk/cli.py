"""Command-line interface: ``wmodk generate | estimate | curve | simulate``.

Exit status is 0 on success, 2 on usage errors and 1 when the input data
or configuration is rejected.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys

import numpy as np

from . import netio
from .errors import WmodkError
from .estimator import MODES, estimate_k
from .harness import ExperimentConfig, accuracy_sweep, simulate_network, write_reports_csv
from .model import Family
from .presets import PRESET_IDS, preset
from .sampler import DistributionSpec, ThetaMode

SEED_ENV = "WMODK_SEED"


def _resolve_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is None or not env.strip():
        return 0
    try:
        return int(env)
    except ValueError:
        raise WmodkError(f"{SEED_ENV}={env!r} is not an integer") from None


def _kmax(text: str):
    if text == "n":
        return "n"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'n', got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("kmax must be >= 1")
    return value


def _matrix_arg(text: str) -> tuple[tuple[float, ...], ...]:
    try:
        return tuple(tuple(float(x) for x in row.replace(",", " ").split()) for row in text.split(";"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse matrix {text!r}; use rows separated by ';'") from None


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


# ---------------------------------------------------------------- generate

def _generate_config(args) -> ExperimentConfig:
    if args.preset:
        config = preset(args.preset)
        if config.sweep_param is not None:
            config = config.at(args.point)
    else:
        if args.family is None or args.K is None or args.rho is None:
            raise WmodkError("without --preset, --family, --K and --rho are required")
        config = ExperimentConfig(experiment_id="custom", K=args.K, rho=args.rho,
                                  dist=DistributionSpec(args.family, m=args.m, sigma2=args.sigma2),
                                  P=args.P, beta=args.beta)
    changes = {name: getattr(args, name) for name in ("K", "rho", "beta", "P", "theta_mode", "nodes_per_community")
               if getattr(args, name) is not None}
    if "beta" in changes and args.P is None:
        changes["P"] = None
    if args.zero_diagonal:
        changes["zero_diagonal"] = True
    dist = config.dist
    if args.m is not None or args.sigma2 is not None or args.uniform_literal:
        changes["dist"] = DistributionSpec(dist.family, m=args.m or dist.m, sigma2=args.sigma2 or dist.sigma2,
                                           uniform_literal=args.uniform_literal)
    config = dataclasses.replace(config, **changes)
    config = dataclasses.replace(config, K0=min(config.K0, config.n))
    config.validate()
    return config


def cmd_generate(args) -> int:
    config = _generate_config(args)
    seed = _resolve_seed(args.seed)
    A, labels = simulate_network(config, seed)
    if args.format == "edges":
        netio.write_edge_list(args.out, A)
    else:
        netio.write_matrix(args.out, A)
    if args.labels_out:
        netio.write_labels(args.labels_out, labels)
    print(f"wrote {config.n}x{config.n} {config.dist.family.value} network to {args.out}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------- estimate / curve

def _load_input(args) -> np.ndarray:
    fmt = args.format if args.format != "auto" else netio.sniff_format(args.input)
    if fmt == "matrix":
        return netio.read_matrix(args.input)
    return netio.read_edge_list(args.input, args.delimiter, args.duplicates, args.symmetrize).adjacency


def _run_estimate(args):
    A = _load_input(args)
    n = A.shape[0]
    K0 = n if args.kmax == "n" else args.kmax
    if K0 > n:
        raise WmodkError(f"--kmax {K0} exceeds the number of nodes ({n})")
    return estimate_k(A, K0, seed=_resolve_seed(args.seed), mode=args.mode, restarts=args.restarts)


def _write_curve(result, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["k", "Q"])
    for k, q in zip(result.curve.k_values, result.curve.Q_values):
        writer.writerow([k, repr(float(q))])


def cmd_estimate(args) -> int:
    result = _run_estimate(args)
    print(f"k_hat={result.k_hat}")
    print(f"Q={result.Q_at_k_hat!r}")
    if args.curve_out:
        fh, close = _open_out(args.curve_out)
        try:
            _write_curve(result, fh)
        finally:
            if close:
                fh.close()
    if args.labels_out:
        netio.write_labels(args.labels_out, result.labels_at_k_hat)
    return 0


def cmd_curve(args) -> int:
    result = _run_estimate(args)
    fh, close = _open_out(args.out)
    try:
        _write_curve(result, fh)
    finally:
        if close:
            fh.close()
    return 0


# ---------------------------------------------------------------- simulate

def cmd_simulate(args) -> int:
    if bool(args.preset) == bool(args.config):
        raise WmodkError("give exactly one of --preset or --config")
    if args.preset:
        config = preset(args.preset)
    else:
        with open(args.config, encoding="utf-8") as fh:
            config = ExperimentConfig.from_dict(json.load(fh))
    changes = {"base_seed": _resolve_seed(args.seed)}
    if args.reps is not None:
        changes["reps"] = args.reps
    if args.kmax is not None:
        changes["K0"] = args.kmax
    if args.mode is not None:
        changes["mode"] = args.mode
    config = dataclasses.replace(config, **changes)
    points = None
    if args.points:
        try:
            points = [int(p) for p in args.points.split(",")]
        except ValueError:
            raise WmodkError(f"--points must be comma-separated indices, got {args.points!r}") from None
    reports = accuracy_sweep(config, points=points, workers=args.workers)
    fh, close = _open_out(args.out)
    try:
        write_reports_csv(reports, fh)
    finally:
        if close:
            fh.close()
    for rep in reports:
        print(f"{rep.experiment_id} {rep.param_name}={rep.param_value} accuracy={rep.accuracy:.3f}",
              file=sys.stderr)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wmodk", description="Estimate the number of communities in "
                                     "weighted and signed networks by weighted-modularity maximisation.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    seed_help = f"random seed (default: ${SEED_ENV}, else 0)"

    g = sub.add_parser("generate", help="simulate a DCDFM network")
    g.add_argument("--preset", help=f"experiment id ({PRESET_IDS[0]}..{PRESET_IDS[-1]})")
    g.add_argument("--point", type=int, default=0, help="grid index of a preset sweep (default 0)")
    g.add_argument("--family", choices=[f.value for f in Family])
    g.add_argument("--K", type=int)
    g.add_argument("--rho", type=float)
    g.add_argument("--beta", type=float, help="off-diagonal level of P (diagonal 1)")
    g.add_argument("--P", type=_matrix_arg, help="connectivity matrix, e.g. '1,0.2;0.2,1'")
    g.add_argument("--m", type=int, help="binomial trials")
    g.add_argument("--sigma2", type=float, help="normal/laplace variance")
    g.add_argument("--theta-mode", choices=[m.value for m in ThetaMode])
    g.add_argument("--nodes-per-community", type=int)
    g.add_argument("--zero-diagonal", action="store_true")
    g.add_argument("--uniform-literal", action="store_true", help="draw Uniform(0, Omega) instead of Uniform(0, 2 Omega)")
    g.add_argument("--seed", type=int, help=seed_help)
    g.add_argument("--format", choices=["matrix", "edges"], default="matrix")
    g.add_argument("--out", required=True)
    g.add_argument("--labels-out")
    g.set_defaults(func=cmd_generate)

    for name, helptext, func in (("estimate", "estimate the number of communities", cmd_estimate),
                                 ("curve", "write the modularity-vs-k curve as CSV", cmd_curve)):
        e = sub.add_parser(name, help=helptext)
        e.add_argument("--input", required=True, help="matrix file or edge list")
        e.add_argument("--format", choices=["auto", "matrix", "edges"], default="auto")
        e.add_argument("--delimiter", help="edge-list field separator (default: whitespace)")
        e.add_argument("--duplicates", choices=netio.DUPLICATE_POLICIES, default="sum")
        e.add_argument("--symmetrize", choices=netio.SYMMETRIZE_POLICIES, default="mirror")
        e.add_argument("--kmax", type=_kmax, default="n", help="largest k to try, or 'n' (default)")
        e.add_argument("--seed", type=int, help=seed_help)
        e.add_argument("--mode", choices=MODES, default="argmax")
        e.add_argument("--restarts", type=int, default=10, help="k-means restarts per k")
        if name == "estimate":
            e.add_argument("--curve-out", help="write the k,Q curve to this CSV file")
            e.add_argument("--labels-out", help="write the labels at k_hat, one per line")
        else:
            e.add_argument("--out", help="output CSV (default stdout)")
        e.set_defaults(func=func)

    s = sub.add_parser("simulate", help="run an accuracy experiment and write per-repetition CSV")
    s.add_argument("--preset")
    s.add_argument("--config", help="experiment config as JSON")
    s.add_argument("--reps", type=int)
    s.add_argument("--seed", type=int, help=seed_help)
    s.add_argument("--kmax", type=int, help="override K0 (default 20)")
    s.add_argument("--mode", choices=MODES)
    s.add_argument("--points", help="comma-separated grid indices to run")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="output CSV (default stdout)")
    s.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (WmodkError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"wmodk {args.command}: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
