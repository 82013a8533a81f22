"""Command-line surface: single prequential runs and cross-algorithm ranking.

    greenstream run --algo gaht --stream led --instances 1000000 --seed 1
    greenstream compare --algos ht,efdt,gaht,ozabag,ozaboost \
        --streams all-synthetic --instances 1000000 --seed 7 --out ranks.json

`run` prints a JSON summary to stdout and optionally writes line-delimited
snapshot records.  Seeds fall back to the GREENSTREAM_SEED environment
variable, then to 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from greenstream.datasets import load_dataset
from greenstream.efdt import EfdtTree
from greenstream.ensembles import OzaBag, OzaBoost
from greenstream.evaluation import (
    compare_runs,
    proxy_energy,
    run_prequential,
)
from greenstream.counters import ResourceCounters
from greenstream.gaht import GahtConfig, GahtTree
from greenstream.generators import SYNTHETIC_KINDS, make_generator
from greenstream.hoeffding import HoeffdingTree, HTConfig
from greenstream.serialize import save_model

ALGORITHMS = ("ht", "efdt", "gaht", "ozabag", "ozaboost")


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("GREENSTREAM_SEED")
    if env is not None:
        return int(env)
    return 1


def _ht_config(args) -> HTConfig:
    return HTConfig(nmin=args.nmin, delta=args.delta, tau=args.tau)


def build_learner(algo: str, schema, args):
    ht_cfg = _ht_config(args)
    gaht_cfg = GahtConfig(ht_cfg, args.deactivate_threshold, args.grow_fast_threshold)

    def make_base(s):
        if args.base_learner == "gaht":
            return GahtTree(s, gaht_cfg)
        return HoeffdingTree(s, ht_cfg)

    if algo == "ht":
        return HoeffdingTree(schema, ht_cfg)
    if algo == "efdt":
        return EfdtTree(schema, ht_cfg)
    if algo == "gaht":
        return GahtTree(schema, gaht_cfg)
    if algo == "ozabag":
        return OzaBag(schema, make_base, args.members, seed=args.resolved_seed)
    if algo == "ozaboost":
        return OzaBoost(schema, make_base, args.members, seed=args.resolved_seed)
    raise ValueError(f"unknown algorithm {algo!r}")


def _make_stream(args, seed: int):
    if args.stream is not None:
        return make_generator(args.stream, seed=seed)
    dataset = load_dataset(args.file, class_index=args.class_index)
    return dataset.as_stream()


def _config_echo(args, algo: str, seed: int) -> dict:
    return {
        "algo": algo,
        "base_learner": args.base_learner,
        "members": args.members,
        "stream": args.stream,
        "file": args.file,
        "instances": args.instances,
        "snapshot_every": args.snapshot_every,
        "seed": seed,
        "nmin": args.nmin,
        "delta": args.delta,
        "tau": args.tau,
        "deactivate_threshold": args.deactivate_threshold,
        "grow_fast_threshold": args.grow_fast_threshold,
    }


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--base-learner", choices=("ht", "gaht"), default="ht",
                   help="base tree for ensembles")
    p.add_argument("--members", type=int, default=10, help="ensemble size")
    p.add_argument("--instances", type=int, required=True)
    p.add_argument("--snapshot-every", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None,
                   help="defaults to $GREENSTREAM_SEED, then 1")
    p.add_argument("--nmin", type=int, default=200)
    p.add_argument("--delta", type=float, default=1e-7)
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--deactivate-threshold", type=float, default=0.01)
    p.add_argument("--grow-fast-threshold", type=float, default=2.0,
                   help="accepts 'inf' to disable grow-fast mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenstream",
        description="Streaming decision trees with resource-cost instrumentation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="one prequential test-then-train run")
    run_p.add_argument("--algo", choices=ALGORITHMS, required=True)
    src = run_p.add_mutually_exclusive_group(required=True)
    src.add_argument("--stream", choices=SYNTHETIC_KINDS)
    src.add_argument("--file", help="ARFF or CSV dataset path")
    run_p.add_argument("--class-index", type=int, default=-1,
                       help="class column (default: last)")
    _add_common_flags(run_p)
    run_p.add_argument("--out", help="write snapshot records (JSON lines) here")
    run_p.add_argument("--save-model", help="write the final model here")

    cmp_p = sub.add_parser("compare", help="rank algorithms across streams")
    cmp_p.add_argument("--algos", required=True,
                       help="comma-separated subset of " + ",".join(ALGORITHMS))
    cmp_p.add_argument("--streams", required=True,
                       help="comma-separated generator kinds, or 'all-synthetic'")
    cmp_p.add_argument("--class-index", type=int, default=-1)
    _add_common_flags(cmp_p)
    cmp_p.add_argument("--out", help="write the rank table artifact here")
    return parser


def _cmd_run(args) -> int:
    seed = _resolve_seed(args.seed)
    args.resolved_seed = seed
    stream = _make_stream(args, seed)
    model = build_learner(args.algo, stream.schema, args)
    result = run_prequential(model, stream, args.instances, args.snapshot_every)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for snap in result.snapshots:
                fh.write(json.dumps(snap) + "\n")
    if args.save_model:
        save_model(model, args.save_model)
    summary = {"config": _config_echo(args, args.algo, seed)}
    summary.update(result.summary())
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_compare(args) -> int:
    seed = _resolve_seed(args.seed)
    args.resolved_seed = seed
    args.stream = None
    args.file = None
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    if args.streams == "all-synthetic":
        streams = list(SYNTHETIC_KINDS)
    else:
        streams = [s.strip() for s in args.streams.split(",") if s.strip()]
    accuracy = {a: {} for a in algos}
    energy = {a: {} for a in algos}
    model_bytes = {a: {} for a in algos}
    for kind in streams:
        for algo in algos:
            stream = make_generator(kind, seed=seed)
            model = build_learner(algo, stream.schema, args)
            result = run_prequential(model, stream, args.instances,
                                     args.snapshot_every)
            accuracy[algo][kind] = result.final_accuracy
            energy[algo][kind] = proxy_energy(
                ResourceCounters.from_dict(result.final_counters)
            )
            model_bytes[algo][kind] = result.final_bytes

    artifact = {"seed": seed, "instances": args.instances, "streams": streams}
    for name, values, higher in (
        ("accuracy", accuracy, True),
        ("proxy_energy", energy, False),
        ("model_bytes", model_bytes, False),
    ):
        table = compare_runs(values, metric=name, higher_is_better=higher)
        artifact[name] = {
            "values": values,
            "ranks": table.ranks,
            "average_rank": table.average,
        }
    text = json.dumps(artifact, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_compare(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
