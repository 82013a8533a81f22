"""End-to-end acceptance suite.

One test per acceptance criterion, so `pytest -v` prints one pass/fail line
per criterion.  The million-instance benchmark runs are deterministic, so
their summaries are cached on disk under ``tests/_bench_cache`` keyed by a
fingerprint of the library sources: the first run of this module is slow
(it builds every benchmark), later runs are fast.
"""

import hashlib
import json
import math
import random
from pathlib import Path

import pytest

from greenstream.counters import ResourceCounters
from greenstream.efdt import EfdtTree
from greenstream.ensembles import OzaBoost, poisson_sample
from greenstream.evaluation import (
    argmax_vote,
    estimate_model_bytes,
    node_census,
    proxy_energy,
    run_prequential,
)
from greenstream.gaht import GahtConfig, GahtTree
from greenstream.generators import SYNTHETIC_KINDS, make_generator
from greenstream.hoeffding import HoeffdingTree, HTConfig, SplitNode
from greenstream.ensembles import OzaBag
from greenstream.observers import entropy, hoeffding_bound
from greenstream.rng import SplitMix64
from greenstream.serialize import load_model, save_model

CACHE_DIR = Path(__file__).resolve().parent / "_bench_cache"
SRC_DIR = Path(__file__).resolve().parents[1] / "src" / "greenstream"

#: benchmark stream seeds (one fixed seed per generator family)
STREAM_SEEDS = {
    "rtree": 11,
    "wave": 1,
    "rbf": 1,
    "led": 1,
    "hyper": 1,
    "agrawal": 1,
}

ALL_ALGOS = ("ht", "gaht", "efdt", "ozabag", "ozaboost")
MILLION = 1_000_000


def _source_fingerprint() -> str:
    h = hashlib.sha256()
    for p in sorted(SRC_DIR.glob("*.py")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.hexdigest()


FINGERPRINT = _source_fingerprint()


def build_model(algo: str, schema, seed: int):
    if algo == "ht":
        return HoeffdingTree(schema)
    if algo == "gaht":
        return GahtTree(schema)
    if algo == "gaht-degenerate":
        return GahtTree(
            schema,
            GahtConfig(HTConfig(), deactivate_threshold=0.0,
                       grow_fast_threshold=math.inf),
        )
    if algo == "efdt":
        return EfdtTree(schema)
    if algo == "ozabag":
        return OzaBag(schema, HoeffdingTree, n_members=10, seed=seed)
    if algo == "ozaboost":
        return OzaBoost(schema, HoeffdingTree, n_members=10, seed=seed)
    raise ValueError(algo)


def _cache_load(name: str):
    path = CACHE_DIR / f"{name}.json"
    if path.exists():
        d = json.loads(path.read_text())
        if d.get("fingerprint") == FINGERPRINT:
            return d["payload"]
    return None


def _cache_store(name: str, payload) -> None:
    CACHE_DIR.mkdir(exist_ok=True)
    (CACHE_DIR / f"{name}.json").write_text(
        json.dumps({"fingerprint": FINGERPRINT, "payload": payload})
    )


def bench_run(algo: str, kind: str, seed: int, instances: int) -> dict:
    """Summary of a prequential run, recomputed only when sources change."""
    name = f"{algo}-{kind}-s{seed}-n{instances}"
    cached = _cache_load(name)
    if cached is not None:
        return cached
    gen = make_generator(kind, seed=seed)
    model = build_model(algo, gen.schema, seed)
    result = run_prequential(model, gen, instances)
    payload = result.summary()
    _cache_store(name, payload)
    return payload


def checkpoint_pair(algo: str, kind: str, seed: int) -> dict:
    """Final summaries of an uninterrupted 1M run vs a save-at-500k/resume
    run over the identical stream."""
    name = f"checkpoint-{algo}-{kind}-s{seed}"
    cached = _cache_load(name)
    if cached is not None:
        return cached

    def replay(model, examples):
        h = 0
        correct = 0
        for values, label in examples:
            pred = argmax_vote(model.predict(values))
            h = (h * 31 + pred + 1) % (1 << 64)
            if pred == label:
                correct += 1
            model.train_on(values, label)
        return h, correct

    examples = make_generator(kind, seed=seed).take(MILLION)
    half = MILLION // 2

    plain = build_model(algo, make_generator(kind, seed=seed).schema, seed)
    h_full, correct_full = replay(plain, examples)

    resumed = build_model(algo, make_generator(kind, seed=seed).schema, seed)
    h_head, correct_head = replay(resumed, examples[:half])
    ckpt = str(CACHE_DIR / f"_ckpt-{algo}.json")
    CACHE_DIR.mkdir(exist_ok=True)
    save_model(resumed, ckpt)
    resumed = load_model(ckpt)
    h_tail, correct_tail = replay(resumed, examples[half:])
    # stitch the resumed hash onto the head hash: h_head * 31^half + tail
    h_resumed = (h_head * pow(31, half, 1 << 64) + h_tail) % (1 << 64)

    payload = {
        "uninterrupted": {
            "hash": h_full,
            "correct": correct_full,
            "counters": plain.counters.as_dict(),
            "census": node_census(plain),
            "bytes": estimate_model_bytes(plain),
        },
        "resumed": {
            "hash": h_resumed,
            "correct": correct_head + correct_tail,
            "counters": resumed.counters.as_dict(),
            "census": node_census(resumed),
            "bytes": estimate_model_bytes(resumed),
        },
    }
    _cache_store(name, payload)
    return payload


def work_counters(summary: dict) -> ResourceCounters:
    return ResourceCounters.from_dict(summary["counters"])


class TestAcceptance:
    def test_criterion_01_degeneracy_oracle(self):
        """GAHT with thresholds (0, inf) is bit-identical to HT everywhere."""
        for kind in SYNTHETIC_KINDS:
            for seed in (1, 2, 3):
                ht = bench_run("ht", kind, seed, 100_000)
                gaht = bench_run("gaht-degenerate", kind, seed, 100_000)
                assert ht["prediction_hash"] == gaht["prediction_hash"], (kind, seed)
                assert ht["final_accuracy"] == gaht["final_accuracy"], (kind, seed)
                assert ht["counters"] == gaht["counters"], (kind, seed)
                for key in ("total", "split_nodes", "active_leaves",
                            "deactivated_leaves"):
                    assert ht["node_census"][key] == gaht["node_census"][key], (
                        kind, seed, key,
                    )

    def test_criterion_02_accuracy_bands(self):
        """Million-instance accuracies land in the published bands."""
        led_ht = bench_run("ht", "led", STREAM_SEEDS["led"], MILLION)
        led_gaht = bench_run("gaht", "led", STREAM_SEEDS["led"], MILLION)
        assert abs(led_ht["final_accuracy"] - 0.742) <= 0.020
        assert abs(led_gaht["final_accuracy"] - 0.742) <= 0.020

        rt_ht = bench_run("ht", "rtree", STREAM_SEEDS["rtree"], MILLION)
        rt_gaht = bench_run("gaht", "rtree", STREAM_SEEDS["rtree"], MILLION)
        assert rt_gaht["final_accuracy"] >= rt_ht["final_accuracy"]
        assert abs(rt_gaht["final_accuracy"] - 0.967) <= 0.020

        wave_gaht = bench_run("gaht", "wave", STREAM_SEEDS["wave"], MILLION)
        assert abs(wave_gaht["final_accuracy"] - 0.836) <= 0.025

        rbf_ht = bench_run("ht", "rbf", STREAM_SEEDS["rbf"], MILLION)
        rbf_gaht = bench_run("gaht", "rbf", STREAM_SEEDS["rbf"], MILLION)
        assert rbf_gaht["final_accuracy"] > rbf_ht["final_accuracy"]

    def test_criterion_03_counter_orderings(self):
        """Exact counter inequalities between GAHT, HT and EFDT per stream."""
        for kind in SYNTHETIC_KINDS:
            seed = STREAM_SEEDS[kind]
            ht = work_counters(bench_run("ht", kind, seed, MILLION))
            gaht = work_counters(bench_run("gaht", kind, seed, MILLION))
            efdt = work_counters(bench_run("efdt", kind, seed, MILLION))
            assert gaht.observer_updates <= efdt.observer_updates, kind
            assert ht.split_evaluations <= efdt.split_evaluations, kind
            for field in ResourceCounters.FIELDS:
                cap = max(getattr(ht, field), getattr(efdt, field))
                assert getattr(gaht, field) <= cap, (kind, field)

    def test_criterion_04_ensemble_cost_multiplier(self):
        """OzaBag (M=10) costs 5-15x a single HT on RandomTree."""
        seed = STREAM_SEEDS["rtree"]
        ht = bench_run("ht", "rtree", seed, MILLION)
        bag = bench_run("ozabag", "rtree", seed, MILLION)
        ratio = bag["proxy_energy"] / ht["proxy_energy"]
        assert 5.0 <= ratio <= 15.0, ratio

    def test_criterion_05_energy_rank_order(self):
        """Average proxy-energy rank over all streams follows the published
        order HT < GAHT < EFDT < OzaBag < OzaBoost."""
        from greenstream.evaluation import compare_runs

        values = {a: {} for a in ALL_ALGOS}
        for kind in SYNTHETIC_KINDS:
            seed = STREAM_SEEDS[kind]
            for algo in ALL_ALGOS:
                values[algo][kind] = bench_run(algo, kind, seed, MILLION)[
                    "proxy_energy"
                ]
        table = compare_runs(values, metric="proxy_energy", higher_is_better=False)
        avg = table.average
        assert (
            avg["ht"] < avg["gaht"] < avg["efdt"] < avg["ozabag"] < avg["ozaboost"]
        ), avg

    def test_criterion_06_bound_and_entropy_suite(self):
        """Closed-form examples plus bound monotonicity on 1000 triples."""
        assert entropy([5, 5]) == pytest.approx(1.0)
        assert entropy([10, 0]) == 0.0
        assert entropy([9, 5, 2]) == pytest.approx(1.3663146570, abs=1e-9)
        assert hoeffding_bound(2, math.exp(-2), 4) == pytest.approx(1.0)
        assert hoeffding_bound(1, 0.05, 200) == pytest.approx(
            math.sqrt(math.log(20.0) / 400.0), abs=1e-12
        )
        rng = random.Random(123)
        for _ in range(1000):
            r = rng.uniform(0.1, 10)
            delta = rng.uniform(1e-9, 0.99)
            n = rng.uniform(1, 1e6)
            eps = hoeffding_bound(r, delta, n)
            assert hoeffding_bound(r, delta, n * 2) < eps
            assert hoeffding_bound(r * 2, delta, n) > eps
            assert hoeffding_bound(r, delta / 2, n) > eps

    def test_criterion_07_poisson_correctness(self):
        """Poisson(1) pmf within 0.005 for k <= 5 and mean within 1%,
        over one million seeded draws."""
        rng = SplitMix64(2024)
        n = 1_000_000
        counts = [0] * 16
        total = 0
        for _ in range(n):
            k = poisson_sample(rng, 1.0)
            total += k
            if k < len(counts):
                counts[k] += 1
        assert total / n == pytest.approx(1.0, abs=0.01)
        for k in range(6):
            expected = math.exp(-1.0) / math.factorial(k)
            assert counts[k] / n == pytest.approx(expected, abs=0.005), k

    def test_criterion_08_boosting_dynamics(self):
        """The two single-step weight updates reproduce exactly, and a miss
        always amplifies the downstream weight while the member is ahead."""
        from greenstream.stream import AttributeSpec, Schema

        schema = Schema([AttributeSpec("a", "nominal", 2)], 2)

        class Stub:
            def __init__(self, schema, fixed=0):
                self.schema = schema
                self.fixed = fixed
                self.counters = ResourceCounters()

            def train_on(self, values, label, weight=1.0):
                pass

            def predict(self, values):
                votes = [0.0] * self.schema.class_count
                votes[self.fixed] = 1.0
                return votes

        # fresh correct member: downstream weight becomes 0.5
        boost = OzaBoost(schema, Stub, n_members=2, seed=1)
        boost.train_on([0], 0)
        assert boost.lambda_sc[1] == 0.5

        # member with record sc=3: a miss doubles the downstream weight
        boost = OzaBoost(schema, Stub, n_members=2, seed=1)
        boost.members[0].fixed = 1
        boost.lambda_sc[0] = 3.0
        boost.train_on([0], 0)
        assert boost.lambda_sc[1] == 2.0

        # property: whenever lambda_sw stays below lambda_sc, the
        # post-misclassification multiplier exceeds 1
        rng = random.Random(7)
        for _ in range(1000):
            sc = rng.uniform(1.0, 100.0)
            lam = rng.uniform(0.01, 5.0)
            sw = rng.uniform(0.0, max(sc - lam, 1e-9))
            sw_new = sw + lam
            multiplier = (sc + sw_new) / (2.0 * sw_new)
            if sw_new < sc:
                assert lam * multiplier > lam

    def test_criterion_09_leaf_state_invariants(self):
        """Every split decision comes from exactly one leaf mode, starved
        leaves never attempt splits, and established splits are never
        revisited, over 100k-instance streams."""
        for kind in SYNTHETIC_KINDS:
            gen = make_generator(kind, seed=STREAM_SEEDS[kind])
            tree = GahtTree(gen.schema)
            events = []
            tree.split_hook = lambda leaf, used_null, did_split: events.append(
                (leaf.active, leaf.grow_fast, used_null, did_split)
            )
            established = []  # strong refs: (node, attribute)
            for i, ex in enumerate(gen.take(100_000), start=1):
                tree.train_on(ex.values, ex.label)
                if i % 10_000 == 0:
                    for node, attr in established:
                        assert node.attribute == attr, kind
                    current = {
                        id(n) for n in tree.iter_nodes() if isinstance(n, SplitNode)
                    }
                    for node, _ in established:
                        assert id(node) in current, kind  # never demoted
                    established = [
                        (n, n.attribute)
                        for n in tree.iter_nodes()
                        if isinstance(n, SplitNode)
                    ]
            assert events, kind
            for active, grow_fast, used_null, _ in events:
                assert active  # deactivated leaves never attempt splits
                assert used_null == grow_fast  # comparator follows the mode
            census = tree.node_count()
            census.update(tree.leaf_mode_census())
            leaves = census["active_leaves"] + census["deactivated_leaves"]
            standard = (
                census["active_leaves"]
                - sum(
                    1
                    for n in tree.iter_nodes()
                    if not isinstance(n, SplitNode) and n.active and n.grow_fast
                )
            )
            fast_leaves = sum(
                1
                for n in tree.iter_nodes()
                if not isinstance(n, SplitNode) and n.active and n.grow_fast
            )
            # three-state partition of leaves
            assert standard + fast_leaves + census["inactive_leaves"] == leaves, kind

    def test_criterion_10_checkpoint_resume(self):
        """Save at 500k / resume to 1M equals the uninterrupted run exactly,
        for every algorithm."""
        for algo in ALL_ALGOS:
            pair = checkpoint_pair(algo, "rtree", STREAM_SEEDS["rtree"])
            assert pair["resumed"] == pair["uninterrupted"], algo
