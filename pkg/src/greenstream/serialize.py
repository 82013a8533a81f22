"""Versioned model checkpointing.

Models are written as self-describing JSON capturing the full mutable state
(tree structure, observers, per-leaf lifecycle state, ensemble bookkeeping,
PRNG state, resource counters), so a loaded model continues bit-identically
to the original.  Python's json round-trips floats exactly (repr shortest
form), which the checkpoint-resume guarantee relies on.
"""

from __future__ import annotations

import json

from greenstream.counters import ResourceCounters
from greenstream.efdt import EfdtSplitNode, EfdtTree
from greenstream.ensembles import OzaBag, OzaBoost
from greenstream.gaht import GahtConfig, GahtTree
from greenstream.hoeffding import HoeffdingTree, HTConfig, LeafNode, SplitNode
from greenstream.observers import GaussianNumericObserver, NominalObserver
from greenstream.stream import AttributeSpec, Schema

FORMAT_NAME = "greenstream-model"
FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    """Unrecognized, corrupt, or wrong-version model payload."""


# -- schema -------------------------------------------------------------------

def _schema_to_json(schema: Schema) -> dict:
    return {
        "attributes": [
            {"name": a.name, "kind": a.kind, "value_count": a.value_count}
            for a in schema.attributes
        ],
        "class_count": schema.class_count,
    }


def _schema_from_json(d: dict) -> Schema:
    attrs = [
        AttributeSpec(a["name"], a["kind"], a["value_count"])
        for a in d["attributes"]
    ]
    return Schema(attrs, d["class_count"])


# -- observers ------------------------------------------------------------------

def _observer_to_json(obs):
    if isinstance(obs, NominalObserver):
        return {"k": "n", "counts": obs.counts}
    return {
        "k": "g",
        "stats": obs.stats,
        "lo": obs.min_value,
        "hi": obs.max_value,
    }


def _observer_from_json(d, class_count):
    if d["k"] == "n":
        obs = NominalObserver.__new__(NominalObserver)
        obs.counts = [list(row) for row in d["counts"]]
        obs.class_totals = [sum(col) for col in zip(*obs.counts)]
        return obs
    obs = GaussianNumericObserver.__new__(GaussianNumericObserver)
    obs.stats = [list(s) for s in d["stats"]]
    obs.min_value = d["lo"]
    obs.max_value = d["hi"]
    return obs


# -- tree nodes -----------------------------------------------------------------

def _leaf_to_json(leaf: LeafNode) -> dict:
    return {
        "t": "leaf",
        "dist": leaf.class_dist,
        "obs_dist": leaf.obs_dist,
        "observers": None
        if leaf.observers is None
        else [_observer_to_json(o) for o in leaf.observers],
        "weight_seen": leaf.weight_seen,
        "weight_at_last_eval": leaf.weight_at_last_eval,
        "disabled": None if leaf.disabled is None else sorted(leaf.disabled),
        "active": leaf.active,
        "grow_fast": leaf.grow_fast,
        "created_at_weight": leaf.created_at_weight,
        "mc_correct": leaf.mc_correct,
        "nb_correct": leaf.nb_correct,
    }


def _leaf_from_json(d: dict, class_count: int) -> LeafNode:
    leaf = LeafNode.__new__(LeafNode)
    leaf.class_dist = list(d["dist"])
    leaf.obs_dist = None if d["obs_dist"] is None else list(d["obs_dist"])
    leaf.observers = (
        None
        if d["observers"] is None
        else [_observer_from_json(o, class_count) for o in d["observers"]]
    )
    leaf.weight_seen = d["weight_seen"]
    leaf.weight_at_last_eval = d["weight_at_last_eval"]
    leaf.disabled = None if d["disabled"] is None else set(d["disabled"])
    leaf.active = d["active"]
    leaf.grow_fast = d["grow_fast"]
    leaf.created_at_weight = d["created_at_weight"]
    leaf.mc_correct = d["mc_correct"]
    leaf.nb_correct = d["nb_correct"]
    return leaf


def _node_to_json(node) -> dict:
    if isinstance(node, EfdtSplitNode):
        return {
            "t": "efdt_split",
            "attribute": node.attribute,
            "threshold": node.threshold,
            "children": [_node_to_json(c) for c in node.children],
            "dist": node.class_dist,
            "obs_dist": node.obs_dist,
            "observers": [_observer_to_json(o) for o in node.observers],
            "weight_seen": node.weight_seen,
            "weight_at_last_eval": node.weight_at_last_eval,
        }
    if isinstance(node, SplitNode):
        return {
            "t": "split",
            "attribute": node.attribute,
            "threshold": node.threshold,
            "was_grow_fast": node.was_grow_fast,
            "children": [_node_to_json(c) for c in node.children],
        }
    return _leaf_to_json(node)


def _node_from_json(d: dict, class_count: int):
    t = d["t"]
    if t == "leaf":
        return _leaf_from_json(d, class_count)
    children = [_node_from_json(c, class_count) for c in d["children"]]
    if t == "split":
        return SplitNode(d["attribute"], d["threshold"], children, d["was_grow_fast"])
    if t == "efdt_split":
        return EfdtSplitNode(
            d["attribute"],
            d["threshold"],
            children,
            list(d["dist"]),
            list(d["obs_dist"]),
            [_observer_from_json(o, class_count) for o in d["observers"]],
            d["weight_seen"],
            d["weight_at_last_eval"],
        )
    raise ModelFormatError(f"unknown node tag {t!r}")


# -- models ----------------------------------------------------------------------

def _tree_to_json(model: HoeffdingTree) -> dict:
    d = {
        "algorithm": model.algorithm,
        "config": {
            "nmin": model.config.nmin,
            "delta": model.config.delta,
            "tau": model.config.tau,
        },
        "total_weight": model.total_weight,
        "n_leaves": model.n_leaves,
        "counters": model.counters.as_dict(),
        "root": _node_to_json(model.root),
    }
    if isinstance(model, GahtTree):
        d["gaht"] = {
            "deactivate_threshold": model.deactivate_threshold,
            "grow_fast_threshold": model.grow_fast_threshold,
        }
    if isinstance(model, EfdtTree):
        d["subtree_demotions"] = model.subtree_demotions
    return d


def _tree_from_json(d: dict, schema: Schema):
    algo = d["algorithm"]
    cfg = HTConfig(d["config"]["nmin"], d["config"]["delta"], d["config"]["tau"])
    if algo == "gaht":
        g = d["gaht"]
        model = GahtTree(
            schema,
            GahtConfig(cfg, g["deactivate_threshold"], g["grow_fast_threshold"]),
        )
    elif algo == "efdt":
        model = EfdtTree(schema, cfg)
        model.subtree_demotions = d.get("subtree_demotions", 0)
    elif algo == "ht":
        model = HoeffdingTree(schema, cfg)
    else:
        raise ModelFormatError(f"unknown tree algorithm {algo!r}")
    model.total_weight = d["total_weight"]
    model.n_leaves = d["n_leaves"]
    model.counters = ResourceCounters.from_dict(d["counters"])
    model.root = _node_from_json(d["root"], schema.class_count)
    return model


def _model_to_json(model) -> dict:
    if isinstance(model, (OzaBag, OzaBoost)):
        d = {
            "algorithm": model.algorithm,
            "rng_state": model.rng.getstate(),
            "members": [_tree_to_json(m) for m in model.members],
        }
        if isinstance(model, OzaBoost):
            d["lambda_sc"] = model.lambda_sc
            d["lambda_sw"] = model.lambda_sw
        return d
    return _tree_to_json(model)


def save_model(model, path: str) -> None:
    payload = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "schema": _schema_to_json(model.schema),
        "model": _model_to_json(model),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_model(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"corrupt model payload: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != FORMAT_NAME:
        raise ModelFormatError("not a greenstream model file")
    if payload.get("version") != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model version {payload.get('version')!r} "
            f"(expected {FORMAT_VERSION})"
        )
    schema = _schema_from_json(payload["schema"])
    d = payload["model"]
    algo = d["algorithm"]
    if algo in ("ozabag", "ozaboost"):
        members = [_tree_from_json(m, schema) for m in d["members"]]
        cls = OzaBag if algo == "ozabag" else OzaBoost
        model = cls.__new__(cls)
        model.schema = schema
        model.members = members
        from greenstream.rng import SplitMix64

        model.rng = SplitMix64(0)
        model.rng.setstate(d["rng_state"])
        if algo == "ozaboost":
            model.lambda_sc = list(d["lambda_sc"])
            model.lambda_sw = list(d["lambda_sw"])
        return model
    return _tree_from_json(d, schema)
