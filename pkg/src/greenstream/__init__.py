"""Incremental decision trees for data streams with deterministic
resource-cost instrumentation.

The package provides a single Hoeffding-style tree family (HoeffdingTree,
EfdtTree, GahtTree), online ensembles over them (OzaBag, OzaBoost), seeded
synthetic stream generators, a prequential test-then-train harness, and
ARFF/CSV ingestion.  All learners charge their work (split evaluations,
gain computations, observer updates, traversal steps) to a ResourceCounters
object, which serves as a portable stand-in for hardware energy
measurements.
"""

from greenstream.stream import (
    AttributeSpec,
    Schema,
    LabeledExample,
    StreamSource,
    ListStream,
    validate_example,
    SchemaMismatchError,
)
from greenstream.counters import ResourceCounters
from greenstream.observers import (
    NominalObserver,
    GaussianNumericObserver,
    SplitSuggestion,
    entropy,
    hoeffding_bound,
    best_splits,
)
from greenstream.hoeffding import HTConfig, HoeffdingTree
from greenstream.efdt import EfdtTree
from greenstream.gaht import GahtConfig, GahtTree, leaf_fraction
from greenstream.ensembles import OzaBag, OzaBoost, poisson_sample
from greenstream.rng import SplitMix64
from greenstream.generators import make_generator, SYNTHETIC_KINDS
from greenstream.evaluation import (
    run_prequential,
    estimate_model_bytes,
    node_census,
    model_counters,
    proxy_energy,
    compare_runs,
)
from greenstream.datasets import parse_arff, parse_csv, DatasetFile
from greenstream.serialize import save_model, load_model, ModelFormatError

__all__ = [
    "AttributeSpec",
    "Schema",
    "LabeledExample",
    "StreamSource",
    "ListStream",
    "validate_example",
    "SchemaMismatchError",
    "ResourceCounters",
    "NominalObserver",
    "GaussianNumericObserver",
    "SplitSuggestion",
    "entropy",
    "hoeffding_bound",
    "best_splits",
    "HTConfig",
    "HoeffdingTree",
    "EfdtTree",
    "GahtConfig",
    "GahtTree",
    "leaf_fraction",
    "OzaBag",
    "OzaBoost",
    "poisson_sample",
    "SplitMix64",
    "make_generator",
    "SYNTHETIC_KINDS",
    "run_prequential",
    "estimate_model_bytes",
    "node_census",
    "model_counters",
    "proxy_energy",
    "compare_runs",
    "parse_arff",
    "parse_csv",
    "DatasetFile",
    "save_model",
    "load_model",
    "ModelFormatError",
]
