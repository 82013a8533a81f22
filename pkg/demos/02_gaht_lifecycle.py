"""The GAHT leaf lifecycle: deactivation and grow-fast.

GAHT tracks, for every leaf, the fraction of the stream it has absorbed
since its creation, normalized by the number of leaves.  Cold leaves
(fraction below the deactivate threshold) permanently drop their split
statistics and stop paying for split evaluations; hot leaves (fraction
above the grow-fast threshold) switch to a cheaper comparison and split
sooner.  With the thresholds pushed to (0, infinity) the lifecycle is inert
and GAHT is bit-identical to the plain Hoeffding tree.
"""

import math

from greenstream.efdt import EfdtTree
from greenstream.evaluation import proxy_energy, run_prequential
from greenstream.gaht import GahtConfig, GahtTree
from greenstream.generators import make_generator
from greenstream.hoeffding import HoeffdingTree, HTConfig

N = 100_000

# -- default lifecycle vs plain HT vs EFDT -------------------------------------
results = {}
for name, factory in [
    ("ht", lambda s: HoeffdingTree(s)),
    ("gaht", lambda s: GahtTree(s)),
    ("efdt", lambda s: EfdtTree(s)),
]:
    gen = make_generator("rtree", seed=3)
    model = factory(gen.schema)
    r = run_prequential(model, gen, N)
    results[name] = (r.final_accuracy, proxy_energy(model.counters), model)
    print(f"{name:<5} accuracy={r.final_accuracy:.4f} "
          f"proxy_energy={proxy_energy(model.counters):>9}")

gaht = results["gaht"][2]
census = gaht.leaf_mode_census()
print("\nGAHT lifecycle census:", census)
print("(deactivated leaves keep predicting from their class counts, they "
      "just never split again)")

# -- the degenerate configuration reproduces HT exactly -------------------------
gen = make_generator("rtree", seed=3)
inert = GahtTree(
    gen.schema,
    GahtConfig(HTConfig(), deactivate_threshold=0.0, grow_fast_threshold=math.inf),
)
r = run_prequential(inert, gen, N)
same_acc = r.final_accuracy == results["ht"][0]
same_energy = proxy_energy(inert.counters) == results["ht"][1]
print(f"\ndegenerate GAHT == HT? accuracy match={same_acc} "
      f"energy match={same_energy}")
