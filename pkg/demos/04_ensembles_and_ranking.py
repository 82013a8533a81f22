"""Online ensembles and cross-algorithm ranking.

OzaBag gives every member an independent Poisson(1) training weight per
instance; OzaBoost chains the members, growing the instance weight whenever
an earlier member misclassifies it.  Both cost roughly an order of magnitude
more than a single tree — the rank table at the end makes the accuracy /
energy trade-off explicit.
"""

from greenstream.ensembles import OzaBag, OzaBoost
from greenstream.evaluation import compare_runs, proxy_energy, run_prequential
from greenstream.gaht import GahtTree
from greenstream.generators import make_generator
from greenstream.hoeffding import HoeffdingTree

N = 30_000
STREAMS = ("rtree", "led", "rbf")

FACTORIES = {
    "ht": lambda s: HoeffdingTree(s),
    "gaht": lambda s: GahtTree(s),
    "ozabag": lambda s: OzaBag(s, HoeffdingTree, n_members=10, seed=1),
    "ozaboost": lambda s: OzaBoost(s, HoeffdingTree, n_members=10, seed=1),
}

accuracy = {a: {} for a in FACTORIES}
energy = {a: {} for a in FACTORIES}
for kind in STREAMS:
    for algo, factory in FACTORIES.items():
        gen = make_generator(kind, seed=2)
        model = factory(gen.schema)
        r = run_prequential(model, gen, N)
        accuracy[algo][kind] = r.final_accuracy
        energy[algo][kind] = proxy_energy(model.counters)
        print(f"{kind:<6} {algo:<9} accuracy={r.final_accuracy:.4f} "
              f"proxy_energy={energy[algo][kind]:>9}")
    print()

# Average ranks: 1 = best. Accuracy wants high values, energy wants low.
acc_table = compare_runs(accuracy, metric="accuracy", higher_is_better=True)
nrg_table = compare_runs(energy, metric="proxy_energy", higher_is_better=False)
print(f"{'algorithm':<10} {'acc rank':>9} {'energy rank':>12}")
for algo in sorted(FACTORIES):
    print(f"{algo:<10} {acc_table.average[algo]:>9.2f} "
          f"{nrg_table.average[algo]:>12.2f}")
