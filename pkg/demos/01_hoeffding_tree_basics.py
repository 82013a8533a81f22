"""A first Hoeffding tree.

Trains a streaming decision tree on a synthetic RandomTree concept and
watches it grow: the tree only splits a leaf once the Hoeffding bound says
the best attribute is reliably better than the runner-up, so structure
appears gradually as evidence accumulates.
"""

from greenstream.evaluation import argmax_vote, proxy_energy
from greenstream.generators import make_generator
from greenstream.hoeffding import HoeffdingTree

gen = make_generator("rtree", seed=7)
print("schema:", [(a.name, a.kind) for a in gen.schema.attributes])
print("classes:", gen.schema.class_count)

tree = HoeffdingTree(gen.schema)

# Test-then-train: every instance is first predicted, then learned from.
correct = 0
seen = 0
for ex in gen.take(50_000):
    pred = argmax_vote(tree.predict(ex.values))
    correct += pred == ex.label
    seen += 1
    tree.train_on(ex.values, ex.label)
    if seen % 10_000 == 0:
        census = tree.node_count()
        print(
            f"after {seen:>6} instances: accuracy={correct / seen:.4f} "
            f"splits={census['split_nodes']} leaves={census['active_leaves']}"
        )

# The resource counters are the deterministic stand-in for energy use.
print("\nresource counters:")
for field, value in tree.counters.as_dict().items():
    print(f"  {field:<20} {value}")
print("proxy energy:", proxy_energy(tree.counters))
