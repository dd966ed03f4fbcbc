"""The three targeted detectors side by side.

Runs Louvain, greedy agglomerative modularity, and label propagation on the
karate club network and reports community counts, modularity, and pairwise
agreement. All three are deterministic given their seed.
"""

from commhide import adjusted_rand_index, datasets, modularity, run_detector

g = datasets.load_dataset("karate")
print(f"karate: {g.node_count} nodes, {g.edge_count} edges\n")

partitions = {}
for kind in ("lou", "fn", "lpa"):
    p = run_detector(g, kind, seed=0)
    partitions[kind] = p
    print(f"{kind}: {p.num_communities} communities, Q = {modularity(g, p):.4f}")

print("\npairwise agreement (ARI):")
kinds = list(partitions)
for i, a in enumerate(kinds):
    for b in kinds[i + 1 :]:
        print(f"  {a} vs {b}: {adjusted_rand_index(partitions[a], partitions[b]):.4f}")

# determinism: the same seed always reproduces the same labels
again = run_detector(g, "lpa", seed=0)
assert again.labels == partitions["lpa"].labels
print("\nsame seed, same labels: reproducible by construction")
