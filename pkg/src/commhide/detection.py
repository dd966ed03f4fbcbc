"""Targeted community-detection algorithms: Louvain, greedy agglomerative
modularity (fast Newman), and asynchronous label propagation.

All three are pure functions of (graph, seed): repeated calls return
bit-identical label vectors. Returned partitions cover every node with
dense labels 0..k-1 (isolated nodes become singleton communities).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, Partition


class DegenerateGraphError(ValueError):
    """Detection requires at least one edge."""


DETECTOR_KINDS = ("lou", "fn", "lpa")


def run_detector(g: Graph, kind: str, seed: int = 0) -> Partition:
    """Dispatch by detector token: 'lou', 'fn' (seed ignored), or 'lpa'."""
    if kind == "lou":
        return louvain(g, seed)
    if kind == "fn":
        return fast_newman(g)
    if kind == "lpa":
        return label_propagation(g, seed)
    raise ValueError(f"unknown detector {kind!r}; expected one of {DETECTOR_KINDS}")


def _require_edges(g: Graph) -> None:
    if g.edge_count == 0:
        raise DegenerateGraphError("graph has no edges")


# ---------------------------------------------------------------------------
# Louvain


def louvain(g: Graph, seed: int = 0) -> Partition:
    """Modularity maximization by local moving plus graph aggregation.

    The seed fixes the node visiting order of each local-moving pass; the
    process repeats (move until stable, aggregate communities into
    super-nodes) until a whole level yields no move, i.e. modularity no
    longer increases. Resolution is fixed at 1 (plain modularity).
    """
    _require_edges(g)
    rng = random.Random(seed)

    n = g.node_count
    adj: list[dict[int, float]] = [dict() for _ in range(n)]
    for u, v in g.edges():
        adj[u][v] = 1.0
        adj[v][u] = 1.0
    self_w = [0.0] * n
    total_w = float(g.edge_count)
    # membership[i] = community of original node i in the current hierarchy
    membership = list(range(n))

    while True:
        labels, improved = _local_moving(adj, self_w, total_w, rng)
        if not improved:
            break
        dense: dict[int, int] = {}
        for lab in labels:
            if lab not in dense:
                dense[lab] = len(dense)
        membership = [dense[labels[membership[i]]] for i in range(n)]
        adj, self_w = _aggregate(adj, self_w, [dense[lab] for lab in labels], len(dense))
        if len(adj) == 1:
            break

    return Partition(tuple(membership)).densified()


def _local_moving(
    adj: list[dict[int, float]],
    self_w: list[float],
    total_w: float,
    rng: random.Random,
) -> tuple[list[int], bool]:
    n = len(adj)
    strength = [sum(adj[u].values()) + 2.0 * self_w[u] for u in range(n)]
    comm = list(range(n))
    comm_tot = strength[:]
    two_m = 2.0 * total_w

    improved = False
    order = list(range(n))
    while True:
        rng.shuffle(order)
        moved = 0
        for u in order:
            cu = comm[u]
            w2c: dict[int, float] = {}
            for v, w in adj[u].items():
                w2c[comm[v]] = w2c.get(comm[v], 0.0) + w
            comm_tot[cu] -= strength[u]
            # gain(c) up to a common constant: w(u->c) - tot(c)*k_u/2m
            best_c = cu
            best_gain = w2c.get(cu, 0.0) - comm_tot[cu] * strength[u] / two_m
            for c in sorted(w2c):
                if c == cu:
                    continue
                gain = w2c[c] - comm_tot[c] * strength[u] / two_m
                if gain > best_gain:
                    best_gain = gain
                    best_c = c
            comm[u] = best_c
            comm_tot[best_c] += strength[u]
            if best_c != cu:
                moved += 1
        if moved == 0:
            break
        improved = True
    return comm, improved


def _aggregate(
    adj: list[dict[int, float]],
    self_w: list[float],
    labels: list[int],
    k: int,
) -> tuple[list[dict[int, float]], list[float]]:
    new_adj: list[dict[int, float]] = [dict() for _ in range(k)]
    new_self = [0.0] * k
    for u in range(len(adj)):
        cu = labels[u]
        new_self[cu] += self_w[u]
        for v, w in adj[u].items():
            cv = labels[v]
            if cu == cv:
                if u < v:
                    new_self[cu] += w
            else:
                new_adj[cu][cv] = new_adj[cu].get(cv, 0.0) + w
    return new_adj, new_self


# ---------------------------------------------------------------------------
# Fast Newman (greedy agglomerative modularity)


def fast_newman(g: Graph) -> Partition:
    """Greedy agglomeration: start from singletons, repeatedly merge the
    community pair with maximal modularity gain, and return the partition
    with the highest modularity along the merge path.

    Deterministic: gain ties break on the smallest (id, id) pair, where a
    community id is the smallest node id it contains.
    """
    _require_edges(g)
    n = g.node_count
    m = float(g.edge_count)
    two_m = 2.0 * m

    comm_of = list(range(n))
    members: dict[int, list[int]] = {u: [u] for u in range(n)}
    deg_sum = {u: float(g.degree(u)) for u in range(n)}
    between: dict[int, dict[int, int]] = {u: {} for u in range(n)}
    for u, v in g.edges():
        between[u][v] = between[u].get(v, 0) + 1
        between[v][u] = between[v].get(u, 0) + 1

    q = -sum((d / two_m) ** 2 for d in deg_sum.values())
    best_q = q
    best_labels = comm_of[:]

    while True:
        best_pair = None
        best_gain = None
        for i in sorted(between):
            row = between[i]
            for j in sorted(row):
                if j <= i:
                    continue
                gain = row[j] / m - 2.0 * (deg_sum[i] / two_m) * (deg_sum[j] / two_m)
                if best_gain is None or gain > best_gain:
                    best_gain = gain
                    best_pair = (i, j)
        if best_pair is None:
            break
        i, j = best_pair
        q += best_gain
        # merge j into i (i < j by construction)
        for u in members[j]:
            comm_of[u] = i
        members[i].extend(members[j])
        del members[j]
        deg_sum[i] += deg_sum.pop(j)
        row_j = between.pop(j)
        for k2, w in row_j.items():
            del between[k2][j]
            if k2 == i:
                continue
            between[i][k2] = between[i].get(k2, 0) + w
            between[k2][i] = between[i][k2]
        if q > best_q:
            best_q = q
            best_labels = comm_of[:]

    return Partition(tuple(best_labels)).densified()


# ---------------------------------------------------------------------------
# Label propagation


@dataclass(frozen=True)
class LpaResult:
    partition: Partition
    converged: bool
    sweeps: int


def label_propagation_run(g: Graph, seed: int = 0, max_sweeps: int = 100) -> LpaResult:
    """Asynchronous label propagation with full convergence info.

    Each sweep visits nodes in a seed-shuffled order; a node adopts a
    majority label among its neighbors, keeping its current label whenever
    that label is already maximal and breaking ties uniformly at random
    otherwise. Stops when a sweep changes nothing; the sweep cap guards
    against label oscillation and is surfaced via `converged`.
    """
    _require_edges(g)
    rng = random.Random(seed)
    n = g.node_count
    labels = list(range(n))
    order = list(range(n))
    converged = False
    sweeps = 0
    for _ in range(max_sweeps):
        sweeps += 1
        rng.shuffle(order)
        changed = False
        for u in order:
            nbrs = g.neighbors(u)
            if not nbrs:
                continue
            counts: dict[int, int] = {}
            for v in nbrs:
                counts[labels[v]] = counts.get(labels[v], 0) + 1
            top = max(counts.values())
            if counts.get(labels[u], 0) == top:
                continue
            candidates = sorted(lab for lab, c in counts.items() if c == top)
            labels[u] = candidates[rng.randrange(len(candidates))]
            changed = True
        if not changed:
            converged = True
            break
    return LpaResult(Partition(tuple(labels)).densified(), converged, sweeps)


def label_propagation(g: Graph, seed: int = 0, max_sweeps: int = 100) -> Partition:
    return label_propagation_run(g, seed, max_sweeps).partition
