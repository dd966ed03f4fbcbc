"""Scalar quality measures: modularity, adjusted Rand index, the two attack
objectives (detection damage and remaining budget), 2-D hypervolume, and
Pareto-front diversity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .graph import Graph, Partition, edge_set_difference_size


class MetricError(ValueError):
    """Metric precondition violated (size mismatch, bad budget, ...)."""


@dataclass(frozen=True)
class FitnessPoint:
    """The two maximization objectives of an attack.

    detection damage `dari` = 1 - ARI(ground truth, detected) in [0, 2];
    remaining budget `dat` = 1 - modified_links/budget, <= 1, and >= 0 for
    any individual within budget.
    """

    dari: float
    dat: float

    def dominates(self, other: "FitnessPoint") -> bool:
        return (
            self.dari >= other.dari
            and self.dat >= other.dat
            and (self.dari > other.dari or self.dat > other.dat)
        )


def modularity(g: Graph, p: Partition) -> float:
    """Newman modularity Q = sum_c [ L_c/m - (D_c/2m)^2 ].

    L_c counts intra-community edges, D_c sums member degrees. Q is
    label-permutation invariant and lies in [-0.5, 1).
    """
    if p.node_count != g.node_count:
        raise MetricError(
            f"partition covers {p.node_count} nodes, graph has {g.node_count}"
        )
    m = g.edge_count
    if m == 0:
        raise MetricError("modularity undefined on an empty edge set")
    labels = p.labels
    intra: dict[int, int] = {}
    deg: dict[int, int] = {}
    for u in range(g.node_count):
        lab = labels[u]
        deg[lab] = deg.get(lab, 0) + g.degree(u)
    for u, v in g.edges():
        if labels[u] == labels[v]:
            intra[labels[u]] = intra.get(labels[u], 0) + 1
    two_m = 2.0 * m
    return sum(
        intra.get(lab, 0) / m - (d / two_m) ** 2 for lab, d in deg.items()
    )


def adjusted_rand_index(p1: Partition, p2: Partition) -> float:
    """Chance-corrected pair-counting agreement between two partitions.

    Computed from the contingency table in exact integer arithmetic; 1.0
    iff the partitions are identical up to relabeling. The degenerate case
    (expected index equals maximum index, e.g. both partitions are all
    singletons or both one cluster) is defined as 1.0.
    """
    if p1.node_count != p2.node_count:
        raise MetricError(
            f"partition sizes differ: {p1.node_count} vs {p2.node_count}"
        )
    n = p1.node_count
    cells: dict[tuple[int, int], int] = {}
    a_sizes: dict[int, int] = {}
    b_sizes: dict[int, int] = {}
    for lab1, lab2 in zip(p1.labels, p2.labels):
        cells[(lab1, lab2)] = cells.get((lab1, lab2), 0) + 1
        a_sizes[lab1] = a_sizes.get(lab1, 0) + 1
        b_sizes[lab2] = b_sizes.get(lab2, 0) + 1
    index = sum(comb(c, 2) for c in cells.values())
    sum_a = sum(comb(c, 2) for c in a_sizes.values())
    sum_b = sum(comb(c, 2) for c in b_sizes.values())
    total = comb(n, 2)
    # ARI = (index - sum_a*sum_b/total) / ((sum_a+sum_b)/2 - sum_a*sum_b/total)
    num = 2 * (total * index - sum_a * sum_b)
    den = total * (sum_a + sum_b) - 2 * sum_a * sum_b
    if den == 0:
        return 1.0
    return num / den


def dari(ground_truth: Partition, predicted: Partition) -> float:
    """Detection damage: 1 - ARI(ground truth, predicted)."""
    return 1.0 - adjusted_rand_index(ground_truth, predicted)


def attack_size(g_orig: Graph, g_pert: Graph) -> int:
    """Number of links modified by the attack (symmetric edge difference)."""
    return edge_set_difference_size(g_orig, g_pert)


def dat(g_orig: Graph, g_pert: Graph, budget: int) -> float:
    """Remaining-budget objective: 1 - attack_size/budget.

    Equals 1 iff the graphs are identical; 0 when the attack exactly
    exhausts the budget; negative over budget.
    """
    if budget <= 0:
        raise MetricError(f"budget must be positive, got {budget}")
    return 1.0 - attack_size(g_orig, g_pert) / budget


def default_budget(edge_count: int) -> int:
    """Budget cap: 20% of the original link count, rounded half-to-even."""
    return round(edge_count / 5.0)


def non_dominated(points: Sequence[FitnessPoint]) -> list[int]:
    """Indices of the maximal non-dominated subset (first index wins ties
    among exact duplicates)."""
    out = []
    for i, p in enumerate(points):
        dominated = False
        for j, q in enumerate(points):
            if q.dominates(p) or (q == p and j < i):
                dominated = True
                break
        if not dominated:
            out.append(i)
    return out


def hypervolume_2d(
    front: Sequence[FitnessPoint], ref: FitnessPoint = FitnessPoint(0.0, 0.0)
) -> float:
    """Area dominated by `front` relative to `ref` (both objectives maximized).

    Every point must weakly dominate the reference point. Dominated and
    duplicate points contribute nothing extra: the area is the union of the
    rectangles [ref.dari, p.dari] x [ref.dat, p.dat], summed as disjoint
    vertical strips after sorting.
    """
    for p in front:
        if p.dari < ref.dari or p.dat < ref.dat:
            raise MetricError(f"point {p} lies below the reference {ref}")
    if not front:
        return 0.0
    keep = sorted(
        {(front[i].dari, front[i].dat) for i in non_dominated(front)}
    )
    area = 0.0
    prev_dari = ref.dari
    # non-dominated + sorted ascending dari => dat strictly descending
    for p_dari, p_dat in keep:
        area += (p_dari - prev_dari) * (p_dat - ref.dat)
        prev_dari = p_dari
    return area


def front_diversity(front: Sequence[FitnessPoint]) -> int:
    """Number of distinct non-dominated points in the front."""
    if not front:
        return 0
    return len({(front[i].dari, front[i].dat) for i in non_dominated(front)})
