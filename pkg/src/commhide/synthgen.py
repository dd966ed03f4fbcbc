"""Synthetic benchmark generator: complete cliques chained by single bridge
links, plus the six extreme merge/split community adjustments used to show
that modularity change is a poor proxy for deception quality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .detection import louvain
from .graph import Graph, GraphError, Partition
from .metrics import adjusted_rand_index, modularity


class AdjustmentOp(Enum):
    MERGE_LARGEST_TWO = "merge-large"
    SPLIT_SMALLEST = "split-small"
    MERGE_LARGE_SPLIT_SMALL = "merge-large-split-small"
    MERGE_SMALLEST_TWO = "merge-small"
    SPLIT_LARGEST = "split-large"
    MERGE_SMALL_SPLIT_LARGE = "merge-small-split-large"


def generate_chain_of_cliques(sizes: Sequence[int]) -> tuple[Graph, Partition]:
    """Build one complete subgraph per community size and bridge consecutive
    communities (in the given order) with a single link between their
    lowest-id members. Returns the graph and the planted partition.
    """
    if not sizes:
        raise GraphError("community size list must not be empty")
    if any(s < 1 for s in sizes):
        raise GraphError(f"community sizes must be >= 1, got {list(sizes)}")
    blocks = _id_blocks(sizes)
    return _build_chain(blocks, keep_order=True)


@dataclass(frozen=True)
class AdjustmentResult:
    graph: Graph
    new_partition: Partition
    old_partition: Partition

    @property
    def new_sizes(self) -> tuple[int, ...]:
        return _partition_sizes(self.new_partition)


def apply_adjustment(sizes: Sequence[int], op: AdjustmentOp) -> AdjustmentResult:
    """Apply one extreme merge/split adjustment and rebuild the graph.

    Node ids are preserved: a merge unions the two communities' id sets and
    a split divides a community into first/second half by id order
    (ceil/floor). The adjusted graph is rebuilt as a chain of complete
    cliques over the new communities, ordered by descending size, so both
    the old and new planted partitions live on the same node ids.
    """
    if not sizes:
        raise GraphError("community size list must not be empty")
    blocks = _id_blocks(sizes)
    old_labels = [0] * sum(sizes)
    for ci, members in enumerate(blocks):
        for u in members:
            old_labels[u] = ci
    old_partition = Partition(tuple(old_labels))

    if op is AdjustmentOp.MERGE_LARGEST_TWO:
        blocks = _merge_two(blocks, largest=True)
    elif op is AdjustmentOp.SPLIT_SMALLEST:
        blocks = _split_one(blocks, largest=False)
    elif op is AdjustmentOp.MERGE_LARGE_SPLIT_SMALL:
        blocks = _split_one(_merge_two(blocks, largest=True), largest=False)
    elif op is AdjustmentOp.MERGE_SMALLEST_TWO:
        blocks = _merge_two(blocks, largest=False)
    elif op is AdjustmentOp.SPLIT_LARGEST:
        blocks = _split_one(blocks, largest=True)
    elif op is AdjustmentOp.MERGE_SMALL_SPLIT_LARGE:
        blocks = _split_one(_merge_two(blocks, largest=False), largest=True)
    else:  # pragma: no cover
        raise ValueError(f"unknown adjustment {op}")

    graph, new_partition = _build_chain(blocks, keep_order=False)
    return AdjustmentResult(graph, new_partition, old_partition)


def adjustment_study_rows(
    size_lists: Sequence[Sequence[int]] = ((100, 50, 25, 15, 10), (200, 100, 50, 30, 20)),
    detector_seed: int = 0,
) -> list[dict]:
    """Measure every adjustment through the detection protocol.

    Ground truth is the detected partition of the clean generated graph;
    each adjusted graph is re-detected, and the row reports the modularity
    of the detected partition on the adjusted graph plus its agreement
    (ARI) with the ground truth. The original rows report detected
    modularity only. Louvain is the detector (modularity maximization,
    which is what makes the merge/split outcomes interesting: it re-merges
    adjacent small cliques whenever that increases modularity).
    """
    rows = []
    for sizes in size_lists:
        n = sum(sizes)
        g0, _planted = generate_chain_of_cliques(sizes)
        ground_truth = louvain(g0, detector_seed)
        rows.append(
            {
                "operation": "original",
                "n": n,
                "sizes": tuple(sizes),
                "modularity": modularity(g0, ground_truth),
                "ari": None,
            }
        )
        for op in (
            AdjustmentOp.MERGE_LARGEST_TWO,
            AdjustmentOp.SPLIT_SMALLEST,
            AdjustmentOp.MERGE_LARGE_SPLIT_SMALL,
            AdjustmentOp.MERGE_SMALLEST_TWO,
            AdjustmentOp.SPLIT_LARGEST,
            AdjustmentOp.MERGE_SMALL_SPLIT_LARGE,
        ):
            res = apply_adjustment(sizes, op)
            detected = louvain(res.graph, detector_seed)
            rows.append(
                {
                    "operation": op.value,
                    "n": n,
                    "sizes": res.new_sizes,
                    "modularity": modularity(res.graph, detected),
                    "ari": adjusted_rand_index(ground_truth, detected),
                }
            )
    return rows


# ---------------------------------------------------------------------------
# internals


def _id_blocks(sizes: Sequence[int]) -> list[list[int]]:
    blocks, next_id = [], 0
    for s in sizes:
        blocks.append(list(range(next_id, next_id + s)))
        next_id += s
    return blocks


def _rank(blocks: list[list[int]]) -> list[list[int]]:
    """Descending size, ties by lowest member id."""
    return sorted(blocks, key=lambda b: (-len(b), min(b)))


def _merge_two(blocks: list[list[int]], largest: bool) -> list[list[int]]:
    if len(blocks) < 2:
        raise GraphError("need at least two communities to merge")
    ranked = _rank(blocks)
    if largest:
        merged = sorted(ranked[0] + ranked[1])
        rest = ranked[2:]
    else:
        merged = sorted(ranked[-1] + ranked[-2])
        rest = ranked[:-2]
    return rest + [merged]


def _split_one(blocks: list[list[int]], largest: bool) -> list[list[int]]:
    ranked = _rank(blocks)
    target = ranked[0] if largest else ranked[-1]
    rest = ranked[1:] if largest else ranked[:-1]
    if len(target) < 2:
        raise GraphError("cannot split a single-node community")
    ordered = sorted(target)
    first = len(ordered) - len(ordered) // 2  # first half takes the ceil
    return rest + [ordered[:first], ordered[first:]]


def _build_chain(blocks: list[list[int]], keep_order: bool) -> tuple[Graph, Partition]:
    order = blocks if keep_order else _rank(blocks)
    node_count = sum(len(b) for b in order)
    g = Graph(node_count)
    labels = [0] * node_count
    for ci, members in enumerate(order):
        for u in members:
            labels[u] = ci
        for u, v in itertools.combinations(sorted(members), 2):
            g.add_edge(u, v)
    for i in range(len(order) - 1):
        g.add_edge(min(order[i]), min(order[i + 1]))
    return g, Partition(tuple(labels))


def _partition_sizes(p: Partition) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for lab in p.labels:
        counts[lab] = counts.get(lab, 0) + 1
    return tuple(sorted(counts.values(), reverse=True))
