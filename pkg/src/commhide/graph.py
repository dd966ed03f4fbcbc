"""Undirected simple graphs over dense integer node ids, plus partitions.

The graph is the object under attack: adjacency sets give O(1) edge tests
for the rewiring operators, and the edge set doubles as a hashable identity
for fitness caching. Partitions are label vectors produced by the detectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Invalid graph construction or mutation."""


class EdgeListParseError(GraphError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Undirected simple graph: no self-loops, no parallel edges.

    Node ids are dense integers 0..node_count-1; isolated nodes are allowed.
    Construction collapses duplicate edges; the mutation API (`add_edge` /
    `remove_edge`) is strict so rewiring moves are never silently skipped.
    """

    __slots__ = ("_adj", "_edge_count")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 0:
            raise GraphError(f"node_count must be >= 0, got {node_count}")
        self._adj: list[set[int]] = [set() for _ in range(node_count)]
        self._edge_count = 0
        for u, v in edges:
            self._check_endpoints(u, v)
            if v not in self._adj[u]:
                self._adj[u].add(v)
                self._adj[v].add(u)
                self._edge_count += 1

    def _check_endpoints(self, u: int, v: int) -> None:
        n = len(self._adj)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) outside node range [0,{n})")
        if u == v:
            raise GraphError(f"self-loop ({u},{u}) not allowed")

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, u: int) -> set[int]:
        """Neighbor set of u. Treat as read-only."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def degree_sequence(self) -> list[int]:
        """Degrees indexed by node id; sums to 2*edge_count."""
        return [len(nbrs) for nbrs in self._adj]

    def add_edge(self, u: int, v: int) -> None:
        self._check_endpoints(u, v)
        if v in self._adj[u]:
            raise GraphError(f"edge ({u},{v}) already present")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._edge_count += 1

    def remove_edge(self, u: int, v: int) -> None:
        self._check_endpoints(u, v)
        if v not in self._adj[u]:
            raise GraphError(f"edge ({u},{v}) not present")
        self._adj[u].remove(v)
        self._adj[v].remove(u)
        self._edge_count -= 1

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, ascending."""
        for u in range(len(self._adj)):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        """Hashable edge-set identity (used as the fitness-cache key)."""
        return frozenset(
            (u, v) if u < v else (v, u)
            for u in range(len(self._adj))
            for v in self._adj[u]
            if u < v
        )

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g._adj = [set(nbrs) for nbrs in self._adj]
        g._edge_count = self._edge_count
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and self._adj == other._adj

    def __hash__(self):  # pragma: no cover - identity hashing is intentional
        return id(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self._edge_count})"


@dataclass(frozen=True)
class Partition:
    """Node -> community-label assignment over nodes 0..len(labels)-1.

    Labels are arbitrary up to relabeling; every metric treats them as
    permutation-invariant. `densified()` canonicalizes to 0..k-1 in order
    of first appearance.
    """

    labels: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def num_communities(self) -> int:
        return len(set(self.labels))

    def densified(self) -> "Partition":
        remap: dict[int, int] = {}
        out = []
        for lab in self.labels:
            if lab not in remap:
                remap[lab] = len(remap)
            out.append(remap[lab])
        return Partition(tuple(out))

    def communities(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for node, lab in enumerate(self.labels):
            groups.setdefault(lab, []).append(node)
        return [groups[lab] for lab in sorted(groups)]

    def to_json_array(self) -> list[int]:
        return list(self.labels)

    @staticmethod
    def from_labels(labels: Iterable[int]) -> "Partition":
        return Partition(tuple(int(x) for x in labels))


def load_edge_list(text: str) -> Graph:
    """Parse whitespace-separated integer pairs, one edge per line.

    Lines starting with '#' are comments; duplicates and both orientations
    collapse to one edge. node_count = max id + 1.
    """
    edges: list[tuple[int, int]] = []
    max_id = -1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(line_no, f"expected two tokens, got {len(tokens)}: {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_no, f"non-integer node id in {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_no, f"negative node id in {line!r}")
        if u == v:
            raise GraphError(f"line {line_no}: self-loop ({u},{u}) rejected")
        edges.append((u, v))
        max_id = max(max_id, u, v)
    return Graph(max_id + 1, edges)


def load_edge_list_path(path) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return load_edge_list(f.read())


def dump_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    """Serialize to the edge-list wire format (round-trips with load)."""
    lines = [f"# {c}" for c in comments]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def edge_set_difference_size(g1: Graph, g2: Graph) -> int:
    """|E1 symmetric-difference E2|: the number of links modified.

    This is the attack size AT; the full adjacency-matrix difference is
    twice this number since both matrices are symmetric.
    """
    if g1.node_count != g2.node_count:
        raise GraphError(
            f"node count mismatch: {g1.node_count} vs {g2.node_count}"
        )
    diff = 0
    for u in range(g1.node_count):
        diff += len(g1.neighbors(u) ^ g2.neighbors(u))
    return diff // 2
