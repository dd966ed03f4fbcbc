"""Degree-preserving perturbation atoms and the genetic operators.

The atom is a four-node rewiring: remove edges a-c and d-e, add edges c-d
and a-e. Every node keeps its degree, so arbitrary compositions of moves
leave the degree sequence of the base graph untouched. Individuals carry
their move list (replayable provenance) plus the resulting perturbed graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, Partition
from .metrics import FitnessPoint

BIAS_MODES = ("uniform", "min", "max")

_STAGE_ATTEMPTS = 50
_TARGET_ATTEMPTS = 50


class MoveError(ValueError):
    """Rewiring move precondition violated."""


class UnperturbableGraphError(ValueError):
    """No valid degree-preserving rewiring exists (e.g. complete graph)."""


@dataclass(frozen=True)
class RewiringMove:
    """Remove edges a-c and d-e; add edges c-d and a-e. c is the target."""

    a: int
    c: int
    d: int
    e: int

    def removed_edges(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (_norm(self.a, self.c), _norm(self.d, self.e))

    def added_edges(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (_norm(self.c, self.d), _norm(self.a, self.e))

    def inverse(self) -> "RewiringMove":
        """The move that restores the original edge set."""
        return RewiringMove(a=self.d, c=self.c, d=self.a, e=self.e)

    def to_json(self) -> dict:
        return {
            "remove": [[self.a, self.c], [self.d, self.e]],
            "add": [[self.c, self.d], [self.a, self.e]],
        }

    @staticmethod
    def from_json(obj: dict) -> "RewiringMove":
        (a, c), (d, e) = obj["remove"]
        move = RewiringMove(a=a, c=c, d=d, e=e)
        if [list(pair) for pair in (obj["add"][0], obj["add"][1])] != [
            [move.c, move.d],
            [move.a, move.e],
        ]:
            raise MoveError(f"inconsistent move record: {obj}")
        return move


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def validate_move(g: Graph, m: RewiringMove) -> None:
    nodes = (m.a, m.c, m.d, m.e)
    if len(set(nodes)) != 4:
        raise MoveError(f"move nodes must be distinct: {nodes}")
    if not g.has_edge(m.a, m.c):
        raise MoveError(f"edge ({m.a},{m.c}) to remove is absent")
    if not g.has_edge(m.d, m.e):
        raise MoveError(f"edge ({m.d},{m.e}) to remove is absent")
    if g.has_edge(m.c, m.d):
        raise MoveError(f"edge ({m.c},{m.d}) to add already exists")
    if g.has_edge(m.a, m.e):
        raise MoveError(f"edge ({m.a},{m.e}) to add already exists")


def apply_move(g: Graph, m: RewiringMove) -> Graph:
    """Return a new graph with the move applied; never silently skips."""
    out = g.copy()
    apply_move_inplace(out, m)
    return out


def apply_move_inplace(g: Graph, m: RewiringMove) -> None:
    validate_move(g, m)
    g.remove_edge(m.a, m.c)
    g.remove_edge(m.d, m.e)
    g.add_edge(m.c, m.d)
    g.add_edge(m.a, m.e)


@dataclass
class Individual:
    """An ordered move list over a shared base graph, with its perturbed
    graph and (once evaluated) fitness pair."""

    base: Graph
    moves: tuple[RewiringMove, ...]
    perturbed: Graph
    fitness: FitnessPoint | None = field(default=None, compare=False)

    @staticmethod
    def from_moves(base: Graph, moves: Sequence[RewiringMove]) -> "Individual":
        work = base.copy()
        for m in moves:
            apply_move_inplace(work, m)
        return Individual(base=base, moves=tuple(moves), perturbed=work)

    def extended(self, move: RewiringMove) -> "Individual":
        work = self.perturbed.copy()
        apply_move_inplace(work, move)
        return Individual(base=self.base, moves=self.moves + (move,), perturbed=work)


# ---------------------------------------------------------------------------
# move sampling


def sample_rewiring(g: Graph, target: int, rng: random.Random) -> RewiringMove | None:
    """Sample a valid rewiring with c = target, or None if bounded
    resampling finds no completion (e.g. no addable edge exists).

    Stages: neighbor a of the target, then a non-neighbor d (the new link
    endpoint), then a neighbor e of d with a-e absent. Each stage retries
    a bounded number of times before giving up.
    """
    c = target
    nbrs_c = sorted(g.neighbors(c))
    if not nbrs_c:
        raise MoveError(f"target {c} has no incident edge")
    n = g.node_count
    for _ in range(_STAGE_ATTEMPTS):
        a = nbrs_c[rng.randrange(len(nbrs_c))]
        for _ in range(_STAGE_ATTEMPTS):
            d = rng.randrange(n)
            if d == c or d == a or g.has_edge(c, d) or g.degree(d) == 0:
                continue
            e_pool = sorted(
                x for x in g.neighbors(d) if x != a and x != c and not g.has_edge(a, x)
            )
            if not e_pool:
                continue
            e = e_pool[rng.randrange(len(e_pool))]
            return RewiringMove(a=a, c=c, d=d, e=e)
    return None


def _degree_weight(mode: str, degree: int, max_degree: int) -> float:
    if mode == "max":
        return float(degree)
    if mode == "min":
        return float(max_degree - degree + 1)
    return 1.0


def _roulette(rng: random.Random, items: Sequence[int], weights: Sequence[float]) -> int:
    total = sum(weights)
    if total <= 0:
        return items[rng.randrange(len(items))]
    r = rng.random() * total
    acc = 0.0
    for item, w in zip(items, weights):
        acc += w
        if r < acc:
            return item
    return items[-1]


def _weighted_pick(
    rng: random.Random, items: Sequence[int], mode: str, max_degree: int, degree_of
) -> int:
    weights = [_degree_weight(mode, degree_of(v), max_degree) for v in items]
    return _roulette(rng, items, weights)


def _sample_rewiring_biased(
    g: Graph,
    target: int,
    rng: random.Random,
    partition: Partition,
    counterpart_mode: str,
) -> RewiringMove | None:
    """Community- and degree-biased variant of `sample_rewiring`.

    Preferences are soft: the dropped neighbor a favors the target's own
    community (disconnect internally), the new neighbor d favors a
    different community (connect externally), and all counterpart nodes
    are roulette-weighted by degree with the mode opposite to the
    target-selection mode. Empty preferred pools fall back to the
    unconstrained pools.
    """
    c = target
    labels = partition.labels
    nbrs_c = sorted(g.neighbors(c))
    if not nbrs_c:
        raise MoveError(f"target {c} has no incident edge")
    max_deg = max(g.degree(v) for v in range(g.node_count))

    intra = [v for v in nbrs_c if labels[v] == labels[c]]
    a_pool = intra or nbrs_c

    non_nbrs = [
        v
        for v in range(g.node_count)
        if v != c and not g.has_edge(c, v) and g.degree(v) >= 1
    ]
    if not non_nbrs:
        return None
    inter = [v for v in non_nbrs if labels[v] != labels[c]]

    for _ in range(_STAGE_ATTEMPTS):
        a = _weighted_pick(rng, a_pool, counterpart_mode, max_deg, g.degree)
        d_pool = [v for v in (inter or non_nbrs) if v != a] or [
            v for v in non_nbrs if v != a
        ]
        if not d_pool:
            continue
        for _ in range(_STAGE_ATTEMPTS):
            d = _weighted_pick(rng, d_pool, counterpart_mode, max_deg, g.degree)
            e_pool = sorted(
                x for x in g.neighbors(d) if x != a and x != c and not g.has_edge(a, x)
            )
            if not e_pool:
                continue
            e = _weighted_pick(rng, e_pool, counterpart_mode, max_deg, g.degree)
            return RewiringMove(a=a, c=c, d=d, e=e)
    return None


# ---------------------------------------------------------------------------
# population operators


def random_individual(g: Graph, budget: int, rng: random.Random) -> Individual:
    """One individual carrying ~Uniform[1, budget//4] sequential moves.

    The move-count cap guarantees the attack size stays within budget even
    when later moves cancel earlier flips (each move modifies at most four
    links).
    """
    if budget < 4:
        raise ValueError(
            f"budget {budget} cannot fit one rewiring move (four links) within budget"
        )
    k = rng.randint(1, max(1, budget // 4))
    work = g.copy()
    moves: list[RewiringMove] = []
    eligible = [v for v in range(g.node_count) if g.degree(v) >= 1]
    if not eligible:
        raise UnperturbableGraphError("graph has no edges to rewire")
    for _ in range(k):
        move = None
        for _ in range(_TARGET_ATTEMPTS):
            target = eligible[rng.randrange(len(eligible))]
            move = sample_rewiring(work, target, rng)
            if move is not None:
                break
        if move is None:
            if not moves:
                raise UnperturbableGraphError(
                    "no valid degree-preserving rewiring exists"
                )
            break
        apply_move_inplace(work, move)
        moves.append(move)
    return Individual(base=g, moves=tuple(moves), perturbed=work)


def initialize_population(
    g: Graph, population_size: int, budget: int, rng: random.Random
) -> list[Individual]:
    """Population of independently perturbed copies of the base graph."""
    if population_size < 2:
        raise ValueError(f"population size must be >= 2, got {population_size}")
    return [random_individual(g, budget, rng) for _ in range(population_size)]


def crossover(
    ind1: Individual,
    ind2: Individual,
    crossover_rate: float,
    rng: random.Random,
) -> tuple[Individual, Individual]:
    """Exchange neighborhood information at one target node, degree-repaired.

    With probability `crossover_rate`: pick a target t; each side drops one
    of its current t-edges and reconnects t to a neighbor the partner has
    at t, then repairs degrees through a fourth node, which together form
    one valid rewiring move appended to that side. A side with no valid
    exchange is returned unchanged, as is everything with probability
    1 - crossover_rate.
    """
    if ind1.base is not ind2.base and ind1.base != ind2.base:
        raise MoveError("crossover requires individuals over the same base graph")
    if rng.random() >= crossover_rate:
        return ind1, ind2
    base = ind1.base
    eligible = [v for v in range(base.node_count) if base.degree(v) >= 1]
    if not eligible:
        return ind1, ind2
    t = eligible[rng.randrange(len(eligible))]
    nbrs1 = sorted(ind1.perturbed.neighbors(t))
    nbrs2 = sorted(ind2.perturbed.neighbors(t))
    child1 = _crossover_side(ind1, t, nbrs2, rng)
    child2 = _crossover_side(ind2, t, nbrs1, rng)
    return child1, child2


def _crossover_side(
    ind: Individual, t: int, partner_nbrs: Sequence[int], rng: random.Random
) -> Individual:
    g = ind.perturbed
    gains = [y for y in partner_nbrs if y != t and not g.has_edge(t, y)]
    if not gains:
        return ind
    own = sorted(g.neighbors(t))
    if not own:
        return ind
    for _ in range(_STAGE_ATTEMPTS):
        y = gains[rng.randrange(len(gains))]
        x = own[rng.randrange(len(own))]
        z_pool = sorted(
            z for z in g.neighbors(y) if z != t and z != x and not g.has_edge(x, z)
        )
        if not z_pool:
            continue
        z = z_pool[rng.randrange(len(z_pool))]
        return ind.extended(RewiringMove(a=x, c=t, d=y, e=z))
    return ind


def mutate(
    ind: Individual,
    mutation_rate: float,
    bias: str,
    partition: Partition | None,
    rng: random.Random,
) -> Individual:
    """With probability `mutation_rate`, append one rewiring move.

    Target selection: uniform over non-isolated nodes, or roulette-weighted
    by degree ('max') / inverted degree ('min'). Biased modes additionally
    constrain the endpoints toward disconnect-internal / connect-external
    with counterpart degrees weighted opposite to the target's mode, and
    need the clean-graph partition. A draw with no valid move returns the
    individual unchanged.
    """
    if bias not in BIAS_MODES:
        raise ValueError(f"unknown bias mode {bias!r}; expected one of {BIAS_MODES}")
    if rng.random() >= mutation_rate:
        return ind
    g = ind.perturbed
    eligible = [v for v in range(g.node_count) if g.degree(v) >= 1]
    if not eligible:
        return ind
    if bias == "uniform":
        target = eligible[rng.randrange(len(eligible))]
        move = sample_rewiring(g, target, rng)
    else:
        if partition is None:
            raise ValueError("biased mutation requires the clean-graph partition")
        if partition.node_count != g.node_count:
            raise ValueError("partition does not cover the graph")
        max_deg = max(g.degree(v) for v in eligible)
        target = _weighted_pick(rng, eligible, bias, max_deg, g.degree)
        counterpart = "min" if bias == "max" else "max"
        move = _sample_rewiring_biased(g, target, rng, partition, counterpart)
    if move is None:
        return ind
    return ind.extended(move)
