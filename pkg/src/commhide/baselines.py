"""Single-objective genetic baseline: maximize the modularity decrease with
a fixed budget of unconstrained edge edits (deletions of existing links plus
additions of new ones). Unlike the rewiring attack, this does not preserve
node degrees.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .detection import DegenerateGraphError, run_detector
from .graph import Graph, Partition
from .metrics import FitnessPoint, dari, dat, modularity
from .moo import derived_rng, derived_seed

_S_GAQ_INIT, _S_GAQ_VARIATION, _S_GAQ_DETECT, _S_GAQ_REPR = 10, 11, 12, 13


class GaqError(ValueError):
    """Infeasible GAQ configuration."""


@dataclass(frozen=True)
class EditGenome:
    """Exactly `budget` distinct edits: deletions drawn from the original
    edge set, additions from its complement; no overlap by construction."""

    deletions: frozenset[tuple[int, int]]
    additions: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.deletions) + len(self.additions)

    def apply(self, g: Graph) -> Graph:
        out = g.copy()
        for u, v in sorted(self.deletions):
            out.remove_edge(u, v)
        for u, v in sorted(self.additions):
            out.add_edge(u, v)
        return out


def _check_feasible(g: Graph, budget: int) -> None:
    non_edges = comb(g.node_count, 2) - g.edge_count
    if budget < 0 or budget > g.edge_count or budget > non_edges:
        raise GaqError(
            f"budget {budget} infeasible: {g.edge_count} deletable, "
            f"{non_edges} addable"
        )


def _fresh_edit(
    g: Graph,
    deletions: set[tuple[int, int]],
    additions: set[tuple[int, int]],
    rng: random.Random,
) -> tuple[str, tuple[int, int]]:
    """Uniform draw over all edits not already in the genome."""
    del_pool = sorted(e for e in g.edges() if e not in deletions)
    add_count = comb(g.node_count, 2) - g.edge_count - len(additions)
    total = len(del_pool) + add_count
    if total == 0:
        raise GaqError("no fresh edits available")
    if rng.randrange(total) < len(del_pool):
        return "del", del_pool[rng.randrange(len(del_pool))]
    n = g.node_count
    while True:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        edge = (u, v) if u < v else (v, u)
        if not g.has_edge(*edge) and edge not in additions:
            return "add", edge


def _repair(
    g: Graph,
    deletions: set[tuple[int, int]],
    additions: set[tuple[int, int]],
    budget: int,
    rng: random.Random,
) -> EditGenome:
    while len(deletions) + len(additions) > budget:
        pool = sorted(("del", e) for e in deletions) + sorted(
            ("add", e) for e in additions
        )
        kind, edge = pool[rng.randrange(len(pool))]
        (deletions if kind == "del" else additions).discard(edge)
    while len(deletions) + len(additions) < budget:
        kind, edge = _fresh_edit(g, deletions, additions, rng)
        (deletions if kind == "del" else additions).add(edge)
    return EditGenome(frozenset(deletions), frozenset(additions))


def random_genome(g: Graph, budget: int, rng: random.Random) -> EditGenome:
    return _repair(g, set(), set(), budget, rng)


def crossover_genomes(
    g: Graph,
    g1: EditGenome,
    g2: EditGenome,
    budget: int,
    rng: random.Random,
) -> tuple[EditGenome, EditGenome]:
    """Uniform set crossover with repair back to the exact budget: shared
    edits go to both children, each disputed edit goes to one child."""
    shared_del = g1.deletions & g2.deletions
    shared_add = g1.additions & g2.additions
    child = [
        (set(shared_del), set(shared_add)),
        (set(shared_del), set(shared_add)),
    ]
    disputed = sorted(("del", e) for e in g1.deletions ^ g2.deletions)
    disputed += sorted(("add", e) for e in g1.additions ^ g2.additions)
    for kind, edge in disputed:
        take = rng.randrange(2)
        child[take][0 if kind == "del" else 1].add(edge)
    out = []
    for dels, adds in child:
        out.append(_repair(g, dels, adds, budget, rng))
    return out[0], out[1]


def mutate_genome(g: Graph, genome: EditGenome, rng: random.Random) -> EditGenome:
    """Swap one edit for a fresh random edit."""
    if genome.size == 0:
        return genome
    deletions = set(genome.deletions)
    additions = set(genome.additions)
    pool = sorted(("del", e) for e in deletions) + sorted(
        ("add", e) for e in additions
    )
    kind, edge = pool[rng.randrange(len(pool))]
    (deletions if kind == "del" else additions).discard(edge)
    kind2, edge2 = _fresh_edit(g, deletions, additions, rng)
    (deletions if kind2 == "del" else additions).add(edge2)
    return EditGenome(frozenset(deletions), frozenset(additions))


@dataclass
class GaqResult:
    best_genome: EditGenome
    best_graph: Graph
    best_fitness: float
    trace: list[float]
    ground_truth: Partition
    clean_modularity: float


def run_gaq(
    g: Graph,
    detector: str,
    budget: int,
    population_size: int = 30,
    crossover_rate: float = 0.5,
    mutation_rate: float = 0.8,
    max_iterations: int = 500,
    seed: int = 0,
) -> GaqResult:
    """Elitist GA over edit genomes; fitness is the decrease of modularity
    from the clean-graph detection to detection on the perturbed graph.

    The per-generation best-fitness trace is non-decreasing because parents
    compete with their children for survival.
    """
    _check_feasible(g, budget)
    ground_truth = run_detector(g, detector, seed)
    clean_q = modularity(g, ground_truth)

    cache: dict[EditGenome, float] = {}

    def fitness(genome: EditGenome, iteration: int, index: int) -> float:
        got = cache.get(genome)
        if got is not None:
            return got
        if genome.size == 0:
            # unperturbed graph: zero modularity decrease by definition
            cache[genome] = 0.0
            return 0.0
        perturbed = genome.apply(g)
        try:
            detected = run_detector(
                perturbed,
                detector,
                derived_seed(seed, _S_GAQ_DETECT, iteration, index),
            )
            value = clean_q - modularity(perturbed, detected)
        except DegenerateGraphError:
            value = float("-inf")
        cache[genome] = value
        return value

    init_rng = derived_rng(seed, _S_GAQ_INIT)
    pop = [random_genome(g, budget, init_rng) for _ in range(population_size)]
    scores = [fitness(genome, 0, i) for i, genome in enumerate(pop)]
    trace = [max(scores)]

    for it in range(1, max_iterations + 1):
        order = list(range(population_size))
        derived_rng(seed, _S_GAQ_VARIATION, it).shuffle(order)
        children: list[EditGenome] = []
        for pair_idx in range(population_size // 2):
            i, j = order[2 * pair_idx], order[2 * pair_idx + 1]
            rng = derived_rng(seed, _S_GAQ_VARIATION, it, pair_idx)
            if rng.random() < crossover_rate:
                c1, c2 = crossover_genomes(g, pop[i], pop[j], budget, rng)
            else:
                c1, c2 = pop[i], pop[j]
            if rng.random() < mutation_rate:
                c1 = mutate_genome(g, c1, rng)
            if rng.random() < mutation_rate:
                c2 = mutate_genome(g, c2, rng)
            children.extend((c1, c2))
        child_scores = [
            fitness(genome, it, population_size + k) for k, genome in enumerate(children)
        ]
        pool = list(zip(pop + children, scores + child_scores))
        ranked = sorted(
            range(len(pool)), key=lambda k: (-pool[k][1], k)
        )[:population_size]
        pop = [pool[k][0] for k in ranked]
        scores = [pool[k][1] for k in ranked]
        trace.append(max(scores))

    best_idx = max(range(len(pop)), key=lambda k: (scores[k], -k))
    best = pop[best_idx]
    return GaqResult(
        best_genome=best,
        best_graph=best.apply(g),
        best_fitness=scores[best_idx],
        trace=trace,
        ground_truth=ground_truth,
        clean_modularity=clean_q,
    )


def gaq_representative_points(
    g: Graph,
    detector: str,
    budgets: Sequence[int],
    cap_budget: int,
    population_size: int = 30,
    crossover_rate: float = 0.5,
    mutation_rate: float = 0.8,
    max_iterations: int = 500,
    seed: int = 0,
) -> list[FitnessPoint]:
    """Run the baseline once per budget and express each result in the
    two-objective space (detection damage, remaining budget) for overlay
    on rewiring-attack fronts. The attack size equals the budget exactly,
    so dat = 1 - budget/cap_budget."""
    points = []
    for k, budget in enumerate(budgets):
        res = run_gaq(
            g,
            detector,
            budget,
            population_size=population_size,
            crossover_rate=crossover_rate,
            mutation_rate=mutation_rate,
            max_iterations=max_iterations,
            seed=seed,
        )
        detected = run_detector(
            res.best_graph, detector, derived_seed(seed, _S_GAQ_REPR, k)
        )
        points.append(
            FitnessPoint(
                dari(res.ground_truth, detected),
                dat(g, res.best_graph, cap_budget),
            )
        )
    return points
