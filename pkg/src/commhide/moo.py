"""NSGA-II search over degree-preserving rewirings: fitness evaluation with
caching, fast non-dominated sorting, crowding distance, elite selection,
and an all-time Pareto archive with per-iteration hypervolume history.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .detection import DETECTOR_KINDS, run_detector
from .graph import Graph, Partition
from .metrics import (
    FitnessPoint,
    dari,
    dat,
    front_diversity,
    hypervolume_2d,
    modularity,
    non_dominated,
)
from .perturbation import (
    BIAS_MODES,
    Individual,
    crossover,
    initialize_population,
    mutate,
    random_individual,
)

# stream tags for deterministic seed derivation
_S_INIT, _S_PAIRING, _S_VARIATION, _S_DETECT, _S_SAMPLING = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    """Invalid attack configuration."""


@dataclass(frozen=True)
class AttackConfig:
    """Run parameters; a run is a pure function of (graph, config)."""

    budget: int
    population_size: int = 30
    crossover_rate: float = 0.5
    mutation_rate: float = 0.8
    max_iterations: int = 500
    bias: str = "uniform"
    detector: str = "lou"
    seed: int = 0
    validate: bool = False

    def __post_init__(self):
        if self.population_size < 2 or self.population_size % 2 != 0:
            raise ConfigError(
                f"population_size must be even and >= 2, got {self.population_size}"
            )
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {rate}")
        if self.budget < 1:
            raise ConfigError(f"budget must be >= 1, got {self.budget}")
        if self.max_iterations < 1:
            raise ConfigError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )
        if self.bias not in BIAS_MODES:
            raise ConfigError(f"bias must be one of {BIAS_MODES}, got {self.bias!r}")
        if self.detector not in DETECTOR_KINDS:
            raise ConfigError(
                f"detector must be one of {DETECTOR_KINDS}, got {self.detector!r}"
            )


def derived_seed(*keys: int) -> int:
    """Deterministic child seed from integer keys (platform independent)."""
    return int(np.random.SeedSequence(keys).generate_state(1)[0])


def derived_rng(*keys: int) -> random.Random:
    return random.Random(derived_seed(*keys))


class ParetoArchive:
    """All-time non-dominated set of evaluated individuals.

    Only points with non-negative remaining budget are admitted, so the
    archive always dominates the (0, 0) reference point and its
    hypervolume history is non-decreasing.
    """

    def __init__(self):
        self.entries: list[tuple[FitnessPoint, Individual]] = []
        self.hv_history: list[float] = []
        self.front_history: list[tuple[FitnessPoint, ...]] = []

    def add(self, point: FitnessPoint, ind: Individual) -> bool:
        if point.dat < 0.0:
            return False
        for p, _ in self.entries:
            if p.dominates(point) or p == point:
                return False
        self.entries = [(p, i) for p, i in self.entries if not point.dominates(p)]
        self.entries.append((point, ind))
        return True

    def points(self) -> list[FitnessPoint]:
        return [p for p, _ in self.entries]

    def hypervolume(self) -> float:
        return hypervolume_2d(self.points())

    def diversity(self) -> int:
        return front_diversity(self.points())

    def record_iteration(self) -> None:
        self.hv_history.append(self.hypervolume())
        self.front_history.append(tuple(self.points()))

    def sorted_by_dat(self) -> list[tuple[FitnessPoint, Individual]]:
        return sorted(self.entries, key=lambda e: (e[0].dat, e[0].dari))


def evaluate_fitness(
    ind: Individual,
    g_orig: Graph,
    ground_truth: Partition,
    detector: str,
    budget: int,
    seed: int = 0,
) -> FitnessPoint:
    """Detect on the perturbed graph and score both objectives."""
    detected = run_detector(ind.perturbed, detector, seed)
    return FitnessPoint(
        dari(ground_truth, detected), dat(g_orig, ind.perturbed, budget)
    )


def fast_nondominated_sort(points: list[FitnessPoint]) -> list[list[int]]:
    """Deb's fast non-dominated sort (both objectives maximized).

    Returns index fronts: front 0 is the maximal non-dominated set, each
    later front is non-dominated once earlier fronts are removed.
    """
    n = len(points)
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    domination_count = [0] * n
    fronts: list[list[int]] = [[]]
    for i in range(n):
        for j in range(i + 1, n):
            if points[i].dominates(points[j]):
                dominated_by[i].append(j)
                domination_count[j] += 1
            elif points[j].dominates(points[i]):
                dominated_by[j].append(i)
                domination_count[i] += 1
        if domination_count[i] == 0:
            fronts[0].append(i)
    k = 0
    while fronts[k]:
        nxt: list[int] = []
        for i in fronts[k]:
            for j in dominated_by[i]:
                domination_count[j] -= 1
                if domination_count[j] == 0:
                    nxt.append(j)
        k += 1
        fronts.append(sorted(nxt))
    fronts.pop()
    return fronts


def crowding_distance(front_points: list[FitnessPoint]) -> list[float]:
    """NSGA-II crowding distance within one front.

    Boundary points of each objective get infinity; interior points sum
    the normalized gap between their neighbors over both objectives.
    """
    n = len(front_points)
    if n == 0:
        return []
    dist = [0.0] * n
    for key in (lambda p: p.dari, lambda p: p.dat):
        order = sorted(range(n), key=lambda i: key(front_points[i]))
        lo, hi = key(front_points[order[0]]), key(front_points[order[-1]])
        dist[order[0]] = dist[order[-1]] = float("inf")
        span = hi - lo
        if span <= 0.0:
            continue
        for pos in range(1, n - 1):
            gap = key(front_points[order[pos + 1]]) - key(front_points[order[pos - 1]])
            dist[order[pos]] += gap / span
    return dist


def elite_select(pop2: list[Individual], population_size: int) -> list[Individual]:
    """Reduce a 2N pool to N by front rank, then crowding distance.

    The partially admitted front is truncated by descending crowding
    distance with ties broken by pool index, so selection is deterministic.
    """
    if len(pop2) != 2 * population_size:
        raise ConfigError(
            f"elite selection expects a pool of {2 * population_size}, got {len(pop2)}"
        )
    return _select_ranked(pop2, population_size)


def _select_ranked(pool: list[Individual], k: int) -> list[Individual]:
    if any(ind.fitness is None for ind in pool):
        raise ConfigError("all individuals must be evaluated before selection")
    fronts = fast_nondominated_sort([ind.fitness for ind in pool])
    selected: list[Individual] = []
    for front in fronts:
        if len(selected) + len(front) <= k:
            selected.extend(pool[i] for i in front)
            if len(selected) == k:
                break
            continue
        crowd = crowding_distance([pool[i].fitness for i in front])
        ranked = sorted(range(len(front)), key=lambda j: (-crowd[j], front[j]))
        selected.extend(pool[front[j]] for j in ranked[: k - len(selected)])
        break
    return selected


def _select_with_budget_cull(pool: list[Individual], k: int) -> list[Individual]:
    """Survival selection that culls over-budget offspring: individuals with
    negative remaining budget survive only when the feasible pool runs out,
    least-violating first."""
    feasible = [ind for ind in pool if ind.fitness.dat >= 0.0]
    if len(feasible) >= k:
        return _select_ranked(feasible, k)
    infeasible = sorted(
        (ind for ind in pool if ind.fitness.dat < 0.0),
        key=lambda ind: -ind.fitness.dat,
    )
    return feasible + infeasible[: k - len(feasible)]


@dataclass(frozen=True)
class IterationStats:
    iteration: int
    hypervolume: float
    front_size: int
    best_dari: float
    best_dat: float
    q_left: float
    q_center: float
    q_right: float


@dataclass
class AttackResult:
    config: AttackConfig
    ground_truth: Partition
    archive: ParetoArchive
    final_population: list[Individual]
    final_front: list[Individual]
    iterations: list[IterationStats]
    evaluations: int = 0
    cache_hits: int = 0
    degree_violations: int = 0
    # test-mode log: every fitness ever assigned, for brute-force audits
    evaluated_points: list[FitnessPoint] = field(default_factory=list)


class _Evaluator:
    """Fitness evaluation with caching keyed by the perturbed edge set.

    The cache stores the fitness pair plus the modularity of the detected
    partition on the perturbed graph (reported in trajectories). Detector
    seeds are derived per (run seed, iteration, pool index) so repeated
    runs are reproducible without freezing the detector to one trajectory.
    """

    def __init__(self, g: Graph, ground_truth: Partition, config: AttackConfig):
        self.g = g
        self.ground_truth = ground_truth
        self.config = config
        self.cache: dict[frozenset, tuple[FitnessPoint, float]] = {}
        self.evaluations = 0
        self.cache_hits = 0
        self.degree_violations = 0
        self.evaluated_points: list[FitnessPoint] = []
        self._base_degrees = g.degree_sequence()

    def evaluate(self, ind: Individual, iteration: int, index: int) -> FitnessPoint:
        if ind.fitness is not None:
            return ind.fitness
        if self.config.validate:
            if ind.perturbed.degree_sequence() != self._base_degrees:
                self.degree_violations += 1
        key = ind.perturbed.edge_set()
        cached = self.cache.get(key)
        if cached is not None:
            self.cache_hits += 1
            point, _q = cached
        else:
            seed = derived_seed(self.config.seed, _S_DETECT, iteration, index)
            detected = run_detector(ind.perturbed, self.config.detector, seed)
            point = FitnessPoint(
                dari(self.ground_truth, detected),
                dat(self.g, ind.perturbed, self.config.budget),
            )
            self.cache[key] = (point, modularity(ind.perturbed, detected))
        ind.fitness = point
        self.evaluations += 1
        if self.config.validate:
            self.evaluated_points.append(point)
        return point

    def q_of(self, ind: Individual) -> float:
        return self.cache[ind.perturbed.edge_set()][1]


def run_attack(g: Graph, config: AttackConfig) -> AttackResult:
    """Full optimization loop: initialize, then iterate pairing, crossover,
    mutation, fitness, elite selection, and archive update.

    Ground truth is the clean-graph detection pinned to the run seed.
    Deterministic given the config: operators draw from per-iteration
    streams split off the run seed.
    """
    ground_truth = run_detector(g, config.detector, config.seed)
    evaluator = _Evaluator(g, ground_truth, config)
    archive = ParetoArchive()

    pop = initialize_population(
        g, config.population_size, config.budget, derived_rng(config.seed, _S_INIT)
    )
    for idx, ind in enumerate(pop):
        archive.add(evaluator.evaluate(ind, 0, idx), ind)

    stats: list[IterationStats] = []
    for it in range(1, config.max_iterations + 1):
        order = list(range(config.population_size))
        derived_rng(config.seed, _S_PAIRING, it).shuffle(order)
        children: list[Individual] = []
        for pair_idx in range(config.population_size // 2):
            i, j = order[2 * pair_idx], order[2 * pair_idx + 1]
            rng = derived_rng(config.seed, _S_VARIATION, it, pair_idx)
            c1, c2 = crossover(pop[i], pop[j], config.crossover_rate, rng)
            c1 = mutate(c1, config.mutation_rate, config.bias, ground_truth, rng)
            c2 = mutate(c2, config.mutation_rate, config.bias, ground_truth, rng)
            children.extend((c1, c2))
        pool = pop + children
        for idx, ind in enumerate(pool):
            archive.add(evaluator.evaluate(ind, it, idx), ind)
        pop = _select_with_budget_cull(pool, config.population_size)
        archive.record_iteration()
        stats.append(_iteration_stats(it, archive, evaluator))

    front_idx = fast_nondominated_sort([ind.fitness for ind in pop])[0]
    final_front = [pop[i] for i in front_idx]
    if config.validate:
        _audit_front(final_front)

    return AttackResult(
        config=config,
        ground_truth=ground_truth,
        archive=archive,
        final_population=pop,
        final_front=final_front,
        iterations=stats,
        evaluations=evaluator.evaluations,
        cache_hits=evaluator.cache_hits,
        degree_violations=evaluator.degree_violations,
        evaluated_points=evaluator.evaluated_points,
    )


def random_search(g: Graph, config: AttackConfig) -> AttackResult:
    """Plumbing baseline: one independent random individual per iteration,
    archived under the same manifest shape as the optimization loop."""
    ground_truth = run_detector(g, config.detector, config.seed)
    evaluator = _Evaluator(g, ground_truth, config)
    archive = ParetoArchive()
    stats: list[IterationStats] = []
    last: Individual | None = None
    for it in range(1, config.max_iterations + 1):
        ind = random_individual(g, config.budget, derived_rng(config.seed, _S_SAMPLING, it))
        archive.add(evaluator.evaluate(ind, it, 0), ind)
        archive.record_iteration()
        stats.append(_iteration_stats(it, archive, evaluator))
        last = ind
    front = [ind for _, ind in archive.entries]
    return AttackResult(
        config=config,
        ground_truth=ground_truth,
        archive=archive,
        final_population=[last] if last is not None else [],
        final_front=front,
        iterations=stats,
        evaluations=evaluator.evaluations,
        cache_hits=evaluator.cache_hits,
        degree_violations=evaluator.degree_violations,
        evaluated_points=evaluator.evaluated_points,
    )


def _iteration_stats(
    it: int, archive: ParetoArchive, evaluator: _Evaluator
) -> IterationStats:
    points = archive.points()
    ordered = archive.sorted_by_dat()
    left = ordered[0][1]
    right = ordered[-1][1]
    center = ordered[len(ordered) // 2][1]
    return IterationStats(
        iteration=it,
        hypervolume=archive.hv_history[-1] if archive.hv_history else archive.hypervolume(),
        front_size=len(points),
        best_dari=max(p.dari for p in points),
        best_dat=max(p.dat for p in points),
        q_left=evaluator.q_of(left),
        q_center=evaluator.q_of(center),
        q_right=evaluator.q_of(right),
    )


def _audit_front(front: list[Individual]) -> None:
    points = [ind.fitness for ind in front]
    keep = set(non_dominated(points))
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            if i != j and q.dominates(p):
                raise AssertionError(
                    f"final front is not mutually non-dominated: {q} dominates {p}"
                )
    if len(keep) > len(points):  # pragma: no cover - defensive
        raise AssertionError("non-dominated audit inconsistent")
