"""The two attack objectives pull against each other.

Samples random degree-preserving rewiring attacks of increasing strength on
the karate network and shows that the remaining-budget objective (dat) and
the detection-damage objective (dari) are negatively correlated: stronger
deception costs more modified links. That conflict is what motivates
treating the attack as a two-objective optimization problem.
"""

from scipy import stats

from commhide import dari, dat, datasets, run_detector
from commhide.cli import _random_attack_individual
from commhide.moo import derived_rng, derived_seed

g = datasets.load_dataset("karate")
budget = round(g.edge_count / 5.0)
ground_truth = run_detector(g, "lou", 0)

samples = 400
points = []
for i in range(samples):
    rng = derived_rng(0, 20, i)
    ind = _random_attack_individual(g, budget // 4, rng)
    detected = run_detector(ind.perturbed, "lou", derived_seed(0, 21, i))
    points.append((dat(g, ind.perturbed, budget), dari(ground_truth, detected)))

rho, p = stats.spearmanr([x for x, _ in points], [y for _, y in points])
print(f"{samples} random attacks on karate, budget {budget}")
print(f"spearman(dat, dari) = {rho:.4f} (p = {p:.2e})")

# coarse text scatter: mean dari per dat level
levels: dict[float, list[float]] = {}
for x, y in points:
    levels.setdefault(round(x, 3), []).append(y)
print("\n  dat    mean dari  n")
for x in sorted(levels):
    ys = levels[x]
    bar = "#" * int(40 * sum(ys) / len(ys))
    print(f"  {x:5.3f}  {sum(ys) / len(ys):9.4f}  {len(ys):3d} {bar}")
