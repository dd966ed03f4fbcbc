"""Command-line surface: generate, table1, detect, correlate, attack, report.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 runtime
failure. Attack runs are reproducible from the echoed configuration alone;
all output files embed the configuration hash and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from scipy import stats as scipy_stats

from . import datasets, reporting
from .baselines import GaqError, run_gaq
from .detection import DETECTOR_KINDS, run_detector
from .graph import (
    EdgeListParseError,
    Graph,
    GraphError,
    dump_edge_list,
    load_edge_list_path,
)
from .metrics import MetricError, attack_size, dari, dat, default_budget, modularity
from .moo import (
    AttackConfig,
    ConfigError,
    derived_rng,
    derived_seed,
    random_search,
    run_attack,
)
from .perturbation import Individual, UnperturbableGraphError, sample_rewiring
from .synthgen import adjustment_study_rows, generate_chain_of_cliques

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4

METHODS = ("ucd", "ucd-min", "ucd-max", "gaq", "random")
_METHOD_BIAS = {"ucd": "uniform", "ucd-min": "min", "ucd-max": "max"}

# correlate/attack sampling stream tags (disjoint from the moo-internal ones)
_S_CORR_MOVES, _S_CORR_DETECT = 20, 21


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GaqError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EdgeListParseError, GraphError, MetricError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commhide",
        description="Degree-preserving community deception toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a chain-of-cliques benchmark graph")
    p.add_argument("--sizes", required=True, help="community sizes, e.g. 100,50,25")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--name", default="synthetic")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser(
        "table1", help="CSV of the merge/split adjustment study on two benchmarks"
    )
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("detect", help="run one community detector on a graph")
    _add_graph_args(p)
    p.add_argument("--method", choices=DETECTOR_KINDS, default="lou")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser(
        "correlate",
        help="sample random rewiring attacks and record (dat, dari) pairs",
    )
    _add_graph_args(p)
    p.add_argument("--method", choices=DETECTOR_KINDS, default="lou")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("attack", help="run a deception attack end to end")
    _add_graph_args(p)
    p.add_argument("--config", type=Path, default=None, help="key = value defaults file")
    p.add_argument("--method", choices=METHODS, default=None)
    p.add_argument("--detector", choices=DETECTOR_KINDS, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--population-size", type=int, default=None)
    p.add_argument("--crossover-rate", type=float, default=None)
    p.add_argument("--mutation-rate", type=float, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("report", help="re-emit CSVs and a summary from a manifest")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=_cmd_report)

    return parser


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", type=Path, help="edge-list file")
    group.add_argument("--dataset", help=f"bundled dataset: {datasets.available()}")
    group.add_argument("--sizes", help="generate a chain-of-cliques graph instead")


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError:
        raise ConfigError(f"invalid community sizes {text!r}") from None
    if not sizes:
        raise ConfigError("community size list must not be empty")
    return sizes


def _resolve_graph(args) -> tuple[Graph, str]:
    if getattr(args, "graph", None):
        return load_edge_list_path(args.graph), str(args.graph)
    if getattr(args, "dataset", None):
        return datasets.load_dataset(args.dataset), f"dataset:{args.dataset}"
    sizes = _parse_sizes(args.sizes)
    g, _ = generate_chain_of_cliques(sizes)
    return g, "generated:" + "+".join(str(s) for s in sizes)


# ---------------------------------------------------------------------------
# commands


def _cmd_generate(args) -> int:
    sizes = _parse_sizes(args.sizes)
    g, planted = generate_chain_of_cliques(sizes)
    cfg = {"command": "generate", "sizes": list(sizes)}
    h = reporting.config_hash(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    edge_path = args.out / f"{args.name}.edgelist"
    edge_path.write_text(
        dump_edge_list(
            g,
            comments=[
                f"schema=edge-list-v1 config_hash={h} seed=0",
                f"chain-of-cliques sizes={'+'.join(str(s) for s in sizes)}",
            ],
        ),
        encoding="utf-8",
    )
    planted_path = args.out / f"{args.name}.planted.json"
    planted_path.write_text(
        json.dumps(
            {
                "schema": reporting.DETECT_SCHEMA,
                "config_hash": h,
                "seed": 0,
                "labels": planted.to_json_array(),
            },
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote {edge_path} ({g.node_count} nodes, {g.edge_count} edges)")
    print(f"wrote {planted_path}")
    return EXIT_OK


def _cmd_table1(args) -> int:
    rows = adjustment_study_rows(detector_seed=args.seed)
    cfg = {"command": "table1", "seed": args.seed}
    h = reporting.config_hash(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / "table1.csv"
    reporting.write_csv(
        path,
        reporting.ADJUSTMENT_SCHEMA,
        reporting.ADJUSTMENT_HEADER,
        [
            (
                r["operation"],
                r["n"],
                "+".join(str(s) for s in r["sizes"]),
                round(r["modularity"], 6),
                None if r["ari"] is None else round(r["ari"], 6),
            )
            for r in rows
        ],
        h,
        args.seed,
    )
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def _cmd_detect(args) -> int:
    g, descriptor = _resolve_graph(args)
    part = run_detector(g, args.method, args.seed)
    q = modularity(g, part)
    cfg = {
        "command": "detect",
        "graph": descriptor,
        "method": args.method,
        "seed": args.seed,
    }
    payload = {
        "schema": reporting.DETECT_SCHEMA,
        "config_hash": reporting.config_hash(cfg),
        "seed": args.seed,
        "method": args.method,
        "num_communities": part.num_communities,
        "modularity": q,
        "labels": part.to_json_array(),
    }
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    print(
        f"{descriptor}: {part.num_communities} communities, modularity {q:.4f}"
    )
    return EXIT_OK


def _random_attack_individual(
    g: Graph, max_moves: int, rng
) -> Individual:
    """0..max_moves sequential rewirings on a fresh copy (strength 0 allowed
    so the no-attack point shows up in correlation scatters)."""
    k = rng.randint(0, max_moves)
    ind = Individual(base=g, moves=(), perturbed=g.copy())
    eligible = [v for v in range(g.node_count) if g.degree(v) >= 1]
    for _ in range(k):
        move = None
        for _ in range(50):
            target = eligible[rng.randrange(len(eligible))]
            move = sample_rewiring(ind.perturbed, target, rng)
            if move is not None:
                break
        if move is None:
            break
        ind = ind.extended(move)
    return ind


def _cmd_correlate(args) -> int:
    if args.samples < 1:
        raise ConfigError(f"samples must be >= 1, got {args.samples}")
    g, descriptor = _resolve_graph(args)
    budget = args.budget if args.budget is not None else default_budget(g.edge_count)
    if budget < 4:
        raise ConfigError(f"budget {budget} cannot fit a rewiring move")
    ground_truth = run_detector(g, args.method, args.seed)
    cfg = {
        "command": "correlate",
        "graph": descriptor,
        "method": args.method,
        "samples": args.samples,
        "seed": args.seed,
        "budget": budget,
    }
    h = reporting.config_hash(cfg)
    max_moves = budget // 4
    rows = []
    for i in range(args.samples):
        rng = derived_rng(args.seed, _S_CORR_MOVES, i)
        ind = _random_attack_individual(g, max_moves, rng)
        detected = run_detector(
            ind.perturbed, args.method, derived_seed(args.seed, _S_CORR_DETECT, i)
        )
        at = attack_size(g, ind.perturbed)
        rows.append(
            (
                i,
                len(ind.moves),
                at,
                dat(g, ind.perturbed, budget),
                dari(ground_truth, detected),
            )
        )
    args.out.mkdir(parents=True, exist_ok=True)
    csv_path = args.out / "correlation.csv"
    reporting.write_csv(
        csv_path,
        reporting.CORRELATION_SCHEMA,
        reporting.CORRELATION_HEADER,
        rows,
        h,
        args.seed,
    )
    dats = [r[3] for r in rows]
    daris = [r[4] for r in rows]
    if len(rows) > 1 and len(set(dats)) > 1 and len(set(daris)) > 1:
        rho, pvalue = scipy_stats.spearmanr(dats, daris)
    else:
        rho, pvalue = float("nan"), float("nan")
    summary = {
        "schema": "correlation-summary-v1",
        "config": cfg,
        "config_hash": h,
        "spearman_rho": rho,
        "spearman_p": pvalue,
    }
    summary_path = args.out / "correlation_summary.json"
    summary_path.write_text(json.dumps(summary, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {csv_path} ({len(rows)} rows); spearman rho={rho:.4f} p={pvalue:.3g}")
    return EXIT_OK


_ATTACK_DEFAULTS = {
    "method": "ucd",
    "detector": "lou",
    "seed": 0,
    "population_size": 30,
    "crossover_rate": 0.5,
    "mutation_rate": 0.8,
    "iterations": 500,
    "budget": None,
}


def _load_config_file(path: Path) -> dict:
    """Parse a 'key = value' file ('#' comments allowed)."""
    out = {}
    casts = {
        "seed": int,
        "population_size": int,
        "iterations": int,
        "budget": int,
        "crossover_rate": float,
        "mutation_rate": float,
    }
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in _ATTACK_DEFAULTS:
            raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
        try:
            out[key] = casts.get(key, str)(value)
        except ValueError:
            raise ConfigError(f"{path}:{line_no}: bad value for {key}: {value!r}") from None
    return out


def _cmd_attack(args) -> int:
    file_cfg = _load_config_file(args.config) if args.config else {}

    def setting(name):
        flag = getattr(args, name)
        if flag is not None:
            return flag
        if name in file_cfg:
            return file_cfg[name]
        return _ATTACK_DEFAULTS[name]

    g, descriptor = _resolve_graph(args)
    method = setting("method")
    if method not in METHODS:
        raise ConfigError(f"method must be one of {METHODS}, got {method!r}")
    budget = setting("budget")
    budget_rule = "explicit"
    if budget is None:
        budget = default_budget(g.edge_count)
        budget_rule = "round-half-even(0.2*edge_count)"

    cfg = {
        "command": "attack",
        "graph": descriptor,
        "method": method,
        "detector": setting("detector"),
        "seed": setting("seed"),
        "population_size": setting("population_size"),
        "crossover_rate": setting("crossover_rate"),
        "mutation_rate": setting("mutation_rate"),
        "budget": budget,
        "iterations": setting("iterations"),
    }

    args.out.mkdir(parents=True, exist_ok=True)
    if method == "gaq":
        result = run_gaq(
            g,
            cfg["detector"],
            budget,
            population_size=cfg["population_size"],
            crossover_rate=cfg["crossover_rate"],
            mutation_rate=cfg["mutation_rate"],
            max_iterations=cfg["iterations"],
            seed=cfg["seed"],
        )
        detected = run_detector(
            result.best_graph, cfg["detector"], derived_seed(cfg["seed"], 13)
        )
        point = {
            "dari": dari(result.ground_truth, detected),
            "dat": dat(g, result.best_graph, budget),
        }
        manifest = reporting.build_gaq_manifest(cfg, result, point)
        manifest["metadata"]["budget_rule"] = budget_rule
        reporting.write_manifest(args.out / "manifest.json", manifest)
        reporting.write_csv(
            args.out / "trace.csv",
            "gaq-trace-v1",
            "iteration,best_fitness",
            list(enumerate(result.trace)),
            manifest["config_hash"],
            cfg["seed"],
        )
        print(
            f"gaq done: best modularity decrease {result.best_fitness:.4f}; "
            f"wrote {args.out / 'manifest.json'}"
        )
        return EXIT_OK

    attack_config = AttackConfig(
        budget=budget,
        population_size=cfg["population_size"],
        crossover_rate=cfg["crossover_rate"],
        mutation_rate=cfg["mutation_rate"],
        max_iterations=cfg["iterations"],
        bias=_METHOD_BIAS.get(method, "uniform"),
        detector=cfg["detector"],
        seed=cfg["seed"],
    )
    result = random_search(g, attack_config) if method == "random" else run_attack(
        g, attack_config
    )
    manifest = reporting.build_attack_manifest(cfg, result)
    manifest["metadata"]["budget_rule"] = budget_rule
    reporting.write_manifest(args.out / "manifest.json", manifest)
    reporting.write_attack_csvs(args.out, manifest)
    print(
        f"{method} done: hypervolume {result.archive.hypervolume():.4f}, "
        f"diversity {result.archive.diversity()}; wrote {args.out / 'manifest.json'}"
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    manifest = json.loads(args.manifest.read_text(encoding="utf-8"))
    if manifest.get("schema") != reporting.MANIFEST_SCHEMA:
        raise GraphError(f"not an attack manifest: {args.manifest}")
    args.out.mkdir(parents=True, exist_ok=True)
    written = []
    if "archive" in manifest:
        written = reporting.write_attack_csvs(args.out, manifest)
    elif "result" in manifest:
        path = args.out / "trace.csv"
        reporting.write_csv(
            path,
            "gaq-trace-v1",
            "iteration,best_fitness",
            [(s["iteration"], s["best_fitness"]) for s in manifest["iterations"]],
            manifest["config_hash"],
            manifest["config"].get("seed", 0),
        )
        written = [path]
    summary_path = args.out / "summary.txt"
    lines = [f"config_hash: {manifest['config_hash']}"]
    for key, value in sorted(manifest["config"].items()):
        lines.append(f"{key}: {value}")
    for key, value in sorted(manifest.get("summary", {}).items()):
        lines.append(f"{key}: {value}")
    summary_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    written.append(summary_path)
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
