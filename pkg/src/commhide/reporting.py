"""Output plumbing: run manifests (JSON) and plot-ready CSV files.

Every output file embeds the run-configuration hash and seed. Manifests
are canonical JSON (sorted keys); the only non-reproducible content lives
under "metadata", so re-running a configuration reproduces everything else
byte-identically. CSV schemas are versioned via the first comment line.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from .baselines import GaqResult
from .moo import AttackResult

MANIFEST_SCHEMA = "attack-manifest-v1"
FRONT_SCHEMA = "pareto-front-v1"
HV_SCHEMA = "hv-trajectory-v1"
MODULARITY_SCHEMA = "modularity-trajectory-v1"
CORRELATION_SCHEMA = "dat-dari-correlation-v1"
ADJUSTMENT_SCHEMA = "adjustment-study-v1"
DETECT_SCHEMA = "partition-v1"

FRONT_HEADER = "dari,dat,num_moves"
HV_HEADER = "iteration,hypervolume,front_size,best_dari,best_dat"
MODULARITY_HEADER = "iteration,q_left,q_center,q_right"
CORRELATION_HEADER = "sample,num_moves,attack_size,dat,dari"
ADJUSTMENT_HEADER = "operation,n,sizes,modularity,ari"


def config_hash(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def stamp_line(schema: str, cfg_hash: str, seed: int) -> str:
    return f"# schema={schema} config_hash={cfg_hash} seed={seed}"


def write_csv(
    path: Path,
    schema: str,
    header: str,
    rows: Iterable[Sequence],
    cfg_hash: str,
    seed: int,
) -> None:
    lines = [stamp_line(schema, cfg_hash, seed), header]
    for row in rows:
        lines.append(",".join(_cell(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".10g")
    return str(x)


def build_attack_manifest(config: dict, result: AttackResult) -> dict:
    h = config_hash(config)
    return {
        "schema": MANIFEST_SCHEMA,
        "config": config,
        "config_hash": h,
        "metadata": {"created_utc": _now()},
        "ground_truth": result.ground_truth.to_json_array(),
        "iterations": [
            {
                "iteration": s.iteration,
                "hv": s.hypervolume,
                "front_size": s.front_size,
                "best_dari": s.best_dari,
                "best_dat": s.best_dat,
                "q_left": s.q_left,
                "q_center": s.q_center,
                "q_right": s.q_right,
            }
            for s in result.iterations
        ],
        "archive": [
            {
                "dari": point.dari,
                "dat": point.dat,
                "moves": [m.to_json() for m in ind.moves],
            }
            for point, ind in result.archive.sorted_by_dat()
        ],
        "final_front": [
            {
                "dari": ind.fitness.dari,
                "dat": ind.fitness.dat,
                "moves": [m.to_json() for m in ind.moves],
            }
            for ind in result.final_front
        ],
        "summary": {
            "hypervolume": result.archive.hypervolume(),
            "diversity": result.archive.diversity(),
            "evaluations": result.evaluations,
            "cache_hits": result.cache_hits,
        },
    }


def build_gaq_manifest(config: dict, result: GaqResult, point: dict) -> dict:
    h = config_hash(config)
    return {
        "schema": MANIFEST_SCHEMA,
        "config": config,
        "config_hash": h,
        "metadata": {"created_utc": _now()},
        "ground_truth": result.ground_truth.to_json_array(),
        "iterations": [
            {"iteration": i, "best_fitness": f} for i, f in enumerate(result.trace)
        ],
        "result": {
            "best_fitness": result.best_fitness,
            "clean_modularity": result.clean_modularity,
            "deletions": sorted(list(e) for e in result.best_genome.deletions),
            "additions": sorted(list(e) for e in result.best_genome.additions),
            "point": point,
        },
    }


def write_manifest(path: Path, manifest: dict) -> None:
    path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def manifest_without_metadata(manifest: dict) -> dict:
    return {k: v for k, v in manifest.items() if k != "metadata"}


def write_attack_csvs(out_dir: Path, manifest: dict) -> list[Path]:
    """Emit the plot-ready CSV files for an optimization-run manifest."""
    h = manifest["config_hash"]
    seed = manifest["config"].get("seed", 0)
    written = []

    front_path = out_dir / "front.csv"
    write_csv(
        front_path,
        FRONT_SCHEMA,
        FRONT_HEADER,
        [
            (entry["dari"], entry["dat"], len(entry["moves"]))
            for entry in manifest.get("archive", [])
        ],
        h,
        seed,
    )
    written.append(front_path)

    iterations = manifest.get("iterations", [])
    if iterations and "hv" in iterations[0]:
        hv_path = out_dir / "hypervolume.csv"
        write_csv(
            hv_path,
            HV_SCHEMA,
            HV_HEADER,
            [
                (
                    s["iteration"],
                    s["hv"],
                    s["front_size"],
                    s["best_dari"],
                    s["best_dat"],
                )
                for s in iterations
            ],
            h,
            seed,
        )
        written.append(hv_path)

        mod_path = out_dir / "modularity.csv"
        write_csv(
            mod_path,
            MODULARITY_SCHEMA,
            MODULARITY_HEADER,
            [
                (s["iteration"], s["q_left"], s["q_center"], s["q_right"])
                for s in iterations
            ],
            h,
            seed,
        )
        written.append(mod_path)
    return written


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()
