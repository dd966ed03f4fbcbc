import json

import pytest

from commhide.cli import main
from commhide.datasets import dataset_path


def _non_comment_lines(path):
    return [
        line
        for line in path.read_text().splitlines()
        if line.strip() and not line.startswith("#")
    ]


def _csv_rows(path):
    lines = _non_comment_lines(path)
    return lines[0], [line.split(",") for line in lines[1:]]


# ---------------------------------------------------------------------------
# generate


def test_generate_two_triangles(tmp_path):
    rc = main(
        ["generate", "--sizes", "3,3", "--out", str(tmp_path), "--name", "tiny"]
    )
    assert rc == 0
    edge_path = tmp_path / "tiny.edgelist"
    assert len(_non_comment_lines(edge_path)) == 7
    planted = json.loads((tmp_path / "tiny.planted.json").read_text())
    assert planted["labels"] == [0, 0, 0, 1, 1, 1]
    assert "config_hash" in planted


def test_generate_benchmark_quality(tmp_path):
    rc = main(
        [
            "generate",
            "--sizes",
            "100,50,25,15,10",
            "--out",
            str(tmp_path),
            "--name",
            "bench",
        ]
    )
    assert rc == 0
    from commhide import Partition, load_edge_list_path, modularity

    g = load_edge_list_path(tmp_path / "bench.edgelist")
    labels = json.loads((tmp_path / "bench.planted.json").read_text())["labels"]
    assert modularity(g, Partition(tuple(labels))) == pytest.approx(0.4051, abs=1e-4)


def test_generate_empty_sizes_is_config_error(tmp_path):
    assert main(["generate", "--sizes", "", "--out", str(tmp_path)]) == 2


def test_generate_usage_error_without_sizes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--out", str(tmp_path)])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# table1


def test_table1_csv(tmp_path):
    assert main(["table1", "--out", str(tmp_path)]) == 0
    header, rows = _csv_rows(tmp_path / "table1.csv")
    assert header == "operation,n,sizes,modularity,ari"
    assert len(rows) == 14
    by_key = {(r[1], r[0]): r for r in rows}
    assert by_key[("200", "original")][4] == ""  # ari blank on original rows
    assert float(by_key[("200", "merge-large")][3]) == pytest.approx(0.0753, abs=1e-4)
    assert float(by_key[("200", "merge-large")][4]) == pytest.approx(0.5123, abs=1e-4)
    first = (tmp_path / "table1.csv").read_text().splitlines()[0]
    assert first.startswith("# schema=adjustment-study-v1 config_hash=")


# ---------------------------------------------------------------------------
# detect


def test_detect_writes_partition(tmp_path, karate):
    out = tmp_path / "partition.json"
    rc = main(
        [
            "detect",
            "--dataset",
            "karate",
            "--method",
            "lou",
            "--seed",
            "3",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == "partition-v1"
    assert len(payload["labels"]) == 34
    assert payload["num_communities"] == len(set(payload["labels"]))
    assert "config_hash" in payload and payload["seed"] == 3


def test_detect_deterministic(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        main(["detect", "--dataset", "karate", "--seed", "5", "--out", str(out)])
        outs.append(out.read_text())
    assert outs[0] == outs[1]


def test_detect_missing_graph_is_data_error(tmp_path):
    rc = main(["detect", "--graph", str(tmp_path / "nope.edgelist")])
    assert rc == 3


def test_detect_parse_error_is_data_error(tmp_path):
    bad = tmp_path / "bad.edgelist"
    bad.write_text("0 1\nfoo bar\n")
    assert main(["detect", "--graph", str(bad)]) == 3


# ---------------------------------------------------------------------------
# correlate


def test_correlate_small(tmp_path):
    rc = main(
        [
            "correlate",
            "--dataset",
            "karate",
            "--method",
            "lpa",
            "--samples",
            "40",
            "--seed",
            "1",
            "--out",
            str(tmp_path),
        ]
    )
    assert rc == 0
    header, rows = _csv_rows(tmp_path / "correlation.csv")
    assert header == "sample,num_moves,attack_size,dat,dari"
    assert len(rows) == 40
    for row in rows:
        assert 0.0 <= float(row[3]) <= 1.0
        assert float(row[4]) >= 0.0
        assert int(row[2]) <= 16
    summary = json.loads((tmp_path / "correlation_summary.json").read_text())
    assert "spearman_rho" in summary


def test_correlate_single_sample(tmp_path):
    rc = main(
        [
            "correlate",
            "--dataset",
            "karate",
            "--samples",
            "1",
            "--out",
            str(tmp_path),
        ]
    )
    assert rc == 0
    _, rows = _csv_rows(tmp_path / "correlation.csv")
    assert len(rows) == 1
    assert 0.0 <= float(rows[0][3]) <= 1.0


def test_correlate_zero_samples_config_error(tmp_path):
    rc = main(
        ["correlate", "--dataset", "karate", "--samples", "0", "--out", str(tmp_path)]
    )
    assert rc == 2


# ---------------------------------------------------------------------------
# attack


def _attack(tmp_path, *extra):
    args = [
        "attack",
        "--dataset",
        "karate",
        "--detector",
        "lpa",
        "--seed",
        "2",
        "--population-size",
        "6",
        "--iterations",
        "4",
        "--out",
        str(tmp_path),
    ]
    args.extend(extra)
    return main(args)


def test_attack_ucd_outputs(tmp_path):
    assert _attack(tmp_path / "run") == 0
    out = tmp_path / "run"
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["schema"] == "attack-manifest-v1"
    assert len(manifest["iterations"]) == 4
    assert manifest["config"]["budget"] == 16
    assert manifest["metadata"]["budget_rule"] == "round-half-even(0.2*edge_count)"
    assert (out / "front.csv").exists()
    hv_header, hv_rows = _csv_rows(out / "hypervolume.csv")
    assert hv_header == "iteration,hypervolume,front_size,best_dari,best_dat"
    assert len(hv_rows) == 4
    mod_header, mod_rows = _csv_rows(out / "modularity.csv")
    assert mod_header == "iteration,q_left,q_center,q_right"
    assert len(mod_rows) == 4
    # every archived individual's moves replay into a wire-format list
    for entry in manifest["archive"]:
        for move in entry["moves"]:
            assert set(move) == {"remove", "add"}


def test_attack_reproducible_manifests(tmp_path):
    assert _attack(tmp_path / "a") == 0
    assert _attack(tmp_path / "b") == 0
    ma = json.loads((tmp_path / "a" / "manifest.json").read_text())
    mb = json.loads((tmp_path / "b" / "manifest.json").read_text())
    ma.pop("metadata")
    mb.pop("metadata")
    assert ma == mb
    # CSVs are byte-identical (no timestamps outside the manifest metadata)
    for name in ("front.csv", "hypervolume.csv", "modularity.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (
            tmp_path / "b" / name
        ).read_bytes()


def test_attack_variants_and_random(tmp_path):
    for method in ("ucd-min", "ucd-max", "random"):
        out = tmp_path / method
        assert _attack(out, "--method", method) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["method"] == method
        assert manifest["summary"]["diversity"] >= 1


def test_attack_gaq(tmp_path):
    out = tmp_path / "gaq"
    assert _attack(out, "--method", "gaq", "--budget", "6") == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["method"] == "gaq"
    assert "result" in manifest
    assert len(manifest["iterations"]) == 5  # initial + 4 generations
    trace = [s["best_fitness"] for s in manifest["iterations"]]
    assert all(b >= a - 1e-12 for a, b in zip(trace, trace[1:]))
    assert (out / "trace.csv").exists()


def test_attack_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# defaults for a quick run\n"
        "population_size = 6\n"
        "iterations = 3\n"
        "seed = 11\n"
        "detector = lpa\n"
    )
    out = tmp_path / "out"
    rc = main(
        [
            "attack",
            "--dataset",
            "karate",
            "--config",
            str(cfg),
            "--iterations",
            "2",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["population_size"] == 6  # from file
    assert manifest["config"]["iterations"] == 2  # flag overrides file
    assert manifest["config"]["seed"] == 11


def test_attack_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense_key = 5\n")
    rc = main(
        [
            "attack",
            "--dataset",
            "karate",
            "--config",
            str(cfg),
            "--out",
            str(tmp_path / "x"),
        ]
    )
    assert rc == 2


def test_attack_odd_population_config_error(tmp_path):
    rc = _attack(tmp_path / "odd", "--population-size", "5")
    assert rc == 2


# ---------------------------------------------------------------------------
# report


def test_report_reemits_csvs(tmp_path):
    run_dir = tmp_path / "run"
    assert _attack(run_dir) == 0
    report_dir = tmp_path / "report"
    rc = main(
        [
            "report",
            "--manifest",
            str(run_dir / "manifest.json"),
            "--out",
            str(report_dir),
        ]
    )
    assert rc == 0
    for name in ("front.csv", "hypervolume.csv", "modularity.csv"):
        assert (report_dir / name).read_bytes() == (run_dir / name).read_bytes()
    summary = (report_dir / "summary.txt").read_text()
    assert "config_hash" in summary


def test_report_rejects_non_manifest(tmp_path):
    bad = tmp_path / "not_manifest.json"
    bad.write_text(json.dumps({"schema": "other"}))
    rc = main(["report", "--manifest", str(bad), "--out", str(tmp_path / "r")])
    assert rc == 3


def test_dataset_paths_exist():
    assert dataset_path("karate").exists()
    assert dataset_path("lesmis").exists()
    with pytest.raises(FileNotFoundError):
        dataset_path("unknown-net")
