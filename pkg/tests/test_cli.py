import csv
import io
import json

import pytest

from netmeta.cli import main
from netmeta.errors import ManifestError
from netmeta.graph import SnapshotSeries, build_snapshot
from netmeta.pipeline import (
    BUNDLE_FILES,
    csv_text,
    fmt_number,
    json_text,
    load_manifest,
    run_pipeline,
    write_series,
)
from netmeta.synth import SynthConfig, generate

from conftest import FIXTURES


def read_csv(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


@pytest.fixture(scope="module")
def synth_bundle(tmp_path_factory):
    root = tmp_path_factory.mktemp("synth42")
    assert main(["synth", "--seed", "42", "--out", str(root / "series")]) == 0
    assert main(["run", "--series", str(root / "series" / "series.json"), "--out", str(root / "out")]) == 0
    return root


def test_run_writes_full_bundle(synth_bundle):
    names = {p.name for p in (synth_bundle / "out").iterdir()}
    assert names == set(BUNDLE_FILES) | {"run-metadata.json"}
    assert len(read_csv(synth_bundle / "out" / "deltas.csv")) == 12


def test_census_m1_matches_deltas(synth_bundle):
    deltas = read_csv(synth_bundle / "out" / "deltas.csv")
    census = read_csv(synth_bundle / "out" / "census.csv")
    assert len(deltas) == len(census) == 12
    for d, c in zip(deltas, census):
        assert (d["from"], d["to"]) == (c["from"], c["to"])
        for side, prefix in (("birth", "e_born"), ("death", "e_dead")):
            for cls in ("inner", "boundary", "outer"):
                assert c[f"{side}_{cls}_m1"] == d[f"{prefix}_{cls}"]
        assert c["birth_boundary_m3"] == c["death_boundary_m3"] == "0"


def test_metrics_columns(synth_bundle):
    rows = read_csv(synth_bundle / "out" / "metrics.csv")
    assert len({r["r"] for r in rows}) == 1
    r = float(rows[0]["r"])
    assert r == pytest.approx(sum(float(x["r_term"]) for x in rows) / len(rows), rel=1e-12)
    fits = json.loads((synth_bundle / "out" / "fits.json").read_text())
    assert set(fits) == {"born_inner", "dead_inner"}


def test_metadata_digests(synth_bundle):
    meta = json.loads((synth_bundle / "out" / "run-metadata.json").read_text())
    assert meta["tool"] == "netmeta"
    assert [e["index"] for e in meta["inputs"]] == list(range(1, 14))
    assert all(len(e["sha256"]) == 64 for e in meta["inputs"])


def test_identical_snapshots(tmp_path):
    g = build_snapshot([(1, 2), (2, 3), (1, 3), (3, 4)])
    series = SnapshotSeries((g.with_index(1, "200101"), g.with_index(2, "200102")), window=1)
    manifest = write_series(series, tmp_path / "s")
    run_pipeline(manifest, tmp_path / "out")
    assert (tmp_path / "out" / "mutations.json").read_text() == "[]\n"
    row = read_csv(tmp_path / "out" / "metrics.csv")[0]
    assert float(row["r"]) == 0.0
    assert row["m3_birth_rate"] == row["m3_death_rate"] == "0"


def test_missing_snapshot_file(tmp_path, capsys):
    series, _ = generate(SynthConfig(seed=1, steps=3))
    manifest = write_series(series, tmp_path / "s")
    (tmp_path / "s" / "199802.txt").unlink()
    with pytest.raises(ManifestError, match="199802.txt"):
        load_manifest(manifest)
    assert main(["run", "--series", str(manifest), "--out", str(tmp_path / "out")]) == 2
    assert "199802.txt" in capsys.readouterr().err
    assert not (tmp_path / "out").exists() or not any((tmp_path / "out").iterdir())


def test_bad_manifest_json(tmp_path):
    (tmp_path / "series.json").write_text("{not json")
    assert main(["classify", "--series", str(tmp_path / "series.json"), "--out", str(tmp_path)]) == 2


def test_classify_census_metrics_mutations(synth_bundle, tmp_path, capsys):
    manifest = str(synth_bundle / "series" / "series.json")
    for cmd in ("classify", "census", "metrics", "mutations"):
        assert main([cmd, "--series", manifest, "--out", str(tmp_path)]) == 0
    for name in BUNDLE_FILES:
        assert (tmp_path / name).read_bytes() == (synth_bundle / "out" / name).read_bytes()
    assert json.loads(capsys.readouterr().out) == json.loads((tmp_path / "mutations.json").read_text())


def test_threshold_range(synth_bundle):
    manifest = str(synth_bundle / "series" / "series.json")
    with pytest.raises(SystemExit):
        main(["mutations", "--series", manifest, "--threshold", "1.5"])


def test_trajectory_and_ego(synth_bundle, capsys):
    manifest = str(synth_bundle / "series" / "series.json")
    assert main(["trajectory", "--series", manifest, "--node", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "index,timestamp,degree" and len(lines) == 14
    assert main(["ego", "--series", manifest, "--node", "1", "--from", "1", "--to", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out and all(line.split()[2] in ("steady", "born", "dead") for line in out)
    assert main(["trajectory", "--series", manifest, "--node", "999999"]) == 2
    assert main(["ego", "--series", manifest, "--node", "999999", "--from", "1", "--to", "2"]) == 2


def test_ingest_command(tmp_path):
    assert main(["ingest", "--format", "aspath", "--out", str(tmp_path), str(FIXTURES / "aspath-19980115.txt")]) == 0
    report = json.loads((tmp_path / "ingest-report.json").read_text())
    assert report["paths_read"] == 11 and report["edges_emitted"] == 7 and report["warnings"] == []
    assert (tmp_path / "199801.txt").read_bytes() == (FIXTURES / "aspath-expected-199801.txt").read_bytes()
    assert load_manifest(tmp_path / "series.json").load_series()[0].timestamp == "199801"


def test_ingest_reserved_file(tmp_path):
    (tmp_path / "reserved.txt").write_text("# none but 701\n701\n")
    out = tmp_path / "out"
    assert main(["ingest", "--format", "aspath", "--reserved", str(tmp_path / "reserved.txt"),
                 "--out", str(out), str(FIXTURES / "aspath-19980115.txt")]) == 0
    assert "701" not in (out / "199801.txt").read_text().split()


def test_thread_count_does_not_change_output(synth_bundle, tmp_path, monkeypatch):
    monkeypatch.setenv("NETMETA_THREADS", "2")
    run_pipeline(synth_bundle / "series" / "series.json", tmp_path)
    for name in BUNDLE_FILES:
        assert (tmp_path / name).read_bytes() == (synth_bundle / "out" / name).read_bytes()


def test_bad_thread_env(synth_bundle, tmp_path, monkeypatch):
    monkeypatch.setenv("NETMETA_THREADS", "many")
    assert main(["run", "--series", str(synth_bundle / "series" / "series.json"), "--out", str(tmp_path)]) == 2


def test_number_formatting():
    assert fmt_number(None) == "nan"
    assert fmt_number(3) == "3"
    assert fmt_number(0.1) == "0.10000000000000001"
    assert csv_text(["a", "b"], [[1, 0.5]]) == "a,b\n1,0.5\n"
    assert json_text({"x": float("nan"), "y": [1, 2.5]}) == '{\n  "x": null,\n  "y": [\n    1,\n    2.5\n  ]\n}\n'
