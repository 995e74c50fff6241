"""Series manifests, report writers and the end-to-end pipeline.

A manifest is a JSON file::

    {"window": "month",
     "snapshots": [{"index": 1, "timestamp": "199801", "path": "199801.txt"}, ...]}

Paths are resolved against the manifest's directory. Data files carry no
timestamps and print floats with 17 significant digits, so two runs over
the same inputs produce identical bytes; only ``run-metadata.json``
records wall-clock time.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import shutil
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import EmptyGraph, InsufficientPoints, ManifestError, NetmetaError, SeriesError, TailTooSmall
from .evolution import classify_pair
from .graph import SnapshotSeries, format_snapshot, read_snapshot
from .metrics import (
    DEFAULT_THRESHOLD,
    SCOPES,
    detect_mutations,
    exp_trend_fit,
    metabolism_rate,
    metabolism_terms,
    powerlaw_fit,
    structure_entropy,
)
from .motifs import census_columns, delta_census, m3_rates, triangle_count

log = logging.getLogger(__name__)

MANIFEST_NAME = "series.json"
DELTA_COLUMNS = [
    "from", "to", "n_steady", "n_born", "n_dead",
    "e_dead_outer", "e_dead_boundary", "e_dead_inner",
    "e_born_outer", "e_born_boundary", "e_born_inner",
]
METRIC_COLUMNS = [
    "from", "to",
    "e_born_inner", "e_born_boundary", "e_born_outer",
    "e_dead_inner", "e_dead_boundary", "e_dead_outer",
    "r_term", "r", "m3_birth_rate", "m3_death_rate",
    "n_nodes_from", "n_edges_from", "gamma_from", "entropy_from",
    "n_nodes_to", "n_edges_to", "gamma_to", "entropy_to",
]
BUNDLE_FILES = ("deltas.csv", "census.csv", "metrics.csv", "mutations.json", "fits.json")


# -- serialisation -------------------------------------------------------------------


def fmt_number(x) -> str:
    if x is None:
        return "nan"
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def csv_text(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        if len(row) != len(columns):
            raise ValueError("row length does not match header")
        lines.append(",".join(fmt_number(v) if not isinstance(v, str) else v for v in row))
    return "\n".join(lines) + "\n"


def json_text(obj, indent: int = 2) -> str:
    """JSON with floats at 17 significant digits and non-finite floats as null."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None or isinstance(o, bool):
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return format(o, ".17g") if math.isfinite(o) else "null"
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            items = [pad + enc(v, level + 1) for v in o]
            return "[\n" + ",\n".join(items) + "\n" + end + "]"
        if hasattr(o, "item"):
            return enc(o.item(), level)
        raise TypeError(f"cannot serialise {type(o).__name__}")

    return enc(obj, 0) + "\n"


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="\n")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


# -- manifests ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ManifestEntry:
    index: int
    timestamp: str
    path: Path


@dataclass(frozen=True)
class SeriesManifest:
    entries: tuple
    window: str | None = "month"
    base: Path = field(default=Path("."))

    def load_series(self) -> SnapshotSeries:
        snaps = []
        for e in self.entries:
            try:
                snaps.append(read_snapshot(e.path, index=e.index, timestamp=e.timestamp))
            except NetmetaError as exc:
                raise ManifestError(f"{e.path}: {exc}") from exc
        try:
            return SnapshotSeries(tuple(snaps), window=1 if self.window == "month" else None)
        except SeriesError as exc:
            raise ManifestError(str(exc)) from exc


def load_manifest(path) -> SeriesManifest:
    """Parse and validate a manifest; every referenced file must exist."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ManifestError(f"manifest not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON ({exc})") from None
    window = data.get("window", "month")
    if window not in ("month", None):
        raise ManifestError(f"{path}: unsupported window {window!r}")
    raw = data.get("snapshots")
    if not isinstance(raw, list) or not raw:
        raise ManifestError(f"{path}: 'snapshots' must be a non-empty list")
    entries = []
    prev_ts = None
    for k, item in enumerate(raw, start=1):
        try:
            index, ts, rel = int(item["index"]), str(item["timestamp"]), item["path"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"{path}: entry {k} is malformed ({exc})") from None
        if index != k:
            raise ManifestError(f"{path}: indices must run 1, 2, ...; entry {k} has {index}")
        if prev_ts is not None and not ts > prev_ts:
            raise ManifestError(f"{path}: timestamps not increasing at {ts}")
        prev_ts = ts
        file = (path.parent / rel)
        if not file.is_file():
            raise ManifestError(f"snapshot file does not exist: {file}")
        entries.append(ManifestEntry(index, ts, file))
    return SeriesManifest(tuple(entries), window, path.parent)


def write_series(series: SnapshotSeries, out_dir, header=()) -> Path:
    """Write one canonical file per snapshot plus ``series.json``; return the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for g in series:
        name = f"{g.timestamp}.txt" if g.timestamp else f"snapshot-{g.index:04d}.txt"
        _write(out / name, format_snapshot(g, [f"snapshot {g.index} {g.timestamp or ''}".rstrip(), *header]))
        entries.append({"index": g.index, "timestamp": g.timestamp, "path": name})
    manifest = out / MANIFEST_NAME
    _write(manifest, json_text({"window": "month" if series.window == 1 else None, "snapshots": entries}))
    return manifest


# -- parallel map ------------------------------------------------------------------------


def thread_count() -> int:
    """Worker cap from ``NETMETA_THREADS``: unset means 1, 0 means one per CPU."""
    raw = os.environ.get("NETMETA_THREADS", "1").strip() or "1"
    try:
        n = int(raw)
    except ValueError:
        raise NetmetaError(f"NETMETA_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise NetmetaError("NETMETA_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def pmap(fn, items, workers: int | None = None):
    items = list(items)
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as ex:
        return list(ex.map(fn, items))


def _classify(pair):
    return classify_pair(*pair)


def _snapshot_stats(g):
    try:
        entropy = structure_entropy(g)
    except EmptyGraph:
        entropy = None
    degrees = {u: len(vs) for u, vs in g.adjacency.items()}
    try:
        gamma = powerlaw_fit(degrees).gamma
    except TailTooSmall:
        gamma = None
    return {
        "n_nodes": len(g.nodes),
        "n_edges": len(g.edges),
        "m3": triangle_count(g),
        "entropy": entropy,
        "gamma": gamma,
    }


# -- analysis stages -----------------------------------------------------------------------


def compute_deltas(series: SnapshotSeries):
    if len(series) < 2:
        raise InsufficientPoints("a series needs at least two snapshots")
    return pmap(_classify, series.pairs())


def deltas_csv(deltas) -> str:
    rows = [[d.from_index, d.to_index, *d.counts().values()] for d in deltas]
    return csv_text(DELTA_COLUMNS, rows)


def census_csv(tables, static_m3) -> str:
    cols = ["from", "to", *census_columns(), "static_m3_from", "static_m3_to"]
    rows = [
        [t.from_index, t.to_index, *t.row(), static_m3[t.from_index], static_m3[t.to_index]]
        for t in tables
    ]
    return csv_text(cols, rows)


def _fit_or_none(ys):
    try:
        fit = exp_trend_fit(list(range(1, len(ys) + 1)), ys)
    except InsufficientPoints:
        return None
    return {
        "a": fit.a, "b": fit.b, "c": fit.c, "sse": fit.sse,
        "x": "pair_index", "x_min": fit.x_min, "x_max": fit.x_max,
        "degenerate": fit.degenerate, "n_points": len(ys),
    }


@dataclass
class Analysis:
    series: SnapshotSeries
    deltas: list
    tables: list
    stats: dict
    rates: list
    r: float
    r_terms: list
    mutations: list
    fits: dict
    scope: str
    threshold: float

    def files(self) -> dict[str, str]:
        """Bundle file name -> text."""
        static_m3 = {i: s["m3"] for i, s in self.stats.items()}
        rows = []
        for d, rate, term in zip(self.deltas, self.rates, self.r_terms):
            a, b = self.stats[d.from_index], self.stats[d.to_index]
            rows.append([
                d.from_index, d.to_index,
                len(d.born_inner), len(d.born_boundary), len(d.born_outer),
                len(d.dead_inner), len(d.dead_boundary), len(d.dead_outer),
                term, self.r, rate.birth_rate, rate.death_rate,
                a["n_nodes"], a["n_edges"], a["gamma"], a["entropy"],
                b["n_nodes"], b["n_edges"], b["gamma"], b["entropy"],
            ])
        return {
            "deltas.csv": deltas_csv(self.deltas),
            "census.csv": census_csv(self.tables, static_m3),
            "metrics.csv": csv_text(METRIC_COLUMNS, rows),
            "mutations.json": json_text([m.to_dict() for m in self.mutations]),
            "fits.json": json_text(self.fits),
        }


def analyse(series: SnapshotSeries, scope: str = "all", threshold: float = DEFAULT_THRESHOLD) -> Analysis:
    """Run every analysis stage over consecutive pairs of ``series``."""
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    deltas = compute_deltas(series)
    tables = pmap(delta_census, deltas)
    stats = dict(zip((g.index for g in series), pmap(_snapshot_stats, series.snapshots)))
    rates = m3_rates(series, tables, {i: s["m3"] for i, s in stats.items()})
    terms = metabolism_terms(series, deltas, scope)
    r = metabolism_rate(series, deltas, scope)
    entropies = {i: s["entropy"] for i, s in stats.items()}
    mutations = detect_mutations(rates, threshold, entropies)
    fits = {
        "born_inner": _fit_or_none([len(d.born_inner) for d in deltas]),
        "dead_inner": _fit_or_none([len(d.dead_inner) for d in deltas]),
    }
    return Analysis(series, deltas, tables, stats, rates, r, terms, mutations, fits, scope, threshold)


def write_bundle(files: dict[str, str], out_dir, metadata: dict | None = None) -> list[Path]:
    """Write all files or none: stage in a temp dir, then move into place."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stage = Path(tempfile.mkdtemp(prefix=".netmeta-", dir=out))
    written = []
    try:
        all_files = dict(files)
        if metadata is not None:
            all_files["run-metadata.json"] = json_text(metadata)
        for name, text in all_files.items():
            _write(stage / name, text)
        for name in all_files:
            os.replace(stage / name, out / name)
            written.append(out / name)
    finally:
        shutil.rmtree(stage, ignore_errors=True)
    return written


def run_metadata(manifest: SeriesManifest, options: dict) -> dict:
    return {
        "tool": "netmeta",
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "options": options,
        "inputs": [
            {
                "index": e.index,
                "timestamp": e.timestamp,
                "path": os.path.relpath(e.path, manifest.base),
                "sha256": sha256_file(e.path),
            }
            for e in manifest.entries
        ],
    }


def run_pipeline(manifest, out_dir, scope: str = "all", threshold: float = DEFAULT_THRESHOLD) -> list[Path]:
    """Full bundle for a manifest (path or :class:`SeriesManifest`).

    Nothing is written unless every stage succeeds.
    """
    if not isinstance(manifest, SeriesManifest):
        manifest = load_manifest(manifest)
    series = manifest.load_series()
    result = analyse(series, scope, threshold)
    options = {
        "scope": scope,
        "threshold": threshold,
        "window": manifest.window,
        "threads": thread_count(),
    }
    return write_bundle(result.files(), out_dir, run_metadata(manifest, options))

