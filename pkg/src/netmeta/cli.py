"""``netmeta`` command-line entry point.

Every subcommand exits 0 on success and 2 on any error, printing a one-line
diagnostic to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import NetmetaError
from .evolution import ego_delta
from .ingest import DEFAULT_RESERVED, PROFILES, ReservedSet, ingest_files
from .metrics import DEFAULT_THRESHOLD, SCOPES, detect_mutations, node_trajectory
from .pipeline import (
    analyse,
    census_csv,
    compute_deltas,
    deltas_csv,
    json_text,
    load_manifest,
    run_metadata,
    run_pipeline,
    write_bundle,
    write_series,
)
from .synth import SynthConfig, generate

log = logging.getLogger("netmeta")


def _threshold(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("threshold must lie strictly between 0 and 1")
    return value


def _load(args):
    manifest = load_manifest(args.series)
    return manifest, manifest.load_series()


def _reserved(path):
    if path is None:
        return ReservedSet(DEFAULT_RESERVED)
    ranges = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        lo, _, hi = line.partition("-")
        ranges.append((int(lo), int(hi or lo)))
    return ReservedSet(ranges)


# -- subcommands -------------------------------------------------------------------


def cmd_ingest(args):
    series, report = ingest_files(
        args.files, fmt=args.format, profile=args.profile, reserved=_reserved(args.reserved)
    )
    manifest = write_series(series, args.out)
    counters = report.counters()
    counters["warnings"] = report.warnings
    (Path(args.out) / "ingest-report.json").write_text(json_text(counters), encoding="utf-8", newline="\n")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(manifest)


def cmd_classify(args):
    _, series = _load(args)
    write_bundle({"deltas.csv": deltas_csv(compute_deltas(series))}, args.out)


def cmd_census(args):
    _, series = _load(args)
    result = analyse(series)
    static_m3 = {i: s["m3"] for i, s in result.stats.items()}
    write_bundle({"census.csv": census_csv(result.tables, static_m3)}, args.out)


def cmd_metrics(args):
    _, series = _load(args)
    files = analyse(series, args.scope, args.threshold).files()
    write_bundle({k: files[k] for k in ("metrics.csv", "mutations.json", "fits.json")}, args.out)


def cmd_mutations(args):
    _, series = _load(args)
    result = analyse(series, "all", args.threshold)
    events = detect_mutations(
        result.rates, args.threshold, {i: s["entropy"] for i, s in result.stats.items()}
    )
    text = json_text([e.to_dict() for e in events])
    write_bundle({"mutations.json": text}, args.out)
    sys.stdout.write(text)


def cmd_trajectory(args):
    _, series = _load(args)
    traj = node_trajectory(series, args.node)
    stamps = {g.index: g.timestamp for g in series}
    print("index,timestamp,degree")
    for index, degree in traj.points:
        print(f"{index},{stamps[index]},{'absent' if degree is None else degree}")
    print(f"# first_seen={traj.first_seen} last_seen={traj.last_seen}", file=sys.stderr)


def cmd_ego(args):
    _, series = _load(args)
    g_i, g_j = series.by_index(args.from_index), series.by_index(args.to_index)
    delta = ego_delta(g_i, g_j, args.node)
    for edge, label in delta.labeled_edges():
        print(f"{edge.lo} {edge.hi} {label}")


def cmd_synth(args):
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.seed is not None:
        data["seed"] = args.seed
    config = SynthConfig.from_dict(data)
    series, truth = generate(config)
    manifest = write_series(series, args.out)
    (Path(args.out) / "truth.json").write_text(truth.to_json(), encoding="utf-8", newline="\n")
    print(manifest)


def cmd_run(args):
    written = run_pipeline(args.series, args.out, args.scope, args.threshold)
    for path in written:
        print(path)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="netmeta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"netmeta {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def series_cmd(name, help_text, out_default="."):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--series", required=True, help="series manifest (series.json)")
        if out_default is not None:
            sp.add_argument("--out", default=out_default, help="output directory")
        return sp

    sp = sub.add_parser("ingest", help="build monthly snapshots from edge lists or BGP AS_PATH text")
    sp.add_argument("--format", choices=("edgelist", "aspath"), default="edgelist")
    sp.add_argument("--profile", choices=sorted(PROFILES), default="path-per-line")
    sp.add_argument("--window", choices=("month",), default="month")
    sp.add_argument("--reserved", help="file of reserved ASN ranges ('lo-hi' per line)")
    sp.add_argument("--out", required=True)
    sp.add_argument("files", nargs="+", help="input files; the date is read from each file name")
    sp.set_defaults(func=cmd_ingest)

    series_cmd("classify", "steady/born/dead decomposition -> deltas.csv").set_defaults(func=cmd_classify)
    series_cmd("census", "M1/M2/M3 census of each edge class -> census.csv").set_defaults(func=cmd_census)

    thr_help = "M3 rate threshold; a rate fires only when strictly greater (default 0.03)"
    sp = series_cmd("metrics", "metrics.csv, mutations.json and fits.json")
    sp.add_argument("--scope", choices=SCOPES, default="all")
    sp.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD, help=thr_help)
    sp.set_defaults(func=cmd_metrics)

    sp = series_cmd("mutations", "M3 mutation events -> mutations.json")
    sp.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD, help=thr_help)
    sp.set_defaults(func=cmd_mutations)

    sp = series_cmd("trajectory", "degree of one node across the series", out_default=None)
    sp.add_argument("--node", type=int, required=True)
    sp.set_defaults(func=cmd_trajectory)

    sp = series_cmd("ego", "labelled edges of a node's ego network between two snapshots", out_default=None)
    sp.add_argument("--node", type=int, required=True)
    sp.add_argument("--from", dest="from_index", type=int, required=True)
    sp.add_argument("--to", dest="to_index", type=int, required=True)
    sp.set_defaults(func=cmd_ego)

    sp = sub.add_parser("synth", help="generate a seeded synthetic series with ground truth")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--config", help="JSON file of SynthConfig fields")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_synth)

    sp = series_cmd("run", "full pipeline: every report plus run-metadata.json")
    sp.add_argument("--scope", choices=SCOPES, default="all")
    sp.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD, help=thr_help)
    sp.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except (NetmetaError, OSError, ValueError, KeyError) as exc:
        print(f"netmeta {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
