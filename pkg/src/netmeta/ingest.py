"""Edge-list and BGP AS_PATH ingestion with monthly aggregation.

Two input formats are understood:

* ``edgelist`` -- the canonical snapshot text (``u v`` lines, ``#`` comments,
  ``%iso <id>`` isolate lines), tolerant of duplicate and unordered pairs.
* ``aspath`` -- text renderings of BGP tables. A *profile* selects where the
  AS_PATH sits on each line: ``path-per-line`` treats the whole line as the
  path, ``show-ip-bgp`` reads the ``Path`` column of a ``show ip bgp`` table.

Binary MRT is not decoded; convert dumps to text first (e.g. ``bgpdump -m``
followed by ``cut -d'|' -f7``).
"""

from __future__ import annotations

import enum
import logging
import re
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError
from .graph import Edge, SnapshotSeries, build_snapshot, month_label, month_ordinal

log = logging.getLogger(__name__)

MAX_ASN = 4294967295

#: (first, last) inclusive ranges of AS numbers that never appear in real paths.
DEFAULT_RESERVED = (
    (0, 0),
    (23456, 23456),
    (64496, 64511),
    (64512, 65534),
    (65535, 65535),
    (65536, 65551),
    (4200000000, 4294967295),
)


class ReservedSet:
    """Membership test over inclusive ASN ranges."""

    def __init__(self, ranges=DEFAULT_RESERVED):
        self.ranges = tuple(sorted((int(a), int(b)) for a, b in ranges))
        for a, b in self.ranges:
            if a > b:
                raise ValueError(f"empty reserved range {a}-{b}")

    def __contains__(self, asn):
        return any(a <= asn <= b for a, b in self.ranges)

    def __repr__(self):
        return f"ReservedSet({self.ranges!r})"


DEFAULT_RESERVED_SET = ReservedSet()


class Rejection(enum.Enum):
    """Why an AS_PATH was discarded."""

    EMPTY = "empty"
    LOOP = "loop"
    RESERVED = "reserved"


@dataclass(frozen=True)
class AsPath:
    """A sanitised AS_PATH; ``hops[0]`` is the AS nearest the collector."""

    hops: tuple

    def __post_init__(self):
        if not self.hops:
            raise ValueError("AsPath must be non-empty")

    def __iter__(self):
        return iter(self.hops)

    def __len__(self):
        return len(self.hops)


@dataclass
class IngestReport:
    paths_read: int = 0
    paths_dropped_loop: int = 0
    paths_dropped_reserved: int = 0
    segments_dropped_asset: int = 0
    edges_emitted: int = 0
    warnings: list = field(default_factory=list)

    def counters(self) -> dict:
        d = asdict(self)
        d.pop("warnings")
        return d


# -- edge lists --------------------------------------------------------------


def _decode(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        return bytes(text).decode("utf-8")
    return text


def _parse_node(token: str, lineno: int, source) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise ParseError(lineno, f"non-integer token {token!r}", source) from None
    if value < 0:
        raise ParseError(lineno, f"negative node id {value}", source)
    return value


def parse_edgelist(text, source=None) -> tuple[list[tuple[int, int]], set[int]]:
    """Parse edge-list text into canonically ordered pairs and isolates.

    Duplicate pairs are kept (deduplication happens when the snapshot is
    built). Self-loops are passed through so that :func:`build_snapshot`
    can reject them with the offending node.
    """
    pairs: list[tuple[int, int]] = []
    isolates: set[int] = set()
    for lineno, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "%iso":
            if len(tokens) != 2:
                raise ParseError(lineno, "expected '%iso <id>'", source)
            isolates.add(_parse_node(tokens[1], lineno, source))
            continue
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected 2 tokens, got {len(tokens)}", source)
        u, v = (_parse_node(t, lineno, source) for t in tokens)
        pairs.append((u, v) if u <= v else (v, u))
    return pairs, isolates


# -- AS paths ------------------------------------------------------------------


_TOKEN_RE = re.compile(r"\{[^{}]*\}|[{}]|[^\s{}]+")


def _tokenize_path(raw) -> list:
    """Split a path into ASN strings and ``('set', [...])`` groups."""
    if isinstance(raw, str):
        text = raw
    else:
        text = " ".join(str(t) for t in raw)
    out = []
    for tok in _TOKEN_RE.findall(text):
        if tok.startswith("{") and tok.endswith("}") and len(tok) > 1:
            members = [m for m in re.split(r"[,\s]+", tok[1:-1]) if m]
            out.append(("set", members))
        elif tok in ("{", "}"):
            raise ParseError(0, f"unbalanced brace in AS_PATH {text!r}")
        else:
            out.append(tok)
    return out


def split_as_sets(raw) -> tuple[list[int], int]:
    """Return the AS_SEQUENCE hops before the first AS-SET and the number of sets dropped.

    Hops after an AS-SET are cut as well: joining the hops on either side of a
    dropped set would invent a link that was never announced.
    """
    hops: list[int] = []
    n_sets = 0
    for tok in _tokenize_path(raw):
        if isinstance(tok, tuple):
            n_sets += 1
            continue
        if n_sets:
            continue
        try:
            asn = int(tok, 10)
        except ValueError:
            raise ParseError(0, f"non-integer AS token {tok!r}") from None
        if not 0 <= asn <= MAX_ASN:
            raise ParseError(0, f"AS number {asn} out of range")
        hops.append(asn)
    return hops, n_sets


def _collapse_prepending(hops: Sequence[int]) -> list[int]:
    out: list[int] = []
    for asn in hops:
        if not out or out[-1] != asn:
            out.append(asn)
    return out


def check_hops(hops: Sequence[int], reserved=DEFAULT_RESERVED_SET) -> AsPath | Rejection:
    collapsed = _collapse_prepending(hops)
    if not collapsed:
        return Rejection.EMPTY
    if len(set(collapsed)) != len(collapsed):
        return Rejection.LOOP
    if any(asn in reserved for asn in collapsed):
        return Rejection.RESERVED
    return AsPath(tuple(collapsed))


def sanitize_aspath(raw, reserved=DEFAULT_RESERVED_SET) -> AsPath | Rejection:
    """Clean one AS_PATH or say why it is unusable.

    ``raw`` is a string or a token sequence (ints, strings, brace groups).
    AS-SET groups are dropped, prepending is collapsed, then the path is
    rejected as ``LOOP`` if any AS repeats and as ``RESERVED`` if any hop
    falls in ``reserved``. Prepending is collapsed first so it is never
    mistaken for a loop.

    >>> sanitize_aspath([701, 701, 1239, 7018])
    AsPath(hops=(701, 1239, 7018))
    >>> sanitize_aspath("701 1239 701")
    <Rejection.LOOP: 'loop'>
    """
    hops, _ = split_as_sets(raw)
    return check_hops(hops, reserved)


def paths_to_edges(paths: Iterable[AsPath]) -> list[tuple[int, int]]:
    """Adjacent hop pairs of every path, as a multiset (list) of canonical pairs."""
    out = []
    for path in paths:
        hops = path.hops
        for a, b in zip(hops, hops[1:]):
            out.append((a, b) if a < b else (b, a))
    return out


# -- BGP text profiles ---------------------------------------------------------


_ORIGIN_CODES = {"i", "e", "?"}
_SHOW_BGP_PATH_COLUMN = 61
# status code field of a route line, e.g. "*>", "* ", "s>", "*>i"
_ROUTE_LINE = re.compile(r"^[*sdhr][>*i= ]")


def _strip_origin(text: str) -> str:
    tokens = text.split()
    if tokens and tokens[-1] in _ORIGIN_CODES:
        tokens.pop()
    return " ".join(tokens)


def _paths_per_line(lines):
    for lineno, line in lines:
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        if "|" in text:
            # bgpdump -m style: the AS_PATH is the 7th field
            fields = text.split("|")
            if len(fields) < 7:
                raise ParseError(lineno, "too few '|' fields for a bgpdump record")
            text = fields[6]
        yield lineno, _strip_origin(text)


def _paths_show_ip_bgp(lines):
    column = _SHOW_BGP_PATH_COLUMN
    for lineno, line in lines:
        if "Network" in line and "Path" in line:
            column = line.index("Path")
            continue
        if not _ROUTE_LINE.match(line):
            continue
        if len(line) <= column:
            continue
        yield lineno, _strip_origin(line[column:])


PROFILES = {
    "path-per-line": _paths_per_line,
    "show-ip-bgp": _paths_show_ip_bgp,
}


def extract_paths(text, profile: str = "path-per-line", source=None):
    """Yield ``(line_number, raw_path_text)`` for every route line."""
    try:
        reader = PROFILES[profile]
    except KeyError:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}") from None
    lines = enumerate(_decode(text).splitlines(), start=1)
    try:
        yield from reader(lines)
    except ParseError as exc:
        raise ParseError(exc.line, exc.reason, source) from None


def aspath_edges(text, profile="path-per-line", reserved=DEFAULT_RESERVED_SET,
                 report: IngestReport | None = None, source=None) -> list[tuple[int, int]]:
    """Sanitise every path in a BGP text dump and return the witnessed links."""
    if report is None:
        report = IngestReport()
    kept = []
    for lineno, raw in extract_paths(text, profile, source):
        try:
            hops, n_sets = split_as_sets(raw)
        except ParseError as exc:
            raise ParseError(lineno, exc.reason, source) from None
        report.paths_read += 1
        report.segments_dropped_asset += n_sets
        result = check_hops(hops, reserved)
        if result is Rejection.LOOP:
            report.paths_dropped_loop += 1
        elif result is Rejection.RESERVED:
            report.paths_dropped_reserved += 1
        elif isinstance(result, AsPath):
            kept.append(result)
    return paths_to_edges(kept)


# -- monthly aggregation -----------------------------------------------------------


_DATE_IN_NAME = re.compile(r"(?<!\d)((?:19|20)\d{2})-?(0[1-9]|1[0-2])(?:-?(0[1-9]|[12]\d|3[01]))?(?!\d)")


def parse_date(value) -> date:
    """Accept ``date``/``datetime`` objects or ``YYYY-MM-DD``/``YYYYMMDD``/``YYYYMM`` strings."""
    if isinstance(value, datetime):
        return value.date()
    if isinstance(value, date):
        return value
    text = str(value).strip()
    for fmt in ("%Y-%m-%d", "%Y%m%d", "%Y-%m", "%Y%m"):
        try:
            return datetime.strptime(text, fmt).date()
        except ValueError:
            pass
    raise ValueError(f"unparseable date {value!r}")


def date_from_filename(path) -> date:
    m = _DATE_IN_NAME.search(Path(path).name)
    if m is None:
        raise ValueError(f"no YYYYMM[DD] date in file name {Path(path).name!r}")
    year, month, day = m.group(1), m.group(2), m.group(3) or "01"
    return date(int(year), int(month), int(day))


def aggregate_window(fragments, window="month", report: IngestReport | None = None) -> SnapshotSeries:
    """Union dated edge fragments into one snapshot per calendar month.

    ``fragments`` is an iterable of ``(date, pairs)`` or
    ``(date, pairs, isolates)``, in any order. Snapshots are indexed from 1
    in month order. Months with no data between populated ones are recorded
    as ``MissingMonth(YYYYMM)`` warnings on ``report``; the returned series
    then carries ``window=None`` since the spacing is no longer uniform.
    """
    if window not in ("month", 1):
        raise ValueError(f"only monthly windows are supported, got {window!r}")
    if report is None:
        report = IngestReport()
    buckets: dict[int, set] = defaultdict(set)
    isolated: dict[int, set] = defaultdict(set)
    for frag in fragments:
        when, pairs = frag[0], frag[1]
        key = month_ordinal(parse_date(when).strftime("%Y%m"))
        bucket = buckets[key]
        for u, v in pairs:
            bucket.add(Edge.of(u, v))
        if len(frag) > 2:
            isolated[key].update(frag[2])
    months = sorted(set(buckets) | set(isolated))
    missing = []
    if months:
        present = set(months)
        missing = [m for m in range(months[0], months[-1] + 1) if m not in present]
    for m in missing:
        msg = f"MissingMonth({month_label(m)})"
        report.warnings.append(msg)
        log.warning(msg)
    snaps = [
        build_snapshot(buckets[m], isolated[m], index=i, timestamp=month_label(m))
        for i, m in enumerate(months, start=1)
    ]
    report.edges_emitted = sum(len(g.edges) for g in snaps)
    return SnapshotSeries(tuple(snaps), window=None if missing else 1)


def ingest_files(paths, fmt="edgelist", profile="path-per-line",
                 reserved=DEFAULT_RESERVED_SET, dates=None) -> tuple[SnapshotSeries, IngestReport]:
    """Read files, date them (from ``dates`` or their names) and aggregate by month."""
    report = IngestReport()
    fragments = []
    for k, path in enumerate(paths):
        path = Path(path)
        when = parse_date(dates[k]) if dates is not None else date_from_filename(path)
        data = path.read_bytes()
        if fmt == "edgelist":
            pairs, isolates = parse_edgelist(data, source=str(path))
        elif fmt == "aspath":
            pairs = aspath_edges(data, profile, reserved, report, source=str(path))
            isolates = set()
        else:
            raise ValueError(f"unknown input format {fmt!r}")
        fragments.append((when, pairs, isolates))
    series = aggregate_window(fragments, "month", report)
    return series, report
