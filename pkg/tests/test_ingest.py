import json
from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from netmeta.errors import ParseError, SelfLoop
from netmeta.graph import Edge, build_snapshot, format_snapshot
from netmeta.ingest import (
    DEFAULT_RESERVED_SET,
    AsPath,
    IngestReport,
    Rejection,
    ReservedSet,
    aggregate_window,
    aspath_edges,
    date_from_filename,
    ingest_files,
    parse_edgelist,
    paths_to_edges,
    sanitize_aspath,
)
from netmeta.pipeline import write_series

from conftest import FIXTURES


# -- edge lists --


def test_parse_edgelist_simple():
    assert parse_edgelist(b"1 2\n2 3\n") == ([(1, 2), (2, 3)], set())


def test_parse_edgelist_skips_comments_and_blanks():
    assert parse_edgelist("# hdr\n\n3 1\n") == ([(1, 3)], set())


def test_parse_edgelist_isolates():
    assert parse_edgelist("1 2\n%iso 9\n") == ([(1, 2)], {9})


@pytest.mark.parametrize("text, line", [("1 x\n", 1), ("1 2\n1 2 3\n", 2), ("4\n", 1), ("1 -2\n", 1)])
def test_parse_edgelist_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edgelist(text)
    assert exc.value.line == line


def test_parse_edgelist_keeps_duplicates():
    pairs, _ = parse_edgelist("1 2\n2 1\n")
    assert pairs == [(1, 2), (1, 2)]


# -- sanitising --


def test_prepending_collapses():
    assert sanitize_aspath([701, 701, 1239, 7018]) == AsPath((701, 1239, 7018))


def test_non_adjacent_repeat_is_loop():
    assert sanitize_aspath([701, 1239, 701]) is Rejection.LOOP


def test_private_asn_is_reserved():
    assert 64512 in DEFAULT_RESERVED_SET
    assert sanitize_aspath([701, 64512, 7018]) is Rejection.RESERVED


@pytest.mark.parametrize("asn", [0, 23456, 64496, 64511, 65534, 65535, 65536, 65551, 4200000000, 4294967295])
def test_reserved_range_edges(asn):
    assert asn in DEFAULT_RESERVED_SET


@pytest.mark.parametrize("asn", [1, 701, 64495, 65552, 396982, 4199999999])
def test_public_asns(asn):
    assert asn not in DEFAULT_RESERVED_SET


def test_custom_reserved_set():
    reserved = ReservedSet([(701, 701)])
    assert sanitize_aspath([701, 1239], reserved) is Rejection.RESERVED
    assert sanitize_aspath([64512, 1239], reserved) == AsPath((64512, 1239))


def test_as_set_dropped_and_path_cut():
    assert sanitize_aspath("174 3549 {65001,65002}") == AsPath((174, 3549))
    assert sanitize_aspath("174 {1 2} 3549") == AsPath((174,))
    assert sanitize_aspath("{1 2}") is Rejection.EMPTY
    assert sanitize_aspath([]) is Rejection.EMPTY


@pytest.mark.parametrize("raw", ["701 {1239", "701 1239}", "701 {1239 {7018}}"])
def test_malformed_braces(raw):
    with pytest.raises(ParseError):
        sanitize_aspath(raw)


def test_prepending_before_loop_check():
    # 701 701 is prepending, not a loop
    assert sanitize_aspath("701 701 1239") == AsPath((701, 1239))


@given(st.lists(st.integers(1, 50), min_size=1, max_size=12))
def test_sanitize_idempotent(hops):
    first = sanitize_aspath(hops)
    if isinstance(first, AsPath):
        assert sanitize_aspath(list(first.hops)) == first
        assert len(set(first.hops)) == len(first.hops)
        assert all(a != b for a, b in zip(first.hops, first.hops[1:]))


def test_paths_to_edges():
    assert paths_to_edges([AsPath((701, 1239, 7018))]) == [(701, 1239), (1239, 7018)]
    assert paths_to_edges([AsPath((3356,))]) == []
    both = paths_to_edges([AsPath((1, 2, 3)), AsPath((4, 2, 1))])
    assert both.count((1, 2)) == 2
    assert build_snapshot(both).edges == {Edge(1, 2), Edge(2, 3), Edge(2, 4)}


# -- aggregation --


def test_aggregate_same_month():
    report = IngestReport()
    series = aggregate_window([("1998-01-20", [(2, 3)]), ("1998-01-05", [(1, 2)])], report=report)
    assert len(series) == 1
    g = series[0]
    assert (g.index, g.timestamp) == (1, "199801")
    assert g.edges == {Edge(1, 2), Edge(2, 3)}
    assert report.warnings == []


def test_aggregate_missing_month_warns():
    report = IngestReport()
    series = aggregate_window(
        [(date(1998, 3, 2), [(1, 2)]), (date(1998, 1, 2), [(1, 2)])], report=report
    )
    assert [g.timestamp for g in series] == ["199801", "199803"]
    assert [g.index for g in series] == [1, 2]
    assert report.warnings == ["MissingMonth(199802)"]
    assert series.window is None


def test_aggregate_union_semantics():
    series = aggregate_window([("19980110", [(1, 2)])] * 30)
    assert series[0].edges == {Edge(1, 2)}


def test_aggregate_rejects_self_loop():
    with pytest.raises(SelfLoop):
        aggregate_window([("199801", [(4, 4)])])


def test_aggregate_order_independent(rng):
    frags = [
        (f"1998-{m:02d}-{d:02d}", [(int(rng.integers(20)), int(rng.integers(20, 40)))])
        for m in (1, 2, 3) for d in (1, 9, 17, 25)
    ]
    a = aggregate_window(frags)
    b = aggregate_window(list(reversed(frags)))
    assert a == b


def test_every_edge_is_witnessed(rng):
    # each fragment is tagged with the month it was drawn for
    trace = {}
    frags = []
    for m in range(1, 7):
        for _ in range(5):
            pairs = [(int(u), int(v)) for u, v in rng.integers(0, 25, size=(4, 2)) if u != v]
            frags.append((f"2001-{m:02d}-15", pairs))
            for u, v in pairs:
                trace.setdefault(f"2001{m:02d}", set()).add(Edge.of(u, v))
    series = aggregate_window(frags)
    for g in series:
        assert g.edges <= trace[g.timestamp]
        assert g.edges == trace[g.timestamp]


def test_report_reconciles_on_edge_disjoint_months():
    report = IngestReport()
    series = aggregate_window(
        [("199801", [(1, 2), (2, 3)]), ("199802", [(4, 5)]), ("199803", [(6, 7), (7, 8), (6, 8)])],
        report=report,
    )
    distinct = set().union(*(g.edges for g in series))
    assert report.edges_emitted == len(distinct) == 6


def test_date_from_filename():
    assert date_from_filename("rib.20050601.0000.txt") == date(2005, 6, 1)
    assert date_from_filename("as-2001-07.txt") == date(2001, 7, 1)
    with pytest.raises(ValueError):
        date_from_filename("nodate.txt")


# -- fixture files --


def test_aspath_fixture_byte_exact(tmp_path):
    series, report = ingest_files([FIXTURES / "aspath-19980115.txt"], fmt="aspath")
    assert report.counters() == {
        "paths_read": 11,
        "paths_dropped_loop": 1,
        "paths_dropped_reserved": 2,
        "segments_dropped_asset": 2,
        "edges_emitted": 7,
    }
    write_series(series, tmp_path)
    expected = (FIXTURES / "aspath-expected-199801.txt").read_bytes()
    assert (tmp_path / "199801.txt").read_bytes() == expected


def test_show_ip_bgp_profile():
    report = IngestReport()
    text = (FIXTURES / "show-ip-bgp-20050603.txt").read_text()
    edges = aspath_edges(text, profile="show-ip-bgp", report=report)
    assert build_snapshot(edges).edges == {
        Edge(701, 3333), Edge(80, 701), Edge(701, 7018), Edge(3356, 7018), Edge(668, 3356)
    }
    assert report.paths_read == 5
    assert report.paths_dropped_reserved == 1
    assert report.paths_read >= report.paths_dropped_loop + report.paths_dropped_reserved


def test_unknown_profile():
    with pytest.raises(ValueError):
        aspath_edges("701 1239", profile="mrt")


def test_edgelist_files_by_month(tmp_path):
    (tmp_path / "g-199801.txt").write_text("1 2\n2 3\n")
    (tmp_path / "g-199802.txt").write_text("3 2\n3 4\n%iso 9\n")
    series, report = ingest_files(sorted(tmp_path.glob("g-*.txt")))
    assert [g.timestamp for g in series] == ["199801", "199802"]
    assert series[1].nodes == {2, 3, 4, 9}
    assert format_snapshot(series[1]) == "2 3\n3 4\n%iso 9\n"
    assert report.paths_read == 0
    assert json.loads(json.dumps(report.counters()))["edges_emitted"] == 4
