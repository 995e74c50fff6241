"""
From AS_PATH text to a monthly AS graph
=======================================

Each AS_PATH contributes one link per pair of adjacent hops. Prepending is
collapsed, looping and reserved-ASN paths are dropped, and AS-SETs cut the
path, since their order is unknown.
"""

from netmeta.ingest import IngestReport, aggregate_window, aspath_edges, sanitize_aspath

for raw in ("701 701 1239 7018", "701 1239 701", "701 64512 7018", "174 3549 {65001,65002}"):
    print(f"{raw!r:28} -> {sanitize_aspath(raw)}")

###############################################################################
# Several daily dumps fold into one snapshot per month.

report = IngestReport()
days = {
    "2005-06-01": "3333 701 80\n3356 7018 701\n",
    "2005-06-15": "668 3356 7018\n668 3356 3356 7018 {1,2}\n",
    "2005-07-01": "80 701 7018\n65000 701\n",
}
fragments = [(day, aspath_edges(text, report=report)) for day, text in days.items()]
series = aggregate_window(fragments, report=report)
for g in series:
    print(g.timestamp, sorted(tuple(e) for e in g.edges))
print(report.counters())
