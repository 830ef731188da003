"""JSON and CSV forms of distribution tables.

Counts are written as decimal strings so that no JSON reader can round them.
"""

from __future__ import annotations

import csv
import io
import json

from runstat.model import DistributionTable, Mode, Specification, StatProfile, as_mode

CSV_COLUMNS = ("r", "s", "l", "b", "b_per", "count")


def table_to_record(table: DistributionTable, mode: Mode | str, provenance: str) -> dict:
    mode = as_mode(mode)
    entries = []
    for p, c in table.items():
        entries.append({
            "r": p.r,
            "s": p.s,
            "l": p.l,
            "b": p.b,
            "b_per": list(p.b_per) if p.b_per is not None else None,
            "count": str(c),
        })
    return {
        "spec": list(table.spec.counts),
        "mode": mode.value,
        "provenance": provenance,
        "entries": entries,
    }


def record_to_table(record: dict) -> DistributionTable:
    table = DistributionTable(Specification(tuple(record["spec"])))
    for e in record["entries"]:
        b_per = tuple(e["b_per"]) if e.get("b_per") is not None else None
        table.add(StatProfile(e["r"], e["s"], e["l"], e["b"], b_per), int(e["count"]))
    return table


def dumps_json(table: DistributionTable, mode, provenance: str) -> str:
    return json.dumps(table_to_record(table, mode, provenance), indent=2)


def loads_json(text: str) -> DistributionTable:
    return record_to_table(json.loads(text))


def dumps_csv(table: DistributionTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for p, c in table.items():
        b_per = ";".join(map(str, p.b_per)) if p.b_per is not None else ""
        writer.writerow((p.r, p.s, p.l, p.b, b_per, str(c)))
    return buf.getvalue()


def loads_csv(text: str, spec: Specification) -> DistributionTable:
    table = DistributionTable(spec)
    for row in csv.DictReader(io.StringIO(text)):
        b_per = tuple(int(x) for x in row["b_per"].split(";")) if row["b_per"] else None
        profile = StatProfile(int(row["r"]), int(row["s"]), int(row["l"]), int(row["b"]), b_per)
        table.add(profile, int(row["count"]))
    return table
