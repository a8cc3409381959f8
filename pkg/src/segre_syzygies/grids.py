"""Text renderings of bidegree tables: ASCII grid, CSV and JSON."""

from __future__ import annotations

import csv
import io
import json

from .koszul import BidegreeTable


def grid_window(table: BidegreeTable, pad: int = 0):
    """Bounding box ``(u1_min, u1_max, u2_min, u2_max)`` of the nonzero cells, widened by ``pad``."""
    if not table.entries:
        return None
    u1 = [u[0] for u in table.entries]
    u2 = [u[1] for u in table.entries]
    return (min(u1) - pad, max(u1) + pad, min(u2) - pad, max(u2) + pad)


def grid_rows(table: BidegreeTable, rotate: bool = False, pad: int = 0,
              window=None) -> list[list[int]]:
    """Cells as a list of rows.

    Default orientation puts ``u2`` on the vertical axis, largest at the top,
    and ``u1`` increasing to the right.  ``rotate`` turns this a quarter turn
    clockwise: rows are ``u1`` increasing downwards, columns ``u2`` increasing.
    """
    box = window or grid_window(table, pad)
    if box is None:
        return []
    x0, x1, y0, y1 = box
    get = table.entries.get
    if rotate:
        return [[get((x, y), 0) for y in range(y0, y1 + 1)] for x in range(x0, x1 + 1)]
    return [[get((x, y), 0) for x in range(x0, x1 + 1)] for y in range(y1, y0 - 1, -1)]


def format_grid(rows: list[list[int]]) -> str:
    if not rows:
        return ""
    width = max(len(str(v)) for row in rows for v in row)
    return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in rows)


def render_ascii(table: BidegreeTable, rotate: bool = False, pad: int = 0,
                 total: bool = True) -> str:
    body = format_grid(grid_rows(table, rotate, pad))
    lines = [body] if body else []
    if total:
        lines.append(f"total {table.total}")
    return "\n".join(lines)


def render_csv(table: BidegreeTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u1", "u2", "dim"])
    for u, d in sorted(table.entries.items()):
        w.writerow([u[0], u[1], d])
    return buf.getvalue().rstrip("\n")


def table_record(table: BidegreeTable) -> dict:
    rec = dict(table.algebra)
    rec.update({"p": table.p, "q": table.q, "field": table.field,
                "betti": table.total, "blocks": table.blocks()})
    return rec


def dumps(record: dict) -> str:
    """Canonical JSON text; parsing and dumping again gives the same bytes."""
    return json.dumps(record, separators=(",", ":"))


def render_json(table: BidegreeTable) -> str:
    return dumps(table_record(table))
