import json

import pytest

from conftest import GRID_FIXTURES, read_fixture
from segre_syzygies.grids import (dumps, grid_rows, grid_window, render_ascii, render_csv,
                                  render_json, table_record)
from segre_syzygies.koszul import BidegreeTable, bidegree_table
from segre_syzygies.rings import Bidegree, segre


@pytest.mark.parametrize("name", sorted(GRID_FIXTURES))
def test_grid_matches_fixture(name):
    a, b, p, q, rotate, pad = GRID_FIXTURES[name]
    table = bidegree_table(segre(a, b), p, q)
    assert render_ascii(table, rotate=rotate, pad=pad, total=False) == read_fixture(name)


def test_orientation():
    t = BidegreeTable(1, 1, {Bidegree(0, 0): 1, Bidegree(1, 0): 2, Bidegree(0, 1): 3})
    # u2 runs down the rows from the top, u1 left to right
    assert grid_rows(t) == [[3, 0], [1, 2]]
    # rotated: u1 down the rows, u2 left to right
    assert grid_rows(t, rotate=True) == [[1, 3], [2, 0]]
    assert grid_window(t, pad=1) == (-1, 2, -1, 2)


def test_empty_table():
    t = bidegree_table(segre(2, 2), 1, 3)
    assert t.total == 0
    assert render_ascii(t) == "total 0"
    assert render_csv(t) == "u1,u2,dim"


def test_zeros_printed():
    t = BidegreeTable(1, 1, {Bidegree(0, 0): 12, Bidegree(1, 1): 1})
    assert render_ascii(t, total=False) == " 0  1\n12  0"


def test_json_schema_and_round_trip():
    t = bidegree_table(segre(2, 2), 5, 1)
    text = render_json(t)
    rec = json.loads(text)
    assert list(rec) == ["algebra", "a", "b", "p", "q", "field", "betti", "blocks"]
    assert rec["betti"] == 20 and rec["field"] == "gf32003"
    assert rec["blocks"] == sorted(rec["blocks"], key=lambda blk: blk["bidegree"])
    assert dumps(json.loads(text)) == text
    assert table_record(t)["algebra"] == "segre"


def test_csv_lines():
    t = bidegree_table(segre(2, 2), 5, 1)
    lines = render_csv(t).splitlines()
    assert lines[0] == "u1,u2,dim" and len(lines) == 1 + len(t.entries)
    assert sum(int(line.split(",")[2]) for line in lines[1:]) == 20
