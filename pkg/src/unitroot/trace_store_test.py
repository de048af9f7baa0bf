"""
Trace-table files: format, round trips, stale and corrupt caches.
"""

import pytest

from unitroot import trace_store
from unitroot.errors import CacheMissing, CorruptCache, StaleCache
from unitroot.trace_store import (
    HEADER,
    TraceRow,
    TraceStore,
    TraceTable,
    build_trace_table,
    cache_roundtrip,
    extend_trace_table,
    moduli_hash,
    parse_table,
    read_table,
    write_table,
)


def _p3_table() -> TraceTable:
    rows = [TraceRow(1, (2, 1), 1, 3), TraceRow(1, (0, 1), -1, 3), TraceRow(1, (1, 1), 2, 3)]
    return TraceTable(3, 1, rows)


def test_rows_are_sorted():
    table = _p3_table()
    assert [row.minpoly for row in table.rows] == [(0, 1), (1, 1), (2, 1)]


def test_round_trip_p3(tmp_path):
    table = _p3_table()
    again = cache_roundtrip(tmp_path / "t.csv", table)
    assert again == table
    assert len(again.rows_of_degree(1)) == 3


def test_p5_table_is_rewritten_byte_identically(tmp_path):
    table = build_trace_table(5, 2)
    assert len(table.rows) == 12
    assert table.counts() == {1: 3, 2: 9}
    path = tmp_path / "p5.csv"
    write_table(path, table)
    first = path.read_bytes()
    write_table(path, read_table(path))
    assert path.read_bytes() == first
    assert first.decode("ascii").splitlines()[2] == "5,1,1.1,-2"


def test_text_layout():
    lines = _p3_table().to_text().splitlines()
    assert lines[0] == HEADER
    assert lines[1] == f"#p=3 max-degree=1 moduli={moduli_hash(3, 1)}"
    assert lines[2:] == ["3,1,0.1,-1", "3,1,1.1,2", "3,1,2.1,1"]


def test_wrong_header_is_corrupt():
    text = _p3_table().to_text().replace(HEADER, "#legendre-traces v2")
    with pytest.raises(CorruptCache):
        parse_table(text)


@pytest.mark.parametrize("bad_row", ["3,1,0.1", "3,1,0.1,x", "5,1,0.1,1", "3,2,0.1,1", "3,1,0.3,1"])
def test_bad_rows_are_corrupt(bad_row):
    text = _p3_table().to_text() + bad_row + "\n"
    with pytest.raises(CorruptCache):
        parse_table(text)


def test_other_moduli_are_stale():
    text = _p3_table().to_text().replace(moduli_hash(3, 1), "0" * 64)
    with pytest.raises(StaleCache):
        parse_table(text)


def test_restrict():
    table = build_trace_table(5, 2)
    assert table.restrict(1).counts() == {1: 3}
    with pytest.raises(CacheMissing):
        table.restrict(3)


def test_store_reuses_larger_tables(tmp_path):
    writer = TraceStore(tmp_path)
    writer.get_table(5, 2)
    assert (tmp_path / "legendre-traces-p5-d2.csv").exists()

    reader = TraceStore(tmp_path, compute_missing=False)
    assert reader.get_table(5, 1).counts() == {1: 3}
    with pytest.raises(CacheMissing):
        reader.get_table(5, 3)


def test_store_without_directory_keeps_tables_in_memory():
    store = TraceStore(None)
    assert len(store.get_table(3, 2).rows) == 3
    with pytest.raises(CacheMissing):
        store.path_for(3, 2)


def test_store_extends_a_smaller_cached_table(tmp_path, monkeypatch):
    TraceStore(tmp_path).get_table(5, 1)

    swept = []
    original = trace_store.trace_sweep

    def recording_sweep(p, d, jobs=1):
        swept.append(d)
        return original(p, d, jobs=jobs)

    monkeypatch.setattr(trace_store, "trace_sweep", recording_sweep)
    table = TraceStore(tmp_path).get_table(5, 2)
    assert swept == [2]
    assert table == build_trace_table(5, 2)
    assert (tmp_path / "legendre-traces-p5-d2.csv").exists()


def test_store_builds_up_to_the_table_degree(tmp_path):
    store = TraceStore(tmp_path, table_degree=2)
    assert store.get_table(5, 1).counts() == {1: 3}
    assert (tmp_path / "legendre-traces-p5-d2.csv").exists()
    assert not (tmp_path / "legendre-traces-p5-d1.csv").exists()
    assert store.get_table(5, 2).counts() == {1: 3, 2: 9}


def test_extend_keeps_existing_rows():
    small = build_trace_table(3, 1)
    assert extend_trace_table(small, 2) == build_trace_table(3, 2)
    assert extend_trace_table(small, 1) == small
