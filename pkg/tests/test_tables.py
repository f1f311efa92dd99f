from pathlib import Path

import pytest

from descent2.tables import check_table1_row, class_value, golden_dir, read_table1, verify_tables


@pytest.fixture(scope="module")
def report():
    return verify_tables()


def test_golden_tables_verify(report):
    assert report.ok
    assert report.table1_rows == report.table1_verified == 10
    assert report.summary()[0] == "Table 1: 10/10 rows verified"
    assert all(c.ok for c in report.cells if c.ambiguous)


def test_table1_rows():
    rows = {r["row"]: r for r in read_table1(golden_dir() / "table1.txt")}
    assert all(c.ok for c in check_table1_row(rows["b"]))
    h3 = rows["h3"]
    assert h3["x"] == "4303153/9"
    assert all(c.ok for c in check_table1_row(h3))


def test_corrupted_row_is_caught():
    rows = {r["row"]: r for r in read_table1(golden_dir() / "table1.txt")}
    bad = dict(rows["f"], y="21464689/342")
    assert [c.column for c in check_table1_row(bad) if not c.ok] == ["y"]
    bad = dict(rows["f"], n="42")
    assert "torsor" in [c.column for c in check_table1_row(bad) if not c.ok]


def test_class_value():
    assert class_value("2pq", {"p": 41, "q": 409}) == 2 * 41 * 409
    assert class_value("rp", {"p": 3, "q": 5, "r": 7}) == 21


def test_empty_directory(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        verify_tables(tmp_path)


def test_mismatch_in_verdict_file(tmp_path: Path):
    src = (golden_dir() / "verdicts_t2.txt").read_text()
    (tmp_path / "verdicts_t2.txt").write_text(src.replace("pq b ?", "pq b no", 1))
    rep = verify_tables(tmp_path)
    assert not rep.ok
    assert [(c.row, c.column) for c in rep.failures] == [("pq", "b")]
