from scripts.census_grid import COLUMNS, census_rows


def test_census_rows_small_catalog():
    rows = census_rows(max_order=4, workers=1)
    assert [row[0] for row in rows] == ["cyclic:1", "cyclic:2", "cyclic:3", "abelian:2,2", "cyclic:4"]
    assert all(len(row) == len(COLUMNS) for row in rows)

    by_id = {row[0]: row for row in rows}
    assert by_id["cyclic:3"][2:6] == ["4", "4", "0", "1/2"]
    assert by_id["abelian:2,2"][2] == "0"
    assert by_id["abelian:2,2"][5] == "0/1"
