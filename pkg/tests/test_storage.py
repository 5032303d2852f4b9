""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import pytest

from components.errors import DomainError
from components.storage import ScanTable, merge_tables, write_table


def _table(title: str = "demo") -> ScanTable:
    return ScanTable(
        headers=("n", "value"),
        rows=[(1, 0.5 + 1.0j), (2, 0.25 - 2.0j), (3, 1.0 / 3.0)],
        title=title
    )


def test_complex_columns_are_split():
    frame = _table().to_frame()
    assert list(frame.columns) == ["n", "value_re", "value_im"]
    assert frame["value_im"].tolist() == [1.0, -2.0, 0.0]


def test_rows_must_be_rectangular():
    with pytest.raises(DomainError):
        ScanTable(headers=("a", "b"), rows=[(1, 2), (3,)])


def test_csv_is_deterministic():
    text = _table().to_csv()
    assert text == _table().to_csv()
    assert text.splitlines()[0] == "n,value_re,value_im"
    assert text.splitlines()[3] == "3,0.333333333333333,0"


def test_svg_output():
    table = ScanTable(headers=("y", "a", "b"), rows=[(0.1, 1.0, 2.0), (0.2, 1.5, 2.5)], log_x=True, plot_columns=("a",))
    svg = table.to_svg()
    assert svg.lstrip().startswith("<?xml")
    assert "</svg>" in svg
    assert svg == table.to_svg()


def test_write_table(tmp_path, capsys):
    target = tmp_path / "out" / "table.csv"
    write_table(_table(), str(target))
    assert target.read_text() == _table().to_csv()
    write_table(_table(), None)
    assert capsys.readouterr().out == _table().to_csv()
    with pytest.raises(DomainError):
        write_table(_table(), None, fmt="json")


def test_merge_tables():
    merged = merge_tables([_table("first"), _table("second")])
    assert len(merged) == 6
    assert merged.title == "first"
    with pytest.raises(DomainError):
        merge_tables([_table(), ScanTable(headers=("x",), rows=[(1,)])])
