""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import io
import sys
import constants
import matplotlib
import numpy as np
import pandas as pd

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple
from aws_lambda_powertools import Logger
from components.errors import DomainError

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)


@dataclass(frozen=True)
class ScanTable:
    """Rows of scan results ready for CSV or SVG emission."""
    headers: Tuple[str, ...]
    rows: Tuple[Tuple, ...]
    title: str = ""
    log_x: bool = False
    plot_columns: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "headers", tuple(self.headers))
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        for index, row in enumerate(self.rows):
            if len(row) != len(self.headers):
                raise DomainError(
                    f"Row {index} has {len(row)} values but the table has {len(self.headers)} columns"
                )

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        index = self.headers.index(name)
        return np.array([row[index] for row in self.rows])

    def to_frame(self) -> pd.DataFrame:
        """Complex columns are split into `<name>_re` and `<name>_im`."""
        frame = pd.DataFrame(list(self.rows), columns=list(self.headers))
        columns = {}
        for name in self.headers:
            series = frame[name]
            if any(isinstance(value, complex) for value in series):
                values = series.astype(complex)
                columns[f"{name}_re"] = values.map(lambda z: z.real)
                columns[f"{name}_im"] = values.map(lambda z: z.imag)
            else:
                columns[name] = series
        return pd.DataFrame(columns)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.to_frame().to_csv(buffer, index=False, float_format=constants.CSV_FLOAT_FORMAT, lineterminator="\n")
        return buffer.getvalue()

    def to_svg(self) -> str:
        frame = self.to_frame()
        x_name = frame.columns[0]
        y_names = list(self.plot_columns or frame.columns[1:])
        plt.rcParams["svg.hashsalt"] = constants.SVG_HASH_SALT
        figure, axis = plt.subplots(figsize=(7.0, 4.5))
        for name in y_names:
            axis.plot(frame[x_name], frame[name], linewidth=0.8, label=name)
        if self.log_x:
            axis.set_xscale("log")
        axis.set_xlabel(x_name)
        axis.set_title(self.title)
        axis.legend(loc="best", fontsize="small")
        buffer = io.StringIO()
        figure.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(figure)
        return buffer.getvalue()


def write_table(table: ScanTable, output_path: Optional[str], fmt: str = "csv") -> None:
    """Write the table to a file, or to stdout when no path is given."""
    if fmt not in ("csv", "svg"):
        raise DomainError(f"Unknown output format '{fmt}', expected csv or svg")
    text = table.to_csv() if fmt == "csv" else table.to_svg()
    if output_path is None:
        sys.stdout.write(text)
        return
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {len(table)} rows to {path} ({fmt})")


def merge_tables(tables: Sequence[ScanTable], title: str = "") -> ScanTable:
    """Stack tables that share a header row."""
    headers = tables[0].headers
    for table in tables[1:]:
        if table.headers != headers:
            raise DomainError("Only tables with identical headers can be merged")
    rows = tuple(row for table in tables for row in table.rows)
    return ScanTable(headers=headers, rows=rows, title=title or tables[0].title,
                     log_x=tables[0].log_x, plot_columns=tables[0].plot_columns)
