"""CSV ingestion for real datasets.

Expected layout: a header row naming columns, comma separation, decimal-point
numerics. Parse failures report the file line and column name.
"""

import csv

import numpy as np

from .dcov import as_samples
from .errors import InvalidParameterError, ParseError


def _weekly_means(arr):
    """Means of consecutive non-overlapping 7-row blocks; a trailing partial
    week is dropped."""
    weeks = arr.shape[0] // 7
    return arr[: weeks * 7].reshape(weeks, 7, arr.shape[1]).mean(axis=1)


def load_csv(path, x_cols, y_cols, aggregate="none"):
    """Load two sample matrices from named columns of a CSV file.

    ``x_cols`` and ``y_cols`` are disjoint, nonempty column-name lists.
    ``aggregate`` is "none" or "weekly". Returns (x, y) float64 matrices.
    """
    if not x_cols or not y_cols:
        raise InvalidParameterError("x_cols and y_cols must be nonempty")
    overlap = set(x_cols) & set(y_cols)
    if overlap:
        raise InvalidParameterError(
            f"x_cols and y_cols must be disjoint; both contain {sorted(overlap)}"
        )
    if aggregate not in ("none", "weekly"):
        raise InvalidParameterError(f"unknown aggregate mode {aggregate!r}")

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: file is empty") from None
        header = [name.strip() for name in header]
        index = {}
        for name in list(x_cols) + list(y_cols):
            if name not in header:
                raise ParseError(
                    f"{path}: column {name!r} not found in header {header}"
                )
            index[name] = header.index(name)
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            values = []
            for name, col in index.items():
                if col >= len(row):
                    raise ParseError(
                        f"{path}: line {line_no}: row has {len(row)} cells, "
                        f"column {name!r} is missing"
                    )
                cell = row[col].strip()
                try:
                    values.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"{path}: line {line_no}, column {name!r}: "
                        f"could not parse {cell!r} as a number"
                    ) from None
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=np.float64)
    x = data[:, : len(x_cols)]
    y = data[:, len(x_cols):]
    if aggregate == "weekly":
        if data.shape[0] < 7:
            raise ParseError(
                f"{path}: weekly aggregation needs at least 7 rows, "
                f"got {data.shape[0]}"
            )
        x = _weekly_means(x)
        y = _weekly_means(y)
    return (
        as_samples(x, "x"),
        as_samples(y, "y"),
    )
