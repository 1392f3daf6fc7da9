"""Deterministic serialization of results to JSON, CSV, or aligned text.

Bases serialize as lists of basis vectors (one row per vector, coordinates in
data order), which is also how the text tables render them. The same object
always produces byte-identical documents.
"""

import csv
import io
import json
from dataclasses import asdict

from .engine import DiscaOutput
from .errors import InvalidParameterError
from .montecarlo import MonteCarloSummary

_QUANTILE_KEYS = ("min", "q1", "median", "q3", "max")


def _basis_rows(basis):
    return [[float(v) for v in col] for col in basis.columns.T]


def _trace_records(trace):
    return [
        {
            "working_dim": rec.working_dim,
            "direction": [float(v) for v in rec.direction],
            "v2n": rec.v2n,
            "statistic": rec.statistic,
            "threshold": rec.threshold,
            "decision": rec.decision,
        }
        for rec in trace.records
    ]


def _quantile_dict(q):
    if q is None:
        return None
    return dict(zip(_QUANTILE_KEYS, q))


def _disca_dict(out):
    return {
        "scenario": out.scenario,
        "config": asdict(out.config),
        "seed": out.seed,
        "basis_x": _basis_rows(out.basis_x),
        "basis_y": _basis_rows(out.basis_y),
        "trace_x": _trace_records(out.trace_x),
        "trace_y": _trace_records(out.trace_y),
    }


def _summary_dict(summary):
    return {
        "scenario": summary.scenario,
        "runs": summary.runs,
        "ns": list(summary.ns),
        "config": asdict(summary.config),
        "master_seed": summary.master_seed,
        "summaries": [
            {
                "n": s.n,
                "hist_x": {str(k): v for k, v in s.hist_x.items()},
                "hist_y": {str(k): v for k, v in s.hist_y.items()},
                "dist_x": _quantile_dict(s.dist_x_quantiles),
                "dist_y": _quantile_dict(s.dist_y_quantiles),
                "failures": s.failures,
            }
            for s in summary.per_n
        ],
        "records": [
            {
                "n": r.n,
                "run_index": r.run_index,
                "seed": r.seed,
                "rank_x": r.rank_x,
                "rank_y": r.rank_y,
                "dist_x": r.dist_x,
                "dist_y": r.dist_y,
                "error": r.error,
            }
            for s in summary.per_n
            for r in s.records
        ],
    }


def _names(prefix, dim, names):
    if names is not None:
        if len(names) != dim:
            raise InvalidParameterError(
                f"{len(names)} names for {dim} {prefix}-coordinates"
            )
        return list(names)
    return [f"{prefix}{i + 1}" for i in range(dim)]


def _basis_table(title, basis, names):
    lines = [title]
    if basis.rank == 0:
        lines.append("  (trivial subspace, rank 0)")
        return lines
    width = max(9, max(len(n) for n in names) + 1)
    header = "  dim  " + "".join(f"{n:>{width}}" for n in names)
    lines.append(header)
    for j, col in enumerate(basis.columns.T, start=1):
        row = f"  {j:>3}  " + "".join(f"{v:>{width}.4f}" for v in col)
        lines.append(row)
    return lines


def _trace_table(title, trace):
    lines = [title]
    lines.append("  step  dim        v2n  statistic  threshold  decision")
    for i, rec in enumerate(trace.records, start=1):
        lines.append(
            f"  {i:>4}  {rec.working_dim:>3}  {rec.v2n:>9.3e}  "
            f"{rec.statistic:>9.4f}  {rec.threshold:>9.4f}  {rec.decision}"
        )
    return lines


def _disca_text(out, x_names, y_names):
    xn = _names("x", out.basis_x.ambient_dim, x_names)
    yn = _names("y", out.basis_y.ambient_dim, y_names)
    lines = []
    if out.scenario:
        lines.append(f"scenario: {out.scenario}")
    lines.append(f"seed: {out.seed}")
    lines.append(
        f"rank(W_x) = {out.basis_x.rank} of {out.basis_x.ambient_dim}, "
        f"rank(W_y) = {out.basis_y.rank} of {out.basis_y.ambient_dim}"
    )
    lines.append("")
    lines.extend(_basis_table("basis of W_x (rows are basis vectors):",
                              out.basis_x, xn))
    lines.append("")
    lines.extend(_basis_table("basis of W_y (rows are basis vectors):",
                              out.basis_y, yn))
    lines.append("")
    lines.extend(_trace_table("x-side elimination:", out.trace_x))
    lines.append("")
    lines.extend(_trace_table("y-side elimination:", out.trace_y))
    return "\n".join(lines) + "\n"


def _summary_text(summary):
    lines = [
        f"scenario: {summary.scenario}",
        f"runs per N: {summary.runs}   master seed: {summary.master_seed}",
        "",
        "recovered-dimension histograms:",
    ]
    for s in summary.per_n:
        lines.append(
            f"  N={s.n:>5}  rank_x {s.hist_x}  rank_y {s.hist_y}"
            f"  failures {s.failures}"
        )
    lines.append("")
    lines.append("subspace-distance quantiles (equal-rank runs):")
    lines.append("  N        side      min       q1   median       q3      max")
    for s in summary.per_n:
        for side, q in (("x", s.dist_x_quantiles), ("y", s.dist_y_quantiles)):
            if q is None:
                lines.append(f"  {s.n:>5}  dist_{side}   (no equal-rank runs)")
            else:
                vals = "".join(f"{v:>9.4f}" for v in q)
                lines.append(f"  {s.n:>5}  dist_{side}{vals}")
    return "\n".join(lines) + "\n"


def _disca_csv(out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["side", "step", "working_dim", "v2n", "statistic",
                     "threshold", "decision", "direction"])
    for side, trace in (("x", out.trace_x), ("y", out.trace_y)):
        for i, rec in enumerate(trace.records, start=1):
            writer.writerow([
                side, i, rec.working_dim, repr(rec.v2n), repr(rec.statistic),
                repr(rec.threshold), rec.decision,
                " ".join(repr(float(v)) for v in rec.direction),
            ])
    return buf.getvalue()


def _summary_csv(summary):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "run_index", "seed", "rank_x", "rank_y",
                     "dist_x", "dist_y", "error"])
    for s in summary.per_n:
        for r in s.records:
            writer.writerow([
                r.n, r.run_index, r.seed, r.rank_x, r.rank_y,
                repr(r.dist_x), repr(r.dist_y), r.error or "",
            ])
    return buf.getvalue()


def emit_report(output, fmt="json", x_names=None, y_names=None):
    """Serialize a DiscaOutput or MonteCarloSummary.

    ``fmt`` is "json", "csv" or "text". Optional coordinate names label the
    text tables (defaults x1..xp / y1..yq).
    """
    if fmt not in ("json", "csv", "text"):
        raise InvalidParameterError(f"unknown format {fmt!r}")
    if isinstance(output, DiscaOutput):
        if fmt == "json":
            return json.dumps(_disca_dict(output), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            return _disca_csv(output)
        return _disca_text(output, x_names, y_names)
    if isinstance(output, MonteCarloSummary):
        if fmt == "json":
            return json.dumps(_summary_dict(output), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            return _summary_csv(output)
        return _summary_text(output)
    raise InvalidParameterError(
        f"cannot serialize object of type {type(output).__name__}"
    )
