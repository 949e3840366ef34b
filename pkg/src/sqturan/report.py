"""Byte-stable text, CSV and graph6 output.

Every file starts with a ``# config:`` line holding the resolved run
configuration as sorted JSON, rows are sorted, and floats are written with a
fixed number of digits so reruns diff cleanly.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import Iterable, Sequence

from .graph import Graph
from .io import to_graph6

FLOAT_DIGITS = 12


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{FLOAT_DIGITS}f}"
    if value is None:
        return ""
    if isinstance(value, dict):
        return ";".join(f"{k}={fmt(v)}" for k, v in sorted(value.items()))
    if isinstance(value, (tuple, list, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return " ".join(fmt(v) for v in items)
    if hasattr(value, "item"):  # numpy scalars
        return fmt(value.item())
    return str(value)


def config_line(config: dict | None) -> str:
    return "# config: " + json.dumps(config or {}, sort_keys=True, default=str)


def natural_key(text: str):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", str(text)) if t]


def to_csv(columns: Sequence[str], rows: Iterable[Sequence], config: dict | None = None,
           sort: bool = True) -> str:
    body = [[fmt(v) for v in r] for r in rows]
    if sort:
        body.sort(key=lambda r: [natural_key(c) for c in r])
    buf = io.StringIO()
    buf.write(config_line(config) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(body)
    return buf.getvalue()


def to_text(pairs: Iterable[tuple[str, object]], config: dict | None = None) -> str:
    lines = [config_line(config)]
    lines.extend(f"{k}={fmt(v)}" for k, v in pairs)
    return "\n".join(lines) + "\n"


def graph6_lines(strings: Iterable[str], config: dict | None = None, header: bool = True) -> str:
    lines = ([config_line(config)] if header else []) + sorted(strings)
    return "\n".join(lines) + "\n"


# -- per-report emitters -------------------------------------------------------


def spectral_text(result, config: dict | None = None) -> str:
    return to_text([("rho", result.rho), ("residual", result.residual),
                    ("iterations", result.iterations), ("connected", result.connected)], config)


def vector_csv(result, config: dict | None = None) -> str:
    return to_csv(("vertex", "entry"), [(v, float(x)) for v, x in enumerate(result.vector)], config)


LEMMA_COLUMNS = ("lemma", "holds", "quantities", "thresholds")


def lemma_csv(reports, config: dict | None = None) -> str:
    return to_csv(LEMMA_COLUMNS, [(r.lemma, r.holds, r.quantities, r.thresholds) for r in reports], config)


def lemma_summary(reports) -> str:
    if not reports:
        return "no lemma reports\n"
    held = sum(r.holds for r in sorted(reports, key=lambda r: natural_key(r.lemma)))
    lines = [f"{r.lemma}: {'holds' if r.holds else 'fails'}"
             for r in sorted(reports, key=lambda r: natural_key(r.lemma))]
    lines.append(f"{held}/{len(reports)} predicates hold")
    return "\n".join(lines) + "\n"


SEARCH_COLUMNS = ("ell", "n", "objective", "best_value", "gn_value", "comparison",
                  "graphs_enumerated", "exhaustive", "candidates", "witness_count")


def search_csv(report, config: dict | None = None) -> str:
    row = (report.ell, report.n, report.objective, float(report.best_value),
           None if report.gn_value is None else float(report.gn_value), report.comparison,
           report.graphs_enumerated, report.exhaustive, report.candidates, len(report.witnesses))
    return to_csv(SEARCH_COLUMNS, [row], config)


def search_graph6(report, config: dict | None = None) -> str:
    return graph6_lines(report.witnesses, config)


def consistency_csv(rows: list[dict], columns: Sequence[str], config: dict | None = None) -> str:
    return to_csv(columns, [[r[c] for c in columns] for r in rows], config)


def coloring_csv(colors: Sequence[int], config: dict | None = None) -> str:
    return to_csv(("vertex", "color"), list(enumerate(colors)), config)


def report_emit(report, format: str, path: str | Path | None = None,
                config: dict | None = None) -> str:
    """Render a report object as csv, text or graph6 and write it to ``path``."""
    if format not in ("csv", "text", "graph6"):
        raise ValueError(f"format must be csv, text or graph6, got {format!r}")
    if isinstance(report, (list, tuple)) and (not report or hasattr(report[0], "lemma")):
        if format == "graph6":
            raise ValueError("lemma reports have no graph6 form")
        text = lemma_csv(report, config) if format == "csv" else lemma_summary(report)
    elif hasattr(report, "witnesses"):
        text = {"csv": search_csv, "graph6": search_graph6,
                "text": lambda r, c: to_text([(k, getattr(r, k)) for k in SEARCH_COLUMNS
                                              if k != "witness_count"], c)}[format](report, config)
    elif hasattr(report, "rho") and hasattr(report, "residual"):
        if format == "graph6":
            raise ValueError("spectral results have no graph6 form")
        text = spectral_text(report, config) if format == "text" else vector_csv(report, config)
    elif isinstance(report, Graph):
        if format != "graph6":
            raise ValueError("graphs are emitted as graph6")
        text = graph6_lines([to_graph6(report)], config)
    else:
        raise ValueError(f"cannot emit {type(report).__name__}")
    if path is not None:
        emit(text, path)
    return text


def emit(text: str, path: str | Path | None) -> None:
    """Write ``text`` to ``path``, or stdout when ``path`` is None or '-'."""
    if path is None or str(path) == "-":
        import sys
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
