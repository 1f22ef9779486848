"""Delimited tables and growth figures for ``census`` output."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Sequence

from .valuedist import GrowthRecord


def delimiter_for(path: str | Path) -> str:
    return "," if str(path).lower().endswith(".csv") else "\t"


def render_table(header: Sequence[str], rows: Iterable[Sequence], delimiter: str = "\t") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _cell(x):
    if isinstance(x, float):
        return repr(x)
    return x


def write_table(path, header, rows) -> None:
    Path(path).write_text(render_table(header, rows, delimiter_for(path)))


def growth_rows(rec: GrowthRecord):
    return [(r, n) for r, n in zip(rec.radii, rec.counts)]


def growth_figure(rec: GrowthRecord, path, title: str = "") -> None:
    """Step plot of ``n(r)`` against ``log r`` with the best fit overlaid."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fit = rec.best
    lr = [math.log(r) for r in rec.radii]
    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    ax.step(lr, rec.counts, where="post", label="n(r)")
    ax.plot(lr, [fit.intercept + fit.coefficient * x**fit.power for x in lr], "--",
            label=f"{fit.intercept:.3g} + {fit.coefficient:.3g} (log r)^{fit.power}, R^2={fit.r2:.4f}")
    ax.set_xlabel("log r")
    ax.set_ylabel("count in |z| <= r")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
