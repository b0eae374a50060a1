"""Optional SVG rendering of figure tables.

matplotlib is imported lazily so the rest of the package works without
it. Output is made reproducible by fixing the SVG hash salt and dropping
the creation date.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from gatecmp.csvio import ERROR_PREFIX
from gatecmp.figures import FigureTable


class PlottingUnavailable(RuntimeError):
    pass


def _numeric(column) -> np.ndarray:
    return np.array(
        [np.nan if isinstance(v, str) and v.startswith(ERROR_PREFIX) else float(v) for v in column]
    )


def render_figure(table: FigureTable, out_dir: str | Path) -> Path:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise PlottingUnavailable("install matplotlib to render plots") from exc

    matplotlib.rcParams["svg.hashsalt"] = "gatecmp"
    columns = list(zip(*table.rows))
    fig, ax = plt.subplots(figsize=(5, 3.6))
    if table.kind == "map":
        x, y, z = (_numeric(c) for c in columns)
        xs, ys = np.unique(x), np.unique(y)
        grid = np.full((ys.size, xs.size), np.nan)
        grid[np.searchsorted(ys, y), np.searchsorted(xs, x)] = z
        mesh = ax.pcolormesh(xs, ys, np.clip(grid, 0, 1), shading="nearest")
        fig.colorbar(mesh, ax=ax, label=table.header[2])
        ax.set_ylabel(table.header[1])
    else:
        x = _numeric(columns[0])
        for name, col in zip(table.header[1:], columns[1:]):
            ax.plot(x, _numeric(col), label=name)
        ax.legend(fontsize="small")
        if table.xlog:
            ax.set_xscale("log")
    ax.set_xlabel(table.header[0])
    ax.set_title(f"figure {table.figure_id}")
    fig.tight_layout()
    path = Path(out_dir) / f"{table.figure_id}.svg"
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
