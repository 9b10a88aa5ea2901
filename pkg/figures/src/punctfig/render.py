"""Figure rendering with deterministic vector output.

Five figure kinds cover the pipeline's tables: ``zipf`` (log-log
rank-frequency with captioned items and an optional power-law overlay),
``zm-fit`` (with/without-punctuation curves and their shifted-power-law
fits), ``scatter`` (per-item path length vs clustering with error bars and
a grey null-model band), ``scatter-rescaled`` (the same divided by the
null means), and ``removal`` (a metric across hub removals).

Rendering is reproducible byte-for-byte: fixed figure geometry, a fixed
SVG hash salt, and no timestamps in the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import SchemaError, read_fit, read_ranks, read_removal, read_scatter

KINDS = ("zipf", "zm-fit", "scatter", "scatter-rescaled", "removal")

_RC = {
    "figure.figsize": (5.0, 3.8),
    "figure.dpi": 100,
    "font.size": 9,
    "axes.labelsize": 10,
    "svg.hashsalt": "punctfig",
    "path.simplify": False,
}

GREY = "0.55"
BAND = "#cccccc"


@dataclass
class FigureSpec:
    kind: str
    inputs: dict[str, str]
    out: str
    labels: list[str] = field(default_factory=list)
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None
    metric: str = "aspl_ratio"  # removal figures
    title: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        for role, path in self.inputs.items():
            if not Path(path).exists():
                raise FileNotFoundError(f"{self.kind} figure input {role!r}: no such file {path}")

    def require(self, role: str) -> str:
        try:
            return self.inputs[role]
        except KeyError:
            raise SchemaError(f"{self.kind} figure needs input {role!r}") from None


def load_spec(data: dict) -> FigureSpec:
    known = {"kind", "inputs", "out", "labels", "xlim", "ylim", "metric", "title"}
    unknown = set(data) - known
    if unknown:
        raise SchemaError(f"unknown figure-spec fields: {sorted(unknown)}")
    return FigureSpec(
        kind=data["kind"],
        inputs=dict(data.get("inputs", {})),
        out=data["out"],
        labels=list(data.get("labels", [])),
        xlim=tuple(data["xlim"]) if data.get("xlim") else None,
        ylim=tuple(data["ylim"]) if data.get("ylim") else None,
        metric=data.get("metric", "aspl_ratio"),
        title=data.get("title", ""),
    )


def _annotate(ax, x, y, text):
    ax.annotate(text, (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)


def _draw_zipf(ax, spec: FigureSpec):
    rows = read_ranks(spec.require("ranks"))
    ranks = np.array([r["rank"] for r in rows], float)
    probs = np.array([r["probability"] for r in rows], float)
    is_mark = np.array([r["surface"].startswith("#") for r in rows])
    ax.loglog(ranks[~is_mark], probs[~is_mark], ".", color=GREY, ms=3, label="words")
    if is_mark.any():
        ax.loglog(ranks[is_mark], probs[is_mark], "s", color="black", ms=4, label="marks")
    if "power_fit" in spec.inputs:
        fit = read_fit(spec.inputs["power_fit"])
        grid = np.geomspace(1, ranks.max(), 200)
        ax.loglog(grid, fit["amplitude"] * grid ** (-fit["alpha"]), "--", color="black",
                  lw=0.8, label=f"slope {-fit['alpha']:.2f}")
    index = {r["surface"]: r for r in rows}
    for surface in spec.labels:
        if surface in index:
            _annotate(ax, index[surface]["rank"], index[surface]["probability"], surface)
    ax.set_xlabel("rank")
    ax.set_ylabel("probability")
    ax.legend(frameon=False, fontsize=8)
    return ranks.min(), ranks.max(), probs.min(), probs.max()


def _draw_zm_fit(ax, spec: FigureSpec):
    xs, ys = [], []
    for role, color in (("ranks_without", GREY), ("ranks_with", "black")):
        rows = read_ranks(spec.require(role))
        ranks = np.array([r["rank"] for r in rows], float)
        probs = np.array([r["probability"] for r in rows], float)
        label = "words" if role == "ranks_without" else "words + marks"
        ax.loglog(ranks, probs, ".", color=color, ms=2, label=label)
        fit_role = "fit_without" if role == "ranks_without" else "fit_with"
        if fit_role in spec.inputs:
            fit = read_fit(spec.inputs[fit_role])
            grid = np.geomspace(1, ranks.max(), 200)
            ax.loglog(grid, fit["amplitude"] * (grid + fit["c"]) ** (-fit["alpha"]),
                      "-", color=color, lw=0.9, label=f"c = {fit['c']:.2f}")
        xs += [ranks.min(), ranks.max()]
        ys += [probs.min(), probs.max()]
    ax.set_xlabel("rank")
    ax.set_ylabel("probability")
    ax.legend(frameon=False, fontsize=8)
    return min(xs), max(xs), min(ys), max(ys)


def _scatter_points(rows, x_key, y_key):
    pts = [r for r in rows if r[x_key] is not None and r[y_key] is not None]
    return pts, np.array([r[x_key] for r in pts]), np.array([r[y_key] for r in pts])


def _draw_scatter(ax, spec: FigureSpec):
    rows = read_scatter(spec.require("scatter"))
    pts, x, y = _scatter_points(rows, "aspl_mean", "lcc_mean")
    # Error bars show standard deviations over realizations.
    xerr = np.array([r["aspl_stderr"] * math.sqrt(max(r["count"], 1)) for r in pts])
    yerr = np.array([r["lcc_stderr"] * math.sqrt(max(r["count"], 1)) for r in pts])
    marks = np.array([r["surface"].startswith("#") for r in pts])
    ax.errorbar(x[~marks], y[~marks], xerr=xerr[~marks], yerr=yerr[~marks], fmt="o",
                mfc="white", color="black", ms=4, lw=0.8, label="words")
    if marks.any():
        ax.errorbar(x[marks], y[marks], xerr=xerr[marks], yerr=yerr[marks], fmt="o",
                    color="black", ms=4, lw=0.8, label="marks")

    null_pts, nx, ny = _scatter_points(rows, "aspl_null_mean", "lcc_null_mean")
    order = np.argsort(nx)
    nx, ny = nx[order], ny[order]
    nband = np.array(
        [null_pts[i]["lcc_null_stderr"] * math.sqrt(max(null_pts[i]["null_count"], 1))
         for i in order]
    )
    ax.plot(nx, ny, "--", color="black", lw=0.8, label="null mean")
    ax.fill_between(nx, ny - nband, ny + nband, color=BAND, zorder=0, label="null std")

    for r in pts:
        if r["surface"] in spec.labels:
            _annotate(ax, r["aspl_mean"], r["lcc_mean"], r["surface"])
    ax.set_xlabel("mean shortest-path length")
    ax.set_ylabel("mean local clustering")
    ax.legend(frameon=False, fontsize=7)
    allx = np.concatenate([x, nx])
    ally = np.concatenate([y, ny - nband, ny + nband])
    return allx.min(), allx.max(), ally.min(), ally.max()


def _draw_scatter_rescaled(ax, spec: FigureSpec):
    rows = read_scatter(spec.require("scatter"))
    pts, x, y = _scatter_points(rows, "aspl_ratio", "lcc_ratio")
    marks = np.array([r["surface"].startswith("#") for r in pts])
    extras = np.array([r["surface"] in spec.labels for r in pts])
    words = ~marks & ~extras
    ax.plot(x[words], y[words], "o", mfc="white", color="black", ms=4, label="words")
    if marks.any():
        ax.plot(x[marks], y[marks], "o", color="black", ms=4, label="marks")
    if extras.any():
        ax.plot(x[extras], y[extras], "^", color="black", ms=5, label="extra items")
    ax.axhline(1.0, color=GREY, lw=0.6)
    ax.axvline(1.0, color=GREY, lw=0.6)
    for r in pts:
        _annotate(ax, r["aspl_ratio"], r["lcc_ratio"], r["surface"])
    ax.set_xlabel("path length / null")
    ax.set_ylabel("clustering / null")
    ax.legend(frameon=False, fontsize=7)
    return x.min(), x.max(), y.min(), y.max()


def _draw_removal(ax, spec: FigureSpec):
    rows = read_removal(spec.require("removal"))
    metric = spec.metric
    if rows and metric not in rows[0]:
        raise SchemaError(f"{spec.require('removal')}: missing column {metric!r}")
    pts = [r for r in rows if r[metric] is not None]
    x = np.array([r["rank"] for r in pts])
    y = np.array([r[metric] for r in pts], float)
    ax.plot(x, y, "o-", color="black", ms=4, lw=0.8)
    ax.set_xticks(x)
    ax.set_xticklabels(
        ["full" if r["rank"] == 0 else (r["surface"] or str(r["rank"])) for r in pts],
        rotation=60, fontsize=7,
    )
    if metric.endswith("_ratio"):
        ax.axhline(1.0, color=GREY, lw=0.6)
        y = np.append(y, 1.0)
    ax.set_xlabel("removed item (by rank)")
    ax.set_ylabel(metric.replace("_", " "))
    return float(x.min()), float(x.max()), float(y.min()), float(y.max())


_DRAWERS = {
    "zipf": _draw_zipf,
    "zm-fit": _draw_zm_fit,
    "scatter": _draw_scatter,
    "scatter-rescaled": _draw_scatter_rescaled,
    "removal": _draw_removal,
}

_LOG_KINDS = {"zipf", "zm-fit"}


def _pad(lo: float, hi: float, log: bool) -> tuple[float, float]:
    if log:
        return lo / 1.5, hi * 1.5
    span = (hi - lo) or max(abs(hi), 1.0)
    return lo - 0.06 * span, hi + 0.06 * span


def render(spec: FigureSpec, out: str | Path | None = None,
           xlim: tuple[float, float] | None = None,
           ylim: tuple[float, float] | None = None) -> tuple[tuple[float, float], tuple[float, float]]:
    """Render one figure; returns the (xlim, ylim) actually applied."""
    out = Path(out if out is not None else spec.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots()
        x0, x1, y0, y1 = _DRAWERS[spec.kind](ax, spec)
        log = spec.kind in _LOG_KINDS
        applied_x = xlim or spec.xlim or _pad(x0, x1, log)
        applied_y = ylim or spec.ylim or _pad(y0, y1, log)
        ax.set_xlim(*applied_x)
        ax.set_ylim(*applied_y)
        if spec.title:
            ax.set_title(spec.title, fontsize=10)
        fig.tight_layout()
        fig.savefig(out, format=out.suffix.lstrip(".") or "svg", metadata={"Date": None})
        plt.close(fig)
    return tuple(applied_x), tuple(applied_y)


def render_batch(specs: list[FigureSpec]) -> dict[str, tuple]:
    """Render all figures, forcing identical axis ranges per figure kind.

    Explicit per-spec limits win; otherwise every same-kind panel gets the
    union of the group's data ranges.
    """
    shared: dict[str, tuple] = {}
    for kind in {s.kind for s in specs}:
        group = [s for s in specs if s.kind == kind]
        ranges = []
        with matplotlib.rc_context(_RC):
            for s in group:
                fig, ax = plt.subplots()
                ranges.append(_DRAWERS[kind](ax, s))
                plt.close(fig)
        x0 = min(r[0] for r in ranges)
        x1 = max(r[1] for r in ranges)
        y0 = min(r[2] for r in ranges)
        y1 = max(r[3] for r in ranges)
        log = kind in _LOG_KINDS
        shared[kind] = (_pad(x0, x1, log), _pad(y0, y1, log))

    results = {}
    for s in specs:
        xlim, ylim = shared[s.kind]
        results[s.out] = render(s, xlim=s.xlim or xlim, ylim=s.ylim or ylim)
    return results
