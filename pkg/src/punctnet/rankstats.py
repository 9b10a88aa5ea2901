"""Rank-frequency tables and power-law / Zipf-Mandelbrot fits.

Fits are ordinary least squares in log-log space.  The Zipf-Mandelbrot
shift ``c`` is found by a coarse grid plus golden-section search on
``log(1 + c)``, with the exponent and amplitude solved in closed form at
each candidate shift.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Mapping, NamedTuple

import numpy as np

from .corpus import Corpus, TokenKind, aggregate_fullstops


class RankEntry(NamedTuple):
    rank: int
    surface: str
    kind: TokenKind
    frequency: int
    probability: float


@dataclass
class RankTable:
    """Items ordered by decreasing frequency; ties broken by first occurrence."""

    entries: list[RankEntry]
    total: int  # denominator used for probabilities

    def __len__(self) -> int:
        return len(self.entries)

    def probabilities(self) -> np.ndarray:
        return np.array([e.probability for e in self.entries])

    def surface_rank(self, surface: str) -> int | None:
        for e in self.entries:
            if e.surface == surface:
                return e.rank
        return None

    def top_surfaces(self, k: int) -> list[str]:
        return [e.surface for e in self.entries[:k]]


def build_rank_table(corpus: Corpus, include_punct: bool = True, fs_mode: bool = False) -> RankTable:
    """Count token frequencies and assign 1-based ranks.

    With ``include_punct=False`` mark tokens are excluded from the counts
    and from the probability denominator.  ``fs_mode`` merges all
    sentence-ending marks into ``#fs`` before counting.
    """
    if len(corpus) == 0:
        raise ValueError("cannot rank an empty corpus")
    if fs_mode:
        corpus = aggregate_fullstops(corpus)
    counts: dict[str, int] = {}
    first_pos: dict[str, int] = {}
    kinds: dict[str, TokenKind] = {}
    for pos, tok in enumerate(corpus.tokens):
        if not include_punct and tok.kind is not TokenKind.WORD:
            continue
        if tok.surface in counts:
            counts[tok.surface] += 1
        else:
            counts[tok.surface] = 1
            first_pos[tok.surface] = pos
            kinds[tok.surface] = tok.kind
    if not counts:
        raise ValueError("no tokens left to rank (corpus is punctuation-only?)")
    total = sum(counts.values())
    ordered = sorted(counts, key=lambda s: (-counts[s], first_pos[s]))
    entries = [
        RankEntry(rank, s, kinds[s], counts[s], counts[s] / total)
        for rank, s in enumerate(ordered, start=1)
    ]
    return RankTable(entries=entries, total=total)


def rank_table_from_counts(counts: Mapping[str, int]) -> RankTable:
    """Rank a bare item->count mapping (ties broken by item order)."""
    items = [(s, c) for s, c in counts.items() if c > 0]
    if not items:
        raise ValueError("no positive counts")
    order = {s: i for i, (s, _) in enumerate(items)}
    items.sort(key=lambda sc: (-sc[1], order[sc[0]]))
    total = sum(c for _, c in items)
    entries = [
        RankEntry(rank, s, TokenKind.WORD, c, c / total)
        for rank, (s, c) in enumerate(items, start=1)
    ]
    return RankTable(entries=entries, total=total)


@dataclass
class FitResult:
    alpha: float
    c: float
    amplitude: float
    r_min: int
    r_max: int
    rss: float
    boundary: bool = False  # search ended pinned at the shift upper bound
    label: str = ""

    def predict(self, ranks: np.ndarray) -> np.ndarray:
        return self.amplitude * np.power(ranks + self.c, -self.alpha)


def _range_arrays(table: RankTable, fit_range: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    r_min, r_max = fit_range
    if r_min < 1 or r_min >= r_max:
        raise ValueError(f"bad fit range [{r_min}, {r_max}]")
    r_max = min(r_max, len(table))
    ranks = np.arange(r_min, r_max + 1, dtype=np.float64)
    probs = np.array([table.entries[r - 1].probability for r in range(r_min, r_max + 1)])
    if ranks.size < 10:
        raise ValueError(f"fit range [{r_min}, {r_max}] has {ranks.size} points; need at least 10")
    return ranks, probs


def fit_at_shift(table: RankTable, fit_range: tuple[int, int], c: float, label: str = "") -> FitResult:
    """Closed-form log-log OLS of probability on (rank + c)."""
    ranks, probs = _range_arrays(table, fit_range)
    x = np.log(ranks + c)
    y = np.log(probs)
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    slope = float(np.dot(dx, y - ym) / np.dot(dx, dx))
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    rss = float(np.dot(resid, resid))
    return FitResult(
        alpha=-slope,
        c=c,
        amplitude=math.exp(intercept),
        r_min=int(ranks[0]),
        r_max=int(ranks[-1]),
        rss=rss,
        label=label,
    )


def fit_power_law(table: RankTable, fit_range: tuple[int, int] = (10, 10_000), label: str = "") -> FitResult:
    """Pure power-law fit (shift fixed at zero)."""
    return fit_at_shift(table, fit_range, 0.0, label=label)


def fit_zipf_mandelbrot(
    table: RankTable,
    fit_range: tuple[int, int] | None = None,
    c_max: float = 100.0,
    tol: float = 1e-3,
    label: str = "",
) -> FitResult:
    """Fit the shifted power law, minimizing log-log RSS over the shift.

    The shift is searched on a logarithmic grid over [0, c_max] and
    refined by golden-section on log(1 + c) to relative tolerance ``tol``.
    If the minimum sits at the upper bound the result is flagged as a
    boundary solution.
    """
    if fit_range is None:
        fit_range = (1, len(table))
    ranks, probs = _range_arrays(table, fit_range)
    y = np.log(probs)

    def rss_at(u: float) -> float:
        x = np.log(ranks + math.expm1(u))
        xm = x.mean()
        ym = y.mean()
        dx = x - xm
        slope = float(np.dot(dx, y - ym) / np.dot(dx, dx))
        resid = (y - ym) - slope * dx
        return float(np.dot(resid, resid))

    u_hi = math.log1p(c_max)
    grid = np.linspace(0.0, u_hi, 33)
    values = [rss_at(u) for u in grid]
    best = int(np.argmin(values))
    boundary = best == len(grid) - 1
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = rss_at(x1), rss_at(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = rss_at(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = rss_at(x2)
    u_best = (a + b) / 2.0
    if boundary:
        u_best = u_hi
    result = fit_at_shift(table, fit_range, math.expm1(u_best), label=label)
    result.boundary = boundary
    return result


@dataclass
class ShiftComparison:
    with_punct: FitResult
    without_punct: FitResult
    delta_c: float  # with - without


def compare_c(with_punct: FitResult, without_punct: FitResult) -> ShiftComparison:
    """Report both Zipf-Mandelbrot shifts and their difference (with - without)."""
    if with_punct.label and without_punct.label and with_punct.label != without_punct.label:
        raise ValueError(
            f"fits come from different corpora: {with_punct.label!r} vs {without_punct.label!r}"
        )
    return ShiftComparison(
        with_punct=with_punct,
        without_punct=without_punct,
        delta_c=with_punct.c - without_punct.c,
    )


def write_rank_csv(table: RankTable, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "surface", "kind", "frequency", "probability"])
        for e in table.entries:
            writer.writerow([e.rank, e.surface, e.kind.value, e.frequency, repr(e.probability)])


def read_rank_csv(path: str | Path) -> RankTable:
    entries: list[RankEntry] = []
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            entries.append(
                RankEntry(
                    rank=int(row["rank"]),
                    surface=row["surface"],
                    kind=TokenKind(row["kind"]),
                    frequency=int(row["frequency"]),
                    probability=float(row["probability"]),
                )
            )
    total = sum(e.frequency for e in entries)
    return RankTable(entries=entries, total=total)


def write_fit_json(fit: FitResult, path: str | Path) -> None:
    Path(path).write_text(json.dumps(asdict(fit), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_fit_json(path: str | Path) -> FitResult:
    return FitResult(**json.loads(Path(path).read_text(encoding="utf-8")))
