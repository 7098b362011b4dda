"""Front quality metrics and comparison tables.

Hypervolume is the exact 2D dominated area between a front and a reference
point (minimization). Fronts from different solvers are compared per
instance as percentages of the row's best hypervolume, the convention being
that winners read 100.00.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np


class MetricError(ValueError):
    """Metric preconditions violated (empty input, zero variance, ...)."""


Point = tuple[float, float]


def _pareto_staircase(points: np.ndarray) -> np.ndarray:
    """Non-dominated subset of 2D points (minimization), sorted by the first
    objective ascending; the second objective then strictly decreases.
    Duplicates collapse to one representative."""
    order = np.lexsort((points[:, 1], points[:, 0]))
    kept: list[np.ndarray] = []
    best_y = math.inf
    for idx in order:
        y = points[idx, 1]
        if y < best_y:
            kept.append(points[idx])
            best_y = y
    return np.asarray(kept)


def hypervolume_2d(points: Iterable[Point], reference: Point) -> float:
    """Exact dominated area between a 2D front and a reference (minimization).

    Dominated points are filtered first. Points that do not strictly dominate
    the reference contribute nothing and are dropped with a warning.

    Args:
        points: Objective pairs.
        reference: Upper-right reference point.

    Returns:
        Area of the union of rectangles spanned by the points and the
        reference; 0.0 for an empty (or fully excluded) front.
    """
    pts = np.asarray(list(points), dtype=float)
    if pts.size == 0:
        return 0.0
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise MetricError(f"expected an (n, 2) collection of points, got shape {pts.shape}")
    rx, ry = float(reference[0]), float(reference[1])
    inside = (pts[:, 0] < rx) & (pts[:, 1] < ry)
    excluded = int((~inside).sum())
    if excluded:
        warnings.warn(
            f"hypervolume_2d: {excluded} point(s) do not strictly dominate the "
            f"reference {reference} and were excluded",
            stacklevel=2,
        )
    pts = pts[inside]
    if len(pts) == 0:
        return 0.0
    pts = _pareto_staircase(pts)
    area = 0.0
    prev_y = ry
    for x, y in pts:
        area += (rx - x) * (prev_y - y)
        prev_y = y
    return float(area)


def shared_reference(
    fronts: Iterable[Iterable[Point]],
    scale: float = 1.1,
    eps: float = 1e-6,
) -> Point:
    """Common reference point for a set of fronts.

    Componentwise maximum over the union of all points, scaled by ``scale``;
    a component whose maximum is zero becomes ``eps`` so that zero-valued
    objectives still strictly dominate the reference.
    """
    best: list[float] | None = None
    for front in fronts:
        for p in front:
            if best is None:
                best = [float(p[0]), float(p[1])]
            else:
                best[0] = max(best[0], float(p[0]))
                best[1] = max(best[1], float(p[1]))
    if best is None:
        raise MetricError("cannot build a reference point from zero points")
    return tuple(v * scale if v > 0.0 else eps for v in best)  # type: ignore[return-value]


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation coefficient, clamped into [-1, 1].

    Raises:
        MetricError: on fewer than two points or zero variance in either
            argument.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise MetricError(f"expected equal-length 1D sequences, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise MetricError("correlation needs at least two points")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt((dx * dx).sum()))
    sy = float(np.sqrt((dy * dy).sum()))
    if sx == 0.0 or sy == 0.0:
        raise MetricError("correlation is undefined for a zero-variance sequence")
    r = float((dx * dy).sum() / (sx * sy))
    return min(1.0, max(-1.0, r))


@dataclass(frozen=True)
class FrontSummary:
    """One solver's front on one instance, ready for table assembly."""

    instance_id: str
    algorithm: str
    tuned: bool
    hypervolume: float
    front_size: int
    relative_pct: float | None = None
    degenerate: bool = False


def relative_hv_table(summaries: Sequence[FrontSummary]) -> list[FrontSummary]:
    """Fill per-row relative hypervolume percentages.

    Rows are instances; within a row every summary is scored as
    ``100 * hv / max(hv)`` so at least one entry reads exactly 100.0 (ties
    share it). A row whose maximum hypervolume is zero is flagged degenerate
    and scored 0.
    """
    by_instance: dict[str, list[FrontSummary]] = {}
    for s in summaries:
        by_instance.setdefault(s.instance_id, []).append(s)
    out: list[FrontSummary] = []
    for instance in by_instance:
        group = by_instance[instance]
        best = max(s.hypervolume for s in group)
        for s in group:
            if best > 0.0:
                out.append(replace(s, relative_pct=100.0 * s.hypervolume / best))
            else:
                out.append(replace(s, relative_pct=0.0, degenerate=True))
    return out


def _column_order(summaries: Sequence[FrontSummary]) -> list[tuple[str, bool]]:
    """Tuned columns first, then untuned; algorithms in canonical order."""
    canonical = ["spea2", "nsga2", "nsga3"]
    algos = sorted({s.algorithm for s in summaries}, key=lambda a: (canonical.index(a) if a in canonical else len(canonical), a))
    tuned_flags = sorted({s.tuned for s in summaries}, reverse=True)  # True before False
    return [(a, t) for t in tuned_flags for a in algos]


def _instance_sort_key(instance_id: str):
    m = re.fullmatch(r"T(\d+)-(\d+)", instance_id)
    if m:
        return (0, int(m.group(1)), int(m.group(2)), instance_id)
    return (1, 0, 0, instance_id)


def table_csv(summaries: Sequence[FrontSummary]) -> str:
    """Relative-hypervolume table as CSV (two-decimal percentages)."""
    rows = relative_hv_table(summaries)
    columns = _column_order(rows)
    cells = {(s.instance_id, s.algorithm, s.tuned): s for s in rows}
    instances = sorted({s.instance_id for s in rows}, key=_instance_sort_key)
    header = ["instance"] + [
        f"{algo}_{'tuned' if tuned else 'untuned'}_pct" for algo, tuned in columns
    ]
    lines = [",".join(header)]
    for instance in instances:
        fields = [instance]
        for algo, tuned in columns:
            s = cells.get((instance, algo, tuned))
            fields.append("" if s is None else f"{s.relative_pct:.2f}")
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def table_text(summaries: Sequence[FrontSummary]) -> str:
    """Relative-hypervolume table as aligned text."""
    rows = relative_hv_table(summaries)
    columns = _column_order(rows)
    cells = {(s.instance_id, s.algorithm, s.tuned): s for s in rows}
    instances = sorted({s.instance_id for s in rows}, key=_instance_sort_key)
    headers = ["instance"] + [
        f"{algo} ({'tuned' if tuned else 'untuned'})" for algo, tuned in columns
    ]
    body: list[list[str]] = []
    for instance in instances:
        line = [instance]
        for algo, tuned in columns:
            s = cells.get((instance, algo, tuned))
            line.append("-" if s is None else f"{s.relative_pct:.2f}%")
        body.append(line)
    widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*headers)]
    out.append("  ".join("-" * w for w in widths))
    out.extend(fmt.format(*row) for row in body)
    return "\n".join(out) + "\n"
