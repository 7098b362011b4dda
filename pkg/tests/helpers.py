"""Shared builders for hand-crafted test worlds."""

from __future__ import annotations

import numpy as np

from overfly import Environment, GridSpec


def build_env(
    rows: int = 3,
    cols: int = 4,
    levels: tuple[float, ...] = (0.0, 10.0, 20.0),
    cell_size: float = 10.0,
    start: tuple[int, int] | None = None,
    goal: tuple[int, int] | None = None,
    start_level: int = 0,
    obstacle: np.ndarray | list | None = None,
    ceiling: np.ndarray | list | None = None,
    risk: np.ndarray | list | float = 0.0,
) -> Environment:
    """A world with flat terrain unless overridden.

    ``risk`` may be a scalar (uniform), an (rows, cols) array (same risk at
    every level of a cell), or a full (rows, cols, levels) array.
    """
    if start is None:
        start = (rows // 2, 0)
    if goal is None:
        goal = (rows // 2, cols - 1)
    spec = GridSpec(
        rows=rows,
        cols=cols,
        cell_size_m=cell_size,
        levels_m=tuple(levels),
        start_cell=start,
        goal_cell=goal,
        start_level=start_level,
    )
    if obstacle is None:
        obstacle = np.zeros((rows, cols))
    if ceiling is None:
        ceiling = np.full((rows, cols), levels[-1], dtype=float)
    risk_arr = np.asarray(risk, dtype=float)
    if risk_arr.ndim == 0:
        risk_arr = np.full((rows, cols, len(levels)), float(risk_arr))
    elif risk_arr.ndim == 2:
        risk_arr = np.repeat(risk_arr[:, :, None], len(levels), axis=2)
    return Environment(spec, np.asarray(obstacle, dtype=float), np.asarray(ceiling, dtype=float), risk_arr)


def all_simple_paths(env):
    """Test-side DFS over simple cell paths, independent of the module."""
    start, goal = env.spec.start_cell, env.spec.goal_cell
    out = []

    def walk(cur, path, used):
        if cur == goal:
            out.append(tuple(path))
            return
        for nxt in env.successors(cur):
            if nxt in used or not env.passable(nxt):
                continue
            path.append(nxt)
            used.add(nxt)
            walk(nxt, path, used)
            path.pop()
            used.remove(nxt)

    walk(start, [start], {start})
    return out


def raster_hv(points, ref):
    """Coordinate-compression hypervolume oracle: sum dominated grid cells."""
    pts = [(x, y) for x, y in points if x < ref[0] and y < ref[1]]
    if not pts:
        return 0.0
    xs = sorted({x for x, _ in pts} | {ref[0]})
    ys = sorted({y for _, y in pts} | {ref[1]})
    total = 0.0
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            if any(px <= xs[i] and py <= ys[j] for px, py in pts):
                total += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j])
    return total
