"""Variation operators closed over valid candidates.

Construction walks randomly from start to goal over unused passable cells.
Crossover splices a head of the first parent onto a tail of the second at a
random cut, shifting the cut rightward until the junction is an adjacent
move, then strips revisit loops and repairs entry levels. Mutation resamples
a share of entry levels and perturbs the embedded weight. Every operator
output validates against the world.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .environment import Cell, Environment
from .physics import DroneParams
from .solution import Chromosome


class InitializationError(RuntimeError):
    """Random construction exhausted its retry budget."""


@dataclass(frozen=True)
class OperatorConfig:
    """Operator rates and safety limits.

    Attributes:
        crossover_probability: Chance a mating pair is recombined.
        mutation_probability: Chance a candidate's entry levels are resampled
            and, independently, chance its weight is perturbed.
        mutation_rate: Share of mutable genes resampled per mutation
            (ceil(rate * (length - 1)) genes; the pinned first gene never).
        max_init_retries: Walk restarts before construction gives up.
        max_shift: Rightward cut shifts tried per child before the splice is
            abandoned; None sweeps the whole parent.
    """

    crossover_probability: float = 0.9
    mutation_probability: float = 0.1
    mutation_rate: float = 0.2
    max_init_retries: int = 1000
    max_shift: int | None = None

    def __post_init__(self) -> None:
        if not (0.0 <= self.crossover_probability <= 1.0):
            raise ValueError("crossover_probability must lie in [0, 1]")
        if not (0.0 <= self.mutation_probability <= 1.0):
            raise ValueError("mutation_probability must lie in [0, 1]")
        if not (0.0 < self.mutation_rate <= 1.0):
            raise ValueError("mutation_rate must lie in (0, 1]")
        if self.max_init_retries < 1:
            raise ValueError("max_init_retries must be >= 1")
        if self.max_shift is not None and self.max_shift < 0:
            raise ValueError("max_shift must be >= 0")


@dataclass
class OperatorStats:
    """Counters surfaced in run reports."""

    walk_restarts: int = 0
    splice_failures: int = 0
    loop_removals: int = 0
    level_repairs: int = 0
    crossovers: int = 0
    mutations: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "walk_restarts": self.walk_restarts,
            "splice_failures": self.splice_failures,
            "loop_removals": self.loop_removals,
            "level_repairs": self.level_repairs,
            "crossovers": self.crossovers,
            "mutations": self.mutations,
        }


def sample_entry_level(cell: Cell, previous_level: int, env: Environment, rng: np.random.Generator) -> int:
    """Draw an entry level for a passable cell.

    A three-way mixture, one third each: the lowest level clearing the cell's
    obstacle; the previous cell's level when it is feasible here (otherwise
    this branch falls through to the third); a uniform draw over the cell's
    whole feasible band.
    """
    lo, hi = env.feasible_levels(cell)
    branch = int(rng.integers(3))
    if branch == 0:
        return lo
    if branch == 1 and lo <= previous_level <= hi:
        return previous_level
    return int(rng.integers(lo, hi + 1))


def initialize(
    env: Environment,
    params: DroneParams,
    rng: np.random.Generator,
    config: OperatorConfig | None = None,
    stats: OperatorStats | None = None,
) -> Chromosome:
    """Construct a random valid candidate by walking start to goal.

    Each step picks uniformly among unused passable successors; a dead end
    abandons the walk and restarts, bounded by ``config.max_init_retries``.

    Raises:
        InitializationError: when every retry dead-ended.
    """
    del params  # reserved for biased construction; the walk is purely geometric
    cfg = config if config is not None else OperatorConfig()
    spec = env.spec
    for _ in range(cfg.max_init_retries):
        cells: list[Cell] = [spec.start_cell]
        levels: list[int] = [spec.start_level]
        used = {spec.start_cell}
        cur = spec.start_cell
        dead_end = False
        while cur != spec.goal_cell:
            options = [c for c in env.successors(cur) if c not in used and env.passable(c)]
            if not options:
                dead_end = True
                break
            cur = options[int(rng.integers(len(options)))]
            levels.append(sample_entry_level(cur, levels[-1], env, rng))
            cells.append(cur)
            used.add(cur)
        if dead_end:
            if stats is not None:
                stats.walk_restarts += 1
            continue
        return Chromosome(tuple(cells), tuple(levels), float(rng.random()))
    raise InitializationError(
        f"no start-to-goal walk found in {cfg.max_init_retries} attempts"
    )


def _strip_revisits(
    cells: list[Cell],
    levels: list[int],
    stats: OperatorStats | None,
) -> None:
    """Delete loops in place: everything between the first and last occurrence
    of a duplicated cell goes, keeping the first occurrence's entry level."""
    while True:
        first_at: dict[Cell, int] = {}
        dup: Cell | None = None
        for idx, cell in enumerate(cells):
            if cell in first_at:
                dup = cell
            else:
                first_at[cell] = idx
        if dup is None:
            return
        first = first_at[dup]
        last = max(i for i, cell in enumerate(cells) if cell == dup)
        del cells[first + 1 : last + 1]
        del levels[first + 1 : last + 1]
        if stats is not None:
            stats.loop_removals += 1


def _repair_levels(
    cells: list[Cell],
    levels: list[int],
    env: Environment,
    rng: np.random.Generator,
    stats: OperatorStats | None,
) -> None:
    """Resample any entry level outside its cell's feasible band (gene 0 is
    pinned to the start level and never touched)."""
    for t in range(1, len(cells)):
        if not env.level_ok(cells[t], levels[t]):
            levels[t] = sample_entry_level(cells[t], levels[t - 1], env, rng)
            if stats is not None:
                stats.level_repairs += 1


def _blend_weight(wa: float, wb: float, rng: np.random.Generator) -> float:
    alpha = float(rng.random())
    return alpha * wa + (1.0 - alpha) * wb


def _splice(
    head_cells: tuple[Cell, ...],
    head_levels: tuple[int, ...],
    tail_cells: tuple[Cell, ...],
    tail_levels: tuple[int, ...],
    weight_a: float,
    weight_b: float,
    env: Environment,
    rng: np.random.Generator,
    stats: OperatorStats | None,
) -> Chromosome:
    cells = list(head_cells) + list(tail_cells)
    levels = list(head_levels) + list(tail_levels)
    _strip_revisits(cells, levels, stats)
    _repair_levels(cells, levels, env, rng, stats)
    return Chromosome(tuple(cells), tuple(levels), _blend_weight(weight_a, weight_b, rng))


def crossover(
    parent_a: Chromosome,
    parent_b: Chromosome,
    env: Environment,
    rng: np.random.Generator,
    config: OperatorConfig | None = None,
    stats: OperatorStats | None = None,
) -> tuple[Chromosome, Chromosome]:
    """One-point crossover with rightward shift repair.

    Both children splice a head of ``parent_a`` onto a tail of ``parent_b``
    at a shared random cut. When the tail's first cell is not adjacent to the
    head's last cell, child one shifts the tail start rightward along
    ``parent_b`` only; child two shifts both indices in lockstep. A child
    whose shift budget runs out falls back to its parent unchanged (counted
    as a splice failure).
    """
    cfg = config if config is not None else OperatorConfig()
    la, lb = len(parent_a.cells), len(parent_b.cells)
    cut = int(rng.integers(0, min(la, lb) - 1))  # head may not already end at the goal
    limit = cfg.max_shift if cfg.max_shift is not None else max(la, lb)

    child_one: Chromosome | None = None
    for shift in range(limit + 1):
        tail_start = cut + 1 + shift
        if tail_start > lb - 1:
            break
        if parent_b.cells[tail_start] in env.successors(parent_a.cells[cut]):
            child_one = _splice(
                parent_a.cells[: cut + 1],
                parent_a.entry_levels[: cut + 1],
                parent_b.cells[tail_start:],
                parent_b.entry_levels[tail_start:],
                parent_a.weight,
                parent_b.weight,
                env,
                rng,
                stats,
            )
            break
    if child_one is None:
        if stats is not None:
            stats.splice_failures += 1
        child_one = parent_a

    child_two: Chromosome | None = None
    for shift in range(limit + 1):
        head_end = cut + shift
        tail_start = cut + 1 + shift
        if head_end > la - 2 or tail_start > lb - 1:
            break
        if parent_b.cells[tail_start] in env.successors(parent_a.cells[head_end]):
            child_two = _splice(
                parent_a.cells[: head_end + 1],
                parent_a.entry_levels[: head_end + 1],
                parent_b.cells[tail_start:],
                parent_b.entry_levels[tail_start:],
                parent_a.weight,
                parent_b.weight,
                env,
                rng,
                stats,
            )
            break
    if child_two is None:
        if stats is not None:
            stats.splice_failures += 1
        child_two = parent_b

    if stats is not None:
        stats.crossovers += 1
    return child_one, child_two


def mutate(
    ch: Chromosome,
    config: OperatorConfig,
    env: Environment,
    rng: np.random.Generator,
    stats: OperatorStats | None = None,
) -> Chromosome:
    """Resample entry levels and perturb the weight, each with probability
    ``mutation_probability``.

    A level mutation redraws ``ceil(mutation_rate * (length - 1))`` distinct
    entry-level genes (never the pinned first one) left to right via
    :func:`sample_entry_level`. The weight perturbation adds Gaussian noise
    (sigma 0.1) clamped back into [0, 1].
    """
    cfg = config if config is not None else OperatorConfig()
    levels = list(ch.entry_levels)
    weight = ch.weight
    mutated = False

    if float(rng.random()) < cfg.mutation_probability and len(ch.cells) > 1:
        count = math.ceil(cfg.mutation_rate * (len(ch.cells) - 1))
        count = min(count, len(ch.cells) - 1)
        positions = rng.choice(np.arange(1, len(ch.cells)), size=count, replace=False)
        for t in sorted(int(p) for p in positions):
            levels[t] = sample_entry_level(ch.cells[t], levels[t - 1], env, rng)
        mutated = True

    if float(rng.random()) < cfg.mutation_probability:
        weight = min(1.0, max(0.0, weight + float(rng.normal(0.0, 0.1))))
        mutated = True

    if mutated and stats is not None:
        stats.mutations += 1
    return Chromosome(ch.cells, tuple(levels), weight)
