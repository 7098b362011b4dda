"""Candidate flight paths and their three objectives.

A candidate is a variable-length, two-row chromosome: a cell sequence from
start to goal (adjacent, no revisits) paired with the altitude level at which
each cell is entered, plus an embedded preference weight in [0, 1] used when
the length and energy objectives are blended into one cost.

Objectives, all minimized:
    * length: sum of per-segment 3D distances,
    * energy: rotor-craft energy model over the segments,
    * risk: sum over segments of the worst risk value the drone sweeps at the
      departing cell between its entry level and the next cell's entry level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .environment import Cell, Environment
from .physics import DroneParams, average_density, segment_energy


class ChromosomeError(ValueError):
    """A candidate violated its structural contract."""


@dataclass(frozen=True)
class Chromosome:
    """Two-row path encoding plus an embedded objective weight."""

    cells: tuple[Cell, ...]
    entry_levels: tuple[int, ...]
    weight: float

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class ObjectiveVector:
    length_m: float
    energy_j: float
    risk: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.length_m, self.energy_j, self.risk)


@dataclass(frozen=True)
class Violation:
    rule: str
    index: int
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class SegmentTerm:
    """Per-segment evaluation intermediates, exposed for testing."""

    frm: Cell
    to: Cell
    horizontal_m: float
    climb_m: float          # signed altitude change
    ascent_m: float         # max(climb, 0)
    descent_m: float        # max(-climb, 0)
    length_m: float
    energy_j: float
    risk: float
    risk_level: int         # level index at which the worst risk occurs


def validate(ch: Chromosome, env: Environment) -> ValidationReport:
    """Check a candidate against the world; reports, never raises."""
    spec = env.spec
    issues: list[Violation] = []

    if len(ch.cells) != len(ch.entry_levels):
        issues.append(
            Violation(
                "shape",
                0,
                f"{len(ch.cells)} cells but {len(ch.entry_levels)} entry levels",
            )
        )
        return ValidationReport(False, tuple(issues))
    if len(ch.cells) < 2:
        issues.append(Violation("shape", 0, "a path needs at least two cells"))
        return ValidationReport(False, tuple(issues))

    if not (0.0 <= ch.weight <= 1.0):
        issues.append(Violation("weight", 0, f"weight {ch.weight} outside [0, 1]"))

    if ch.cells[0] != spec.start_cell:
        issues.append(Violation("endpoints", 0, f"path starts at {ch.cells[0]}, not {spec.start_cell}"))
    if ch.cells[-1] != spec.goal_cell:
        issues.append(
            Violation("endpoints", len(ch.cells) - 1, f"path ends at {ch.cells[-1]}, not {spec.goal_cell}")
        )
    if ch.entry_levels[0] != spec.start_level:
        issues.append(
            Violation("start-level", 0, f"first entry level {ch.entry_levels[0]} != {spec.start_level}")
        )

    seen: set[Cell] = set()
    for t, cell in enumerate(ch.cells):
        if not env.in_bounds(cell):
            issues.append(Violation("cell-bounds", t, f"cell {cell} outside the grid"))
            return ValidationReport(False, tuple(issues))
        if cell in seen:
            issues.append(Violation("revisit", t, f"cell {cell} visited twice"))
        seen.add(cell)

    for t in range(len(ch.cells) - 1):
        if ch.cells[t + 1] not in env.successors(ch.cells[t]):
            issues.append(
                Violation("adjacency", t, f"{ch.cells[t]} -> {ch.cells[t + 1]} is not a legal move")
            )

    levels = spec.levels_m
    for t in range(len(ch.cells)):
        k = ch.entry_levels[t]
        if not (0 <= k < len(levels)):
            issues.append(Violation("level-range", t, f"entry level {k} outside 0..{len(levels) - 1}"))
            continue
        if t == 0:
            continue  # the start level is pinned by the world spec
        data_obstacle = env.obstacle_m[ch.cells[t][0], ch.cells[t][1]]
        data_ceiling = env.ceiling_m[ch.cells[t][0], ch.cells[t][1]]
        if levels[k] < data_obstacle:
            issues.append(
                Violation(
                    "obstacle-clearance",
                    t,
                    f"entering {ch.cells[t]} at {levels[k]} m, below its {data_obstacle} m obstacle",
                )
            )
        if levels[k] > data_ceiling:
            issues.append(
                Violation(
                    "ceiling",
                    t,
                    f"entering {ch.cells[t]} at {levels[k]} m, above its {data_ceiling} m ceiling",
                )
            )

    return ValidationReport(not issues, tuple(issues))


def max_risk_between(env: Environment, cell: Cell, level_a: int, level_b: int) -> tuple[float, int]:
    """Worst risk at ``cell`` over the inclusive level band between two levels.

    Symmetric in the two levels. Returns (risk, level index of the maximum;
    lowest such index on ties).
    """
    lo, hi = (level_a, level_b) if level_a <= level_b else (level_b, level_a)
    row = env.risk_at(cell)
    best = row[lo]
    best_k = lo
    for k in range(lo + 1, hi + 1):
        if row[k] > best:
            best = row[k]
            best_k = k
    return best, best_k


def segment_terms(ch: Chromosome, env: Environment, params: DroneParams) -> list[SegmentTerm]:
    """Per-segment evaluation intermediates; assumes a valid candidate."""
    levels = env.spec.levels_m
    out: list[SegmentTerm] = []
    for t in range(len(ch.cells) - 1):
        frm, to = ch.cells[t], ch.cells[t + 1]
        la, lb = ch.entry_levels[t], ch.entry_levels[t + 1]
        d = env.distance(frm, to)
        climb = levels[lb] - levels[la]
        rho = average_density(levels[la], levels[lb], params)
        risk, risk_level = max_risk_between(env, frm, la, lb)
        out.append(
            SegmentTerm(
                frm=frm,
                to=to,
                horizontal_m=d,
                climb_m=climb,
                ascent_m=climb if climb > 0.0 else 0.0,
                descent_m=-climb if climb < 0.0 else 0.0,
                length_m=math.sqrt(d * d + climb * climb),
                energy_j=segment_energy(d, climb, rho, params),
                risk=risk,
                risk_level=risk_level,
            )
        )
    return out


def evaluate(ch: Chromosome, env: Environment, params: DroneParams) -> ObjectiveVector:
    """Three objectives of a candidate.

    Raises:
        ChromosomeError: when the candidate fails :func:`validate`.
    """
    report = validate(ch, env)
    if not report.ok:
        first = report.violations[0]
        raise ChromosomeError(
            f"invalid candidate ({len(report.violations)} violation(s); "
            f"first: {first.rule} at index {first.index}: {first.detail})"
        )
    length = 0.0
    energy = 0.0
    risk = 0.0
    for term in segment_terms(ch, env, params):
        length += term.length_m
        energy += term.energy_j
        risk += term.risk
    return ObjectiveVector(length, energy, risk)


@dataclass(frozen=True)
class NormBounds:
    """Min-max normalization bounds for the length and energy objectives."""

    length_lo: float
    length_hi: float
    energy_lo: float
    energy_hi: float

    @classmethod
    def from_vectors(cls, vectors) -> "NormBounds":
        lengths = [v[0] if isinstance(v, tuple) else v.length_m for v in vectors]
        energies = [v[1] if isinstance(v, tuple) else v.energy_j for v in vectors]
        if not lengths:
            raise ValueError("cannot derive bounds from an empty collection")
        return cls(min(lengths), max(lengths), min(energies), max(energies))

    @property
    def degenerate_length(self) -> bool:
        return not (self.length_hi > self.length_lo)

    @property
    def degenerate_energy(self) -> bool:
        return not (self.energy_hi > self.energy_lo)

    def norm_length(self, x: float) -> float:
        if self.degenerate_length:
            return 0.0
        t = (x - self.length_lo) / (self.length_hi - self.length_lo)
        return min(1.0, max(0.0, t))

    def norm_energy(self, x: float) -> float:
        if self.degenerate_energy:
            return 0.0
        t = (x - self.energy_lo) / (self.energy_hi - self.energy_lo)
        return min(1.0, max(0.0, t))

    def merge(self, other: "NormBounds") -> "NormBounds":
        return NormBounds(
            min(self.length_lo, other.length_lo),
            max(self.length_hi, other.length_hi),
            min(self.energy_lo, other.energy_lo),
            max(self.energy_hi, other.energy_hi),
        )


@dataclass(frozen=True)
class CombinedPoint:
    """Search-space image of a candidate: blended cost plus raw risk."""

    cost: float
    risk: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.cost, self.risk)


def combine(objectives: ObjectiveVector, weight: float, bounds: NormBounds) -> CombinedPoint:
    """Blend length and energy into one cost; risk passes through.

    ``cost = weight * norm(length) + (1 - weight) * norm(energy)`` with
    min-max normalization clamped to [0, 1]. Degenerate bounds normalize to
    0; callers can inspect ``bounds.degenerate_*`` to flag that.
    """
    if not (0.0 <= weight <= 1.0):
        raise ValueError(f"weight must lie in [0, 1], got {weight}")
    cost = weight * bounds.norm_length(objectives.length_m) + (1.0 - weight) * bounds.norm_energy(
        objectives.energy_j
    )
    return CombinedPoint(cost, objectives.risk)


def path_record(ch: Chromosome, env: Environment, objectives: ObjectiveVector) -> dict:
    """JSON-ready export record of a path with entry altitudes and objectives."""
    levels = env.spec.levels_m
    return {
        "path": [
            {"cell": [r, c], "entry_altitude_m": levels[k]}
            for (r, c), k in zip(ch.cells, ch.entry_levels)
        ],
        "weight": ch.weight,
        "objectives": {
            "length_m": objectives.length_m,
            "energy_j": objectives.energy_j,
            "risk": objectives.risk,
        },
    }
