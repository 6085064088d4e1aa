"""Verification sweeps: reflection vs dynamic programming vs closed forms.

A grid file is line-oriented ``key = value``; ``#`` starts a comment.

    families = ctilde, btilde, dtilde, atilde, circle
    n = 1..3
    m = 2..4, 5/2
    k = 0..10
    steps = coord, diag, forward
    dtilde_fourth_constant = 1

Missing keys take the defaults below, except ``families``: a grid without
families has no instances.  ``dtilde_fourth_constant`` rescales one of the
four D~ coordinate determinants and exists as a negative control.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from . import closed_forms
from .errors import ConsistencyError, PreconditionError, ResourceError, WalkError
from .oracle import circle_dp_distribution, dp_distribution, hyperplane_dp_count
from .reflection import count_alcove, count_circle, count_hyperplane
from .weyl_core import (
    ChamberSpec,
    Family,
    LatticePoint,
    StepKind,
    StepSet,
    in_interior,
    interior_points,
    is_reflectable,
    parse_scale,
)

__all__ = [
    "CIRCLE",
    "HYPERPLANE",
    "GridSpec",
    "Instance",
    "Outcome",
    "DEFAULT_GRID",
    "parse_grid",
    "load_grid",
    "run_grid",
    "RELATIVE_TOL",
]

CIRCLE = "circle"
HYPERPLANE = "atilde-hyperplane"
RELATIVE_TOL = 1e-6

_FAMILY_NAMES = [f.value for f in Family] + [CIRCLE, HYPERPLANE]
_STEP_NAMES = {"coord": StepKind.COORDINATE, "diag": StepKind.DIAGONAL, "forward": StepKind.FORWARD}


@dataclass(frozen=True)
class GridSpec:
    families: tuple[str, ...] = ()
    n: tuple[int, ...] = (1, 2, 3)
    m: tuple[Fraction, ...] = (Fraction(2), Fraction(3), Fraction(4), Fraction(5, 2))
    k: tuple[int, ...] = tuple(range(11))
    steps: tuple[str, ...] = ("coord", "diag", "forward")
    dtilde_fourth_constant: float = 1.0

    @property
    def kmax(self) -> int:
        return max(self.k, default=0)


DEFAULT_GRID = GridSpec(families=("ctilde", "btilde", "dtilde", "atilde", CIRCLE))


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _int_range(value: str, key: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in _split(value):
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise PreconditionError(f"{key}: cannot read {part!r} as an integer or range") from None
    return tuple(sorted(set(out)))


def _scale_range(value: str) -> tuple[Fraction, ...]:
    out: list[Fraction] = []
    for part in _split(value):
        if ".." in part:
            lo, hi = (parse_scale(p) for p in part.split(".."))
            x = lo
            while x <= hi:
                out.append(x)
                x += 1
        else:
            out.append(parse_scale(part))
    return tuple(sorted(set(out)))


def parse_grid(text: str) -> GridSpec:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise PreconditionError(f"line {lineno}: expected key = value")
        if key == "families":
            fams = tuple(f.lower() for f in _split(value))
            for f in fams:
                if f not in _FAMILY_NAMES:
                    raise PreconditionError(f"line {lineno}: unknown family {f!r}")
            values["families"] = fams
        elif key in ("n", "k"):
            values[key] = _int_range(value, key)
        elif key == "m":
            values["m"] = _scale_range(value)
        elif key == "steps":
            steps = tuple(_split(value))
            for s in steps:
                if s not in _STEP_NAMES:
                    raise PreconditionError(f"line {lineno}: unknown step set {s!r}")
            values["steps"] = steps
        elif key == "dtilde_fourth_constant":
            values[key] = float(Fraction(value.strip()))
        else:
            raise PreconditionError(f"line {lineno}: unknown key {key!r}")
    spec = GridSpec(**values)
    if any(k < 0 for k in spec.k) or any(n < 1 for n in spec.n):
        raise PreconditionError("n must be positive and k nonnegative")
    return spec


def load_grid(path: str | Path) -> GridSpec:
    return parse_grid(Path(path).read_text())


@dataclass(frozen=True)
class Instance:
    family: str
    n: int
    m: Fraction | None
    steps: str
    eta: LatticePoint
    lam: LatticePoint
    k: int

    def sort_key(self):
        return (self.family, self.n, self.m or 0, self.steps, self.eta.doubled, self.lam.doubled, self.k)

    def label(self) -> str:
        m = "-" if self.m is None else str(self.m)
        return (
            f"{self.family} n={self.n} m={m} steps={self.steps} "
            f"eta={self.eta} lambda={self.lam} k={self.k}"
        )


@dataclass
class Outcome:
    instance: Instance
    reflection: int | None = None
    dp: int | None = None
    closed: int | None = None
    closed_raw: float | int | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        if self.error is not None or self.reflection is None or self.reflection != self.dp:
            return False
        return self.closed is None or self.closed == self.reflection

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        closed = "unavailable" if self.closed is None else str(self.closed)
        text = f"{status} {self.instance.label()} reflection={self.reflection} dp={self.dp} closed={closed}"
        if self.error:
            text += f" error: {self.error}"
        return text


def _lattice_box(eta: LatticePoint, radius_doubled: int, diagonal: bool) -> Iterator[LatticePoint]:
    # points within radius of eta on the step lattice (both parity classes for diagonal)
    if diagonal:
        for parity in (0, 1):
            axes = [
                [c for c in range(e - radius_doubled, e + radius_doubled + 1) if c % 2 == parity]
                for e in eta.doubled
            ]
            for p in itertools.product(*axes):
                yield LatticePoint(p)
    else:
        axes = [range(e - radius_doubled, e + radius_doubled + 1, 2) for e in eta.doubled]
        for p in itertools.product(*axes):
            yield LatticePoint(p)


def _type_a_starts(n: int, m: Fraction | None) -> list[LatticePoint]:
    # translating by (1,...,1) is a symmetry, so fix eta_n = 0
    width = 2 * int(m) if m is not None else 2 * n
    out = []
    for gaps in itertools.product(range(2, width + 1, 2), repeat=n - 1):
        x = [0]
        for g in reversed(gaps):
            x.insert(0, x[0] + g)
        if m is None or x[0] - x[-1] < width:
            out.append(LatticePoint(tuple(x)))
    return out


def _alcove_pairs(chamber: ChamberSpec, steps: StepSet, kmax: int):
    diagonal = steps.kind is StepKind.DIAGONAL
    if chamber.is_bounded:
        pts = interior_points(chamber, steps)
        return [(eta, pts) for eta in pts]
    out = []
    for eta in _type_a_starts(chamber.n, chamber.m):
        if not in_interior(eta, chamber):
            continue
        lams = [p for p in _lattice_box(eta, kmax * steps.reach_doubled, diagonal) if in_interior(p, chamber)]
        out.append((eta, lams))
    return out


def _closed_check(out: Outcome, raw):
    out.closed_raw = raw
    if raw is None:
        return
    if isinstance(raw, int):
        out.closed = raw
        return
    if abs(raw) >= closed_forms.FLOAT_COUNT_LIMIT:
        return
    out.closed = closed_forms.round_count(raw)
    if abs(raw - out.closed) >= RELATIVE_TOL * max(1, abs(out.closed)):
        raise ConsistencyError(f"pre-rounding error {abs(raw - out.closed):.3g} exceeds relative {RELATIVE_TOL:g}")


def _group_alcove(family: str, n: int, m, step_name: str, grid: GridSpec) -> list[Outcome]:
    chamber = ChamberSpec(Family(family), n, m)
    steps = StepSet(_STEP_NAMES[step_name], n)
    results = []
    for eta, lams in _alcove_pairs(chamber, steps, grid.kmax):
        layers = dp_distribution(chamber, steps, eta, grid.kmax)
        for lam in lams:
            for k in grid.k:
                inst = Instance(family, n, chamber.m, step_name, eta, lam, k)
                out = Outcome(inst)
                out.dp = layers[k].get(lam.doubled, 0)
                try:
                    out.reflection = count_alcove(chamber, steps, eta, lam, k)
                    _closed_check(
                        out,
                        closed_forms.closed_form_value(
                            chamber, steps, eta, lam, k, fourth_scale=grid.dtilde_fourth_constant
                        ),
                    )
                except WalkError as exc:
                    out.error = str(exc)
                results.append(out)
    return results


def _circle_positions(n: int, m: int, diagonal: bool) -> list[LatticePoint]:
    classes = (0, 1) if diagonal else (0,)
    out = []
    for parity in classes:
        slots = range(parity, 2 * m, 2)
        out.extend(LatticePoint(p) for p in itertools.permutations(slots, n))
    return out


def _group_circle(n: int, m: int, step_name: str, grid: GridSpec) -> list[Outcome]:
    steps = StepSet(_STEP_NAMES[step_name], n)
    diagonal = steps.kind is StepKind.DIAGONAL
    results = []
    for eta in _type_a_starts(n, Fraction(m)):
        layers = circle_dp_distribution(m, n, steps, eta, grid.kmax)
        for lam in _circle_positions(n, m, diagonal):
            for k in grid.k:
                out = Outcome(Instance(CIRCLE, n, Fraction(m), step_name, eta, lam, k))
                out.dp = layers[k].get(lam.doubled, 0)
                try:
                    out.reflection = count_circle(m, n, steps, eta, lam, k)
                    _closed_check(out, closed_forms.closed_form_circle_value(m, n, steps, eta, lam, k))
                except WalkError as exc:
                    out.error = str(exc)
                results.append(out)
    return results


def _group_hyperplane(n: int, m: int, step_name: str, grid: GridSpec) -> list[Outcome]:
    chamber = ChamberSpec(Family.AFFINE_A, n, m)
    steps = StepSet(_STEP_NAMES[step_name], n)
    results = []
    for eta in _type_a_starts(n, Fraction(m)):
        layers = dp_distribution(chamber, steps, eta, grid.kmax)
        for k in grid.k:
            # one representative per class lam + a(1,...,1), a an integer
            reps = set()
            for doubled in layers[k]:
                shift = (doubled[-1] - eta.doubled[-1]) // 2 * 2
                reps.add(tuple(c - shift for c in doubled))
            for doubled in sorted(reps):
                lam = LatticePoint(doubled)
                out = Outcome(Instance(HYPERPLANE, n, Fraction(m), step_name, eta, lam, k))
                try:
                    out.dp = hyperplane_dp_count(m, n, steps, eta, lam, k)
                    out.reflection = count_hyperplane(m, n, steps, eta, lam, k)
                    _closed_check(out, closed_forms.closed_form_hyperplane_value(m, n, steps, eta, lam, k))
                except WalkError as exc:
                    out.error = str(exc)
                results.append(out)
    return results


@dataclass(frozen=True)
class _Task:
    family: str
    n: int
    m: Fraction | None
    steps: str


def _tasks(grid: GridSpec) -> list[_Task]:
    tasks = []
    for family in grid.families:
        for n, step_name in itertools.product(grid.n, grid.steps):
            steps = StepSet(_STEP_NAMES[step_name], n)
            if family == Family.FINITE_A.value:
                continue  # unbounded without translations; not swept
            scales = grid.m
            for m in scales:
                if family in (CIRCLE, HYPERPLANE):
                    if m.denominator != 1 or (family == HYPERPLANE and n < 2):
                        continue
                    tasks.append(_Task(family, n, m, step_name))
                    continue
                fam = Family(family)
                if fam is Family.AFFINE_D and n < 2:
                    continue
                if m.denominator != 1 and steps.kind is not StepKind.DIAGONAL:
                    continue
                if not is_reflectable(steps, ChamberSpec(fam, n, m)):
                    continue
                tasks.append(_Task(family, n, m, step_name))
    return tasks


def _run_task(task: _Task, grid: GridSpec) -> list[Outcome]:
    try:
        if task.family == CIRCLE:
            return _group_circle(task.n, int(task.m), task.steps, grid)
        if task.family == HYPERPLANE:
            return _group_hyperplane(task.n, int(task.m), task.steps, grid)
        return _group_alcove(task.family, task.n, task.m, task.steps, grid)
    except ResourceError as exc:
        dummy = LatticePoint(())
        return [Outcome(Instance(task.family, task.n, task.m, task.steps, dummy, dummy, -1), error=str(exc))]


def run_grid(grid: GridSpec, jobs: int = 1) -> list[Outcome]:
    """Evaluate every instance; results are sorted by instance key whatever ``jobs`` is."""
    tasks = _tasks(grid)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_run_task, tasks, itertools.repeat(grid)))
    else:
        groups = [_run_task(t, grid) for t in tasks]
    outcomes = [o for g in groups for o in g]
    outcomes.sort(key=lambda o: o.instance.sort_key())
    return outcomes
