"""Discrete-time semiflows on the unit box, discretized on a cell grid.

The box [0,1]^dim is cut into ``cells_per_axis`` half-open cells per axis
(the last cell per axis is closed at 1).  A flow acts on cell sets by
mapping sample points of each cell and collecting the cells they land in;
``omega_limit_cells`` iterates that image map until the (finite) state
space repeats and reports the cycle union together with an attraction
trace of semi-distances between cell-center sets.

Sampling defaults to the single cell midpoint without dilation: that is
the variant under which the image iteration contracts transient blocks
and reproduces the expected attractors at the tested resolutions.  Denser
sampling plus one-cell dilation (``samples=8, dilate=True``) gives the
outer-cover behaviour instead; both are non-rigorous for steep maps.
Cell-set operations are exact bitmask work; floating point only enters
through map evaluation, with samples rounded to cells via floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (MalformedInputError, PreconditionError,
                     UnsupportedRuleError)
from .rationals import INFINITY, ExtendedRational

MAX_CELLS_PER_AXIS = 4096
MAX_OMEGA_STEPS = 10_000


class CellGrid:
    def __init__(self, dim: int, cells_per_axis: int):
        if dim not in (1, 2):
            raise MalformedInputError("grid dimension must be 1 or 2")
        n = cells_per_axis
        if n < 1 or n & (n - 1) or n > MAX_CELLS_PER_AXIS:
            raise MalformedInputError(
                f"cells_per_axis must be a power of two <= {MAX_CELLS_PER_AXIS}")
        self.dim = dim
        self.cells_per_axis = n
        self.total = n ** dim

    @property
    def full_mask(self) -> int:
        return (1 << self.total) - 1

    def index(self, coords: Tuple[int, ...]) -> int:
        if self.dim == 1:
            return coords[0]
        return coords[0] + self.cells_per_axis * coords[1]

    def coords(self, index: int) -> Tuple[int, ...]:
        if self.dim == 1:
            return (index,)
        return (index % self.cells_per_axis, index // self.cells_per_axis)

    def cell_of_point(self, point) -> int:
        """Floor-rounding of a point in [0,1]^dim to its cell index."""
        n = self.cells_per_axis
        coords = []
        for x in point:
            i = math.floor(x * n)
            coords.append(min(n - 1, max(0, i)))
        return self.index(tuple(coords))

    def center(self, index: int) -> Tuple[Fraction, ...]:
        n = self.cells_per_axis
        return tuple(Fraction(2 * c + 1, 2 * n) for c in self.coords(index))

    def samples(self, index: int, k: int) -> List[Tuple[float, ...]]:
        """k^dim sample points per cell, at sub-cell midpoints."""
        n = self.cells_per_axis
        base = self.coords(index)
        offs = [(j + 0.5) / k for j in range(k)]
        if self.dim == 1:
            return [((base[0] + o) / n,) for o in offs]
        return [((base[0] + ox) / n, (base[1] + oy) / n)
                for ox in offs for oy in offs]

    def dilate(self, cells: int) -> int:
        """One-cell dilation along every axis (the full neighbor box)."""
        n = self.cells_per_axis
        out = 0
        rest = cells
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            base = self.coords(i)
            for dx in (-1, 0, 1):
                x = base[0] + dx
                if not 0 <= x < n:
                    continue
                if self.dim == 1:
                    out |= 1 << x
                else:
                    for dy in (-1, 0, 1):
                        y = base[1] + dy
                        if 0 <= y < n:
                            out |= 1 << self.index((x, y))
        return out


class DiscreteSemiflow:
    """A discrete-time semiflow: a builtin interval/plane map or a cell table."""

    BUILTIN_DIMS = {"logistic": 1, "tent": 1, "rotation": 1, "henon": 2}

    def __init__(self, kind: str, params: tuple = (),
                 table: Optional[tuple] = None):
        self.kind = kind
        self.params = tuple(Fraction(p) for p in params)
        self.table = table
        if kind == "table":
            if table is None:
                raise MalformedInputError("table flow needs a table")
        elif kind not in self.BUILTIN_DIMS:
            raise UnsupportedRuleError(f"unknown map: {kind}")
        else:
            self._validate_params()

    def _validate_params(self):
        if self.kind == "logistic":
            (r,) = self.params
            if not 0 <= r <= 4:
                raise MalformedInputError("logistic parameter must be in [0, 4]")
        elif self.kind == "tent":
            (mu,) = self.params
            if not 0 <= mu <= 2:
                raise MalformedInputError("tent parameter must be in [0, 2]")
        elif self.kind == "rotation":
            if len(self.params) != 1:
                raise MalformedInputError("rotation takes one angle")
        elif self.kind == "henon":
            if len(self.params) != 2:
                raise MalformedInputError("henon takes two parameters")

    @property
    def dim(self) -> int:
        return 1 if self.kind == "table" else self.BUILTIN_DIMS[self.kind]

    def exact_rotation_shift(self, grid: CellGrid) -> Optional[int]:
        """Cell shift when the rotation angle is an exact multiple of a cell."""
        if self.kind != "rotation":
            return None
        step = self.params[0] * grid.cells_per_axis
        if step.denominator != 1:
            return None
        return int(step) % grid.cells_per_axis

    def map_point(self, point):
        if self.kind == "logistic":
            r = float(self.params[0])
            x = point[0]
            return (r * x * (1.0 - x),)
        if self.kind == "tent":
            mu = float(self.params[0])
            x = point[0]
            return (mu * (x if x < 0.5 else 1.0 - x),)
        if self.kind == "rotation":
            theta = float(self.params[0])
            return ((point[0] + theta) % 1.0,)
        if self.kind == "henon":
            a, b = (float(p) for p in self.params)
            # classic map on [-1.5, 1.5] x [-0.4, 0.4], rescaled and clamped
            x = 3.0 * point[0] - 1.5
            y = 0.8 * point[1] - 0.4
            xn = 1.0 - a * x * x + y
            yn = b * x
            u = min(1.0, max(0.0, (xn + 1.5) / 3.0))
            v = min(1.0, max(0.0, (yn + 0.4) / 0.8))
            return (u, v)
        raise UnsupportedRuleError("table flows have no point map")


def cell_image(grid: CellGrid, flow: DiscreteSemiflow, cells: int,
               samples: int = 1, dilate: bool = False) -> int:
    """Cells hit by mapping sample points of every input cell.

    Table flows read their table directly.  Exact rotations (angle times
    cells_per_axis an integer) reduce to a cyclic bitset shift and skip
    both sampling and dilation.
    """
    if cells & ~grid.full_mask:
        raise PreconditionError("cell set outside the grid")
    if flow.kind == "table":
        out = 0
        rest = cells
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            out |= flow.table[i]
        return out
    shift = flow.exact_rotation_shift(grid)
    if shift is not None:
        n = grid.cells_per_axis
        return ((cells << shift) | (cells >> (n - shift))) & grid.full_mask \
            if shift else cells
    if flow.dim != grid.dim:
        raise PreconditionError("flow and grid dimension mismatch")
    out = 0
    rest = cells
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        for s in grid.samples(i, samples):
            out |= 1 << grid.cell_of_point(flow.map_point(s))
    if dilate:
        out = grid.dilate(out)
    return out


@dataclass(frozen=True)
class OmegaResult:
    omega: int
    preperiod: int
    period: int
    trace: tuple  # (n, semi-distance of I_n to omega) pairs


def omega_limit_cells(grid: CellGrid, flow: DiscreteSemiflow, e: int,
                      samples: int = 1, dilate: bool = False) -> OmegaResult:
    """Iterate the cell image from ``e`` until the state repeats.

    The finite state space forces eventual periodicity; omega is the union
    of the cycle's cell sets and the trace records d(I_n; omega) for every
    step up to preperiod + period.
    """
    if e == 0:
        raise PreconditionError("initial cell set must be nonempty")
    if e & ~grid.full_mask:
        raise PreconditionError("cell set outside the grid")
    states: List[int] = [e]
    seen = {e: 0}
    current = e
    for _ in range(MAX_OMEGA_STEPS):
        current = cell_image(grid, flow, current, samples=samples, dilate=dilate)
        if current in seen:
            start = seen[current]
            break
        seen[current] = len(states)
        states.append(current)
    else:
        raise PreconditionError("no cycle within the step limit")
    preperiod = start
    period = len(states) - start
    omega = 0
    for state in states[start:]:
        omega |= state
    trace = tuple((n, cellset_semidistance(grid, states[n], omega))
                  for n in range(preperiod + period))
    return OmegaResult(omega=omega, preperiod=preperiod, period=period,
                       trace=trace)


def cellset_semidistance(grid: CellGrid, a: int, b: int) -> ExtendedRational:
    """Max-norm semi-distance between the center sets of two cell sets."""
    if a == 0 and b == 0:
        return ExtendedRational(0)
    if a == 0:
        return ExtendedRational(0)
    if b == 0:
        return INFINITY
    if a & ~b == 0:
        return ExtendedRational(0)  # subset: every center sits in b's set
    centers_b = []
    rest = b
    while rest:
        j = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        centers_b.append(grid.center(j))
    worst = Fraction(0)
    rest = a
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        ca = grid.center(i)
        best = min(max(abs(x - y) for x, y in zip(ca, cb))
                   for cb in centers_b)
        if best > worst:
            worst = best
    return ExtendedRational(worst)


def attraction_trace_check(result: OmegaResult) -> bool:
    """Trace hits zero at the preperiod and stays there through the cycle."""
    return all(d == 0 for n, d in result.trace if n >= result.preperiod)
