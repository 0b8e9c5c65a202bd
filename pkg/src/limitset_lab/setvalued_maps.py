"""Upper and lower semicontinuity of set-valued maps, brute-forced.

Domains and codomains are finite: either a ``FiniteSpace`` or a
``FinitePseudoMetric`` (through its metric topology).  Graphs are stored
extensionally as one codomain bitmask per domain point, empty values
allowed.  Everything is decided by enumerating open sets, which is the
point: these are the reference answers the semi-distance criteria are
checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Union

from .errors import MalformedInputError, PreconditionError
from .finite_topology import FiniteSpace
from .pseudometric_core import FinitePseudoMetric

FiniteGround = Union[FiniteSpace, FinitePseudoMetric]


@dataclass(frozen=True)
class SetValuedMap:
    domain: FiniteGround
    codomain: FiniteGround
    graph: tuple  # codomain bitmask per domain point

    def __post_init__(self):
        if len(self.graph) != self.domain.n:
            raise MalformedInputError("graph must be total on the domain")
        full = (1 << self.codomain.n) - 1
        for value in self.graph:
            if value & ~full:
                raise MalformedInputError("graph value outside the codomain")


def image(f: SetValuedMap, a0: int) -> int:
    """Union of the values over a0."""
    if a0 & ~((1 << f.domain.n) - 1):
        raise PreconditionError("argument set outside the domain")
    out = 0
    rest = a0
    while rest:
        x = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        out |= f.graph[x]
    return out


def _open_sets_with(ground: FiniteGround, member: int) -> List[int]:
    return [u for u in ground.open_sets() if u >> member & 1]


def _open_supersets(ground: FiniteGround, e: int) -> List[int]:
    return [u for u in ground.open_sets() if e & ~u == 0]


def is_usc_at(f: SetValuedMap, x: int) -> bool:
    """Upper semicontinuity at x, by exhaustive U/V enumeration.

    For every open U containing F(x) there must be an open V containing x
    with F(V) inside U.
    """
    fx = f.graph[x]
    for u in _open_supersets(f.codomain, fx):
        if not any(image(f, v) & ~u == 0
                   for v in _open_sets_with(f.domain, x)):
            return False
    return True


def is_lsc_at(f: SetValuedMap, x: int) -> bool:
    """Lower semicontinuity at x, by exhaustive enumeration.

    For every y in F(x) and every open U containing y, some open V
    containing x must have F(x') meet U for all x' in V.  Empty F(x)
    counts as lower semicontinuous.
    """
    fx = f.graph[x]
    if fx == 0:
        return True
    ys = [y for y in range(f.codomain.n) if fx >> y & 1]
    vs = _open_sets_with(f.domain, x)
    vs.sort(key=lambda v: bin(v).count("1"))  # small neighborhoods decide fastest
    for y in ys:
        for u in _open_sets_with(f.codomain, y):
            good = False
            for v in vs:
                if all(f.graph[xp] & u for xp in range(f.domain.n)
                       if v >> xp & 1):
                    good = True
                    break
            if not good:
                return False
    return True


def lsc_via_semidistance(f: SetValuedMap, x: int) -> bool:
    """The semi-distance criterion for lsc at compact values.

    True iff for every eps > 0 some ball around x keeps
    rho(F(x); F(x')) below eps.  Both quantifiers run over finite grids:
    eps over midpoints between consecutive realized semi-distance values
    and balls over the realized radii around x, which is complete because
    rho and d take finitely many values here.
    """
    if not isinstance(f.domain, FinitePseudoMetric) or \
            not isinstance(f.codomain, FinitePseudoMetric):
        raise PreconditionError("the criterion needs pseudo-metric ground spaces")
    fx = f.graph[x]
    if fx == 0:
        raise PreconditionError("F(x) must be nonempty (compactness of the value)")

    rhos = []
    for xp in range(f.domain.n):
        rho = f.codomain.semidistance_masks(fx, f.graph[xp])
        rhos.append(rho)
    finite_values = sorted({r.value for r in rhos if not r.is_infinite})
    eps_grid = _midpoint_grid(finite_values)

    radii = sorted({f.domain.dist[x][xp] for xp in range(f.domain.n)})
    balls = []
    for rad in radii:
        ball = [xp for xp in range(f.domain.n) if f.domain.dist[x][xp] <= rad]
        balls.append(ball)

    for eps in eps_grid:
        ok = False
        for ball in balls:
            if all((not rhos[xp].is_infinite) and rhos[xp].value < eps
                   for xp in ball):
                ok = True
                break
        if not ok:
            return False
    return True


def _midpoint_grid(values) -> list:
    """Midpoints between consecutive values, one point per decision region."""
    from fractions import Fraction
    grid = []
    prev = Fraction(0)
    for v in values:
        if v > prev:
            grid.append((prev + v) / 2)
        prev = v
    grid.append(prev + 1)  # one eps above every realized value
    return [g for g in grid if g > 0]
