"""Exact rational pseudo-metric geometry.

Two ground models live here.  ``RationalPointSpace`` is the countable
backend: points of Q^d under the max-norm, minus a finite excluded set;
all distances are exact ``Fraction`` values.  ``FinitePseudoMetric`` is an
explicit distance matrix on finitely many points (zero off-diagonal
entries allowed), used for semicontinuity checks and inner-radius sweeps.

Point sets over ``RationalPointSpace`` are frozensets of coordinate
tuples; point sets over ``FinitePseudoMetric`` are int bitmasks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, FrozenSet, Iterable, List, Tuple

from .errors import (MalformedInputError, MembershipError, PreconditionError,
                     UndefinedCaseError)
from .rationals import (INFINITY, ExtendedRational, Point, as_point,
                        max_norm_distance)

PointSet = FrozenSet[Point]


class RationalPointSpace:
    """Q^dim under the max-norm with finitely many points removed."""

    def __init__(self, dim: int, excluded: Iterable = ()):
        if dim < 1:
            raise MalformedInputError("dimension must be positive")
        self.dim = dim
        self.excluded = frozenset(as_point(p) for p in excluded)
        for p in self.excluded:
            if len(p) != dim:
                raise MalformedInputError("excluded point of wrong dimension")

    def contains(self, p: Point) -> bool:
        return len(p) == self.dim and as_point(p) not in self.excluded

    def check_point(self, p: Point) -> Point:
        p = as_point(p)
        if len(p) != self.dim:
            raise MembershipError(f"point of dimension {len(p)}, space has {self.dim}")
        if p in self.excluded:
            raise MembershipError(f"point {p} is excluded from the space")
        return p

    def check_set(self, a: Iterable) -> PointSet:
        return frozenset(self.check_point(p) for p in a)

    def distance(self, p: Point, q: Point) -> Fraction:
        return max_norm_distance(p, q)

    def __eq__(self, other):
        return (isinstance(other, RationalPointSpace)
                and self.dim == other.dim and self.excluded == other.excluded)

    def __hash__(self):
        return hash(("qspace", self.dim, self.excluded))

    def __repr__(self):
        return f"RationalPointSpace(dim={self.dim}, excluded={sorted(self.excluded)})"


class FinitePseudoMetric:
    """An explicit pseudo-metric on ``{0, ..., n-1}``, validated at construction."""

    def __init__(self, dist: List[List]):
        self.n = len(dist)
        self.dist = tuple(tuple(Fraction(x) for x in row) for row in dist)
        for row in self.dist:
            if len(row) != self.n:
                raise MalformedInputError("distance matrix is not square")
        for i in range(self.n):
            if self.dist[i][i] != 0:
                raise MalformedInputError("diagonal must be zero")
            for j in range(self.n):
                if self.dist[i][j] < 0:
                    raise MalformedInputError("distances must be nonnegative")
                if self.dist[i][j] != self.dist[j][i]:
                    raise MalformedInputError("distance matrix must be symmetric")
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    if self.dist[i][k] > self.dist[i][j] + self.dist[j][k]:
                        raise MalformedInputError("triangle inequality violated")

    @classmethod
    def from_points(cls, points: Iterable) -> "FinitePseudoMetric":
        """Max-norm distance matrix of a point list (duplicates give zeros)."""
        pts = [as_point(p) for p in points]
        return cls([[max_norm_distance(p, q) for q in pts] for p in pts])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_set(self, e: int):
        if e & ~self.full_mask:
            raise PreconditionError("point set mentions out-of-range points")

    def zeroset(self, i: int) -> int:
        """Points at distance 0 from i: the minimal open set of i."""
        return sum(1 << j for j in range(self.n) if self.dist[i][j] == 0)

    def is_open(self, u: int) -> bool:
        self.check_set(u)
        rest = u
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if self.zeroset(i) & ~u:
                return False
        return True

    def open_sets(self) -> List[int]:
        if not hasattr(self, "_open_sets"):
            self._open_sets = [u for u in range(1 << self.n)
                               if self.is_open(u)]
        return self._open_sets

    def to_finite_space(self):
        """The metric topology as a finite space (a partition topology)."""
        from .finite_topology import FiniteSpace
        return FiniteSpace([self.zeroset(i) for i in range(self.n)])

    def point_to_mask_distance(self, i: int, e: int) -> ExtendedRational:
        self.check_set(e)
        best = None
        rest = e
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if best is None or self.dist[i][j] < best:
                best = self.dist[i][j]
        return INFINITY if best is None else ExtendedRational(best)

    def semidistance_masks(self, a: int, b: int) -> ExtendedRational:
        """d(a; b) on bitmask sets with the usual empty-set conventions."""
        self.check_set(a)
        self.check_set(b)
        if a == 0 and b == 0:
            raise UndefinedCaseError("d(emptyset; emptyset) is not defined")
        if a == 0:
            return ExtendedRational(0)
        if b == 0:
            return INFINITY
        worst = ExtendedRational(0)
        rest = a
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            d = self.point_to_mask_distance(i, b)
            if worst < d:
                worst = d
        return worst

    def __repr__(self):
        return f"FinitePseudoMetric(n={self.n})"


# -- distances between finite rational point sets ----------------------------

def point_set_distance(space: RationalPointSpace, x: Point,
                       a: Iterable) -> ExtendedRational:
    """min over a of d(x, .); infinity exactly when a is empty."""
    x = space.check_point(x)
    a = space.check_set(a)
    if not a:
        return INFINITY
    return ExtendedRational(min(space.distance(x, p) for p in a))


def semidistance(space: RationalPointSpace, a: Iterable,
                 b: Iterable) -> ExtendedRational:
    """d(a; b) = max over a of d(., b), with the empty-set conventions.

    d(emptyset; b) = 0 and d(a; emptyset) = infinity for nonempty sides;
    d(emptyset; emptyset) is an error.
    """
    a = space.check_set(a)
    b = space.check_set(b)
    if not a and not b:
        raise UndefinedCaseError("d(emptyset; emptyset) is not defined")
    if not a:
        return ExtendedRational(0)
    if not b:
        return INFINITY
    return max(point_set_distance(space, x, b) for x in a)


def ball_of_set(space: RationalPointSpace, a: Iterable,
                r) -> Callable[[Point], bool]:
    """Membership predicate of B(a; r) = {y : d(y, a) < r}, strict."""
    r = Fraction(r)
    if r <= 0:
        raise PreconditionError("radius must be positive")
    a = space.check_set(a)

    def member(y: Point) -> bool:
        d = point_set_distance(space, y, a)
        return not d.is_infinite and d.value < r

    return member


def compact_inner_radius(m: FinitePseudoMetric, k: int, u: int) -> Fraction:
    """The inner radius delta with B(k; delta) inside the neighborhood u.

    delta = min over x in k of d(x, complement of u); when the complement is
    empty any radius works and the sentinel 1 is returned.  Raises when u is
    not a neighborhood of the nonempty compact k (delta would be zero).
    """
    m.check_set(k)
    m.check_set(u)
    if k == 0:
        raise PreconditionError("k must be nonempty")
    if k & ~u:
        raise PreconditionError("u must contain k")
    comp = m.full_mask & ~u
    if comp == 0:
        return Fraction(1)
    delta = None
    rest = k
    while rest:
        x = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        d = m.point_to_mask_distance(x, comp).value
        if delta is None or d < delta:
            delta = d
    if delta == 0:
        raise PreconditionError("u is not a neighborhood of k in the metric topology")
    # postcondition: the open delta-ball of k stays inside u
    ball = 0
    for y in range(m.n):
        if not m.point_to_mask_distance(y, k).value >= delta:
            ball |= 1 << y
    assert ball & ~u == 0
    return delta


def kuratowski_limits(net) -> Tuple[PointSet, PointSet]:
    """Exact Kuratowski (limsup, liminf) of a Z+ subset net over Q^d.

    Periodic tails: limsup is the union of the cycle sets (finite, hence
    closed); liminf keeps the points lying at distance zero from every
    phase.  Escaping affine tails have empty limits; geometric tails
    converge to their analytic limit point when the space contains it.
    """
    from . import subset_nets as sn  # rule types live with the nets

    if not isinstance(net.ground, RationalPointSpace):
        raise PreconditionError("Kuratowski limits need the rational backend")
    if not isinstance(net.index, type(sn.ZNN)):
        raise PreconditionError("Kuratowski limits need a Z+ index")
    rule = net.tail
    if isinstance(rule, sn.Periodic):
        union = frozenset().union(*rule.cycle) if rule.cycle else frozenset()
        limsup = frozenset(union)
        if any(not phase for phase in rule.cycle):
            liminf = frozenset()
        else:
            liminf = frozenset(
                y for y in union
                if all(point_set_distance(net.ground, y, phase) == 0
                       for phase in rule.cycle))
        return limsup, liminf
    if isinstance(rule, sn.AffineEscape):
        return frozenset(), frozenset()
    if isinstance(rule, sn.GeometricConverge):
        a = as_point(rule.a)
        if net.ground.contains(a):
            pt = frozenset([a])
            return pt, pt
        return frozenset(), frozenset()
    raise PreconditionError(f"unsupported tail rule: {rule!r}")
