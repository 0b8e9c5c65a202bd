"""Nets of subsets over the finite and rational backends.

A ``SubsetNet`` is either indexed by a finite directed order (with an
explicit assignment of a point set to every index element) or by Z+ (with
a finite preperiod followed by a symbolic tail rule).  The three tail
rules -- ``Periodic``, ``AffineEscape``, ``GeometricConverge`` -- are the
exactly-analyzable families: every convergence and compactness question
below is decided in closed form on them, so verdicts are exact and the
``unknown`` state is never produced for constructible nets.

Point sets are int bitmasks over ``FiniteSpace`` grounds and frozensets
of rational coordinate tuples over ``RationalPointSpace`` grounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .directed_sets import (ZNN, DirectedOrder, FiniteOrder,
                            NonnegativeIntegers, directed_order, top_element)
from .errors import (MalformedInputError, PreconditionError,
                     UnsupportedRuleError)
from .finite_topology import FiniteSpace, closure
from .pseudometric_core import (RationalPointSpace, point_set_distance,
                                semidistance)
from .rationals import Point, as_point, max_norm_distance

Ground = Union[FiniteSpace, RationalPointSpace]
SetValue = Union[int, FrozenSet[Point]]

EXCLUSION_CHECK_HORIZON = 64


# -- tail rules ---------------------------------------------------------------

@dataclass(frozen=True)
class Periodic:
    """Tail cycling through a fixed nonempty list of point sets."""

    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise MalformedInputError("periodic cycle must be nonempty")


@dataclass(frozen=True)
class AffineEscape:
    """Singleton tail X_n = {c + n*v} with v nonzero, escaping every ball."""

    c: Point
    v: Point

    def point(self, n: int) -> Point:
        return tuple(ci + n * vi for ci, vi in zip(self.c, self.v))


@dataclass(frozen=True)
class GeometricConverge:
    """Tail X_n = {a + r^n (b - a) : b in targets} with 0 < |r| < 1.

    ``b`` is one target point or a tuple of them; every branch contracts
    toward the analytic limit point ``a``.  The limit point may be
    excluded from the ground space, in which case the tail is Cauchy with
    no limit in the space (the "trap" instances of the verification
    suites).
    """

    a: Point
    b: tuple
    r: Fraction

    @property
    def targets(self) -> tuple:
        return self.b if self.b and isinstance(self.b[0], tuple) else (self.b,)

    def point(self, n: int, b: Optional[Point] = None) -> Point:
        rn = self.r ** n
        if b is None:
            b = self.targets[0]
        return tuple(ai + rn * (bi - ai) for ai, bi in zip(self.a, b))

    def points(self, n: int) -> FrozenSet[Point]:
        return frozenset(self.point(n, b) for b in self.targets)


TailRule = Union[Periodic, AffineEscape, GeometricConverge]


# -- verdicts -----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """Three-valued answer for semi-decidable properties.

    ``unknown`` carries the evaluation horizon that gave up; it is never
    coerced to ``fails``.
    """

    state: str
    horizon: Optional[int] = None

    @classmethod
    def holds(cls) -> "Verdict":
        return cls("holds")

    @classmethod
    def fails(cls) -> "Verdict":
        return cls("fails")

    @classmethod
    def unknown(cls, horizon: int) -> "Verdict":
        return cls("unknown", horizon)

    @property
    def is_holds(self) -> bool:
        return self.state == "holds"

    @property
    def is_fails(self) -> bool:
        return self.state == "fails"

    @property
    def is_unknown(self) -> bool:
        return self.state == "unknown"


def _verdict(flag: bool) -> Verdict:
    return Verdict.holds() if flag else Verdict.fails()


# -- the net ------------------------------------------------------------------

class SubsetNet:
    """A net of subsets of a ground space.

    Use ``SubsetNet.over_znn`` or ``SubsetNet.over_finite`` to construct;
    values are normalized (bitmasks / frozensets of checked points) and the
    tail rule is validated against the ground space, including the proof
    that affine and geometric tails never hit an excluded point.
    """

    def __init__(self, ground: Ground, index: DirectedOrder,
                 preperiod: tuple = (), tail: Optional[TailRule] = None,
                 assignment: Optional[tuple] = None):
        self.ground = ground
        self.index = index
        self.preperiod = preperiod
        self.tail = tail
        self.assignment = assignment

    # construction ------------------------------------------------------------

    @classmethod
    def over_znn(cls, ground: Ground, preperiod: Sequence,
                 tail: TailRule) -> "SubsetNet":
        pre = tuple(_normalize_set(ground, s) for s in preperiod)
        tail = _validate_tail(ground, tail, len(pre))
        return cls(ground, ZNN, preperiod=pre, tail=tail)

    @classmethod
    def over_finite(cls, ground: Ground, index: FiniteOrder,
                    assignment: Sequence) -> "SubsetNet":
        if not directed_order(index):
            raise PreconditionError("index order must be directed")
        if len(assignment) != index.n:
            raise MalformedInputError("assignment must cover every index element")
        values = tuple(_normalize_set(ground, s) for s in assignment)
        return cls(ground, index, assignment=values)

    # evaluation ----------------------------------------------------------------

    @property
    def is_znn(self) -> bool:
        return isinstance(self.index, NonnegativeIntegers)

    @property
    def is_metric(self) -> bool:
        return isinstance(self.ground, RationalPointSpace)

    def at(self, s) -> SetValue:
        if self.is_znn:
            if s < len(self.preperiod):
                return self.preperiod[s]
            rule = self.tail
            if isinstance(rule, Periodic):
                off = (s - len(self.preperiod)) % len(rule.cycle)
                return rule.cycle[off]
            if isinstance(rule, GeometricConverge):
                return rule.points(s)
            return frozenset([rule.point(s)])
        return self.assignment[s]

    def values(self, upto: int) -> List[SetValue]:
        """X_0 ... X_upto for Z+ nets."""
        if not self.is_znn:
            raise PreconditionError("values() needs a Z+ net")
        return [self.at(n) for n in range(upto + 1)]

    def stabilization_bound(self) -> int:
        """An index past which tail unions repeat (Z+ rules)."""
        if not self.is_znn:
            raise PreconditionError("stabilization bound needs a Z+ net")
        if isinstance(self.tail, Periodic):
            return len(self.preperiod) + len(self.tail.cycle)
        return len(self.preperiod) + 1

    def is_singleton_valued(self) -> bool:
        if self.is_znn:
            if any(_set_size(self.ground, s) != 1 for s in self.preperiod):
                return False
            if isinstance(self.tail, Periodic):
                return all(_set_size(self.ground, p) == 1
                           for p in self.tail.cycle)
            if isinstance(self.tail, GeometricConverge):
                return len(set(self.tail.targets)) == 1
            return True  # affine tails are singletons
        return all(_set_size(self.ground, s) == 1 for s in self.assignment)

    def __repr__(self):
        if self.is_znn:
            return (f"SubsetNet(znn, pre={len(self.preperiod)}, "
                    f"tail={type(self.tail).__name__})")
        return f"SubsetNet(finite index n={self.index.n})"


def _set_size(ground: Ground, s: SetValue) -> int:
    return bin(s).count("1") if isinstance(ground, FiniteSpace) else len(s)


def _normalize_set(ground: Ground, s) -> SetValue:
    if isinstance(ground, FiniteSpace):
        if not isinstance(s, int):
            s = sum(1 << int(x) for x in s)
        ground.check_set(s)
        return s
    return ground.check_set(s)


def _validate_tail(ground: Ground, tail: TailRule, pre_len: int) -> TailRule:
    if isinstance(tail, Periodic):
        cycle = tuple(_normalize_set(ground, s) for s in tail.cycle)
        return Periodic(cycle)
    if not isinstance(ground, RationalPointSpace):
        raise UnsupportedRuleError(
            "affine and geometric tails need the rational backend")
    if isinstance(tail, AffineEscape):
        c, v = as_point(tail.c), as_point(tail.v)
        if len(c) != ground.dim or len(v) != ground.dim:
            raise MalformedInputError("tail rule of wrong dimension")
        if all(vi == 0 for vi in v):
            raise MalformedInputError("escape direction must be nonzero")
        rule = AffineEscape(c, v)
        _check_affine_avoids_excluded(ground, rule, pre_len)
        return rule
    if isinstance(tail, GeometricConverge):
        a, r = as_point(tail.a), Fraction(tail.r)
        targets = _normalize_targets(tail.b)
        if len(a) != ground.dim or any(len(b) != ground.dim for b in targets):
            raise MalformedInputError("tail rule of wrong dimension")
        if not 0 < abs(r) < 1:
            raise MalformedInputError("geometric ratio needs 0 < |r| < 1")
        rule = GeometricConverge(a, targets, r)
        for b in targets:
            _check_geometric_avoids_excluded(ground, rule, b, pre_len)
        return rule
    raise UnsupportedRuleError(f"unknown tail rule: {tail!r}")


def _normalize_targets(b) -> tuple:
    """One target point, or a tuple of them, normalized to a point tuple."""
    seq = tuple(b)
    if not seq:
        raise MalformedInputError("geometric tail needs a target point")
    if isinstance(seq[0], (tuple, list)):
        return tuple(as_point(t) for t in seq)
    return (as_point(seq),)


def _check_affine_avoids_excluded(ground: RationalPointSpace,
                                  rule: AffineEscape, n0: int):
    # c + n*v = e has at most one solution n; solve it exactly per point
    for e in ground.excluded:
        n = None
        ok = True
        for ci, vi, ei in zip(rule.c, rule.v, e):
            if vi == 0:
                if ci != ei:
                    ok = False
                    break
            else:
                cand = (ei - ci) / vi
                if cand.denominator != 1:
                    ok = False
                    break
                if n is None:
                    n = int(cand)
                elif n != cand:
                    ok = False
                    break
        if ok and n is not None and n >= n0:
            raise MalformedInputError(
                f"escape tail hits excluded point {e} at n={n}")
        if ok and n is None:
            # v == 0 handled above; unreachable
            raise MalformedInputError("degenerate escape rule")


def _check_geometric_avoids_excluded(ground: RationalPointSpace,
                                     rule: GeometricConverge, b: Point,
                                     n0: int):
    if b == rule.a:
        if rule.a in ground.excluded:
            raise MalformedInputError(
                "constant geometric tail sits on an excluded point")
        return
    # check the horizon, then step until the branch is closer to the limit
    # point than any excluded point can be
    gaps = [max_norm_distance(e, rule.a) for e in ground.excluded]
    floor = min((g for g in gaps if g > 0), default=None)
    span = max_norm_distance(b, rule.a)
    n = n0
    rn = rule.r ** n0
    while True:
        pt = tuple(ai + rn * (bi - ai) for ai, bi in zip(rule.a, b))
        if pt in ground.excluded:
            raise MalformedInputError(
                f"geometric tail hits excluded point {pt} at n={n}")
        n += 1
        rn *= rule.r
        if n >= n0 + EXCLUSION_CHECK_HORIZON and (
                floor is None or abs(rn) * span < floor):
            break  # remaining points are closer to a than any excluded point


# -- limit sets ---------------------------------------------------------------

def _closure(ground: Ground, s: SetValue) -> SetValue:
    if isinstance(ground, FiniteSpace):
        return closure(ground, s)
    return s  # finite sets are closed under the max-norm metric


def _union(ground: Ground, sets: Iterable[SetValue]) -> SetValue:
    if isinstance(ground, FiniteSpace):
        out = 0
        for s in sets:
            out |= s
        return out
    out: FrozenSet[Point] = frozenset()
    for s in sets:
        out |= s
    return out


def _finite_tail_union(net: SubsetNet, s: int) -> SetValue:
    order: FiniteOrder = net.index
    return _union(net.ground,
                  (net.assignment[t] for t in order.elements()
                   if order.leq(s, t)))


def limit_set(net: SubsetNet) -> SetValue:
    """The exact limit set: intersection over s of cls(union of the s-tail).

    Finite index: the closure of the tail union above the top element.
    Z+ tails: periodic tails leave the closure of the cycle union; escaping
    tails leave nothing; geometric tails leave their limit point when the
    ground space contains it.
    """
    if not net.is_znn:
        top = top_element(net.index)
        return _closure(net.ground, _finite_tail_union(net, top))
    rule = net.tail
    if isinstance(rule, Periodic):
        return _closure(net.ground, _union(net.ground, rule.cycle))
    if isinstance(rule, AffineEscape):
        return frozenset()
    a = as_point(rule.a)
    return frozenset([a]) if net.ground.contains(a) else frozenset()


def limit_set_horizon_oracle(net: SubsetNet, h: int = 8,
                             h2: Optional[int] = None) -> SetValue:
    """The defining intersection, evaluated on truncated data.

    Exact for finite-index nets (no truncation happens) and for periodic
    Z+ tails once ``h`` clears the preperiod and ``h2`` spans a full cycle
    beyond ``h``.  Convergent geometric tails are out of scope here: their
    limit point never appears in any truncated union (the Kuratowski
    horizon oracle covers them instead).
    """
    if not net.is_znn:
        out = None
        for s in net.index.elements():
            layer = _closure(net.ground, _finite_tail_union(net, s))
            out = layer if out is None else _intersect(net.ground, out, layer)
        return out
    if h2 is None:
        h2 = h + 2 * net.stabilization_bound() + 2
    if h2 < h:
        raise PreconditionError("tail depth h2 must be at least h")
    sets = net.values(h2)
    out = None
    for s in range(h + 1):
        layer = _closure(net.ground, _union(net.ground, sets[s:]))
        out = layer if out is None else _intersect(net.ground, out, layer)
    return out


def _intersect(ground: Ground, a: SetValue, b: SetValue) -> SetValue:
    return a & b


def sequential_limit_set(net: SubsetNet, horizon: int = 48) -> SetValue:
    """Points reached by convergent selections along monotone final subsequences.

    Computed from the frequent-intersection characterization: ``y`` is in
    the sequential limit set iff the net meets every neighborhood of ``y``
    cofinally.  On these backends the computation is exact (cofinal
    recurrence is read off the stabilized tail), and equality with
    ``limit_set`` is a verified theorem, not an assumption.
    """
    ground = net.ground
    if not net.is_znn:
        if not net.index.is_sequential():
            raise PreconditionError("index must be sequential")
        # constant subsequences at top-tail elements realize every selection
        tail = _finite_tail_union(net, top_element(net.index))
        if isinstance(ground, FiniteSpace):
            return sum(1 << y for y in range(ground.n)
                       if ground.minimal_open(y) & tail)
        return tail
    rule = net.tail
    horizon = max(horizon, net.stabilization_bound() + 1)
    if isinstance(rule, Periodic):
        phases = [net.at(n) for n in range(len(net.preperiod),
                                           len(net.preperiod) + len(rule.cycle))]
        if isinstance(ground, FiniteSpace):
            return sum(1 << y for y in range(ground.n)
                       if any(ground.minimal_open(y) & p for p in phases))
        candidates = _union(ground, phases)
        return frozenset(
            y for y in candidates
            if any(point_set_distance(ground, y, p) == 0 for p in phases))
    if isinstance(rule, AffineEscape):
        return frozenset()  # every selection escapes all bounded balls
    a = as_point(rule.a)
    # selections y_n in X_n form the sequence a + r^n (b - a) -> a
    return frozenset([a]) if ground.contains(a) else frozenset()


def cluster_set(pointnet: SubsetNet) -> SetValue:
    """Cluster points of a singleton-valued net; equals its limit set."""
    if not pointnet.is_singleton_valued():
        raise PreconditionError("cluster_set needs a singleton-valued net")
    return limit_set(pointnet)


# -- convergence from above ----------------------------------------------------

def converges_from_above(net: SubsetNet, a) -> Verdict:
    """Tails eventually inside every neighborhood of the target set.

    Finite backend: tails stabilize and finite spaces have a minimal open
    superset, so the check is a single inclusion.  Rational backend: the
    target is finite (hence compact) and the question is settled through
    the ball quantifier in closed form per tail rule.  The empty target
    demands eventually empty tails.
    """
    a = _normalize_set(net.ground, a)
    if isinstance(net.ground, FiniteSpace):
        u_min = net.ground.minimal_open_superset(a)
        tail = _stabilized_tail_union(net)
        return _verdict(tail & ~u_min == 0)
    rule = net.tail if net.is_znn else None
    if rule is None:
        # finite index over the rational ground: tails stabilize at top
        tail = _finite_tail_union(net, top_element(net.index))
        return _verdict(all(point_set_distance(net.ground, x, a) == 0
                            for x in tail))
    if isinstance(rule, Periodic):
        union = _union(net.ground, rule.cycle)
        # inside every eps-ball of a <=> at distance zero <=> member (metric)
        return _verdict(all(point_set_distance(net.ground, x, a) == 0
                            for x in union))
    if isinstance(rule, AffineEscape):
        return Verdict.fails()  # tails are never empty and escape every ball
    limit = as_point(rule.a)
    if not a:
        return Verdict.fails()
    return _verdict(min(max_norm_distance(limit, y) for y in a) == 0)


def _stabilized_tail_union(net: SubsetNet) -> SetValue:
    if net.is_znn:
        if not isinstance(net.tail, Periodic):
            raise UnsupportedRuleError(
                "only periodic Z+ tails exist over the finite backend")
        return _union(net.ground, net.tail.cycle)
    return _finite_tail_union(net, top_element(net.index))


def semidistance_convergence_check(net: SubsetNet, k) -> Verdict:
    """Whether d(X_n; k) -> 0, decided from the closed-form distance sequence."""
    if not net.is_metric:
        raise PreconditionError("semidistance criterion needs the rational backend")
    k = net.ground.check_set(k)
    if not k:
        raise PreconditionError("target set must be nonempty")
    if not net.is_znn:
        tail = _finite_tail_union(net, top_element(net.index))
        return _verdict(semidistance(net.ground, tail, k) == 0)
    rule = net.tail
    if isinstance(rule, Periodic):
        # the sequence cycles through d(phase; k); zero limit needs all zero
        return _verdict(all(semidistance(net.ground, phase, k) == 0
                            for phase in rule.cycle))
    if isinstance(rule, AffineEscape):
        return Verdict.fails()  # d(X_n; k) grows without bound
    limit = as_point(rule.a)
    return _verdict(min(max_norm_distance(limit, y) for y in k) == 0)


# -- convergence from below ------------------------------------------------------

def converges_from_below(net: SubsetNet, a) -> Verdict:
    """Every neighborhood of every target point eventually meets the net."""
    a = _normalize_set(net.ground, a)
    ground = net.ground
    if isinstance(ground, FiniteSpace):
        targets = [y for y in range(ground.n) if a >> y & 1]
        if net.is_znn:
            if not isinstance(net.tail, Periodic):
                raise UnsupportedRuleError(
                    "only periodic Z+ tails exist over the finite backend")
            return _verdict(all(
                all(phase & ground.minimal_open(y) for phase in net.tail.cycle)
                for y in targets))
        order = net.index
        top = top_element(order)
        later = [t for t in order.elements() if order.leq(top, t)]
        return _verdict(all(
            all(net.assignment[t] & ground.minimal_open(y) for t in later)
            for y in targets))
    if not a:
        return Verdict.holds()  # vacuous
    if not net.is_znn:
        top = top_element(net.index)
        later = [t for t in net.index.elements() if net.index.leq(top, t)]
        return _verdict(all(
            all(point_set_distance(ground, y, net.assignment[t]) == 0
                for t in later) for y in a))
    rule = net.tail
    if isinstance(rule, Periodic):
        return _verdict(all(
            all(point_set_distance(ground, y, phase) == 0
                for phase in rule.cycle) for y in a))
    if isinstance(rule, AffineEscape):
        return Verdict.fails()
    limit = as_point(rule.a)
    return _verdict(all(max_norm_distance(y, limit) == 0 for y in a))


def below_iff_semidistance(net: SubsetNet, k) -> Tuple[Verdict, Verdict]:
    """(convergence from below, d(k; X_n) -> 0) for a nonempty compact target.

    The two components are computed along different routes; their equality
    on compact targets is one of the verified statements.
    """
    if not net.is_metric:
        raise PreconditionError("semidistance criterion needs the rational backend")
    k = net.ground.check_set(k)
    if not k:
        raise PreconditionError("target set must be nonempty")
    below = converges_from_below(net, k)
    if not net.is_znn:
        tail_sets = [net.assignment[t] for t in net.index.elements()
                     if net.index.leq(top_element(net.index), t)]
        dist = _verdict(all(semidistance(net.ground, k, s) == 0
                            for s in tail_sets))
        return below, dist
    rule = net.tail
    if isinstance(rule, Periodic):
        dist = _verdict(all(
            bool(phase) and semidistance(net.ground, k, phase) == 0
            for phase in rule.cycle))
    elif isinstance(rule, AffineEscape):
        dist = Verdict.fails()
    else:
        limit = as_point(rule.a)
        dist = _verdict(max(max_norm_distance(y, limit) for y in k) == 0)
    return below, dist


# -- compactness notions ---------------------------------------------------------

def is_eventually_lagrange_stable(net: SubsetNet) -> Verdict:
    """Some tail union is relatively compact.

    Finite spaces are compact, so finite-backend nets always qualify.
    Periodic tails have finite tail unions; escaping tails are unbounded;
    geometric tails are relatively compact exactly when the limit point
    belongs to the space (otherwise the closure is not compact in the
    punctured space).
    """
    if isinstance(net.ground, FiniteSpace):
        return Verdict.holds()
    if not net.is_znn:
        return Verdict.holds()  # finitely many finite sets
    rule = net.tail
    if isinstance(rule, Periodic):
        return Verdict.holds()
    if isinstance(rule, AffineEscape):
        return Verdict.fails()
    return _verdict(net.ground.contains(as_point(rule.a)))


def is_asymptotically_seq_compact(net: SubsetNet) -> Verdict:
    """Selections along subsequences always have convergent subsequences."""
    if not net.index.is_sequential():
        raise PreconditionError("index must be sequential")
    if isinstance(net.ground, FiniteSpace):
        return Verdict.holds()  # finite spaces are compact
    if not net.is_znn:
        return Verdict.holds()  # selections range over finitely many points
    rule = net.tail
    if isinstance(rule, Periodic):
        return Verdict.holds()  # selections live in a fixed finite set
    if isinstance(rule, AffineEscape):
        return Verdict.fails()  # the only selection escapes
    # every selection is a tail of a + r^n (b - a); Cauchy toward a
    return _verdict(net.ground.contains(as_point(rule.a)))


def is_weakly_asymptotically_seq_compact(net: SubsetNet) -> Verdict:
    """Same question for selections drawn from whole tail unions.

    Tail unions of periodic rules are finite; escaping tail unions are
    unbounded; geometric tail unions accumulate only at the limit point.
    The verdict provably coincides with the strong form on these rules.
    """
    if not net.index.is_sequential():
        raise PreconditionError("index must be sequential")
    if isinstance(net.ground, FiniteSpace):
        return Verdict.holds()
    if not net.is_znn:
        return Verdict.holds()
    rule = net.tail
    if isinstance(rule, Periodic):
        return Verdict.holds()
    if isinstance(rule, AffineEscape):
        return Verdict.fails()
    return _verdict(net.ground.contains(as_point(rule.a)))


def is_limit_set_compact(net: SubsetNet) -> Verdict:
    """Limit set nonempty, compact, and attracting the net from above.

    Compactness of the limit set is automatic on these backends (finite
    spaces and finite point sets), so the verdict reduces to non-emptiness
    plus convergence from above to the limit set.
    """
    ls = limit_set(net)
    empty = ls == 0 if isinstance(net.ground, FiniteSpace) else not ls
    if empty:
        return Verdict.fails()
    return converges_from_above(net, ls)


# -- eventually / frequently for point nets ---------------------------------------

def eventually_in(pointnet: SubsetNet, u) -> Verdict:
    """Whether the singleton net is eventually inside the point set u."""
    _require_znn_pointnet(pointnet)
    u = _normalize_set(pointnet.ground, u)
    rule = pointnet.tail
    if isinstance(rule, Periodic):
        return _verdict(all(_subset(pointnet.ground, p, u) for p in rule.cycle))
    # escaping and non-constant geometric tails are injective, so they meet
    # the finite set u only finitely often; eventual membership is impossible
    if isinstance(rule, GeometricConverge) and set(rule.targets) == {rule.a}:
        return _verdict(as_point(rule.a) in u)
    return Verdict.fails()


def frequently_in(pointnet: SubsetNet, u) -> Verdict:
    """Whether the singleton net returns to the point set u cofinally."""
    _require_znn_pointnet(pointnet)
    u = _normalize_set(pointnet.ground, u)
    rule = pointnet.tail
    if isinstance(rule, Periodic):
        return _verdict(any(_subset(pointnet.ground, p, u) for p in rule.cycle))
    if isinstance(rule, GeometricConverge) and set(rule.targets) == {rule.a}:
        return _verdict(as_point(rule.a) in u)
    return Verdict.fails()


def _require_znn_pointnet(net: SubsetNet):
    if not net.is_znn:
        raise PreconditionError("eventually/frequently need a Z+ net")
    if not net.is_singleton_valued():
        raise PreconditionError("eventually/frequently need a singleton-valued net")


def _subset(ground: Ground, a: SetValue, b: SetValue) -> bool:
    if isinstance(ground, FiniteSpace):
        return a & ~b == 0
    return a <= b


# -- aggregate analysis ------------------------------------------------------------

@dataclass(frozen=True)
class NetAnalysis:
    """Everything the CLI reports about one net."""

    limit_set: SetValue
    limit_set_compact: Verdict
    asympt_seq_compact: Verdict
    weakly_asympt_seq_compact: Verdict
    lagrange_stable: Verdict
    converges_above_to_limit: Verdict


def analyze(net: SubsetNet) -> NetAnalysis:
    ls = limit_set(net)
    return NetAnalysis(
        limit_set=ls,
        limit_set_compact=is_limit_set_compact(net),
        asympt_seq_compact=is_asymptotically_seq_compact(net),
        weakly_asympt_seq_compact=is_weakly_asymptotically_seq_compact(net),
        lagrange_stable=is_eventually_lagrange_stable(net),
        converges_above_to_limit=converges_from_above(net, ls),
    )
