"""Property-based verification suites for the limit-set theory.

Each suite sweeps a family of instances (exhaustive at desk scale where
the statement allows, seeded random elsewhere), pairs the library's
symbolic answers with an independent route, and reports violations.
Conclusions the theory proves only under hypotheses may legitimately
break without them; such cases are collected as *exhibits*, never as
violations.  Reports are deterministic functions of (budget, seed).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, List

from .directed_sets import FiniteOrder
from .errors import LimitsetError
from .finite_topology import (FiniteSpace, closure, enumerate_spaces,
                              is_hausdorff, is_regular)
from .pseudometric_core import RationalPointSpace, kuratowski_limits
from .subset_nets import (AffineEscape, GeometricConverge, Periodic,
                          SubsetNet, Verdict, cluster_set,
                          converges_from_above,
                          is_asymptotically_seq_compact,
                          is_eventually_lagrange_stable,
                          is_limit_set_compact,
                          is_weakly_asymptotically_seq_compact, limit_set,
                          semidistance_convergence_check,
                          sequential_limit_set)

EXHIBIT_CAP = 20


@dataclass
class SuiteReport:
    suite: str
    seed: int
    budget: int
    instances: int = 0
    violations: list = field(default_factory=list)
    exhibits: list = field(default_factory=list)
    exhibit_count: int = 0
    unknowns: int = 0
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def violation(self, instance: str, expected: str, got: str):
        self.violations.append(
            {"instance": instance, "expected": expected, "got": got})

    def exhibit(self, instance: str, note: str):
        self.exhibit_count += 1
        if len(self.exhibits) < EXHIBIT_CAP:
            self.exhibits.append({"instance": instance, "note": note})

    def track(self, verdict: Verdict) -> Verdict:
        if verdict.is_unknown:
            self.unknowns += 1
        return verdict

    def finalize(self) -> "SuiteReport":
        self.violations.sort(key=lambda v: (v["instance"], v["expected"], v["got"]))
        self.exhibits.sort(key=lambda v: (v["instance"], v["note"]))
        return self


def report_to_dict(report: SuiteReport, include_elapsed: bool = False) -> dict:
    out = {
        "suite": report.suite,
        "seed": report.seed,
        "budget": report.budget,
        "instances": report.instances,
        "violations": report.violations,
        "exhibits": report.exhibits,
        "exhibit_count": report.exhibit_count,
        "unknowns": report.unknowns,
        "passed": report.passed,
    }
    if include_elapsed:
        out["elapsed_seconds"] = report.elapsed_seconds
    return out


# -- instance generators -------------------------------------------------------

COORD_DENOMS = (1, 2, 4, 8)
GEOMETRIC_RATIOS = tuple(
    Fraction(p, q) for p, q in
    ((1, 2), (-1, 2), (1, 3), (-1, 3), (2, 3), (-2, 3), (1, 4), (-1, 4),
     (3, 4), (-3, 4)))
ESCAPE_STEPS = (Fraction(-2), Fraction(-1), Fraction(-1, 2),
                Fraction(1, 2), Fraction(1), Fraction(2))


def random_point(rng: random.Random, dim: int) -> tuple:
    coords = []
    for _ in range(dim):
        q = rng.choice(COORD_DENOMS)
        p = rng.randint(-8 * q, 8 * q)
        coords.append(Fraction(p, q))
    return tuple(coords)


def random_space(rng: random.Random, extra_excluded=()) -> RationalPointSpace:
    dim = rng.choice((1, 2))
    excluded = {random_point(rng, dim) for _ in range(rng.randint(0, 2))}
    excluded.update(p for p in extra_excluded if len(p) == dim)
    return RationalPointSpace(dim, excluded)


def _random_included_point(rng: random.Random,
                           space: RationalPointSpace) -> tuple:
    while True:
        p = random_point(rng, space.dim)
        if space.contains(p):
            return p


def _random_sets(rng: random.Random, space: RationalPointSpace, count: int,
                 min_size: int) -> list:
    return [frozenset(_random_included_point(rng, space)
                      for _ in range(rng.randint(min_size, 2)))
            for _ in range(count)]


def random_rule_net(rng: random.Random, family: str,
                    nonempty: bool = False) -> SubsetNet:
    """One random net of the given family over a random rational space.

    ``family`` is one of periodic / affine / geometric / trap (a geometric
    net whose limit point is excluded from the space).  With ``nonempty``
    every net value has at least one point.
    """
    min_size = 1 if nonempty else 0
    for _ in range(64):
        try:
            if family == "trap":
                dim = rng.choice((1, 2))
                a = random_point(rng, dim)
                space = RationalPointSpace(dim, {a})
                b = _random_included_point(rng, space)
                r = rng.choice(GEOMETRIC_RATIOS)
                pre = _random_sets(rng, space, rng.randint(0, 2), min_size)
                return SubsetNet.over_znn(space, pre,
                                          GeometricConverge(a, b, r))
            space = random_space(rng)
            pre = _random_sets(rng, space, rng.randint(0, 2), min_size)
            if family == "periodic":
                cycle = _random_sets(rng, space, rng.randint(1, 3), min_size)
                return SubsetNet.over_znn(space, pre, Periodic(tuple(cycle)))
            if family == "affine":
                c = _random_included_point(rng, space)
                v = tuple(rng.choice(ESCAPE_STEPS) for _ in range(space.dim))
                return SubsetNet.over_znn(space, pre, AffineEscape(c, v))
            if family == "geometric":
                a = _random_included_point(rng, space)
                b = _random_included_point(rng, space)
                r = rng.choice(GEOMETRIC_RATIOS)
                return SubsetNet.over_znn(space, pre,
                                          GeometricConverge(a, b, r))
            raise ValueError(f"unknown family: {family}")
        except LimitsetError:
            continue  # tail crossed an excluded point; redraw
    raise RuntimeError("could not draw a valid instance")


RULE_FAMILIES = ("periodic", "affine", "geometric", "trap")


def rule_net_stream(rng: random.Random, budget: int, nonempty: bool = False,
                    families=RULE_FAMILIES) -> Iterator[SubsetNet]:
    """Deterministic round-robin over the rule families."""
    for i in range(budget):
        yield random_rule_net(rng, families[i % len(families)], nonempty)


def describe_net(net: SubsetNet) -> str:
    """A short canonical instance label for reports."""
    if isinstance(net.ground, FiniteSpace):
        ground = f"space{net.ground.rows}"
    else:
        exc = sorted(map(str, net.ground.excluded))
        ground = f"Q^{net.ground.dim}-{exc}"
    if net.is_znn:
        rule = net.tail
        if isinstance(rule, Periodic):
            tail = f"periodic{_show_sets(net.ground, rule.cycle)}"
        elif isinstance(rule, AffineEscape):
            tail = f"affine(c={rule.c}, v={rule.v})"
        else:
            tail = f"geometric(a={rule.a}, b={rule.b}, r={rule.r})"
        return (f"{ground} pre={_show_sets(net.ground, net.preperiod)} "
                f"{tail}")
    return (f"{ground} index={net.index.rows} "
            f"values={_show_sets(net.ground, net.assignment)}")


def _show_sets(ground, sets) -> str:
    if isinstance(ground, FiniteSpace):
        return str(tuple(sets))
    return str(tuple(tuple(sorted(map(str, s))) for s in sets))


# -- exhaustive families ---------------------------------------------------------

def iter_periodic_nets(space: FiniteSpace, max_cycle: int = 2,
                       max_pre: int = 2,
                       nonempty: bool = False) -> Iterator[SubsetNet]:
    masks = range(1 if nonempty else 0, 1 << space.n)
    for cyc_len in range(1, max_cycle + 1):
        for cycle in product(masks, repeat=cyc_len):
            tail = Periodic(cycle)
            for pre_len in range(max_pre + 1):
                for pre in product(masks, repeat=pre_len):
                    yield SubsetNet.over_znn(space, pre, tail)


def iter_directed_posets(max_n: int) -> Iterator[FiniteOrder]:
    """All labeled directed posets with at most max_n elements."""
    from .directed_sets import _rows_directed
    for n in range(1, max_n + 1):
        for space in enumerate_spaces(n):
            rows = space.rows
            antisym = all(not (rows[a] >> b & 1 and rows[b] >> a & 1)
                          for a in range(n) for b in range(a + 1, n))
            if antisym and _rows_directed(rows, n):
                yield FiniteOrder(rows)


def iter_finite_assignments(space: FiniteSpace, order: FiniteOrder,
                            nonempty: bool = False) -> Iterator[SubsetNet]:
    masks = range(1 if nonempty else 0, 1 << space.n)
    for assignment in product(masks, repeat=order.n):
        yield SubsetNet.over_finite(space, order, assignment)


# -- suites ------------------------------------------------------------------------

def suite_limit_set_characterization(budget: int = 1000,
                                     seed: int = 42) -> SuiteReport:
    """Membership in the limit set versus the convergent-subsequence search.

    Exhaustive over all topologies on up to 3 points and all periodic nets
    with cycle <= 2 and preperiod <= 2.  The oracle unrolls the net to
    horizon 12 and asks, for each point y, whether the net meets the
    minimal neighborhood of y cofinally; a hit inside the final full cycle
    window certifies a monotone final subsequence with selections
    converging to y.
    """
    report = SuiteReport("limit_set_characterization", seed, budget)
    start = time.perf_counter()
    horizon = 12
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            for net in iter_periodic_nets(space):
                report.instances += 1
                ls = limit_set(net)
                values = net.values(horizon)
                p = len(net.tail.cycle)
                for y in range(space.n):
                    uy = space.minimal_open(y)
                    found = any(values[m] & uy
                                for m in range(horizon - p + 1, horizon + 1))
                    if bool(ls >> y & 1) != found:
                        report.violation(
                            f"{describe_net(net)} y={y}",
                            f"membership {found} from subsequence search",
                            f"limit_set gives {bool(ls >> y & 1)}")
    report.elapsed_seconds = time.perf_counter() - start
    return report.finalize()


def suite_kuratowski_equality(budget: int = 1000, seed: int = 42) -> SuiteReport:
    """limit_set = Kuratowski Limsup on random rule nets over Q^d."""
    report = SuiteReport("kuratowski_equality", seed, budget)
    start = time.perf_counter()
    rng = random.Random(f"{seed}:kuratowski_equality")
    for net in rule_net_stream(rng, budget):
        report.instances += 1
        ls = limit_set(net)
        limsup, liminf = kuratowski_limits(net)
        if ls != limsup:
            report.violation(describe_net(net),
                             f"Limsup {_show_sets(net.ground, [limsup])}",
                             f"limit_set {_show_sets(net.ground, [ls])}")
        if not liminf <= limsup:
            report.violation(describe_net(net), "Liminf inside Limsup",
                             "containment fails")
    report.elapsed_seconds = time.perf_counter() - start
    return report.finalize()


def suite_separation_containments(budget: int = 1000,
                                  seed: int = 42) -> SuiteReport:
    """Limit-set containments under separation hypotheses, plus exhibits.

    On Hausdorff (= discrete) spaces, convergence from above to a set
    forces the limit set inside it; on regular (= symmetric preorder)
    spaces, inside its closure.  On the remaining spaces the regular
    conclusion may fail; such witnesses are reported as exhibits, which
    demonstrate the hypothesis is necessary and never count as failures.
    """
    report = SuiteReport("separation_containments", seed, budget)
    start = time.perf_counter()
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            hausdorff = is_hausdorff(space)
            regular = is_regular(space)
            cls_cache = [closure(space, a) for a in range(1 << n)]
            for net in iter_periodic_nets(space):
                report.instances += 1
                ls = limit_set(net)
                for a in range(1 << n):
                    fa = report.track(converges_from_above(net, a))
                    if not fa.is_holds:
                        continue
                    if hausdorff and ls & ~a:
                        report.violation(
                            f"{describe_net(net)} K={a:b}",
                            "L inside K on a Hausdorff space",
                            f"L={ls:b}")
                    if ls & ~cls_cache[a]:
                        if regular:
                            report.violation(
                                f"{describe_net(net)} A={a:b}",
                                "L inside cls(A) on a regular space",
                                f"L={ls:b}")
                        else:
                            report.exhibit(
                                f"{describe_net(net)} A={a:b}",
                                f"L={ls:b} escapes cls(A)={cls_cache[a]:b} "
                                "without regularity")
    report.elapsed_seconds = time.perf_counter() - start
    return report.finalize()


def suite_compactness_equivalences(budget: int = 1000,
                                   seed: int = 42) -> SuiteReport:
    """Compactness-flavoured implications across both backends.

    Finite backend (compact, locally compact): every nonempty-valued net
    must be limit set compact -- checked exhaustively on up to 3 points
    for periodic nets and on small directed posets for finite-index nets.
    Rational backend: eventually Lagrange stable nets of nonempty sets
    must converge from above to their (nonempty compact) limit set, be
    asymptotically sequentially compact and limit set compact; weak
    asymptotic sequential compactness must force convergence from above
    to the limit set.
    """
    report = SuiteReport("compactness_equivalences", seed, budget)
    start = time.perf_counter()
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            for net in iter_periodic_nets(space, nonempty=True):
                report.instances += 1
                if not report.track(is_limit_set_compact(net)).is_holds:
                    report.violation(describe_net(net),
                                     "limit set compact on a compact space",
                                     "verdict fails")
    for order in iter_directed_posets(3):
        for n in (1, 2):
            for space in enumerate_spaces(n):
                for net in iter_finite_assignments(space, order, nonempty=True):
                    report.instances += 1
                    if not report.track(is_limit_set_compact(net)).is_holds:
                        report.violation(describe_net(net),
                                         "limit set compact on a compact space",
                                         "verdict fails")
    rng = random.Random(f"{seed}:compactness_equivalences")
    for net in rule_net_stream(rng, budget, nonempty=True):
        report.instances += 1
        lagrange = report.track(is_eventually_lagrange_stable(net))
        ls = limit_set(net)
        fa = report.track(converges_from_above(net, ls))
        if lagrange.is_holds:
            if not ls:
                report.violation(describe_net(net),
                                 "nonempty limit set under Lagrange stability",
                                 "empty")
            for name, verdict in (
                    ("converges from above to L", fa),
                    ("asymptotically seq compact",
                     report.track(is_asymptotically_seq_compact(net))),
                    ("limit set compact",
                     report.track(is_limit_set_compact(net)))):
                if not verdict.is_holds:
                    report.violation(describe_net(net),
                                     f"{name} under Lagrange stability",
                                     verdict.state)
        weak = report.track(is_weakly_asymptotically_seq_compact(net))
        if weak.is_holds and not fa.is_holds:
            report.violation(describe_net(net),
                             "weak asymptotic compactness forces "
                             "convergence from above to L", fa.state)
    report.elapsed_seconds = time.perf_counter() - start
    return report.finalize()


def suite_pseudometrizable_equivalence(budget: int = 1000,
                                       seed: int = 42) -> SuiteReport:
    """The four-way equivalence on nonempty-valued nets over Q^d.

    Convergence from above to some nonempty compact set (decided against
    the candidate compact = the limit set), asymptotic sequential
    compactness, its weak form, and limit set compactness must agree on
    every instance.  At least a tenth of the stream consists of excluded-
    limit traps, where all four must fail together.
    """
    report = SuiteReport("pseudometrizable_equivalence", seed, budget)
    start = time.perf_counter()
    rng = random.Random(f"{seed}:pseudometrizable_equivalence")
    traps = 0
    for i, net in enumerate(rule_net_stream(rng, budget, nonempty=True)):
        report.instances += 1
        if RULE_FAMILIES[i % len(RULE_FAMILIES)] == "trap":
            traps += 1
        ls = limit_set(net)
        if ls:
            above = report.track(semidistance_convergence_check(net, ls))
        else:
            above = Verdict.fails()  # no compact target can attract the net
        vector = {
            "converges from above to a nonempty compact": above,
            "asymptotically seq compact":
                report.track(is_asymptotically_seq_compact(net)),
            "weakly asymptotically seq compact":
                report.track(is_weakly_asymptotically_seq_compact(net)),
            "limit set compact": report.track(is_limit_set_compact(net)),
        }
        states = {v.state for v in vector.values()}
        if len(states) != 1:
            got = ", ".join(f"{k}={v.state}" for k, v in sorted(vector.items()))
            report.violation(describe_net(net), "all four verdicts equal", got)
    if traps * 10 < budget:
        report.violation("trap quota", f">= {budget // 10} excluded-limit traps",
                         str(traps))
    report.elapsed_seconds = time.perf_counter() - start
    return report.finalize()


def suite_sequential_limits(budget: int = 1000, seed: int = 42) -> SuiteReport:
    """Sequential limit sets and first-countable consequences.

    L = L_seq on the rational backend (first-countable); weak asymptotic
    sequential compactness forces convergence from above to L; singleton
    nets attracted by a nonempty compact set have cluster points; and on
    Hausdorff-or-regular finite spaces, being attracted by some nonempty
    compact set is equivalent to limit set compactness.
    """
    report = SuiteReport("sequential_limits", seed, budget)
    start = time.perf_counter()
    rng = random.Random(f"{seed}:sequential_limits")
    for net in rule_net_stream(rng, budget):
        report.instances += 1
        ls = limit_set(net)
        seq = sequential_limit_set(net)
        if ls != seq:
            report.violation(describe_net(net),
                             f"L = L_seq, L={_show_sets(net.ground, [ls])}",
                             f"L_seq={_show_sets(net.ground, [seq])}")
        weak = report.track(is_weakly_asymptotically_seq_compact(net))
        if weak.is_holds:
            fa = report.track(converges_from_above(net, ls))
            if not fa.is_holds:
                report.violation(describe_net(net),
                                 "weak seq compactness forces convergence "
                                 "from above to L", fa.state)
    # singleton nets: attraction by a nonempty compact set yields cluster points
    singleton_families = ("affine", "geometric", "trap")
    for i in range(budget // 4):
        family = singleton_families[i % len(singleton_families)]
        net = random_rule_net(rng, family)
        net = SubsetNet.over_znn(net.ground, (), net.tail)  # drop preperiods
        report.instances += 1
        candidates = [limit_set(net)]
        candidates.append(frozenset([net.tail.point(0)]))
        attracted = any(
            report.track(semidistance_convergence_check(net, k)).is_holds
            for k in candidates if k)
        if attracted and not cluster_set(net):
            report.violation(describe_net(net),
                             "nonempty cluster set under attraction",
                             "empty cluster set")
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            if not (is_hausdorff(space) or is_regular(space)):
                continue
            for net in iter_periodic_nets(space, nonempty=True):
                report.instances += 1
                attracted = any(
                    report.track(converges_from_above(net, k)).is_holds
                    for k in range(1, 1 << n))
                lsc = report.track(is_limit_set_compact(net)).is_holds
                if attracted != lsc:
                    report.violation(
                        describe_net(net),
                        "attraction by a nonempty compact set iff "
                        "limit set compact",
                        f"attracted={attracted}, limit_set_compact={lsc}")
    report.elapsed_seconds = time.perf_counter() - start
    return report.finalize()


SUITES: dict = {
    "limit_set_characterization": suite_limit_set_characterization,
    "kuratowski_equality": suite_kuratowski_equality,
    "separation_containments": suite_separation_containments,
    "compactness_equivalences": suite_compactness_equivalences,
    "pseudometrizable_equivalence": suite_pseudometrizable_equivalence,
    "sequential_limits": suite_sequential_limits,
}


def run_suite(name: str, budget: int = 1000, seed: int = 42) -> SuiteReport:
    if name not in SUITES:
        raise LimitsetError(f"unknown suite: {name}")
    return SUITES[name](budget=budget, seed=seed)


def run_all(budget: int = 1000, seed: int = 42) -> List[SuiteReport]:
    return [run_suite(name, budget, seed) for name in SUITES]
