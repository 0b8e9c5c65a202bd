import random
from fractions import Fraction as F
from itertools import product

import pytest

from limitset_lab.directed_sets import FiniteOrder, top_element
from limitset_lab.errors import (MalformedInputError, MembershipError,
                                 PreconditionError, UnsupportedRuleError)
from limitset_lab.finite_topology import (SIERPINSKI, closure, discrete_space,
                                          enumerate_spaces, indiscrete_space)
from limitset_lab.pseudometric_core import (RationalPointSpace,
                                            kuratowski_limits)
from limitset_lab.subset_nets import (AffineEscape, GeometricConverge,
                                      NetAnalysis, Periodic, SubsetNet,
                                      Verdict, analyze,
                                      below_iff_semidistance, cluster_set,
                                      converges_from_above,
                                      converges_from_below, eventually_in,
                                      frequently_in,
                                      is_asymptotically_seq_compact,
                                      is_eventually_lagrange_stable,
                                      is_limit_set_compact,
                                      is_weakly_asymptotically_seq_compact,
                                      limit_set, limit_set_horizon_oracle,
                                      semidistance_convergence_check,
                                      sequential_limit_set)
from limitset_lab.theoremlab import (RULE_FAMILIES, iter_directed_posets,
                                     iter_periodic_nets, random_rule_net)

Q1 = RationalPointSpace(1)
D2 = discrete_space(2)


def pt(*coords):
    return tuple(F(c) for c in coords)


def alternating_net(space=D2):
    return SubsetNet.over_znn(space, [], Periodic((0b01, 0b10)))


class TestConstruction:
    def test_sets_must_live_in_ground(self):
        with pytest.raises(PreconditionError):
            SubsetNet.over_znn(D2, [0b100], Periodic((0b01,)))
        space = RationalPointSpace(1, [pt(0)])
        with pytest.raises(MembershipError):
            SubsetNet.over_znn(space, [frozenset({pt(0)})],
                               Periodic((frozenset(),)))

    def test_escape_tails_need_metric_ground(self):
        with pytest.raises(UnsupportedRuleError):
            SubsetNet.over_znn(D2, [], AffineEscape(pt(0), pt(1)))

    def test_affine_tail_collision_with_excluded_point(self):
        space = RationalPointSpace(1, [pt(5)])
        with pytest.raises(MalformedInputError):
            SubsetNet.over_znn(space, [], AffineEscape(pt(0), pt(1)))
        # collision before the tail starts is fine
        net = SubsetNet.over_znn(space, [frozenset({pt(1)})] * 6,
                                 AffineEscape(pt(0), pt(1)))
        assert net.at(7) == frozenset({pt(7)})

    def test_geometric_tail_collision_with_excluded_point(self):
        space = RationalPointSpace(1, [(F(1, 4),)])
        with pytest.raises(MalformedInputError):
            SubsetNet.over_znn(space, [],
                               GeometricConverge(pt(0), pt(1), F(1, 2)))

    def test_geometric_collision_beyond_the_horizon_window(self):
        # the excluded point sits 2^-100 from the limit: only the adaptive
        # analytic continuation can see the collision
        space = RationalPointSpace(1, [(F(1, 2 ** 100),)])
        with pytest.raises(MalformedInputError):
            SubsetNet.over_znn(space, [],
                               GeometricConverge(pt(0), pt(1), F(1, 2)))

    def test_trap_construction_is_legal(self):
        space = RationalPointSpace(1, [pt(0)])
        net = SubsetNet.over_znn(space, [],
                                 GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert net.at(3) == frozenset({(F(1, 8),)})

    def test_geometric_ratio_range(self):
        with pytest.raises(MalformedInputError):
            SubsetNet.over_znn(Q1, [], GeometricConverge(pt(0), pt(1), F(1)))

    def test_finite_index_must_be_directed(self):
        undirected = FiniteOrder.from_matrix([[True, False], [False, True]])
        with pytest.raises(PreconditionError):
            SubsetNet.over_finite(D2, undirected, [0b01, 0b10])


class TestLimitSet:
    def test_alternating_discrete(self):
        net = alternating_net()
        assert limit_set(net) == 0b11
        assert limit_set_horizon_oracle(net, h=3, h2=10) == 0b11

    def test_constant_open_point_in_sierpinski(self):
        net = SubsetNet.over_znn(SIERPINSKI, [], Periodic((0b10,)))
        assert limit_set(net) == closure(SIERPINSKI, 0b10) == 0b11

    def test_escaping_net_has_empty_limit_set(self):
        net = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert limit_set(net) == frozenset()

    def test_preperiod_does_not_matter(self):
        net = SubsetNet.over_znn(D2, [0b11, 0b10], Periodic((0b01,)))
        assert limit_set(net) == 0b01

    def test_horizon_oracle_examples(self):
        constant = SubsetNet.over_znn(SIERPINSKI, [], Periodic((0b10,)))
        for h in (1, 3, 6):
            assert limit_set_horizon_oracle(constant, h=h) == 0b11
        with pytest.raises(PreconditionError):
            limit_set_horizon_oracle(alternating_net(), h=9, h2=3)

    def test_oracle_equals_symbolic_on_exhaustive_periodic_nets(self):
        for n in (1, 2):
            for space in enumerate_spaces(n):
                for net in iter_periodic_nets(space, max_cycle=3, max_pre=2):
                    assert limit_set(net) == limit_set_horizon_oracle(net)

    def test_finite_index_nets_close_the_top_tail(self):
        rng = random.Random(11)
        posets = list(iter_directed_posets(4))
        spaces = [s for n in (1, 2) for s in enumerate_spaces(n)]
        for order in posets:
            for space in spaces:
                for _ in range(4):
                    assignment = [rng.randrange(1 << space.n)
                                  for _ in range(order.n)]
                    net = SubsetNet.over_finite(space, order, assignment)
                    top = top_element(order)
                    union = 0
                    for t in order.elements():
                        if order.leq(top, t):
                            union |= assignment[t]
                    assert limit_set(net) == closure(space, union)
                    assert limit_set(net) == limit_set_horizon_oracle(net)


class TestSequentialLimitSet:
    def test_geometric_included_limit(self):
        net = SubsetNet.over_znn(Q1, [], GeometricConverge(pt(2), pt(3), F(1, 3)))
        assert sequential_limit_set(net) == frozenset({pt(2)})

    def test_escape_empty(self):
        net = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert sequential_limit_set(net) == frozenset()

    def test_equals_limit_set_on_rule_nets(self):
        rng = random.Random("lseq")
        for i in range(120):
            net = random_rule_net(rng, RULE_FAMILIES[i % 4])
            assert sequential_limit_set(net) == limit_set(net)

    def test_equals_limit_set_on_finite_backends(self):
        for space in enumerate_spaces(2):
            for net in iter_periodic_nets(space):
                assert sequential_limit_set(net) == limit_set(net)


class TestConvergesFromAbove:
    def test_whole_space_always_attracts(self):
        assert converges_from_above(alternating_net(), 0b11).is_holds
        metric = SubsetNet.over_znn(Q1, [],
                                    Periodic((frozenset({pt(1)}),)))
        assert converges_from_above(metric, [pt(1)]).is_holds

    def test_alternating_fails_on_half(self):
        assert converges_from_above(alternating_net(), 0b01).is_fails

    def test_indiscrete_everything_attracts(self):
        ind = indiscrete_space(2)
        for cycle in product(range(4), repeat=2):
            net = SubsetNet.over_znn(ind, [], Periodic(cycle))
            for a in (0b01, 0b10, 0b11):
                assert converges_from_above(net, a).is_holds

    def test_empty_target_needs_eventually_empty_tails(self):
        empty_net = SubsetNet.over_znn(D2, [0b11], Periodic((0,)))
        assert converges_from_above(empty_net, 0).is_holds
        assert converges_from_above(alternating_net(), 0).is_fails
        escape = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert converges_from_above(escape, []).is_fails

    def test_geometric_attracted_by_limit(self):
        net = SubsetNet.over_znn(Q1, [], GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert converges_from_above(net, [pt(0)]).is_holds
        assert converges_from_above(net, [pt(1)]).is_fails


class TestSemidistanceCriteria:
    def test_constant_net_attracted_by_itself(self):
        k = frozenset({pt(1), pt(2)})
        net = SubsetNet.over_znn(Q1, [], Periodic((k,)))
        assert semidistance_convergence_check(net, k).is_holds

    def test_geometric_distance_sequence(self):
        net = SubsetNet.over_znn(Q1, [], GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert semidistance_convergence_check(net, [pt(0)]).is_holds

    def test_escape_fails_every_compact(self):
        net = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert semidistance_convergence_check(net, [pt(0), pt(10)]).is_fails

    def test_empty_target_rejected(self):
        net = SubsetNet.over_znn(Q1, [], Periodic((frozenset({pt(0)}),)))
        with pytest.raises(PreconditionError):
            semidistance_convergence_check(net, [])

    def test_agrees_with_from_above_on_compact_targets(self):
        rng = random.Random("abovecheck")
        for i in range(160):
            net = random_rule_net(rng, RULE_FAMILIES[i % 4])
            candidates = [limit_set(net), frozenset({pt(0)} if net.ground.dim == 1
                                                    else {pt(0, 0)})]
            for k in candidates:
                k = frozenset(p for p in k if net.ground.contains(p))
                if not k:
                    continue
                assert (semidistance_convergence_check(net, k).state
                        == converges_from_above(net, k).state)


class TestConvergesFromBelow:
    def test_empty_target_vacuous(self):
        assert converges_from_below(alternating_net(), 0).is_holds

    def test_alternation_is_not_eventual(self):
        assert converges_from_below(alternating_net(), 0b01).is_fails

    def test_geometric_below_to_limit(self):
        net = SubsetNet.over_znn(Q1, [], GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert converges_from_below(net, [pt(0)]).is_holds

    def test_below_examples_with_semidistance(self):
        k = frozenset({pt(3)})
        constant = SubsetNet.over_znn(Q1, [], Periodic((k,)))
        assert below_iff_semidistance(constant, k) == (Verdict.holds(),
                                                       Verdict.holds())
        alternating = SubsetNet.over_znn(
            Q1, [], Periodic((frozenset({pt(-1)}), frozenset({pt(1)}))))
        assert below_iff_semidistance(alternating, [pt(-1), pt(1)]) == \
            (Verdict.fails(), Verdict.fails())
        two_branch = SubsetNet.over_znn(
            Q1, [], GeometricConverge(pt(0), (pt(-1), pt(1)), F(1, 2)))
        assert below_iff_semidistance(two_branch, [pt(0)]) == \
            (Verdict.holds(), Verdict.holds())

    def test_below_iff_semidistance_random_agreement(self):
        rng = random.Random("belowcheck")
        for i in range(160):
            net = random_rule_net(rng, RULE_FAMILIES[i % 4])
            k = limit_set(net)
            if not k:
                continue
            below, dist = below_iff_semidistance(net, k)
            assert below.state == dist.state

    def test_below_implies_inside_limit_set_finite_sweep(self):
        for n in (1, 2, 3):
            for space in enumerate_spaces(n):
                for net in iter_periodic_nets(space, max_cycle=3, max_pre=1):
                    ls = limit_set(net)
                    for a in range(1 << n):
                        if converges_from_below(net, a).is_holds:
                            assert a & ~ls == 0


class TestCompactnessVerdicts:
    def test_lagrange_examples(self):
        periodic = SubsetNet.over_znn(Q1, [], Periodic((frozenset({pt(1)}),)))
        assert is_eventually_lagrange_stable(periodic).is_holds
        escape = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert is_eventually_lagrange_stable(escape).is_fails
        trap_space = RationalPointSpace(1, [pt(0)])
        trap = SubsetNet.over_znn(trap_space, [],
                                  GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert is_eventually_lagrange_stable(trap).is_fails

    def test_asymptotic_seq_compact_examples(self):
        periodic = SubsetNet.over_znn(Q1, [], Periodic((frozenset({pt(1)}),)))
        assert is_asymptotically_seq_compact(periodic).is_holds
        included = SubsetNet.over_znn(Q1, [],
                                      GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert is_asymptotically_seq_compact(included).is_holds
        trap_space = RationalPointSpace(1, [pt(0)])
        trap = SubsetNet.over_znn(trap_space, [],
                                  GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert is_asymptotically_seq_compact(trap).is_fails

    def test_weak_equals_strong_on_rule_nets(self):
        rng = random.Random("weakstrong")
        for i in range(160):
            net = random_rule_net(rng, RULE_FAMILIES[i % 4])
            strong = is_asymptotically_seq_compact(net)
            weak = is_weakly_asymptotically_seq_compact(net)
            assert weak == strong
            if strong.is_holds:
                assert weak.is_holds  # the definitional implication

    def test_limit_set_compact_examples(self):
        constant = SubsetNet.over_znn(D2, [], Periodic((0b01,)))
        assert is_limit_set_compact(constant).is_holds
        escape = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert is_limit_set_compact(escape).is_fails
        trap_space = RationalPointSpace(1, [pt(0)])
        trap = SubsetNet.over_znn(trap_space, [],
                                  GeometricConverge(pt(0), pt(1), F(1, 2)))
        assert is_limit_set_compact(trap).is_fails

    def test_finite_backend_always_lagrange_and_compact(self):
        for space in enumerate_spaces(2):
            for net in iter_periodic_nets(space, nonempty=True):
                assert is_eventually_lagrange_stable(net).is_holds
                assert is_asymptotically_seq_compact(net).is_holds
                assert is_limit_set_compact(net).is_holds


class TestClusterAndFrequently:
    def test_constant_point_net_cluster_is_closure(self):
        net = SubsetNet.over_znn(SIERPINSKI, [], Periodic((0b10,)))
        assert cluster_set(net) == 0b11  # non-T1: closure points cluster
        metric = SubsetNet.over_znn(Q1, [], Periodic((frozenset({pt(2)}),)))
        assert cluster_set(metric) == frozenset({pt(2)})

    def test_alternating_singletons(self):
        assert cluster_set(alternating_net()) == 0b11

    def test_escape_has_no_cluster_points(self):
        net = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        assert cluster_set(net) == frozenset()

    def test_non_singleton_rejected(self):
        net = SubsetNet.over_znn(D2, [], Periodic((0b11,)))
        with pytest.raises(PreconditionError):
            cluster_set(net)

    def test_cluster_matches_direct_definition_at_horizon(self):
        # direct definition: y clusters iff the net visits the minimal
        # neighborhood of y inside the final full-cycle window
        horizon = 24
        for space in enumerate_spaces(2):
            singletons = [1 << x for x in range(space.n)]
            for cyc_len in (1, 2):
                for cycle in product(singletons, repeat=cyc_len):
                    net = SubsetNet.over_znn(space, [], Periodic(cycle))
                    values = net.values(horizon)
                    cs = cluster_set(net)
                    for y in range(space.n):
                        uy = space.minimal_open(y)
                        hit = any(values[m] & uy
                                  for m in range(horizon - cyc_len + 1,
                                                 horizon + 1))
                        assert bool(cs >> y & 1) == hit

    def test_cluster_set_is_kuratowski_limsup_on_metric_nets(self):
        rng = random.Random("clusterk")
        for i in range(90):
            family = ("affine", "geometric", "trap")[i % 3]
            net = random_rule_net(rng, family)
            net = SubsetNet.over_znn(net.ground, (), net.tail)
            if not net.is_singleton_valued():
                continue
            assert cluster_set(net) == kuratowski_limits(net)[0]

    def test_eventually_and_frequently_examples(self):
        constant = SubsetNet.over_znn(D2, [], Periodic((0b01,)))
        assert eventually_in(constant, 0b01).is_holds
        assert frequently_in(constant, 0b01).is_holds
        alt = alternating_net()
        assert eventually_in(alt, 0b01).is_fails
        assert frequently_in(alt, 0b01).is_holds
        escape = SubsetNet.over_znn(Q1, [], AffineEscape(pt(0), pt(1)))
        bounded = [pt(0), pt(1), pt(2)]
        assert eventually_in(escape, bounded).is_fails
        assert frequently_in(escape, bounded).is_fails

    def test_eventually_implies_frequently(self):
        for space in enumerate_spaces(2):
            singletons = [1 << x for x in range(space.n)]
            for cycle in product(singletons, repeat=2):
                net = SubsetNet.over_znn(space, [], Periodic(cycle))
                for u in range(1 << space.n):
                    if eventually_in(net, u).is_holds:
                        assert frequently_in(net, u).is_holds

    def test_preperiod_ignored_by_tail_quantifiers(self):
        net = SubsetNet.over_znn(D2, [0b10], Periodic((0b01,)))
        assert eventually_in(net, 0b01).is_holds
        assert frequently_in(net, 0b10).is_fails


class TestTheoremShadows:
    def test_single_valued_below_implies_above_for_nonempty_targets(self):
        rng = random.Random("belowabove")
        for i in range(120):
            family = ("affine", "geometric", "trap")[i % 3]
            net = random_rule_net(rng, family)
            net = SubsetNet.over_znn(net.ground, (), net.tail)
            if not net.is_singleton_valued():
                continue
            for k in (limit_set(net), frozenset({net.tail.point(0)})):
                if not k:
                    continue
                if converges_from_below(net, k).is_holds:
                    assert converges_from_above(net, k).is_holds

    def test_limit_set_equals_limsup_on_metric_nets(self):
        rng = random.Random("lk")
        for i in range(120):
            net = random_rule_net(rng, RULE_FAMILIES[i % 4])
            assert limit_set(net) == kuratowski_limits(net)[0]

    def test_analysis_aggregate_consistency(self):
        rng = random.Random("agg")
        for i in range(60):
            net = random_rule_net(rng, RULE_FAMILIES[i % 4], nonempty=True)
            a = analyze(net)
            assert isinstance(a, NetAnalysis)
            assert a.limit_set == limit_set(net)
            # the four-way equivalence shows up in the aggregate
            states = {a.limit_set_compact.state, a.asympt_seq_compact.state,
                      a.weakly_asympt_seq_compact.state}
            assert len(states) == 1
