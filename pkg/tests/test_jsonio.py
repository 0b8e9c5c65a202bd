import json
from fractions import Fraction as F

import pytest

from limitset_lab import jsonio
from limitset_lab.directed_sets import ZNN, FiniteOrder, ProductOrder
from limitset_lab.errors import MalformedInputError
from limitset_lab.finite_topology import SIERPINSKI, discrete_space
from limitset_lab.pseudometric_core import (FinitePseudoMetric,
                                            RationalPointSpace)
from limitset_lab.rationals import (fraction_from_json, fraction_to_json)
from limitset_lab.setvalued_maps import SetValuedMap
from limitset_lab.subset_nets import (AffineEscape, GeometricConverge,
                                      Periodic, SubsetNet, Verdict, analyze)


def pt(*coords):
    return tuple(F(c) for c in coords)


class TestRationals:
    def test_string_digits_round_trip(self):
        x = F(10 ** 40 + 1, 3)
        j = fraction_to_json(x)
        assert j == {"num": str(10 ** 40 + 1), "den": "3"}
        assert fraction_from_json(j) == x

    def test_plain_ints_accepted_on_input(self):
        assert fraction_from_json(7) == 7

    def test_bad_rational_rejected(self):
        with pytest.raises(MalformedInputError):
            fraction_from_json({"num": "1", "den": "0"})
        with pytest.raises(MalformedInputError):
            fraction_from_json("x")


class TestOrders:
    def test_round_trips(self):
        chain = FiniteOrder.from_matrix([[a <= b for b in range(3)]
                                         for a in range(3)])
        for order in (chain, ZNN, ProductOrder(ZNN, chain)):
            j = jsonio.order_to_json(order)
            assert jsonio.order_from_json(j) == order
            assert jsonio.order_to_json(jsonio.order_from_json(j)) == j

    def test_spec_shapes(self):
        assert jsonio.order_to_json(ZNN) == {"kind": "znn"}
        j = jsonio.order_to_json(FiniteOrder.from_matrix([[True]]))
        assert j == {"kind": "finite", "rel": [[True]]}


class TestGrounds:
    def test_finite_space_shape_and_round_trip(self):
        j = jsonio.finite_space_to_json(SIERPINSKI)
        assert j == {"n": 2, "spec": [[True, True], [False, True]]}
        assert jsonio.finite_space_from_json(j).rows == SIERPINSKI.rows

    def test_mismatched_n_rejected(self):
        with pytest.raises(MalformedInputError):
            jsonio.finite_space_from_json({"n": 3, "spec": [[True]]})

    def test_rational_space_round_trip(self):
        space = RationalPointSpace(2, [pt(1, 2), pt(0, 0)])
        j = jsonio.rational_space_to_json(space)
        assert jsonio.rational_space_from_json(j) == space

    def test_metric_round_trip(self):
        m = FinitePseudoMetric([[0, F(1, 3)], [F(1, 3), 0]])
        j = jsonio.metric_to_json(m)
        assert jsonio.metric_from_json(j).dist == m.dist

    def test_ground_dispatch(self):
        assert isinstance(jsonio.ground_from_json({"dim": 1}),
                          RationalPointSpace)
        with pytest.raises(MalformedInputError):
            jsonio.ground_from_json({"what": 1})


class TestNets:
    def test_periodic_finite_ground(self):
        net = SubsetNet.over_znn(SIERPINSKI, [0b01], Periodic((0b10, 0b11)))
        j = jsonio.net_to_json(net)
        assert j["preperiod"] == [[0]]
        assert j["tail"] == {"kind": "periodic", "cycle": [[1], [0, 1]]}
        back = jsonio.net_from_json(j)
        assert back.preperiod == net.preperiod
        assert back.tail == net.tail
        assert jsonio.net_to_json(back) == j

    def test_affine_and_geometric_round_trip(self):
        space = RationalPointSpace(1, [pt(F(9, 7))])
        for tail in (AffineEscape(pt(0), pt(F(1, 2))),
                     GeometricConverge(pt(0), pt(1), F(-1, 2)),
                     GeometricConverge(pt(0), (pt(-1), pt(1)), F(1, 2))):
            net = SubsetNet.over_znn(space, [frozenset({pt(5)})], tail)
            j = jsonio.net_to_json(net)
            back = jsonio.net_from_json(j)
            assert back.at(4) == net.at(4)
            assert jsonio.net_to_json(back) == j

    def test_finite_index_net_round_trip(self):
        order = FiniteOrder.from_matrix([[a <= b for b in range(2)]
                                         for a in range(2)])
        net = SubsetNet.over_finite(discrete_space(2), order, [0b01, 0b11])
        j = jsonio.net_to_json(net)
        back = jsonio.net_from_json(j)
        assert back.assignment == net.assignment
        assert jsonio.net_to_json(back) == j

    def test_default_index_is_znn(self):
        j = {"ground": {"dim": 1, "excluded": []},
             "tail": {"kind": "affine",
                      "c": [{"num": "0", "den": "1"}],
                      "v": [{"num": "1", "den": "1"}]}}
        net = jsonio.net_from_json(j)
        assert net.is_znn


class TestMapsAndVerdicts:
    def test_map_round_trip(self):
        m = FinitePseudoMetric([[0, 1], [1, 0]])
        f = SetValuedMap(m, SIERPINSKI, (0b01, 0b11))
        j = jsonio.map_to_json(f)
        back = jsonio.map_from_json(j)
        assert back.graph == f.graph
        assert jsonio.map_to_json(back) == j

    def test_graph_must_cover_domain(self):
        j = {"domain": {"n": 2, "spec": [[True, False], [False, True]]},
             "codomain": {"n": 1, "spec": [[True]]},
             "graph": {"0": [0]}}
        with pytest.raises(MalformedInputError):
            jsonio.map_from_json(j)

    def test_verdict_round_trip(self):
        for v in (Verdict.holds(), Verdict.fails(), Verdict.unknown(64)):
            assert jsonio.verdict_from_json(jsonio.verdict_to_json(v)) == v

    def test_analysis_shape(self):
        net = SubsetNet.over_znn(RationalPointSpace(1), [],
                                 Periodic((frozenset({pt(0)}),)))
        out = jsonio.analysis_to_json(net.ground, analyze(net))
        assert out["limit_set"] == [[{"num": "0", "den": "1"}]]
        assert out["limit_set_compact"] == {"state": "holds"}
        # every emitted analysis re-parses as JSON to an equal value
        assert json.loads(jsonio.dumps_canonical(out)) == out


def test_canonical_dump_is_stable():
    payload = {"b": 1, "a": [2, 3]}
    assert jsonio.dumps_canonical(payload) == '{"a":[2,3],"b":1}\n'
