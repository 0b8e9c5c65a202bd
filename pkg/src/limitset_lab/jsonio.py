"""JSON encoding of every wire-visible structure.

One canonical shape per type; every encoder round-trips through its
decoder to an equal value.  Rationals travel as {"num", "den"} string
pairs, finite point sets as sorted index lists, rational point sets as
sorted coordinate lists.
"""

from __future__ import annotations

import json

from .directed_sets import (ZNN, DirectedOrder, FiniteOrder,
                            NonnegativeIntegers, ProductOrder)
from .errors import MalformedInputError
from .finite_topology import FiniteSpace
from .pseudometric_core import FinitePseudoMetric, RationalPointSpace
from .rationals import (fraction_from_json, fraction_to_json, point_from_json,
                        point_to_json)
from .setvalued_maps import SetValuedMap
from .subset_nets import (AffineEscape, GeometricConverge, NetAnalysis,
                          Periodic, SubsetNet, Verdict)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- directed orders ----------------------------------------------------------

def order_to_json(order: DirectedOrder) -> dict:
    if isinstance(order, FiniteOrder):
        return {"kind": "finite", "rel": order.matrix()}
    if isinstance(order, NonnegativeIntegers):
        return {"kind": "znn"}
    if isinstance(order, ProductOrder):
        return {"kind": "product", "left": order_to_json(order.left),
                "right": order_to_json(order.right)}
    raise MalformedInputError(f"unencodable order: {order!r}")


def order_from_json(obj) -> DirectedOrder:
    kind = _field(obj, "kind")
    if kind == "finite":
        return FiniteOrder.from_matrix(_field(obj, "rel"))
    if kind == "znn":
        return ZNN
    if kind == "product":
        return ProductOrder(order_from_json(_field(obj, "left")),
                            order_from_json(_field(obj, "right")))
    raise MalformedInputError(f"unknown order kind: {kind!r}")


# -- ground spaces --------------------------------------------------------------

def finite_space_to_json(space: FiniteSpace) -> dict:
    return {"n": space.n, "spec": space.matrix()}


def finite_space_from_json(obj) -> FiniteSpace:
    spec = _field(obj, "spec")
    space = FiniteSpace.from_matrix(spec)
    if "n" in obj and obj["n"] != space.n:
        raise MalformedInputError("n does not match the spec matrix")
    return space


def rational_space_to_json(space: RationalPointSpace) -> dict:
    return {"dim": space.dim,
            "excluded": [point_to_json(p) for p in sorted(space.excluded)]}


def rational_space_from_json(obj) -> RationalPointSpace:
    return RationalPointSpace(_field(obj, "dim"),
                              [point_from_json(p)
                               for p in obj.get("excluded", [])])


def metric_to_json(m: FinitePseudoMetric) -> dict:
    return {"n": m.n,
            "dist": [[fraction_to_json(d) for d in row] for row in m.dist]}


def metric_from_json(obj) -> FinitePseudoMetric:
    return FinitePseudoMetric([[fraction_from_json(d) for d in row]
                               for row in _field(obj, "dist")])


def ground_to_json(ground) -> dict:
    if isinstance(ground, FiniteSpace):
        return finite_space_to_json(ground)
    if isinstance(ground, RationalPointSpace):
        return rational_space_to_json(ground)
    raise MalformedInputError(f"unencodable ground: {ground!r}")


def ground_from_json(obj):
    if not isinstance(obj, dict):
        raise MalformedInputError("ground must be an object")
    if "spec" in obj:
        return finite_space_from_json(obj)
    if "dim" in obj:
        return rational_space_from_json(obj)
    raise MalformedInputError("ground must carry 'spec' or 'dim'")


# -- point sets -------------------------------------------------------------------

def pointset_to_json(ground, s):
    if isinstance(ground, FiniteSpace):
        return [x for x in range(ground.n) if s >> x & 1]
    return [point_to_json(p) for p in sorted(s)]


def pointset_from_json(ground, obj):
    if not isinstance(obj, list):
        raise MalformedInputError("point set must be a list")
    if isinstance(ground, FiniteSpace):
        mask = 0
        for x in obj:
            if not isinstance(x, int) or not 0 <= x < ground.n:
                raise MalformedInputError(
                    f"finite point sets hold indices below {ground.n}: {x!r}")
            mask |= 1 << x
        return mask
    return ground.check_set(point_from_json(p) for p in obj)


# -- nets ---------------------------------------------------------------------------

def tail_to_json(ground, tail) -> dict:
    if isinstance(tail, Periodic):
        return {"kind": "periodic",
                "cycle": [pointset_to_json(ground, s) for s in tail.cycle]}
    if isinstance(tail, AffineEscape):
        return {"kind": "affine", "c": point_to_json(tail.c),
                "v": point_to_json(tail.v)}
    if isinstance(tail, GeometricConverge):
        targets = tail.targets
        b = point_to_json(targets[0]) if len(targets) == 1 else \
            [point_to_json(t) for t in targets]
        return {"kind": "geometric", "a": point_to_json(tail.a),
                "b": b, "r": fraction_to_json(tail.r)}
    raise MalformedInputError(f"unencodable tail: {tail!r}")


def tail_from_json(ground, obj):
    kind = _field(obj, "kind")
    if kind == "periodic":
        return Periodic(tuple(pointset_from_json(ground, s)
                              for s in _field(obj, "cycle")))
    if kind == "affine":
        return AffineEscape(point_from_json(_field(obj, "c")),
                            point_from_json(_field(obj, "v")))
    if kind == "geometric":
        raw_b = _field(obj, "b")
        if raw_b and isinstance(raw_b[0], list):
            b = tuple(point_from_json(t) for t in raw_b)
        else:
            b = point_from_json(raw_b)
        return GeometricConverge(point_from_json(_field(obj, "a")), b,
                                 fraction_from_json(_field(obj, "r")))
    raise MalformedInputError(f"unknown tail kind: {kind!r}")


def net_to_json(net: SubsetNet) -> dict:
    out = {"ground": ground_to_json(net.ground),
           "index": order_to_json(net.index)}
    if net.is_znn:
        out["preperiod"] = [pointset_to_json(net.ground, s)
                            for s in net.preperiod]
        out["tail"] = tail_to_json(net.ground, net.tail)
    else:
        out["assignment"] = [pointset_to_json(net.ground, s)
                             for s in net.assignment]
    return out


def net_from_json(obj) -> SubsetNet:
    ground = ground_from_json(_field(obj, "ground"))
    index = order_from_json(obj.get("index", {"kind": "znn"}))
    if isinstance(index, NonnegativeIntegers):
        pre = [pointset_from_json(ground, s) for s in obj.get("preperiod", [])]
        tail = tail_from_json(ground, _field(obj, "tail"))
        return SubsetNet.over_znn(ground, pre, tail)
    if not isinstance(index, FiniteOrder):
        raise MalformedInputError("net index must be finite or znn")
    assignment = [pointset_from_json(ground, s)
                  for s in _field(obj, "assignment")]
    return SubsetNet.over_finite(ground, index, assignment)


# -- set-valued maps -----------------------------------------------------------------

def _finite_ground_to_json(ground) -> dict:
    if isinstance(ground, FiniteSpace):
        return finite_space_to_json(ground)
    if isinstance(ground, FinitePseudoMetric):
        return metric_to_json(ground)
    raise MalformedInputError(f"unencodable map ground: {ground!r}")


def _finite_ground_from_json(obj):
    if "spec" in obj:
        return finite_space_from_json(obj)
    if "dist" in obj:
        return metric_from_json(obj)
    raise MalformedInputError("map ground must carry 'spec' or 'dist'")


def map_to_json(f: SetValuedMap) -> dict:
    graph = {str(x): [y for y in range(f.codomain.n) if f.graph[x] >> y & 1]
             for x in range(f.domain.n)}
    return {"domain": _finite_ground_to_json(f.domain),
            "codomain": _finite_ground_to_json(f.codomain),
            "graph": graph}


def map_from_json(obj) -> SetValuedMap:
    domain = _finite_ground_from_json(_field(obj, "domain"))
    codomain = _finite_ground_from_json(_field(obj, "codomain"))
    graph_obj = _field(obj, "graph")
    graph = []
    for x in range(domain.n):
        ys = graph_obj.get(str(x))
        if ys is None:
            raise MalformedInputError(f"graph missing domain point {x}")
        graph.append(sum(1 << y for y in ys))
    return SetValuedMap(domain, codomain, tuple(graph))


# -- verdicts and analyses --------------------------------------------------------------

def verdict_to_json(v: Verdict) -> dict:
    out = {"state": v.state}
    if v.horizon is not None:
        out["horizon"] = v.horizon
    return out


def verdict_from_json(obj) -> Verdict:
    return Verdict(_field(obj, "state"), obj.get("horizon"))


def analysis_to_json(ground, analysis: NetAnalysis) -> dict:
    return {
        "limit_set": pointset_to_json(ground, analysis.limit_set),
        "limit_set_compact": verdict_to_json(analysis.limit_set_compact),
        "asympt_seq_compact": verdict_to_json(analysis.asympt_seq_compact),
        "weakly_asympt_seq_compact":
            verdict_to_json(analysis.weakly_asympt_seq_compact),
        "lagrange_stable": verdict_to_json(analysis.lagrange_stable),
        "converges_above_to_limit":
            verdict_to_json(analysis.converges_above_to_limit),
    }


def _field(obj, name):
    if not isinstance(obj, dict) or name not in obj:
        raise MalformedInputError(f"missing field {name!r} in {obj!r}")
    return obj[name]
