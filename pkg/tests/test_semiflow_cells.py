import random
from fractions import Fraction as F

import pytest

from limitset_lab.errors import MalformedInputError, PreconditionError
from limitset_lab.pseudometric_core import RationalPointSpace
from limitset_lab.semiflow_cells import (CellGrid, DiscreteSemiflow,
                                         attraction_trace_check, cell_image,
                                         cellset_semidistance,
                                         omega_limit_cells)
from limitset_lab.subset_nets import Periodic, SubsetNet, limit_set


def cells_of(mask, total=None):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class TestCellGrid:
    def test_power_of_two_enforced(self):
        with pytest.raises(MalformedInputError):
            CellGrid(1, 3)
        with pytest.raises(MalformedInputError):
            CellGrid(1, 8192)
        with pytest.raises(MalformedInputError):
            CellGrid(3, 8)

    def test_floor_rounding_and_closed_right_edge(self):
        g = CellGrid(1, 4)
        assert g.cell_of_point((0.0,)) == 0
        assert g.cell_of_point((0.25,)) == 1
        assert g.cell_of_point((0.999,)) == 3
        assert g.cell_of_point((1.0,)) == 3  # last cell closed at 1

    def test_centers_are_exact(self):
        g = CellGrid(1, 4)
        assert g.center(2) == (F(5, 8),)
        g2 = CellGrid(2, 2)
        assert g2.center(3) == (F(3, 4), F(3, 4))

    def test_two_dimensional_indexing(self):
        g = CellGrid(2, 4)
        for i in range(16):
            assert g.index(g.coords(i)) == i


class TestCellImage:
    def test_identity_table_flow(self):
        g = CellGrid(1, 4)
        flow = DiscreteSemiflow("table", table=tuple(1 << i for i in range(4)))
        for cells in range(16):
            assert cell_image(g, flow, cells) == cells

    def test_exact_rotation_is_a_cyclic_shift(self):
        g = CellGrid(1, 4)
        flow = DiscreteSemiflow("rotation", (F(1, 4),))
        assert cell_image(g, flow, 0b0001) == 0b0010
        assert cell_image(g, flow, 0b1000) == 0b0001
        # oracle: direct computation of each cell's image
        for i in range(4):
            lo, hi = i / 4, (i + 1) / 4
            expect = {g.cell_of_point(((x + 0.25) % 1.0,))
                      for x in (lo, (lo + hi) / 2, hi - 1e-9)}
            assert set(cells_of(cell_image(g, flow, 1 << i))) == expect

    def test_logistic_fixed_point_cell(self):
        # f(x) = 2x(1-x) fixes 0.5; the midpoint sample of its cell maps
        # just below 0.5, so the default image is cell 31, while the
        # dilated outer mode keeps the fixed-point cell itself
        g = CellGrid(1, 64)
        flow = DiscreteSemiflow("logistic", (2,))
        half_cell = 1 << 32
        assert cell_image(g, flow, half_cell) == 1 << 31
        outer = cell_image(g, flow, half_cell, samples=8, dilate=True)
        assert outer >> 32 & 1

    def test_parameter_validation(self):
        with pytest.raises(MalformedInputError):
            DiscreteSemiflow("logistic", (5,))
        with pytest.raises(MalformedInputError):
            DiscreteSemiflow("tent", (3,))

    def test_dilation_stays_inside_grid(self):
        g = CellGrid(1, 4)
        assert g.dilate(0b0001) == 0b0011
        assert g.dilate(0b1000) == 0b1100
        g2 = CellGrid(2, 2)
        assert g2.dilate(1 << 0) == 0b1111  # corner cell fills the 2x2 box


class TestOmegaLimitCells:
    def test_identity_flow(self):
        g = CellGrid(1, 4)
        flow = DiscreteSemiflow("table", table=tuple(1 << i for i in range(4)))
        res = omega_limit_cells(g, flow, 0b0101)
        assert res.omega == 0b0101
        assert res.preperiod == 0 and res.period == 1
        assert attraction_trace_check(res)

    def test_empty_start_rejected(self):
        g = CellGrid(1, 4)
        flow = DiscreteSemiflow("rotation", (F(1, 4),))
        with pytest.raises(PreconditionError):
            omega_limit_cells(g, flow, 0)

    def test_rotation_eighth_visits_everything(self):
        g = CellGrid(1, 8)
        flow = DiscreteSemiflow("rotation", (F(1, 8),))
        res = omega_limit_cells(g, flow, 1)
        assert res.omega == g.full_mask
        assert res.preperiod == 0 and res.period == 8
        assert attraction_trace_check(res)

    def test_logistic_contracts_to_the_interior_fixed_point(self):
        g = CellGrid(1, 64)
        flow = DiscreteSemiflow("logistic", (2,))
        res = omega_limit_cells(g, flow, g.full_mask)
        # omega sits within 2 cells of x = 0.5 once the invariant-endpoint
        # artifact cells are excluded (x = 0 is a fixed point, so its cell
        # can never leave the image of the full box)
        endpoint_artifacts = {0, 63}
        near_half = set(range(30, 35))
        core = set(cells_of(res.omega)) - endpoint_artifacts
        assert core and core <= near_half
        assert attraction_trace_check(res)

    def test_trace_zero_at_preperiod_for_random_starts(self):
        rng = random.Random(12)
        g = CellGrid(1, 64)
        flows = [DiscreteSemiflow("logistic", (2,)),
                 DiscreteSemiflow("tent", (F(3, 2),)),
                 DiscreteSemiflow("rotation", (F(1, 8),))]
        for flow in flows:
            for _ in range(5):
                init = rng.randrange(1, 1 << 64)
                res = omega_limit_cells(g, flow, init)
                assert attraction_trace_check(res)
                d_at_pre = dict(res.trace)[res.preperiod]
                assert d_at_pre == 0

    def test_omega_forward_invariant_at_cell_level(self):
        rng = random.Random(13)
        g = CellGrid(1, 64)
        flows = [DiscreteSemiflow("logistic", (F(7, 2),)),
                 DiscreteSemiflow("tent", (2,)),
                 DiscreteSemiflow("rotation", (F(3, 8),)),
                 DiscreteSemiflow("rotation", (F(1, 7),))]
        for flow in flows:
            for _ in range(5):
                init = rng.randrange(1, 1 << 64)
                res = omega_limit_cells(g, flow, init)
                img = cell_image(g, flow, res.omega)
                assert img & ~res.omega == 0  # union of cycle images, rotated
                assert img & ~g.dilate(res.omega) == 0

    def test_henon_two_dimensional_run(self):
        g = CellGrid(2, 16)
        flow = DiscreteSemiflow("henon", (F(7, 5), F(3, 10)))
        res = omega_limit_cells(g, flow, g.full_mask)
        assert res.omega
        img = cell_image(g, flow, res.omega)
        assert img & ~res.omega == 0

    def test_cross_module_limit_set_consistency(self):
        # the iterate sequence, read as a periodic subset net of exact cell
        # centers, has the same limit set as the reported omega
        rng = random.Random(14)
        g = CellGrid(1, 32)
        flows = [DiscreteSemiflow("logistic", (2,)),
                 DiscreteSemiflow("tent", (F(3, 2),)),
                 DiscreteSemiflow("rotation", (F(1, 4),)),
                 DiscreteSemiflow("tent", (2,))]
        space = RationalPointSpace(1)
        for flow in flows:
            for _ in range(5):
                init = rng.randrange(1, 1 << 32)
                res = omega_limit_cells(g, flow, init)
                states = [init]
                for _ in range(res.preperiod + res.period):
                    states.append(cell_image(g, flow, states[-1]))
                cycle = states[res.preperiod:res.preperiod + res.period]
                centers = [frozenset(g.center(i) for i in cells_of(s))
                           for s in cycle]
                net = SubsetNet.over_znn(space, [], Periodic(tuple(centers)))
                omega_centers = frozenset(g.center(i)
                                          for i in cells_of(res.omega))
                assert limit_set(net) == omega_centers


class TestCellsetSemidistance:
    def test_subset_gives_zero(self):
        g = CellGrid(1, 8)
        assert cellset_semidistance(g, 0b0011, 0b0111) == 0

    def test_directed_distance(self):
        g = CellGrid(1, 8)
        # cells 0 and 4: centers 1/16 and 9/16
        assert cellset_semidistance(g, 0b00001, 0b10000) == F(1, 2)
        assert cellset_semidistance(g, 0b10001, 0b10000) == F(1, 2)

    def test_empty_conventions(self):
        g = CellGrid(1, 8)
        assert cellset_semidistance(g, 0, 0b1) == 0
        assert cellset_semidistance(g, 0b1, 0).is_infinite
