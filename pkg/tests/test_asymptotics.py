import random
from decimal import Decimal
from fractions import Fraction

import pytest

from isolat import (
    build_zonotope,
    compare_report,
    edge_bound,
    exact_table,
    l1_generators,
    linf_generators,
    optimality_probe,
    validate_generators,
    vertex_bound,
    vertex_hull_volume,
)
from isolat.asymptotics import CSV_HEADER, format_real, hull_volume, rows_to_csv
from isolat.errors import ChainViolationError, DegenerateHullError, SizeNotInTableError


class TestEdgeBound:
    def test_l1_nine(self, l1):
        assert edge_bound(l1, 9) == Decimal(12)

    def test_d1_constant(self, line):
        assert edge_bound(line, 1) == edge_bound(line, 1000) == Decimal(2)

    def test_linf(self, linf):
        for n in (28, 112, 2800):
            expect = 2 * Decimal(28).sqrt() * Decimal(n).sqrt()
            assert abs(edge_bound(linf, n) - expect) < Decimal("1e-20")

    def test_3d_cube_root(self):
        U = l1_generators(3)
        # vol 8, n = 27: 3 * 2 * 9 = 54
        assert abs(edge_bound(U, 27) - 54) < Decimal("1e-20")


class TestVertexBound:
    def test_hull_volumes(self, l1, linf, line):
        assert vertex_hull_volume(l1) == 2
        assert vertex_hull_volume(linf) == 4
        assert vertex_hull_volume(line) == 2
        assert vertex_hull_volume(l1_generators(3)) == Fraction(4, 3)
        assert vertex_hull_volume(linf_generators(3)) == 8

    def test_bounds(self, l1, linf, line):
        assert abs(vertex_bound(l1, 9) - 6 * Decimal(2).sqrt()) < Decimal("1e-20")
        assert vertex_bound(linf, 25) == 20
        assert vertex_bound(line, 50) == 2

    def test_against_scipy(self):
        spatial = pytest.importorskip("scipy.spatial")
        rng = random.Random(2)
        for _ in range(40):
            d = rng.choice([2, 3])
            pts = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(rng.randint(d + 2, 9))]
            try:
                exact = hull_volume(pts)
            except DegenerateHullError:
                continue
            assert abs(float(exact) - spatial.ConvexHull(pts).volume) < 1e-9

    def test_degenerate(self):
        with pytest.raises(DegenerateHullError):
            hull_volume([(0, 0), (1, 1), (2, 2)])


class TestCompare:
    def test_l1_exact_ratio(self, l1):
        for row in compare_report(l1, 8):
            assert row.n == (2 * row.t + 1) ** 2
            assert row.edge_boundary == 4 * (2 * row.t + 1)
            assert row.ratio == 1
            assert row.edge_boundary <= row.telescoped

    def test_linf_t20(self, linf):
        row = compare_report(linf, 20)[-1]
        assert (row.t, row.n, row.edge_boundary, row.telescoped) == (20, 11361, 1128, 1156)
        assert abs(row.ratio - 1) < Decimal("0.1")

    def test_csv(self, tri):
        text = rows_to_csv(compare_report(tri, 3))
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER) == "t,n,edge_boundary,telescoped,bound,ratio"
        assert len(lines) == 4
        assert all(len(f.split(".")[1]) == 12 for f in lines[1].split(",")[4:])

    def test_format(self):
        assert format_real(Decimal(1)) == "1.000000000000"

    def test_chain_violation_raised(self, l1, monkeypatch):
        import isolat.asymptotics as mod
        monkeypatch.setattr(mod, "edge_count", lambda S, U: 10**9)
        with pytest.raises(ChainViolationError):
            mod.compare_report(l1, 2)


class TestProbe:
    def test_l1_square_optimal(self, l1):
        res = optimality_probe(l1, exact_table(l1, 9), 1)
        assert (res.n, res.edge_boundary, res.optimum, res.optimal) == (9, 12, 12, True)

    def test_interval(self, line):
        table = exact_table(line, 9)
        for t in range(1, 5):
            assert optimality_probe(line, table, t).optimal

    def test_missing(self, linf):
        with pytest.raises(SizeNotInTableError):
            optimality_probe(linf, exact_table(linf, 3), 1)


def test_asymmetric_report_positive(asym):
    rows = compare_report(asym, 6)
    assert all(r.ratio > 0 and r.edge_boundary <= r.telescoped for r in rows)
