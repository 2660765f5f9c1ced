"""Asymptotic edge/vertex bounds and the Z(t) comparison report.

Counts stay exact integers; reals appear only in the ``bound`` and ``ratio``
fields, evaluated with :mod:`decimal` at ``PRECISION`` significant digits.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .boundary import edge_count, line_classes
from .errors import ChainViolationError, DegenerateHullError, SizeNotInTableError
from .exact import BoundaryTable
from .lattice import GeneratorSet, PointSet
from .zonotope import Zonotope, build_zonotope, lattice_points

PRECISION = 40
CSV_HEADER = ("t", "n", "edge_boundary", "telescoped", "bound", "ratio")


def _frac_to_decimal(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def _dth_root_bound(d: int, volume: Fraction, n: int) -> Decimal:
    """d * (volume * n^(d-1))^(1/d)."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        inner = _frac_to_decimal(volume * n ** (d - 1))
        if d == 1:
            root = inner
        elif d == 2:
            root = inner.sqrt()
        else:
            root = inner ** (Decimal(1) / Decimal(d))
        return +(d * root)


def edge_bound(U: GeneratorSet, n: int, Z: Zonotope | None = None) -> Decimal:
    """d vol(Z)^(1/d) n^(1 - 1/d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Z = Z or build_zonotope(U)
    return _dth_root_bound(U.dim, Z.volume, n)


def vertex_bound(U: GeneratorSet, n: int, hull_volume: Fraction | None = None) -> Decimal:
    """d vol(conv(U ∪ {0}))^(1/d) n^(1 - 1/d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if hull_volume is None:
        hull_volume = vertex_hull_volume(U)
    return _dth_root_bound(U.dim, hull_volume, n)


# --- exact convex hull volume -------------------------------------------------

def _frac_det(rows) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det


def _rank_basis(vectors):
    """Indices of a maximal linearly independent subfamily (greedy)."""
    basis_rows = []
    picked = []
    for idx, v in enumerate(vectors):
        trial = basis_rows + [list(v)]
        if _rank(trial) == len(trial):
            basis_rows = trial
            picked.append(idx)
    return picked


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _hyperplane(points) -> tuple[Fraction, ...]:
    """Normal to the affine hull of dim points in R^dim (zero if degenerate)."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    dim = len(base)
    return tuple(
        (-1) ** j * _frac_det([[row[c] for c in range(dim) if c != j] for row in diffs])
        for j in range(dim)
    )


def _facets(points) -> list[tuple[int, ...]]:
    """Index sets of the facets of conv(points), points full-dimensional in R^m."""
    m = len(points[0])
    found = set()
    for sub in itertools.combinations(range(len(points)), m):
        normal = _hyperplane([points[i] for i in sub])
        if not any(normal):
            continue
        level = sum(a * b for a, b in zip(normal, points[sub[0]]))
        vals = [sum(a * b for a, b in zip(normal, p)) - level for p in points]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            found.add(tuple(i for i, v in enumerate(vals) if v == 0))
    return sorted(found)


def _affine_coordinates(points):
    """Coordinates of points within their own affine hull."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points]
    basis = [diffs[i] for i in _rank_basis(diffs)]
    r = len(basis)
    # pick r coordinate rows on which the basis is invertible
    rows = _rank_basis([list(col) for col in zip(*basis)])
    square = [[basis[b][row] for b in range(r)] for row in rows]
    out = []
    for diff in diffs:
        rhs = [diff[row] for row in rows]
        out.append(tuple(_solve(square, rhs)))
    return out


def _solve(a, b):
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _triangulate(points) -> list[tuple[int, ...]]:
    """Fan triangulation of conv(points) (full-dimensional) into simplices."""
    m = len(points[0])
    if m == 1:
        lo = min(range(len(points)), key=lambda i: points[i])
        hi = max(range(len(points)), key=lambda i: points[i])
        return [(lo, hi)]
    apex = min(range(len(points)), key=lambda i: points[i])  # lex-min is a vertex
    simplices = []
    for facet in _facets(points):
        if apex in facet:
            continue
        sub = _affine_coordinates([points[i] for i in facet])
        for simplex in _triangulate(sub):
            simplices.append((apex,) + tuple(facet[i] for i in simplex))
    return simplices


def hull_volume(points: Sequence[Sequence[int]]) -> Fraction:
    """Exact volume of the convex hull of integer points (must be full-dimensional)."""
    pts = [tuple(Fraction(c) for c in p) for p in dict.fromkeys(tuple(p) for p in points)]
    d = len(pts[0])
    if len(pts) <= d or _rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) < d:
        raise DegenerateHullError("points do not span a full-dimensional hull")
    total = Fraction(0)
    for simplex in _triangulate(pts):
        v0 = pts[simplex[0]]
        total += abs(_frac_det([[a - b for a, b in zip(pts[i], v0)] for i in simplex[1:]]))
    return total / math.factorial(d)


def vertex_hull_volume(U: GeneratorSet) -> Fraction:
    """vol(conv(U ∪ {0}))."""
    return hull_volume(list(U.generators) + [(0,) * U.dim])


# --- comparison report --------------------------------------------------------

@dataclass(frozen=True)
class CompareRow:
    t: int
    n: int
    edge_boundary: int
    telescoped: int
    bound: Decimal
    ratio: Decimal

    def csv_fields(self) -> list[str]:
        return [str(self.t), str(self.n), str(self.edge_boundary), str(self.telescoped),
                format_real(self.bound), format_real(self.ratio)]


def format_real(x: Decimal) -> str:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return str(x.quantize(Decimal("1e-12")))


def compare_report(U: GeneratorSet, t_max: int, Z: Zonotope | None = None) -> list[CompareRow]:
    """One row per t = 1..t_max comparing ∂(Z(t)) with the asymptotic bound."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    Z = Z or build_zonotope(U)
    rows = []
    nxt = lattice_points(Z, 1)
    for t in range(1, t_max + 1):
        cur, nxt = nxt, lattice_points(Z, t + 1)
        n = len(cur)
        bd = edge_count(cur, U)
        telescoped = len(nxt) - n
        if bd > telescoped:
            raise ChainViolationError(f"t={t}: ∂(Z(t))={bd} exceeds |Z(t+1)|-|Z(t)|={telescoped}")
        bound = _dth_root_bound(U.dim, Z.volume, n)
        with localcontext() as ctx:
            ctx.prec = PRECISION
            ratio = Decimal(bd) / bound
        rows.append(CompareRow(t, n, bd, telescoped, bound, ratio))
    return rows


def rows_to_csv(rows: Sequence[CompareRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def line_class_total(S: PointSet, U: GeneratorSet) -> int:
    return sum(line_classes(S, i, U) for i in range(U.k))


@dataclass(frozen=True)
class ProbeResult:
    t: int
    n: int
    edge_boundary: int
    optimum: int

    @property
    def optimal(self) -> bool:
        return self.edge_boundary == self.optimum


def optimality_probe(U: GeneratorSet, table: BoundaryTable, t: int, Z: Zonotope | None = None) -> ProbeResult:
    """Does Z(t) attain ∂*(|Z(t)|)? Experimental evidence only."""
    Z = Z or build_zonotope(U)
    S = lattice_points(Z, t)
    n = len(S)
    if n not in table:
        raise SizeNotInTableError(f"|Z({t})| = {n} is not in the exact table")
    return ProbeResult(t, n, edge_count(S, U), table.optimum(n))
