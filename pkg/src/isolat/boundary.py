"""Edge and vertex boundaries of finite sets in the Cayley graph G_U.

Everything uses the directed convention: S has an out-edge v -> v + u_i for
every v in S and every generator u_i, and ∂(S) counts those landing outside S.
For symmetric U this equals the undirected edge boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from .errors import DimensionMismatchError, NotDisjointError, SizeNotInTableError
from .lattice import GeneratorSet, PointSet, _check_index

if TYPE_CHECKING:
    from .exact import BoundaryTable

# sets at least this large are checked with vectorised key lookups
_NUMPY_MIN = 512


@dataclass(frozen=True)
class BoundaryBreakdown:
    per_direction: tuple[int, ...]
    total: int
    vertex: int


def _check(S: PointSet, U: GeneratorSet) -> None:
    if S.dim != U.dim:
        raise DimensionMismatchError(f"set has dimension {S.dim}, generators {U.dim}")


def _encoded(S: PointSet, shifts):
    """Sorted int64 keys of S plus the key offset of each shift, or None.

    The window is padded by the largest shift so that encoding commutes with
    translation for every shifted point.
    """
    arr = np.array(list(S.points), dtype=np.int64)
    pad = max(max(abs(c) for c in u) for u in shifts)
    lo = arr.min(axis=0) - pad
    span = arr.max(axis=0) + pad - lo + 1
    if float(np.prod(span.astype(float))) >= 2.0**62:
        return None
    strides = np.ones(S.dim, dtype=np.int64)
    for j in range(S.dim - 2, -1, -1):
        strides[j] = strides[j + 1] * span[j + 1]
    keys = np.sort((arr - lo) @ strides)
    deltas = [int(np.dot(np.array(u, dtype=np.int64), strides)) for u in shifts]
    return keys, deltas


def _missing(keys: np.ndarray, delta: int) -> int:
    moved = keys + delta
    pos = np.searchsorted(keys, moved)
    pos[pos == len(keys)] = 0
    return int(np.count_nonzero(keys[pos] != moved))


def directional_boundary(S: PointSet, i: int, U: GeneratorSet) -> int:
    """∂_i(S) = |{v in S : v + u_i not in S}|."""
    _check(S, U)
    _check_index(i, U)
    return _directional_counts(S, [U[i]])[0]


def _directional_counts(S: PointSet, shifts) -> list[int]:
    pts = S.points
    if len(pts) >= _NUMPY_MIN:
        enc = _encoded(S, shifts)
        if enc is not None:
            keys, deltas = enc
            return [_missing(keys, dl) for dl in deltas]
    return [sum(1 for p in pts if tuple(x + y for x, y in zip(p, u)) not in pts) for u in shifts]


def edge_count(S: PointSet, U: GeneratorSet) -> int:
    """∂(S) without the per-direction and vertex breakdown."""
    _check(S, U)
    if not S.points:
        return 0
    return sum(_directional_counts(S, U.generators))


def edge_boundary(S: PointSet, U: GeneratorSet) -> BoundaryBreakdown:
    _check(S, U)
    pts = S.points
    per_direction = []
    outside = set()
    for u in U.generators:
        count = 0
        for p in pts:
            q = tuple(x + y for x, y in zip(p, u))
            if q not in pts:
                count += 1
                outside.add(q)
        per_direction.append(count)
    return BoundaryBreakdown(tuple(per_direction), sum(per_direction), len(outside))


def frontier(S: PointSet, i: int, U: GeneratorSet) -> PointSet:
    """F_i: the points of S whose u_i-neighbour lies outside S."""
    _check(S, U)
    _check_index(i, U)
    pts = S.points
    u = U[i]
    return PointSet._wrap(
        S.dim,
        frozenset(p for p in pts if tuple(x + y for x, y in zip(p, u)) not in pts),
    )


def vertex_boundary(S: PointSet, U: GeneratorSet) -> int:
    """∂_v(S) = |S + (U ∪ {0})| - |S|."""
    _check(S, U)
    pts = S.points
    reached = {tuple(x + y for x, y in zip(p, u)) for p in pts for u in U.generators}
    return len(reached - pts)


def line_key(v, u) -> tuple[int, ...]:
    """Canonical representative of the Z-line {v + λu : λ in Z}.

    The representative is reduced modulo u in the first coordinate where u is
    nonzero, so lines that share a real line but differ by a non-multiple of u
    (imprimitive u) keep distinct keys.
    """
    for j, c in enumerate(u):
        if c:
            lam = v[j] // c
            return tuple(x - lam * y for x, y in zip(v, u))
    raise ValueError("direction must be nonzero")


def line_classes(S: PointSet, i: int, U: GeneratorSet) -> int:
    """Number of lines in direction u_i that meet S; a lower bound for ∂_i(S)."""
    _check(S, U)
    _check_index(i, U)
    u = U[i]
    return len({line_key(p, u) for p in S.points})


def split_sides(T: PointSet, Tp: PointSet, j: int, U: GeneratorSet) -> tuple[int, int]:
    """Both sides of the split identity for adding a disjoint set Tp to T.

    Returns (∂_j(T ∪ Tp) - ∂_j(T), |Tp \\ ((T ∪ Tp) - u_j)| - |Tp ∩ (T + u_j)|).
    """
    _check(T, U)
    _check(Tp, U)
    _check_index(j, U)
    if T.points & Tp.points:
        raise NotDisjointError("T and Tp must be disjoint")
    union = T.union(Tp)
    lhs = directional_boundary(union, j, U) - directional_boundary(T, j, U)
    u = U[j]
    leaving = sum(1 for p in Tp.points if tuple(x + y for x, y in zip(p, u)) not in union.points)
    entering = sum(1 for p in Tp.points if tuple(x - y for x, y in zip(p, u)) in T.points)
    return lhs, leaving - entering


def epsilon_close(S: PointSet, U: GeneratorSet, eps, table: "BoundaryTable") -> bool:
    """∂(S) <= (1 + eps) ∂*(|S|), compared exactly."""
    n = len(S)
    if n not in table:
        raise SizeNotInTableError(f"no exact optimum recorded for n={n}")
    return edge_count(S, U) <= (1 + Fraction(eps)) * table.optimum(n)
