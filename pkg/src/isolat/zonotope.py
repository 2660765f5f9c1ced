"""The zonotope Z = sum_i [0, u_i], its lattice dilates Z(t) and Ehrhart polynomial."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateDimensionError, DimensionMismatchError, LeadingCoefficientMismatchError
from .lattice import (
    GeneratorSet,
    PointSet,
    int_det,
    iterated_sumset,
    minkowski_sum,
)


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    upper: int
    lower: int


@dataclass(frozen=True)
class Zonotope:
    generators: GeneratorSet
    facets: tuple[Facet, ...]
    volume: Fraction

    @property
    def dim(self) -> int:
        return self.generators.dim


@dataclass(frozen=True)
class EhrhartPolynomial:
    """|Z(t)| = sum_i coefficients[i] * t**i."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            body = str(c)
            if i >= 1:
                body = ("" if c == 1 else body) + "t" + (f"^{i}" if i > 1 else "")
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def z0(U: GeneratorSet) -> PointSet:
    """Z_0 = {0, u_1} + ... + {0, u_k}."""
    pts = {(0,) * U.dim}
    for u in U.generators:
        pts |= {tuple(x + y for x, y in zip(p, u)) for p in pts}
    return PointSet._wrap(U.dim, frozenset(pts))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    v = tuple(c // g for c in v)
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def _cross(vectors: Sequence[Sequence[int]], dim: int) -> tuple[int, ...]:
    """Generalised cross product of dim-1 vectors by cofactor expansion."""
    out = []
    for j in range(dim):
        minor = [[row[c] for c in range(dim) if c != j] for row in vectors]
        out.append((-1) ** j * int_det(minor))
    return tuple(out)


def _support(normal: Sequence[int], U: GeneratorSet) -> tuple[int, int]:
    upper = lower = 0
    for u in U.generators:
        s = sum(a * b for a, b in zip(normal, u))
        if s > 0:
            upper += s
        else:
            lower += s
    return upper, lower


def build_zonotope(U: GeneratorSet) -> Zonotope:
    d = U.dim
    if d == 1:
        normals = [(1,)]
    else:
        found = {}
        for sub in itertools.combinations(U.generators, d - 1):
            n = _cross(sub, d)
            if any(n):
                found.setdefault(_primitive(n), None)
        normals = sorted(found)
        if not normals:
            raise DegenerateDimensionError("generators do not span R^d")
    facets = tuple(Facet(n, *_support(n, U)) for n in normals)
    volume = sum(abs(int_det(sub)) for sub in itertools.combinations(U.generators, d))
    if volume == 0:
        raise DegenerateDimensionError("generators do not span R^d")
    return Zonotope(U, facets, Fraction(volume))


def contains(Z: Zonotope, t: int, v: Sequence[int]) -> bool:
    """Is v in t·Z?"""
    if len(v) != Z.dim:
        raise DimensionMismatchError(f"vector {tuple(v)} does not have dimension {Z.dim}")
    for f in Z.facets:
        s = sum(a * b for a, b in zip(f.normal, v))
        if not t * f.lower <= s <= t * f.upper:
            return False
    return True


def bounding_box(Z: Zonotope, t: int) -> list[tuple[int, int]]:
    box = []
    for j in range(Z.dim):
        lo = sum(min(0, u[j]) for u in Z.generators)
        hi = sum(max(0, u[j]) for u in Z.generators)
        box.append((t * lo, t * hi))
    return box


def lattice_points(Z: Zonotope, t: int) -> PointSet:
    """Z(t) = (t·Z) ∩ Z^d by a bounding-box scan."""
    if t < 0:
        raise ValueError("t must be non-negative")
    d = Z.dim
    if t == 0:
        return PointSet.origin(d)
    box = bounding_box(Z, t)
    normals = np.array([f.normal for f in Z.facets], dtype=object)
    limit = max(abs(c) for lo_hi in box for c in lo_hi) * int(np.abs(normals).sum(axis=1).max())
    if limit >= 2**62:
        pts = (v for v in itertools.product(*(range(lo, hi + 1) for lo, hi in box))
               if contains(Z, t, v))
        return PointSet._wrap(d, frozenset(pts))
    return PointSet._wrap(d, frozenset(_scan_numpy(Z, t, box)))


def _scan_numpy(Z: Zonotope, t: int, box):
    normals = np.array([f.normal for f in Z.facets], dtype=np.int64)
    upper = t * np.array([f.upper for f in Z.facets], dtype=np.int64)
    lower = t * np.array([f.lower for f in Z.facets], dtype=np.int64)
    (lo0, hi0), rest = box[0], box[1:]
    if rest:
        grids = np.meshgrid(*(np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in rest), indexing="ij")
        tail = np.stack([g.ravel() for g in grids], axis=1)
    else:
        tail = np.zeros((1, 0), dtype=np.int64)
    tail_dot = tail @ normals[:, 1:].T
    out = []
    # one slab per first coordinate keeps memory at |slab| x |facets|
    for x in range(lo0, hi0 + 1):
        s = tail_dot + x * normals[:, 0]
        keep = np.all((s >= lower) & (s <= upper), axis=1)
        if keep.any():
            sel = tail[keep]
            out.append(np.column_stack([np.full(len(sel), x, dtype=np.int64), sel]))
    if not out:
        return []
    return map(tuple, np.concatenate(out).tolist())


def ehrhart(Z: Zonotope) -> EhrhartPolynomial:
    """Interpolate |Z(t)| through t = 0..d in exact rationals."""
    d = Z.dim
    xs = list(range(d + 1))
    ys = [len(lattice_points(Z, t)) for t in xs]
    coeffs = [Fraction(0)] * (d + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        # basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for m in range(len(basis) - 1):
                basis[m] -= xj * basis[m + 1]
            denom *= xi - xj
        for m, c in enumerate(basis):
            coeffs[m] += yi * c / denom
    poly = EhrhartPolynomial(tuple(coeffs))
    if poly.coefficients[d] != Z.volume:
        raise LeadingCoefficientMismatchError(
            f"leading coefficient {poly.coefficients[d]} != volume {Z.volume}"
        )
    return poly


def recurrence_check(U: GeneratorSet, t: int, Z: Zonotope | None = None) -> bool:
    """Both Z(t+1) = (Z ∩ Z^d) + tZ_0 and Z(t) + Z_0 = Z(t+1)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    Z = Z or build_zonotope(U)
    base = z0(U)
    nxt = lattice_points(Z, t + 1)
    first = minkowski_sum(lattice_points(Z, 1), iterated_sumset(base, t))
    if first != nxt:
        return False
    return minkowski_sum(lattice_points(Z, t), base) == nxt
