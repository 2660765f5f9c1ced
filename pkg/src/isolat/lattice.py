"""Integer lattice primitives: point sets, sumsets, pushes and generator sets.

Points are plain tuples of Python ints. ``PointSet`` wraps a frozenset of
such tuples together with the ambient dimension; all operations return new
values and never mutate their arguments.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateVectorError,
    EmptySetError,
    IndexOutOfRangeError,
    NotGeneratingError,
    ZeroVectorError,
)

Vector = tuple[int, ...]

# above this many pairwise sums the numpy path in minkowski_sum takes over
_NUMPY_SUM_THRESHOLD = 20_000
_BITMAP_LIMIT = 50_000_000


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - row_i[k] * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vector) -> Vector:
    return tuple(-x for x in a)


class PointSet:
    """A finite subset of Z^d."""

    __slots__ = ("dim", "points")

    def __init__(self, dim: int, points: Iterable[Sequence[int]] = ()):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        pts = frozenset(tuple(int(c) for c in p) for p in points)
        for p in pts:
            if len(p) != dim:
                raise DimensionMismatchError(f"point {p} does not have dimension {dim}")
        self.dim = dim
        self.points = pts

    @classmethod
    def _wrap(cls, dim: int, points: frozenset) -> "PointSet":
        # trusted constructor: points already validated tuples of ints
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.points = points
        return obj

    @classmethod
    def origin(cls, dim: int) -> "PointSet":
        return cls._wrap(dim, frozenset([(0,) * dim]))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.points)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.points

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        shown = self.sorted()
        if len(shown) > 8:
            body = ", ".join(map(str, shown[:8])) + ", ..."
        else:
            body = ", ".join(map(str, shown))
        return f"PointSet(dim={self.dim}, n={len(self)}, {{{body}}})"

    def sorted(self) -> list[Vector]:
        return sorted(self.points)

    def union(self, other: "PointSet") -> "PointSet":
        _check_dims(self, other)
        return PointSet._wrap(self.dim, self.points | other.points)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.sorted()]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]], dim: int | None = None) -> "PointSet":
        if dim is None:
            if not data:
                raise ValueError("cannot infer the dimension of an empty point list")
            dim = len(data[0])
        return cls(dim, data)


@dataclass(frozen=True)
class GeneratorSet:
    """A validated, ordered set of generators u_1..u_k of Z^d."""

    dim: int
    generators: tuple[Vector, ...]

    @property
    def k(self) -> int:
        return len(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.generators)

    def __getitem__(self, i: int) -> Vector:
        return self.generators[i]

    def neighbor_offsets(self) -> tuple[Vector, ...]:
        """Distinct vectors of ±U, i.e. undirected adjacency in G_U."""
        seen = dict.fromkeys(self.generators)
        seen.update(dict.fromkeys(vneg(u) for u in self.generators))
        return tuple(seen)

    def max_norm(self) -> int:
        return max(max(abs(c) for c in u) for u in self.generators)

    def to_json(self) -> dict:
        return {"dim": self.dim, "generators": [list(u) for u in self.generators]}


def _maximal_minor_gcd(dim: int, vectors: Sequence[Vector]) -> int:
    g = 0
    for cols in itertools.combinations(vectors, dim):
        g = math.gcd(g, int_det(cols))
        if g == 1:
            break
    return g


def validate_generators(dim: int, vectors: Iterable[Sequence[int]]) -> GeneratorSet:
    """Check that ``vectors`` is a set of nonzero vectors generating Z^dim."""
    if dim < 1:
        raise DimensionMismatchError(f"dimension must be >= 1, got {dim}")
    vecs = []
    for v in vectors:
        v = tuple(int(c) for c in v)
        if len(v) != dim:
            raise DimensionMismatchError(f"generator {v} does not have dimension {dim}")
        vecs.append(v)
    if not vecs:
        raise NotGeneratingError("no generators given")
    seen = set()
    for v in vecs:
        if not any(v):
            raise ZeroVectorError("generators must be nonzero")
        if v in seen:
            raise DuplicateVectorError(f"generator {v} appears more than once")
        seen.add(v)
    if len(vecs) < dim:
        raise NotGeneratingError(f"{len(vecs)} vectors cannot span Z^{dim}")
    g = _maximal_minor_gcd(dim, vecs)
    if g == 0:
        raise NotGeneratingError("generators have rank < dim")
    if g != 1:
        raise NotGeneratingError(f"generators span a sublattice of index {g}")
    return GeneratorSet(dim, tuple(vecs))


def l1_generators(dim: int) -> GeneratorSet:
    vecs = []
    for j in range(dim):
        for s in (1, -1):
            v = [0] * dim
            v[j] = s
            vecs.append(tuple(v))
    return validate_generators(dim, vecs)


def linf_generators(dim: int) -> GeneratorSet:
    vecs = [v for v in itertools.product((-1, 0, 1), repeat=dim) if any(v)]
    return validate_generators(dim, vecs)


def triangular_generators() -> GeneratorSet:
    return validate_generators(2, [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])


def _check_dims(*sets: PointSet) -> None:
    dims = {s.dim for s in sets}
    if len(dims) != 1:
        raise DimensionMismatchError(f"dimensions differ: {sorted(dims)}")


def _check_vector(dim: int, v: Sequence[int]) -> Vector:
    v = tuple(int(c) for c in v)
    if len(v) != dim:
        raise DimensionMismatchError(f"vector {v} does not have dimension {dim}")
    return v


def _check_index(i: int, U: GeneratorSet) -> None:
    if not 0 <= i < U.k:
        raise IndexOutOfRangeError(f"generator index {i} outside 0..{U.k - 1}")


def _numpy_sum(dim: int, A: frozenset, B: frozenset) -> frozenset:
    a = np.array(list(A), dtype=np.int64).reshape(-1, dim)
    b = np.array(list(B), dtype=np.int64).reshape(-1, dim)
    amin, bmin = a.min(axis=0), b.min(axis=0)
    span = (a.max(axis=0) - amin) + (b.max(axis=0) - bmin) + 1
    strides = np.ones(dim, dtype=np.int64)
    for j in range(dim - 2, -1, -1):
        strides[j] = strides[j + 1] * span[j + 1]
    # encoding is additive, so key(a) + key(b) encodes a + b
    ka = (a - amin) @ strides
    kb = (b - bmin) @ strides
    size = int(strides[0] * span[0])
    step = max(1, 4_000_000 // max(len(kb), 1))
    if size <= _BITMAP_LIMIT:
        hit = np.zeros(size, dtype=bool)
        for start in range(0, len(ka), step):
            hit[(ka[start:start + step, None] + kb[None, :]).ravel()] = True
        keys = np.flatnonzero(hit)
    else:
        chunks = [np.unique((ka[start:start + step, None] + kb[None, :]).ravel())
                  for start in range(0, len(ka), step)]
        keys = np.unique(np.concatenate(chunks))
    out = np.empty((len(keys), dim), dtype=np.int64)
    rem = keys
    for j in range(dim):
        out[:, j], rem = np.divmod(rem, strides[j])
    out += amin + bmin
    return frozenset(map(tuple, out.tolist()))


def _fits_int64(dim: int, A: frozenset, B: frozenset) -> bool:
    bound = 1
    for j in range(dim):
        lo = min(p[j] for p in A) + min(p[j] for p in B)
        hi = max(p[j] for p in A) + max(p[j] for p in B)
        bound *= hi - lo + 1
    return bound < 2**62 and all(abs(c) < 2**40 for p in itertools.chain(A, B) for c in p)


def minkowski_sum(A: PointSet, B: PointSet) -> PointSet:
    """The sumset {a + b : a in A, b in B}."""
    _check_dims(A, B)
    if not A.points or not B.points:
        return PointSet._wrap(A.dim, frozenset())
    if len(A) * len(B) > _NUMPY_SUM_THRESHOLD and _fits_int64(A.dim, A.points, B.points):
        return PointSet._wrap(A.dim, _numpy_sum(A.dim, A.points, B.points))
    out = {tuple(x + y for x, y in zip(a, b)) for a in A.points for b in B.points}
    return PointSet._wrap(A.dim, frozenset(out))


def iterated_sumset(A: PointSet, n: int) -> PointSet:
    """nA = A + ... + A (n times); 0A is the origin."""
    if n < 0:
        raise ValueError("n must be non-negative")
    result = PointSet.origin(A.dim)
    for _ in range(n):
        result = minkowski_sum(result, A)
    return result


def _shift(points: Iterable[Vector], v: Vector) -> set:
    if len(v) == 2:
        a, b = v
        return {(x + a, y + b) for x, y in points}
    if len(v) == 3:
        a, b, c = v
        return {(x + a, y + b, z + c) for x, y, z in points}
    return {tuple(x + y for x, y in zip(p, v)) for p in points}


def push(S: PointSet, i: int, U: GeneratorSet) -> PointSet:
    """S_i = S + {0, u_i}."""
    _check_index(i, U)
    if S.dim != U.dim:
        raise DimensionMismatchError("point set and generators differ in dimension")
    return PointSet._wrap(S.dim, S.points | _shift(S.points, U[i]))


def word_counts(word: Iterable[int], k: int) -> tuple[int, ...]:
    """Multiplicity vector of a push word x in [k]^t (0-based letters)."""
    counts = [0] * k
    for x in word:
        if not 0 <= x < k:
            raise IndexOutOfRangeError(f"letter {x} outside 0..{k - 1}")
        counts[x] += 1
    return tuple(counts)


def push_word(S: PointSet, counts: Sequence[int], U: GeneratorSet) -> PointSet:
    """S_x = S + sum_i counts[i] * {0, u_i}; depends only on the counts."""
    if len(counts) != U.k:
        raise IndexOutOfRangeError(f"push word has {len(counts)} counts, expected {U.k}")
    if any(c < 0 for c in counts):
        raise ValueError("push counts must be non-negative")
    for i, c in enumerate(counts):
        for _ in range(c):
            S = push(S, i, U)
    return S


def translate(S: PointSet, v: Sequence[int]) -> PointSet:
    v = _check_vector(S.dim, v)
    return PointSet._wrap(S.dim, frozenset(_shift(S.points, v)))


def canonical_form(S: PointSet) -> PointSet:
    """The translate of S whose coordinate-wise minimum is the origin."""
    if not S.points:
        raise EmptySetError("canonical form of the empty set is undefined")
    mins = tuple(min(p[j] for p in S.points) for j in range(S.dim))
    if not any(mins):
        return S
    return translate(S, vneg(mins))


def components(S: PointSet, U: GeneratorSet) -> list[PointSet]:
    """Connected components of S under adjacency b - a in ±U.

    Components are returned ordered by their lexicographically least point.
    """
    if S.dim != U.dim:
        raise DimensionMismatchError("point set and generators differ in dimension")
    offsets = U.neighbor_offsets()
    remaining = set(S.points)
    out = []
    for start in sorted(S.points):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for w in offsets:
                q = tuple(x + y for x, y in zip(p, w))
                if q in remaining:
                    remaining.discard(q)
                    comp.add(q)
                    queue.append(q)
        out.append(PointSet._wrap(S.dim, frozenset(comp)))
    return out
