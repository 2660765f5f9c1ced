"""Exact values of ∂*(n) for small n.

Two independent routes:

* ``exact_table`` enumerates connected sets (Redelmeier's growth algorithm,
  generalised to the adjacency ±U) and combines them with a split DP over
  component sizes.
* ``brute_force_oracle`` searches all n-subsets of a box by branch and bound,
  with no connectivity assumption.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Iterator

from .errors import BudgetExceededError, InfeasibleEnumerationError, SizeNotInTableError
from .lattice import GeneratorSet, PointSet, canonical_form, translate

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_N_MAX = 10


def node_budget(default: int = DEFAULT_NODE_BUDGET) -> int:
    """Enumeration node cap; the ISOLAT_BUDGET environment variable overrides it."""
    raw = os.environ.get("ISOLAT_BUDGET")
    return int(raw) if raw else default


@dataclass
class BoundaryTable:
    """Map n -> (∂*(n), canonical witness)."""

    entries: dict[int, tuple[int, PointSet]] = field(default_factory=dict)

    def __contains__(self, n) -> bool:
        return n in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def optimum(self, n: int) -> int:
        try:
            return self.entries[n][0]
        except KeyError:
            raise SizeNotInTableError(f"no exact optimum recorded for n={n}") from None

    def witness(self, n: int) -> PointSet:
        try:
            return self.entries[n][1]
        except KeyError:
            raise SizeNotInTableError(f"no exact optimum recorded for n={n}") from None

    def sizes(self) -> list[int]:
        return sorted(self.entries)

    def optima(self) -> list[int]:
        return [self.entries[n][0] for n in self.sizes()]

    def to_json(self) -> dict:
        return {
            str(n): {"optimum": opt, "witness": w.to_json()}
            for n, (opt, w) in sorted(self.entries.items())
        }

    def dumps(self) -> str:
        """One line per n, keys in numeric order; byte-stable for a given table."""
        body = ",\n".join(
            f"  {json.dumps(key)}: {json.dumps(row, separators=(', ', ': '))}"
            for key, row in self.to_json().items()
        )
        return "{\n" + body + "\n}\n"

    @classmethod
    def from_json(cls, data: dict, dim: int) -> "BoundaryTable":
        entries = {}
        for key, row in data.items():
            entries[int(key)] = (int(row["optimum"]), PointSet(dim, row["witness"]))
        return cls(entries)


class _Encoder:
    """Packs points of a bounded window into ints with lex-compatible ordering."""

    def __init__(self, dim: int, radius: int):
        self.dim = dim
        self.off = radius
        self.width = 2 * radius + 1
        self.strides = [self.width ** (dim - 1 - j) for j in range(dim)]

    def encode(self, v) -> int:
        return sum((c + self.off) * s for c, s in zip(v, self.strides))

    def delta(self, u) -> int:
        # translation by u shifts every in-window key by the same amount
        return sum(c * s for c, s in zip(u, self.strides))

    def decode(self, key: int) -> tuple[int, ...]:
        out = []
        for s in self.strides:
            q, key = divmod(key, s)
            out.append(q - self.off)
        return tuple(out)


def _connected_search(U: GeneratorSet, n: int, budget: int) -> Iterator[tuple[int, tuple[int, ...], _Encoder]]:
    """Yield (∂(S), keys of S) for each connected n-set S with lex-least point 0."""
    # a connected n-set anchored at 0 stays within l_inf radius (n-1)*g; its
    # candidate neighbours within n*g
    enc = _Encoder(U.dim, (n + 1) * U.max_norm())
    origin = enc.encode((0,) * U.dim)
    nbrs = [enc.delta(w) for w in U.neighbor_offsets()]
    gens = [enc.delta(u) for u in U.generators]
    k = U.k
    member: set[int] = set()
    seen = {origin}
    cells: list[int] = []
    nodes = 0
    boundary = 0

    def grow(untried: list[int]):
        nonlocal nodes, boundary
        untried = list(untried)
        while untried:
            c = untried.pop()
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(f"connected-set enumeration exceeded {budget} nodes")
            gain = k
            for du in gens:
                if c + du in member:
                    gain -= 1
                if c - du in member:
                    gain -= 1
            boundary += gain
            member.add(c)
            cells.append(c)
            if len(cells) == n:
                yield boundary, tuple(cells)
            else:
                fresh = []
                for dw in nbrs:
                    q = c + dw
                    if q > origin and q not in seen:
                        seen.add(q)
                        fresh.append(q)
                yield from grow(untried + fresh)
                seen.difference_update(fresh)
            cells.pop()
            member.discard(c)
            boundary -= gain

    for bd, keys in grow([origin]):
        yield bd, keys, enc


def _canonical_from_keys(keys, enc: _Encoder, dim: int) -> PointSet:
    return canonical_form(PointSet._wrap(dim, frozenset(enc.decode(q) for q in keys)))


def enumerate_connected(U: GeneratorSet, n: int, budget: int | None = None) -> Iterator[PointSet]:
    """Every connected n-point set exactly once up to translation, in canonical form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    budget = node_budget() if budget is None else budget
    for _, keys, enc in _connected_search(U, n, budget):
        yield _canonical_from_keys(keys, enc, U.dim)


def _sort_key(S: PointSet):
    return S.sorted()


def _best_connected(U: GeneratorSet, n: int, budget: int) -> tuple[int, PointSet]:
    best = None
    tied = []
    for bd, keys, enc in _connected_search(U, n, budget):
        if best is None or bd < best:
            best, tied = bd, [(keys, enc)]
        elif bd == best:
            tied.append((keys, enc))
    witness = min((_canonical_from_keys(keys, enc, U.dim) for keys, enc in tied), key=_sort_key)
    return best, witness


def far_union(A: PointSet, B: PointSet, U: GeneratorSet) -> PointSet:
    """A together with a translate of B placed beyond the reach of any generator."""
    gap = U.max_norm() + 1
    shift = max(p[0] for p in A) - min(p[0] for p in B) + gap
    return canonical_form(A.union(translate(B, (shift,) + (0,) * (U.dim - 1))))


def exact_table(U: GeneratorSet, N: int, budget: int | None = None) -> BoundaryTable:
    """∂*(n) for n = 1..N with lexicographically least canonical witnesses.

    Connected witnesses are preferred on ties; a split witness is recorded only
    when it is strictly better (a connected optimum always exists, so in
    practice this never happens).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    budget = node_budget() if budget is None else budget
    table = BoundaryTable()
    for n in range(1, N + 1):
        opt, witness = _best_connected(U, n, budget)
        for m in range(1, n // 2 + 1):
            split = table.optimum(m) + table.optimum(n - m)
            if split < opt:
                opt = split
                witness = far_union(table.witness(m), table.witness(n - m), U)
        table.entries[n] = (opt, witness)
    return table


def _box_cells(U: GeneratorSet, radius: int) -> list[tuple[int, ...]]:
    origin = (0,) * U.dim
    return [origin] + [
        v for v in itertools.product(range(-radius, radius + 1), repeat=U.dim) if v > origin
    ]


def brute_force_oracle(
    U: GeneratorSet, n: int, radius: int | None = None, budget: int | None = None
) -> int:
    """min ∂(S) over n-subsets S of [-radius, radius]^d whose lex-least point is 0.

    Exhaustive branch and bound over all subsets, connected or not. Adding
    points in increasing lexicographic order never decreases ∂ (each new
    point has at most k edges to earlier ones), so the partial boundary is a
    valid lower bound. Correct whenever some optimal set fits in the box; any
    radius >= n * max|u_i| suffices.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if radius is None:
        radius = n * U.max_norm()
    budget = node_budget() if budget is None else budget
    cells = _box_cells(U, radius)
    index = {c: j for j, c in enumerate(cells)}
    if len(cells) < n:
        raise InfeasibleEnumerationError(f"box of radius {radius} has fewer than {n} usable points")
    k = U.k
    # fwd[m]: later cells joined to cell m by a directed edge (one entry per edge)
    fwd: list[list[int]] = [[] for _ in cells]
    for j, c in enumerate(cells):
        for u in U.generators:
            for q in (tuple(a + b for a, b in zip(c, u)), tuple(a - b for a, b in zip(c, u))):
                m = index.get(q)
                if m is not None and m < j:
                    fwd[m].append(j)
    # hits[j]: edges between cell j and the chosen cells, all earlier than j
    hits = [0] * len(cells)
    total = len(cells)
    best = float("inf")
    nodes = 0

    def add(j):
        for m in fwd[j]:
            hits[m] += 1

    def remove(j):
        for m in fwd[j]:
            hits[m] -= 1

    chosen = [0]

    def search(last: int, size: int, bd: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise InfeasibleEnumerationError(f"oracle search exceeded {budget} nodes")
        remaining = n - size
        stop = total - remaining + 1  # leave room for the other points
        slack = best - bd
        cand = set()
        for s in chosen:
            for m in fwd[s]:
                if last < m < stop:
                    cand.add(m)
        options = [(k - hits[m], m) for m in cand if k - hits[m] < slack]
        if k < slack:
            options.extend((k, m) for m in range(last + 1, stop) if hits[m] == 0)
        options.sort()
        for inc, m in options:
            if bd + inc >= best:
                break
            if remaining == 1:
                best = bd + inc
                break
            add(m)
            chosen.append(m)
            search(m, size + 1, bd + inc)
            chosen.pop()
            remove(m)

    add(0)
    if n == 1:
        return k
    search(0, 1, k)
    return int(best)
