"""Seeded property suite behind ``isolat check``.

Each property runs over random finite sets (or over Z(t) for the geometric
ones) and records how many cases passed. The first failing case is kept as a
reproducer: property name, seed, case index and the offending inputs.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable

from .boundary import directional_boundary, edge_count, frontier, line_classes, split_sides, vertex_boundary
from .lattice import (
    GeneratorSet,
    PointSet,
    components,
    minkowski_sum,
    push,
    push_word,
    translate,
    word_counts,
)
from .zonotope import build_zonotope, ehrhart, lattice_points, recurrence_check, z0

EdgeFn = Callable[[PointSet, GeneratorSet], int]
VertexFn = Callable[[PointSet, GeneratorSet], int]


@dataclass
class PropertyResult:
    name: str
    passed: int
    total: int
    reproducer: str | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        out = f"{status} {self.name} {self.passed}/{self.total}"
        if self.reproducer:
            out += f" reproducer: {self.reproducer}"
        return out


class _Tally:
    def __init__(self, name: str, seed: int):
        self.result = PropertyResult(name, 0, 0)
        self.seed = seed

    def record(self, ok: bool, case: int, **inputs) -> None:
        self.result.total += 1
        if ok:
            self.result.passed += 1
        elif self.result.reproducer is None:
            payload = {"seed": self.seed, "case": case}
            for key, val in inputs.items():
                payload[key] = val.to_json() if isinstance(val, PointSet) else val
            self.result.reproducer = json.dumps(payload, separators=(",", ":"))


def random_set(rng: random.Random, dim: int, max_size: int = 40, coord: int = 10) -> PointSet:
    size = rng.randint(1, min(max_size, (2 * coord + 1) ** dim))
    pts = set()
    while len(pts) < size:
        pts.add(tuple(rng.randint(-coord, coord) for _ in range(dim)))
    return PointSet._wrap(dim, frozenset(pts))


def run_property_suite(
    U: GeneratorSet,
    seed: int = 0,
    samples: int = 500,
    max_size: int = 40,
    coord: int = 10,
    t_max: int = 3,
    edge_fn: EdgeFn = edge_count,
    vertex_fn: VertexFn = vertex_boundary,
) -> list[PropertyResult]:
    rng = random.Random(seed)
    d, k = U.dim, U.k
    names = ["boundary_sandwich", "split_identity", "telescope", "push_order", "push_frontier",
             "translation_invariance", "component_additivity", "line_class_bound"]
    tallies = {name: _Tally(name, seed) for name in names}
    base = z0(U)

    for case in range(samples):
        S = random_set(rng, d, max_size, coord)
        bd = edge_fn(S, U)
        vb = vertex_fn(S, U)
        tallies["boundary_sandwich"].record(vb <= bd <= k * vb, case, S=S, edge=bd, vertex=vb)

        pts = S.sorted()
        rng.shuffle(pts)
        cut = rng.randint(0, len(pts))
        T = PointSet._wrap(d, frozenset(pts[:cut]))
        Tp = PointSet._wrap(d, frozenset(pts[cut:]))
        ok = all(a == b for a, b in (split_sides(T, Tp, j, U) for j in range(k)))
        tallies["split_identity"].record(ok, case, T=T, Tp=Tp)

        staged, current = 0, S
        stage_ok = True
        for i in range(k):
            nxt = push(current, i, U)
            step = len(nxt) - len(current)
            stage_ok &= step == directional_boundary(current, i, U)
            staged += step
            current = nxt
        whole = len(minkowski_sum(S, base)) - len(S)
        tallies["telescope"].record(stage_ok and staged == whole, case, S=S)

        word = [rng.randrange(k) for _ in range(rng.randint(0, 6))]
        shuffled = word[:]
        rng.shuffle(shuffled)
        a = S
        for x in word:
            a = push(a, x, U)
        b = push_word(S, word_counts(shuffled, k), U)
        tallies["push_order"].record(a == b, case, S=S, word=word)

        i = rng.randrange(k)
        F = frontier(S, i, U)
        grown = push(S, i, U)
        tallies["push_frontier"].record(
            len(grown) - len(S) == len(F) == directional_boundary(S, i, U)
            and grown.points == S.points | translate(F, U[i]).points,
            case, S=S, i=i,
        )

        v = tuple(rng.randint(-50, 50) for _ in range(d))
        moved = translate(S, v)
        same = (
            edge_fn(moved, U) == bd
            and vertex_fn(moved, U) == vb
            and all(line_classes(moved, j, U) == line_classes(S, j, U) for j in range(k))
        )
        tallies["translation_invariance"].record(same, case, S=S, v=list(v))

        parts = components(S, U)
        tallies["component_additivity"].record(
            sum(edge_fn(c, U) for c in parts) == bd
            and sum(len(c) for c in parts) == len(S),
            case, S=S,
        )

        tallies["line_class_bound"].record(
            all(directional_boundary(S, j, U) >= line_classes(S, j, U) for j in range(k)),
            case, S=S,
        )

    results = [tallies[name].result for name in names]
    results.extend(_zonotope_properties(U, seed, rng, t_max, edge_fn))
    return results


def _zonotope_properties(U, seed, rng, t_max, edge_fn) -> list[PropertyResult]:
    Z = build_zonotope(U)
    d, k = U.dim, U.k
    recurrence = _Tally("dilate_recurrence", seed)
    chain = _Tally("upper_bound_chain", seed)
    lines = _Tally("line_class_equality", seed)
    superset = _Tally("line_class_superset", seed)
    poly = _Tally("ehrhart_consistency", seed)

    for t in range(1, t_max + 1):
        recurrence.record(recurrence_check(U, t, Z), t, t=t)
        cur = lattice_points(Z, t)
        nxt = lattice_points(Z, t + 1)
        bd = edge_fn(cur, U)
        chain.record(bd <= len(nxt) - len(cur), t, t=t)
        lines.record(
            all(directional_boundary(cur, i, U) == line_classes(cur, i, U) for i in range(k)),
            t, t=t,
        )
        box = [max(abs(c) for c in p) for p in cur]
        reach = max(box) + 2
        for case in range(10):
            extra = {tuple(rng.randint(-reach, reach) for _ in range(d)) for _ in range(rng.randint(1, 30))}
            S = PointSet._wrap(d, cur.points | frozenset(extra))
            superset.record(edge_fn(S, U) >= bd, case, t=t, extra=sorted(map(list, extra)))

    E = ehrhart(Z)
    poly.record(E.coefficients[d] == Z.volume and E(0) == 1, 0)
    for t in range(d + 1, d + 4):
        poly.record(E(t) == len(lattice_points(Z, t)), t, t=t)
    return [recurrence.result, chain.result, lines.result, superset.result, poly.result]
