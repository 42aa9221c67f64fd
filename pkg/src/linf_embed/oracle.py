"""Brute-force minimal l-infinity dimension for tiny spaces.

A cover by ``k`` tight graphs can always be shrunk to a partition of the pairs
into ``k`` parts, each tight for some 1-Lipschitz function (a function tight on a
set is tight on every subset). So ``m(X)`` is the least number of parts of a
partition whose parts are all feasible, and a part containing an infeasible
part is itself infeasible, which is what the search prunes on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .constructions import build_cover, instantiate_cover, required_size
from .errors import GuardExceeded
from .lipschitz import LipschitzFn, is_lipschitz, tight_graph
from .metric import MetricSpace, generate

MAX_POINTS = 7


def _feasible_values(n: int, m: list[list[int]], tight: list[tuple[int, int]]) -> list[int] | None:
    """Integer potentials with ``f(a) - f(b) == m[a][b]`` on ``tight`` and 1-Lipschitz, or ``None``.

    Difference constraints ``f(u) - f(v) <= w`` become arcs ``v -> u`` of weight
    ``w``; Floyd-Warshall finds a negative cycle or the shortest-path solution.
    """
    w = [[0 if u == v else m[u][v] for u in range(n)] for v in range(n)]
    for a, b in tight:
        # f(b) - f(a) <= -d(a, b)
        w[a][b] = min(w[a][b], -m[a][b])
    for k in range(n):
        wk = w[k]
        for i in range(n):
            wi = w[i]
            wik = wi[k]
            for j in range(n):
                if wik + wk[j] < wi[j]:
                    wi[j] = wik + wk[j]
    if any(w[i][i] < 0 for i in range(n)):
        return None
    f = [min(0, *(w[v][u] for v in range(n))) for u in range(n)]
    lo = min(f)
    return [x - lo for x in f]


def _orientations(edges: list[tuple[int, int]]):
    """Orientations in binary order; bit ``i`` set reverses ``edges[i]`` to high -> low."""
    for mask in range(1 << len(edges)):
        yield [(b, a) if mask >> i & 1 else (a, b) for i, (a, b) in enumerate(edges)]


def part_feasible(ms: MetricSpace, part: Iterable[tuple[int, int]]) -> LipschitzFn | None:
    """A 1-Lipschitz function tight on every pair of ``part``, or ``None`` if there is none."""
    edges = sorted((min(p), max(p)) for p in part)
    if not edges:
        raise ValueError("part must be non-empty")
    den, m = ms.scaled
    for oriented in _orientations(edges):
        vals = _feasible_values(ms.n, m, oriented)
        if vals is not None:
            f = LipschitzFn(ms, {x: Fraction(v, den) for x, v in enumerate(vals)})
            tight = tight_graph(f).undirected()
            if not is_lipschitz(f) or not set(edges) <= tight:
                raise AssertionError("difference-constraint solution failed its own check")
            return f
    return None


class _Feasibility:
    """Memoised feasibility of parts encoded as bitmasks over ``edges``."""

    def __init__(self, ms: MetricSpace):
        self.ms = ms
        self.edges = list(ms.pairs())
        self.memo: dict[int, bool] = {}
        _, self.m = ms.scaled

    def __call__(self, mask: int) -> bool:
        hit = self.memo.get(mask)
        if hit is None:
            part = [e for i, e in enumerate(self.edges) if mask >> i & 1]
            hit = any(_feasible_values(self.ms.n, self.m, o) is not None for o in _orientations(part))
            self.memo[mask] = hit
        return hit


def _partition(feasible: _Feasibility, n_edges: int, k: int) -> list[int] | None:
    parts: list[int] = []

    def dfs(e: int) -> bool:
        if e == n_edges:
            return True
        bit = 1 << e
        for i in range(len(parts)):
            grown = parts[i] | bit
            if feasible(grown):
                parts[i] = grown
                if dfs(e + 1):
                    return True
                parts[i] ^= bit
        if len(parts) < k:
            # a single pair is always tight for d(a, .)
            parts.append(bit)
            if dfs(e + 1):
                return True
            parts.pop()
        return False

    return list(parts) if dfs(0) else None


@dataclass(frozen=True)
class MinPartition:
    k: int
    parts: tuple[tuple[tuple[int, int], ...], ...]
    fns: tuple[LipschitzFn, ...]


def min_partition(ms: MetricSpace, k_max: int | None = None) -> MinPartition | None:
    """Smallest feasible partition of all pairs with at most ``k_max`` parts."""
    if ms.n > MAX_POINTS:
        raise GuardExceeded(ms.n, MAX_POINTS)
    edges = list(ms.pairs())
    if not edges:
        return MinPartition(0, (), ())
    if k_max is None:
        k_max = ms.n - 1
    feasible = _Feasibility(ms)
    for k in range(1, k_max + 1):
        masks = _partition(feasible, len(edges), k)
        if masks is not None:
            parts = tuple(tuple(e for i, e in enumerate(edges) if mk >> i & 1) for mk in masks)
            return MinPartition(k, parts, tuple(part_feasible(ms, p) for p in parts))
    return None


def exact_m(ms: MetricSpace, k_max: int | None = None) -> int | None:
    """``m(X)`` if it is at most ``k_max`` (default ``n - 1``), else ``None``."""
    got = min_partition(ms, k_max)
    return None if got is None else got.k


@dataclass(frozen=True)
class CrossCheck:
    color: str
    c: int
    n: int
    construction_size: int
    oracle_m: int | None

    @property
    def consistent(self) -> bool:
        return self.oracle_m is not None and self.oracle_m <= self.construction_size

    def summary(self) -> str:
        verdict = "consistent" if self.consistent else "INCONSISTENT"
        return (
            f"colour {self.color}, c={self.c}: {self.n} points, construction uses "
            f"{self.construction_size} functions, exact m = {self.oracle_m} ({verdict})"
        )


def cross_check_construction(color, c: int, seed: int = 0) -> CrossCheck:
    n = required_size(color, c)
    if n > MAX_POINTS:
        raise GuardExceeded(n, MAX_POINTS)
    ms = generate(str(color), n, seed)
    cover = instantiate_cover(build_cover(color, c), ms)
    return CrossCheck(str(color), c, n, len(cover), exact_m(ms, max(len(cover), 1)))


def induced_partition(cover) -> list[list[tuple[int, int]]]:
    """Assign each pair to the first function of ``cover`` that is tight on it."""
    graphs = [tight_graph(f).undirected() for f in cover.fns]
    parts: list[list[tuple[int, int]]] = [[] for _ in graphs]
    for p in combinations(range(cover.space.n), 2):
        for i, g in enumerate(graphs):
            if p in g:
                parts[i].append(p)
                break
    return [p for p in parts if p]
