"""Shared builders for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from linf_embed.metric import from_pairs

GRID = 2**20


def table_space(n, dist):
    """Space from a callable ``dist(i, j)`` evaluated on ``i < j``."""
    return from_pairs(n, {(i, j): Fraction(dist(i, j)) for i, j in combinations(range(n), 2)})


def pair_space(*upper):
    """Space from distances listed in lexicographic pair order (01, 02, ..., 12, ...)."""
    m = len(upper)
    n = 1
    while n * (n - 1) // 2 < m:
        n += 1
    assert n * (n - 1) // 2 == m
    return from_pairs(n, dict(zip(combinations(range(n), 2), map(Fraction, upper))))


def random_space(n, rng: random.Random, lo=1, hi=2):
    """Distances uniform on a rational grid in ``[lo, hi]``; ``hi <= 2 * lo`` keeps it a metric."""
    return from_pairs(
        n,
        {p: lo + (hi - lo) * Fraction(rng.randrange(GRID + 1), GRID) for p in combinations(range(n), 2)},
    )


def random_graph_metric(n, rng: random.Random):
    """Shortest-path metric of a random weighted complete graph; ties and slack both occur."""
    w = [[0] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        w[i][j] = w[j][i] = Fraction(rng.randint(1, 12), rng.choice([1, 2, 3]))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if w[i][k] + w[k][j] < w[i][j]:
                    w[i][j] = w[i][k] + w[k][j]
    return from_pairs(n, {(i, j): w[i][j] for i, j in combinations(range(n), 2)})


def plant(core, extra, seed, positions=None):
    """Insert ``core`` among ``extra`` random points.

    ``positions`` are the slots (ascending) taken by the core points in the
    combined order; by default the core comes first. Distances touching a
    random point are uniform in ``[1, 2]``; core distances also lie in
    ``(1, 2)``, so the triangle inequality holds throughout.
    """
    rng = random.Random(seed)
    n = core.n + extra
    slots = list(range(core.n)) if positions is None else sorted(positions)
    where = {s: i for i, s in enumerate(slots)}
    upper = {}
    for i, j in combinations(range(n), 2):
        if i in where and j in where:
            upper[i, j] = core.d(where[i], where[j])
        else:
            upper[i, j] = 1 + Fraction(rng.randrange(GRID + 1), GRID)
    return from_pairs(n, upper), slots
