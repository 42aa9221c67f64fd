"""Quadruple colours and monochromatic subsets.

For ``a < b < c < d`` let ``R1 = d(a,b) + d(c,d)``, ``R2 = d(a,c) + d(b,d)`` and
``R3 = d(a,d) + d(b,c)``. The colour label ``"ijk"`` means ``Ri > Rj > Rk``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ._quad import COLORS, pair_sums, sums_label
from .errors import TiedSums, UnsupportedColor
from .metric import MetricSpace

QuadColor = str

EXACT_SEARCH_LIMIT = 15


def quad_sums(ms: MetricSpace, a: int, b: int, c: int, d: int) -> tuple[Fraction, Fraction, Fraction]:
    a, b, c, d = sorted((a, b, c, d))
    return pair_sums(ms.rows, a, b, c, d)


def color_quadruple(ms: MetricSpace, a: int, b: int, c: int, d: int) -> QuadColor:
    q = tuple(sorted((a, b, c, d)))
    if len(set(q)) != 4:
        raise ValueError("a quadruple needs four distinct points")
    _, m = ms.scaled
    label = sums_label(*pair_sums(m, *q))
    if label is None:
        raise TiedSums(q, quad_sums(ms, *q))
    return label


def color_table(ms: MetricSpace) -> dict[tuple[int, int, int, int], QuadColor]:
    """Colour of every quadruple; raises :class:`TiedSums` on the first tie."""
    _, m = ms.scaled
    out = {}
    for q in combinations(range(ms.n), 4):
        label = sums_label(*pair_sums(m, *q))
        if label is None:
            raise TiedSums(q, quad_sums(ms, *q))
        out[q] = label
    return out


@dataclass(frozen=True)
class ColorReport:
    n: int
    histogram: dict[str, int]
    mono: QuadColor | None
    vacuous: bool = False

    def summary(self) -> str:
        if self.vacuous:
            return f"n={self.n}: no quadruples (vacuously monochromatic)"
        hist = ", ".join(f"{c}:{k}" for c, k in sorted(self.histogram.items()))
        head = f"monochromatic {self.mono}" if self.mono else "not monochromatic"
        return f"n={self.n}: {head} ({hist})"


def mono_color(ms: MetricSpace) -> ColorReport:
    if ms.n < 4:
        return ColorReport(ms.n, {}, None, vacuous=True)
    hist = Counter(color_table(ms).values())
    mono = next(iter(hist)) if len(hist) == 1 else None
    return ColorReport(ms.n, dict(hist), mono)


# -- monochromatic subset search --------------------------------------------


@dataclass(frozen=True)
class MonoSubset:
    subset: tuple[int, ...]
    color: QuadColor
    exhaustive: bool = True


@dataclass
class _Search:
    table: dict
    n: int
    k: int
    colors: frozenset = field(default_factory=lambda: frozenset(COLORS))

    def fits(self, chosen, p, color):
        t = self.table
        return all(t[tuple(sorted((*tri, p)))] == color for tri in combinations(chosen, 3))


def _exact(s: _Search):
    """Depth-first over subsets in lexicographic order; the colour is fixed by the first 4 points."""
    chosen: list[int] = []

    def dfs(start, color):
        if len(chosen) == s.k:
            return tuple(chosen), color
        need = s.k - len(chosen)
        for p in range(start, s.n - need + 1):
            if len(chosen) == 3:
                col = s.table[(*chosen, p)]
                if col not in s.colors:
                    continue
            else:
                col = color
                if col is not None and not s.fits(chosen, p, col):
                    continue
            chosen.append(p)
            hit = dfs(p + 1, col)
            chosen.pop()
            if hit:
                return hit
        return None

    return dfs(0, None)


def _grow(s: _Search, start: list[int], color: str):
    chosen = sorted(start)
    cands = [p for p in range(s.n) if p not in chosen and s.fits(chosen, p, color)]
    while cands and len(chosen) < s.k:
        # keep the candidate that leaves the most room for later additions
        best, best_next = None, None
        for p in cands:
            nxt = [
                q
                for q in cands
                if q != p
                and all(s.table[tuple(sorted((*pair, p, q)))] == color for pair in combinations(chosen, 2))
            ]
            if best is None or len(nxt) > len(best_next):
                best, best_next = p, nxt
        chosen = sorted(chosen + [best])
        cands = best_next
    return chosen


def _heuristic(s: _Search, rng: random.Random, max_seeds: int = 400):
    quads = [q for q, c in s.table.items() if c in s.colors]
    rng.shuffle(quads)
    for q in quads[:max_seeds]:
        color = s.table[q]
        got = _grow(s, list(q), color)
        if len(got) >= s.k:
            return tuple(got[: s.k]), color
        got = _swap_search(s, got, color)
        if len(got) >= s.k:
            return tuple(got[: s.k]), color
    return None


def _swap_search(s: _Search, chosen: list[int], color: str, rounds: int = 20):
    """Drop one member and regrow; accept when the set gets larger."""
    for _ in range(rounds):
        improved = False
        for x in list(chosen):
            base = [y for y in chosen if y != x]
            if len(base) < 4:
                continue
            got = _grow(s, base, color)
            if len(got) > len(chosen):
                chosen, improved = got, True
                break
        if not improved or len(chosen) >= s.k:
            break
    return chosen


def find_monochromatic(
    ms: MetricSpace, k: int, colors=None, seed: int = 0, exact: bool | None = None
) -> MonoSubset | None:
    """Find ``k`` points whose quadruples all share one colour.

    Exact depth-first search is used up to ``EXACT_SEARCH_LIMIT`` points and a
    seeded greedy search with swap moves beyond that; a heuristic miss is not a
    proof that no such subset exists (``exhaustive`` is ``False`` on its hits).
    """
    if not 4 <= k <= ms.n:
        raise ValueError(f"need 4 <= k <= n, got k={k}, n={ms.n}")
    allowed = frozenset(COLORS if colors is None else (str(c) for c in colors))
    s = _Search(color_table(ms), ms.n, k, allowed)
    if exact is None:
        exact = ms.n <= EXACT_SEARCH_LIMIT
    if exact:
        hit = _exact(s)
        return MonoSubset(*hit, exhaustive=True) if hit else None
    hit = _heuristic(s, random.Random(seed))
    return MonoSubset(*hit, exhaustive=False) if hit else None


# -- the 213 / 312 impossibility ---------------------------------------------

# (quadruple, larger sum index, smaller sum index) for colour 213, points 0..4
_CERT_213 = (((0, 1, 2, 3), 1, 3), ((1, 2, 3, 4), 1, 3), ((0, 1, 3, 4), 2, 1))


def _sum_terms(quad, which):
    a, b, c, d = quad
    return {1: ((a, b), (c, d)), 2: ((a, c), (b, d)), 3: ((a, d), (b, c))}[which]


def _ranks(color: str) -> dict[int, int]:
    return {int(ch): pos for pos, ch in enumerate(color)}


@dataclass(frozen=True)
class Inequality:
    quad: tuple[int, int, int, int]
    larger: tuple[tuple[int, int], tuple[int, int]]
    smaller: tuple[tuple[int, int], tuple[int, int]]

    def __str__(self):
        fmt = lambda terms: " + ".join(f"d{a}{b}" for a, b in terms)
        return f"{fmt(self.larger)} > {fmt(self.smaller)}   on {self.quad}"


@dataclass(frozen=True)
class ImpossibilityCertificate:
    color: str
    inequalities: tuple[Inequality, ...]
    lhs: tuple[tuple[int, int], ...]
    rhs: tuple[tuple[int, int], ...]
    identity_holds: bool

    def summary(self) -> str:
        lines = [f"colour {self.color}: on points 0 < 1 < 2 < 3 < 4 monochromaticity forces"]
        lines += [f"  {ineq}" for ineq in self.inequalities]
        fmt = lambda terms: " + ".join(f"d{a}{b}" for a, b in terms)
        verdict = "equal multisets -> contradiction" if self.identity_holds else "multisets differ"
        lines.append(f"  sum of left sides : {fmt(self.lhs)}")
        lines.append(f"  sum of right sides: {fmt(self.rhs)}")
        lines.append(f"  {verdict}")
        return "\n".join(lines)


def impossibility_certificate(color: str) -> ImpossibilityCertificate:
    """Three strict inequalities forced by ``color`` on 5 points whose sides sum to the same terms.

    Each inequality's direction is read off the colour's ranking, so the
    identity is checked, not assumed.
    """
    color = str(color)
    if color not in ("213", "312"):
        raise UnsupportedColor(f"no 5-point certificate for colour {color}")
    rank = _ranks(color)
    ineqs = []
    for quad, i, j in _CERT_213:
        big, small = (i, j) if rank[i] < rank[j] else (j, i)
        ineqs.append(Inequality(quad, _sum_terms(quad, big), _sum_terms(quad, small)))
    lhs = Counter(t for q in ineqs for t in q.larger)
    rhs = Counter(t for q in ineqs for t in q.smaller)
    return ImpossibilityCertificate(
        color,
        tuple(ineqs),
        tuple(sorted(lhs.elements())),
        tuple(sorted(rhs.elements())),
        lhs == rhs,
    )


def random_five_point_trial(rng: random.Random, grid: int = 2**20):
    """Colours of the five quadruples of a random generic 5-point space.

    Distances are integers in ``[grid, 2*grid]`` (a scaled copy of ``[1, 2]``,
    so the triangle inequality holds); tied draws are redrawn.
    """
    while True:
        d = [[0] * 5 for _ in range(5)]
        for i, j in combinations(range(5), 2):
            d[i][j] = d[j][i] = grid + rng.randrange(grid + 1)
        labels = [sums_label(*pair_sums(d, *q)) for q in combinations(range(5), 4)]
        if None not in labels:
            return labels


def lemma4_search(trials: int, seed: int = 0) -> int:
    """Number of random generic 5-point spaces that are 213- or 312-monochromatic."""
    rng = random.Random(seed)
    hits = 0
    for _ in range(trials):
        labels = random_five_point_trial(rng)
        if len(set(labels)) == 1 and labels[0] in ("213", "312"):
            hits += 1
    return hits
