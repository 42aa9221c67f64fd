"""Finite metric spaces with exact rational distances.

Points are the integers ``0 .. n-1`` and their order is meaningful: quadruple
colours are defined for ``a < b < c < d`` in this order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ._quad import min_gap, pair_sums, sums_label
from .errors import (
    AsymmetricInput,
    GenerationFailed,
    MetricError,
    NonPositiveDistance,
    PerturbationFailed,
    TriangleViolation,
)

CONSTRUCTIBLE = ("321", "132", "123", "231")

# grid used for every random rational draw
_GRID = 2**20
_MAX_PERTURB_TRIES = 1000
_MAX_CLIMB_STEPS = 20000


def as_rational(x) -> Fraction:
    """Exact conversion; floats are refused because their decimal reading is ambiguous."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass a Fraction, int or decimal string")
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """Ordered point set ``0..n-1`` with a symmetric rational distance matrix.

    Build instances through :func:`validate` or :func:`from_pairs`; the
    constructor itself does not check the metric axioms.
    """

    n: int
    rows: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def d(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def pairs(self):
        return combinations(range(self.n), 2)

    def upper(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): self.rows[i][j] for i, j in self.pairs()}

    def min_distance(self) -> Fraction | None:
        return min((self.rows[i][j] for i, j in self.pairs()), default=None)

    def subspace(self, points: Iterable[int]) -> MetricSpace:
        """Induced space on ``points``, relabelled ``0..m-1`` in ascending order."""
        pts = sorted(set(points))
        return MetricSpace(len(pts), tuple(tuple(self.rows[a][b] for b in pts) for a in pts))

    def scale(self, factor) -> MetricSpace:
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return MetricSpace(self.n, tuple(tuple(x * factor for x in row) for row in self.rows))

    @cached_property
    def scaled(self) -> tuple[int, list[list[int]]]:
        """``(L, M)`` with ``M[i][j] == d(i, j) * L`` integral, for fast exact comparisons."""
        den = 1
        for i, j in self.pairs():
            den = math.lcm(den, self.rows[i][j].denominator)
        mat = [[int(x * den) for x in row] for row in self.rows]
        return den, mat

    def __eq__(self, other):
        if not isinstance(other, MetricSpace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))


def _build(n: int, upper: Mapping[tuple[int, int], Fraction]) -> MetricSpace:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in upper.items():
        rows[i][j] = rows[j][i] = v
    return MetricSpace(n, tuple(tuple(r) for r in rows))


def check_triangles(ms: MetricSpace) -> None:
    """Raise :class:`TriangleViolation` for the first failing triple, else return."""
    den, m = ms.scaled
    n = ms.n
    for i, j, k in combinations(range(n), 3):
        dij, dik, djk = m[i][j], m[i][k], m[j][k]
        # the long side through the middle vertex
        if dik > dij + djk:
            raise TriangleViolation(i, j, k, Fraction(dij + djk - dik, den))
        if dij > dik + djk:
            raise TriangleViolation(i, k, j, Fraction(dik + djk - dij, den))
        if djk > dij + dik:
            raise TriangleViolation(j, i, k, Fraction(dij + dik - djk, den))


def from_pairs(n: int, upper: Mapping[tuple[int, int], object]) -> MetricSpace:
    """Build and validate a space from ``{(i, j): d}`` with ``i < j``; every pair required."""
    if n < 1:
        raise MetricError("a metric space needs at least one point")
    vals: dict[tuple[int, int], Fraction] = {}
    for (i, j), v in upper.items():
        if not (0 <= i < j < n):
            raise MetricError(f"pair ({i},{j}) is not of the form 0 <= i < j < {n}")
        v = as_rational(v)
        if v <= 0:
            raise NonPositiveDistance(i, j, v)
        vals[i, j] = v
    missing = [p for p in combinations(range(n), 2) if p not in vals]
    if missing:
        raise MetricError(f"missing distances for pairs {missing[:5]}")
    ms = _build(n, vals)
    check_triangles(ms)
    return ms


def validate(table: Sequence[Sequence[object]]) -> MetricSpace:
    """Check a square distance table and return the metric space it describes.

    Entries may be ``None`` on one side of the diagonal; when both ``d[i][j]``
    and ``d[j][i]`` are given they must agree exactly.
    """
    n = len(table)
    if n < 1 or any(len(row) != n for row in table):
        raise MetricError("distance table must be square and non-empty")
    upper: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        if table[i][i] not in (None, 0) and as_rational(table[i][i]) != 0:
            raise MetricError(f"diagonal entry d({i},{i}) must be zero")
        for j in range(i + 1, n):
            a, b = table[i][j], table[j][i]
            if a is None and b is None:
                raise MetricError(f"no distance given for pair ({i},{j})")
            if a is not None and b is not None and as_rational(a) != as_rational(b):
                raise AsymmetricInput(i, j, as_rational(a), as_rational(b))
            upper[i, j] = as_rational(a if a is not None else b)
    return from_pairs(n, upper)


def _is_metric(ms: MetricSpace) -> bool:
    try:
        check_triangles(ms)
    except TriangleViolation:
        return False
    return all(ms.d(i, j) > 0 for i, j in ms.pairs())


# -- genericity ------------------------------------------------------------


@dataclass(frozen=True)
class GenericityReport:
    quad_generic: bool
    distinct_distances: bool
    first_violation: tuple | None = None

    @property
    def generic(self) -> bool:
        return self.quad_generic and self.distinct_distances


def genericity(ms: MetricSpace) -> GenericityReport:
    """Report tied pair sums within a quadruple and repeated distances.

    ``first_violation`` is the first tied quadruple in lexicographic order, or
    failing that a pair of pairs ``((i, j), (k, l))`` sharing a distance.
    """
    _, m = ms.scaled
    quad_witness = None
    for q in combinations(range(ms.n), 4):
        if sums_label(*pair_sums(m, *q)) is None:
            quad_witness = q
            break
    seen: dict[int, tuple[int, int]] = {}
    pair_witness = None
    for i, j in ms.pairs():
        v = m[i][j]
        if v in seen:
            pair_witness = (seen[v], (i, j))
            break
        seen[v] = (i, j)
    return GenericityReport(
        quad_generic=quad_witness is None,
        distinct_distances=pair_witness is None,
        first_violation=quad_witness if quad_witness is not None else pair_witness,
    )


def min_quad_gap(ms: MetricSpace) -> Fraction | None:
    """Smallest difference between two pair sums of one quadruple (``None`` if n < 4)."""
    den, m = ms.scaled
    best = None
    for q in combinations(range(ms.n), 4):
        g = min_gap(*pair_sums(m, *q))
        if best is None or g < best:
            best = g
    return None if best is None else Fraction(best, den)


def perturb_to_generic(ms: MetricSpace, eps, seed: int = 0) -> MetricSpace:
    """Add an independent amount from ``[eps, 2*eps]`` to every distance.

    Draws are repeated until the result is generic (no tied quadruple sums, no
    repeated distance) and still satisfies the triangle inequality.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    rng = random.Random(seed)
    for _ in range(_MAX_PERTURB_TRIES):
        upper = {
            (i, j): ms.d(i, j) + eps * (1 + Fraction(rng.randrange(_GRID + 1), _GRID))
            for i, j in ms.pairs()
        }
        out = _build(ms.n, upper)
        if genericity(out).generic and _is_metric(out):
            return out
    raise PerturbationFailed(f"no generic perturbation found in {_MAX_PERTURB_TRIES} draws")


# -- generators ------------------------------------------------------------


def _profile(color: str, n: int, family: int):
    """Distance profile ``g`` (a function of the index gap) and its scale."""
    nn = Fraction(n * n)
    nnn = Fraction(n**3)
    if family == 0:
        table = {
            "321": (lambda t: Fraction(t * t), Fraction(1, n * n)),
            "231": (lambda t: t - t * t / nn, Fraction(1, n)),
            "123": (lambda t: (nn - t * t) / nn, Fraction(1, n)),
            "132": (lambda t: n - t + t * t / nn, Fraction(1, n)),
        }
    elif family == 1:
        table = {
            "321": (lambda t: Fraction(t**3), Fraction(1, n**3)),
            "231": (lambda t: t - t**3 / nnn, Fraction(1, n)),
            "123": (lambda t: 1 - t**3 / nnn, Fraction(1, n)),
            "132": (lambda t: n - t + t**3 / nnn, Fraction(1, n)),
        }
    else:
        raise ValueError(f"unknown family {family}")
    return table[color]


def _violations(ms: MetricSpace, color: str) -> int:
    """Count of defects: wrong-coloured quadruples, repeated distances, bad triangles."""
    den, m = ms.scaled
    bad = sum(1 for q in combinations(range(ms.n), 4) if sums_label(*pair_sums(m, *q)) != color)
    vals = [m[i][j] for i, j in ms.pairs()]
    bad += len(vals) - len(set(vals))
    for i, j, k in combinations(range(ms.n), 3):
        a, b, c = m[i][j], m[i][k], m[j][k]
        bad += (a > b + c) + (b > a + c) + (c > a + b)
    return bad


def generate(color: str, n: int, seed: int = 0, family: int = 0) -> MetricSpace:
    """Seeded generic space on ``n`` points.

    ``color="random"`` draws distances uniformly from a rational grid in
    ``[1, 2]`` and perturbs them to genericity. For a constructible colour the
    space is ``1 + s*g(j - i)`` for a profile ``g`` of that colour (``family``
    selects one of two profiles), plus a seeded jitter below a quarter of the
    smallest quadruple gap. Every quadruple is checked before returning.
    """
    color = str(color)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"{color}:{n}:{seed}:{family}")
    if color == "random":
        base = _build(n, {p: 1 + Fraction(rng.randrange(_GRID + 1), _GRID) for p in combinations(range(n), 2)})
        return perturb_to_generic(base, Fraction(1, _GRID), seed=rng.randrange(2**31))
    if color not in CONSTRUCTIBLE:
        raise ValueError(f"cannot generate colour {color!r}; choose from {CONSTRUCTIBLE + ('random',)}")

    g, s = _profile(color, n, family)
    base = {(i, j): 1 + s * g(j - i) for i, j in combinations(range(n), 2)}
    gap = min_quad_gap(_build(n, base)) if n >= 4 else None
    bound = gap / 4 if gap else s / (4 * n)

    def draw():
        return bound * Fraction(2 * rng.randrange(_GRID + 1) - _GRID, 2 * _GRID)

    jitter = {p: draw() for p in base}
    ms = _build(n, {p: base[p] + jitter[p] for p in base})
    score = _violations(ms, color)
    steps = 0
    keys = list(base)
    # fallback: hill-climb over single jitter entries until no defect is left
    while score:
        steps += 1
        if steps > _MAX_CLIMB_STEPS:
            raise GenerationFailed(color, n, f"(seed {seed}: {score} defects remain)")
        p = keys[rng.randrange(len(keys))]
        trial = dict(jitter)
        trial[p] = draw()
        cand = _build(n, {q: base[q] + trial[q] for q in base})
        cand_score = _violations(cand, color)
        if cand_score <= score:
            jitter, ms, score = trial, cand, cand_score
    return ms
