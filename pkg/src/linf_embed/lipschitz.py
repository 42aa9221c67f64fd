"""1-Lipschitz functions, their tight graphs, covers and l-infinity embeddings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotLipschitz
from .metric import MetricSpace, as_rational


@dataclass(frozen=True, eq=False)
class LipschitzFn:
    """Rational values on a subset of the points of ``space``.

    The domain is the key set of ``values``; it may be a proper subset of the
    space, e.g. while a function is being extended point by point.
    """

    space: MetricSpace
    values: Mapping[int, Fraction]

    @classmethod
    def from_sequence(cls, space: MetricSpace, values: Sequence) -> LipschitzFn:
        if len(values) != space.n:
            raise DimensionMismatch(f"{len(values)} values for {space.n} points")
        return cls(space, {i: as_rational(v) for i, v in enumerate(values)})

    @classmethod
    def distance_to(cls, space: MetricSpace, z: int) -> LipschitzFn:
        """``x -> d(z, x)``; its tight graph is the star ``x -> z``."""
        return cls(space, {x: space.d(z, x) for x in range(space.n)})

    @property
    def domain(self) -> list[int]:
        return sorted(self.values)

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self.values[x] for x in self.domain)

    def __eq__(self, other):
        if not isinstance(other, LipschitzFn):
            return NotImplemented
        return self.space == other.space and dict(self.values) == dict(other.values)


def lipschitz_violation(f: LipschitzFn):
    """First pair ``(a, b)`` (lexicographic) with ``|f(a) - f(b)| > d(a, b)``, else ``None``."""
    d = f.space.d
    for a, b in combinations(f.domain, 2):
        if abs(f.values[a] - f.values[b]) > d(a, b):
            return a, b
    return None


def is_lipschitz(f: LipschitzFn) -> bool:
    return lipschitz_violation(f) is None


@dataclass(frozen=True)
class TightGraph:
    """Oriented edges ``a -> b`` with ``f(a) - f(b) == d(a, b)``."""

    edges: frozenset[tuple[int, int]]

    def undirected(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(e), max(e)) for e in self.edges)


def tight_graph(f: LipschitzFn) -> TightGraph:
    d = f.space.d
    out = set()
    for a, b in combinations(f.domain, 2):
        diff = f.values[a] - f.values[b]
        dist = d(a, b)
        if abs(diff) > dist:
            raise NotLipschitz(a, b, abs(diff), dist)
        if diff == dist:
            out.add((a, b))
        elif -diff == dist:
            out.add((b, a))
    return TightGraph(frozenset(out))


def extension_value(f: LipschitzFn, x0: int) -> Fraction:
    """Smallest admissible value at ``x0``: ``max_y f(y) - d(y, x0)``."""
    d = f.space.d
    return max(v - d(y, x0) for y, v in f.values.items())


def extend_lipschitz(f: LipschitzFn, x0: int) -> LipschitzFn:
    if x0 in f.values:
        raise ValueError(f"point {x0} already in the domain")
    if not f.values:
        raise ValueError("cannot extend a function with empty domain")
    vals = dict(f.values)
    vals[x0] = extension_value(f, x0)
    return LipschitzFn(f.space, vals)


def extend_to(f: LipschitzFn, points: Iterable[int]) -> LipschitzFn:
    """Extend over ``points`` one at a time, in the order given."""
    for x in points:
        if x not in f.values:
            f = extend_lipschitz(f, x)
    return f


# -- covers ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EdgeCover:
    space: MetricSpace
    fns: tuple[LipschitzFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "fns", tuple(self.fns))

    def __len__(self):
        return len(self.fns)

    @property
    def covered(self) -> frozenset[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for f in self.fns:
            out |= tight_graph(f).undirected()
        return frozenset(out)


def cover_check(cover: EdgeCover) -> list[tuple[int, int]]:
    """Uncovered pairs of the whole space, in lexicographic order."""
    got = cover.covered
    return [p for p in cover.space.pairs() if p not in got]


def lift_cover(cover: EdgeCover, ms: MetricSpace, domain: Iterable[int] | None = None) -> EdgeCover:
    """Extend a cover of a subset to all of ``ms``.

    Each function is extended over the missing points in ascending order and one
    distance function ``d(z, .)`` is appended per missing point ``z``. ``domain``
    is only needed when the cover has no functions (a one-point subset).
    """
    if domain is not None:
        inside = set(domain)
    elif cover.fns:
        inside = set(cover.fns[0].values)
    else:
        inside = set()
    if any(set(f.values) != inside for f in cover.fns):
        raise ValueError("all functions of a cover must share the subset's domain")
    outside = [x for x in range(ms.n) if x not in inside]
    fns = []
    for f in cover.fns:
        f = LipschitzFn(ms, f.values) if f.space is not ms else f
        fns.append(extend_to(f, outside))
    fns.extend(LipschitzFn.distance_to(ms, z) for z in outside)
    return EdgeCover(ms, tuple(fns))


# -- embeddings ------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Coordinates of ``n`` points in l-infinity^k, one row per point."""

    n: int
    k: int
    coords: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], k: int | None = None) -> Embedding:
        rows = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if k is None:
            k = len(rows[0]) if rows else 0
        if any(len(r) != k for r in rows):
            raise DimensionMismatch("embedding rows have different lengths")
        return cls(len(rows), k, rows)

    def dist(self, a: int, b: int) -> Fraction:
        ra, rb = self.coords[a], self.coords[b]
        return max((abs(x - y) for x, y in zip(ra, rb)), default=Fraction(0))


def frechet_embedding(ms: MetricSpace, x0: int = 0) -> Embedding:
    """``x -> (d(x, y) - d(x0, y))`` over ``y != x0``; ``x0`` lands on the origin."""
    ys = [y for y in range(ms.n) if y != x0]
    rows = [tuple(ms.d(x, y) - ms.d(x0, y) for y in ys) for x in range(ms.n)]
    return Embedding(ms.n, len(ys), tuple(rows))


@dataclass(frozen=True)
class VerifyReport:
    isometric: bool
    n: int
    k: int
    witness: tuple[int, int] | None = None
    achieved: Fraction | None = None
    expected: Fraction | None = None

    def summary(self) -> str:
        if self.isometric:
            return f"isometric, k={self.k}, n={self.n}"
        a, b = self.witness
        return (
            f"NOT isometric, k={self.k}, n={self.n}: pair ({a},{b}) "
            f"has l-inf distance {self.achieved} but d = {self.expected}"
        )


def verify_embedding(ms: MetricSpace, e: Embedding) -> VerifyReport:
    if e.n != ms.n or len(e.coords) != ms.n:
        raise DimensionMismatch(f"embedding has {len(e.coords)} rows for {ms.n} points")
    for a, b in ms.pairs():
        got = e.dist(a, b)
        if got != ms.d(a, b):
            return VerifyReport(False, ms.n, e.k, (a, b), got, ms.d(a, b))
    return VerifyReport(True, ms.n, e.k)


def max_deviation(ms: MetricSpace, e: Embedding) -> Fraction:
    """Largest additive error ``|l_inf(a, b) - d(a, b)|`` over all pairs."""
    if e.n != ms.n:
        raise DimensionMismatch(f"embedding has {e.n} rows for {ms.n} points")
    return max((abs(e.dist(a, b) - ms.d(a, b)) for a, b in ms.pairs()), default=Fraction(0))


def coordinate_functions(ms: MetricSpace, e: Embedding) -> EdgeCover:
    """Read each coordinate of an embedding back as a function on ``ms``."""
    return EdgeCover(ms, tuple(LipschitzFn(ms, {x: e.coords[x][i] for x in range(ms.n)}) for i in range(e.k)))
