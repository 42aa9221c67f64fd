"""Trees of diameter at most 4 and the functions they induce.

A tree is described by a center, a set of main vertices joined to the center,
and peripheral vertices each joined to one main vertex. Mains are oriented as
sources, so the induced function is ``f(center) = 0``, ``f(a) = d(a, center)``
for a main ``a`` and ``f(p) = d(a, center) - d(a, p)`` for ``p`` attached to ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import AdmissibilityViolation
from .lipschitz import LipschitzFn, lipschitz_violation
from .metric import MetricSpace


@dataclass(frozen=True)
class CombinatorialTree:
    """Center and main vertices only; peripherals are filled in per metric."""

    center: int
    mains: tuple[int, ...]

    def __post_init__(self):
        mains = tuple(sorted(set(self.mains)))
        if not mains:
            raise ValueError("a tree needs at least one main vertex")
        if self.center in mains:
            raise ValueError("the center cannot also be a main vertex")
        object.__setattr__(self, "mains", mains)

    def relabel(self, mapping: Mapping[int, int]) -> CombinatorialTree:
        return CombinatorialTree(mapping[self.center], tuple(mapping[a] for a in self.mains))

    def __str__(self):
        return f"T({self.center}; {', '.join(map(str, self.mains))})"


@dataclass(frozen=True, eq=False)
class AdmissibleTree:
    """A concrete tree on (a subset of) ``space``.

    Trees built by :func:`instantiate` or :func:`extend_tree` attach every
    peripheral by the argmin rule; the constructor accepts any attachment so
    that arbitrary diameter-4 trees can be examined.
    """

    space: MetricSpace
    center: int
    mains: tuple[int, ...]
    attach: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "mains", tuple(sorted(self.mains)))
        object.__setattr__(self, "attach", dict(sorted(self.attach.items())))
        if not self.mains or self.center in self.mains:
            raise ValueError("need a non-empty main set that excludes the center")
        for p, a in self.attach.items():
            if a not in self.mains or p == self.center or p in self.mains:
                raise ValueError(f"bad attachment {p} -> {a}")

    @property
    def points(self) -> list[int]:
        return sorted({self.center, *self.mains, *self.attach})

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as sorted pairs."""
        out = [(min(self.center, a), max(self.center, a)) for a in self.mains]
        out += [(min(p, a), max(p, a)) for p, a in self.attach.items()]
        return sorted(out)

    def oriented_edges(self) -> list[tuple[int, int]]:
        """Canonical orientation: every main vertex is a source."""
        out = [(a, self.center) for a in self.mains]
        out += [(a, p) for p, a in self.attach.items()]
        return sorted(out)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {x: set() for x in self.points}
        for a, b in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def diameter(self) -> int:
        adj = self.adjacency()
        best = 0
        for s in adj:
            depth = {s: 0}
            frontier = [s]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in adj[x]:
                        if y not in depth:
                            depth[y] = depth[x] + 1
                            nxt.append(y)
                frontier = nxt
            best = max(best, max(depth.values()))
        return best

    def combinatorial(self) -> CombinatorialTree:
        return CombinatorialTree(self.center, self.mains)

    def __str__(self):
        att = ", ".join(f"{p}->{a}" for p, a in self.attach.items())
        return f"T({self.center}; {', '.join(map(str, self.mains))})[{att}]"


def best_main(ms: MetricSpace, center: int, mains: Iterable[int], p: int) -> int:
    """Main ``a`` minimising ``d(p, a) - d(a, center)``; ties go to the lowest index."""
    return min(mains, key=lambda a: (ms.d(p, a) - ms.d(a, center), a))


def instantiate(t: CombinatorialTree, ms: MetricSpace, points: Iterable[int] | None = None) -> AdmissibleTree:
    """Attach every other point of ``points`` (default: all of ``ms``) by the argmin rule."""
    pts = range(ms.n) if points is None else sorted(points)
    for x in (t.center, *t.mains):
        if not 0 <= x < ms.n:
            raise ValueError(f"tree vertex {x} outside the space")
    taken = {t.center, *t.mains}
    attach = {p: best_main(ms, t.center, t.mains, p) for p in pts if p not in taken}
    return AdmissibleTree(ms, t.center, t.mains, attach)


def extend_tree(t: AdmissibleTree, x0: int) -> AdmissibleTree:
    if x0 in t.points:
        raise ValueError(f"point {x0} is already in the tree")
    attach = dict(t.attach)
    attach[x0] = best_main(t.space, t.center, t.mains, x0)
    return AdmissibleTree(t.space, t.center, t.mains, attach)


def tree_values(t: AdmissibleTree) -> dict[int, Fraction]:
    d = t.space.d
    vals = {t.center: Fraction(0)}
    for a in t.mains:
        vals[a] = d(a, t.center)
    for p, a in t.attach.items():
        vals[p] = d(a, t.center) - d(a, p)
    return vals


def four_paths(t: AdmissibleTree):
    """Every undirected path ``a-b-c-d`` of the tree, each listed once."""
    adj = t.adjacency()
    for b in sorted(adj):
        for c in sorted(adj[b]):
            if c <= b:
                continue
            for a in sorted(adj[b] - {c}):
                for e in sorted(adj[c] - {b}):
                    yield a, b, c, e


def lemma3_criterion(t: AdmissibleTree) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Check ``d(a,d) + d(b,c) >= d(a,b) + d(c,d)`` along every 4-vertex path."""
    d = t.space.d
    for a, b, c, e in four_paths(t):
        if d(a, e) + d(b, c) < d(a, b) + d(c, e):
            return False, (a, b, c, e)
    return True, None


def tree_function(t: AdmissibleTree) -> LipschitzFn:
    """Compile the tree to its function; raise if that function is not 1-Lipschitz."""
    f = LipschitzFn(t.space, tree_values(t))
    bad = lipschitz_violation(f)
    if bad is not None:
        a, b = bad
        _, path = lemma3_criterion(t)
        raise AdmissibilityViolation(bad, abs(f(a) - f(b)), t.space.d(a, b), path=path, tree=t)
    return f


def is_admissible(t: AdmissibleTree) -> bool:
    try:
        tree_function(t)
    except AdmissibilityViolation:
        return False
    return True


def enumerate_trees(ms: MetricSpace, points: Iterable[int] | None = None):
    """Every (center, mains, attachment) description over ``points``.

    Each tree of diameter at most 4 on those points appears at least once.
    """
    pts = sorted(range(ms.n) if points is None else points)
    for o in pts:
        rest = [x for x in pts if x != o]
        for r in range(1, len(rest) + 1):
            for mains in combinations(rest, r):
                periph = [x for x in rest if x not in mains]
                yield from _attachments(ms, o, mains, periph)


def _attachments(ms, o, mains, periph):
    if not periph:
        yield AdmissibleTree(ms, o, mains, {})
        return
    idx = [0] * len(periph)
    while True:
        yield AdmissibleTree(ms, o, mains, {p: mains[i] for p, i in zip(periph, idx)})
        j = 0
        while j < len(idx):
            idx[j] += 1
            if idx[j] < len(mains):
                break
            idx[j] = 0
            j += 1
        if j == len(idx):
            return
