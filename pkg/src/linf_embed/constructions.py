"""Tree covers of monochromatic spaces, one recipe per constructible colour.

Each recipe works on an abstract ordered point set ``0..N-1``; the trees only
name centers and main vertices, and the peripherals are attached when the
cover is instantiated on a concrete monochromatic space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .coloring import mono_color
from .errors import AdmissibilityViolation, CoverageGap, UnsupportedColor
from .lipschitz import EdgeCover, LipschitzFn, cover_check, tight_graph
from .metric import CONSTRUCTIBLE, MetricSpace, genericity
from .trees import AdmissibleTree, CombinatorialTree, instantiate, tree_function


def _check_color(color) -> str:
    color = str(color)
    if color not in CONSTRUCTIBLE:
        raise UnsupportedColor(f"no cover construction for colour {color}")
    return color


def _size_123(c: int) -> int:
    n = 1
    for _ in range(c):
        n = 2 * n + 3
    return n


def required_size(color, c: int) -> int:
    """Points a monochromatic space of ``color`` needs for the recipe to reach gain ``c``."""
    color = _check_color(color)
    if c < 1:
        raise ValueError("gain must be at least 1")
    if color == "321":
        return 2 * c
    if color == "132":
        return c * c
    if color == "123":
        return _size_123(c)
    return 4 * c + 1


@dataclass(frozen=True)
class CombinatorialCover:
    n_points: int
    trees: tuple[CombinatorialTree, ...]
    color: str
    claimed_gain: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        object.__setattr__(self, "claimed_gain", self.n_points - len(self.trees))
        for t in self.trees:
            if not all(0 <= x < self.n_points for x in (t.center, *t.mains)):
                raise ValueError(f"{t} has a vertex outside 0..{self.n_points - 1}")


def _case_321(k: int) -> CombinatorialCover:
    labels = [*range(-k, 0), *range(1, k + 1)]
    idx = {lab: i for i, lab in enumerate(labels)}
    trees = [
        CombinatorialTree(idx[-i], tuple(idx[x] for x in [*range(-k, -i), *range(1, i + 1)]))
        for i in range(1, k + 1)
    ]
    return CombinatorialCover(2 * k, trees, "321")


def case_321_mirror(k: int) -> list[CombinatorialTree]:
    """The second description ``T(i; k, .., i+1, -1, .., -i)`` of each 321 tree."""
    labels = [*range(-k, 0), *range(1, k + 1)]
    idx = {lab: i for i, lab in enumerate(labels)}
    return [
        CombinatorialTree(idx[i], tuple(idx[x] for x in [*range(i + 1, k + 1), *range(-i, 0)]))
        for i in range(1, k + 1)
    ]


@dataclass(frozen=True)
class Step132:
    """State after one insertion step: slot order, trees so far, and the pair handled."""

    slots: tuple
    trees: tuple
    pair: tuple


def case_132_steps(c: int) -> list[Step132]:
    """Insert ``a+`` right after ``a`` and ``b-`` right before ``b`` for each original pair.

    Slot labels are ``("o", i)`` for the original points and ``("+", a, b)`` /
    ``("-", a, b)`` for the two points added while handling the pair ``(a, b)``.
    Trees are kept as ``(center_label, main_labels)``.
    """
    slots = [("o", i) for i in range(c)]
    trees: list = []
    steps = []
    for a, b in combinations(range(c), 2):
        sa, sb = ("o", a), ("o", b)
        ap, bm = ("+", a, b), ("-", a, b)
        slots.insert(slots.index(sa) + 1, ap)
        slots.insert(slots.index(sb), bm)
        trees += [(sa, (ap, sb)), (sb, (ap, bm))]
        steps.append(Step132(tuple(slots), tuple(trees), (a, b)))
    return steps


def _case_132(c: int) -> CombinatorialCover:
    if c == 1:
        return CombinatorialCover(1, (), "132")
    last = case_132_steps(c)[-1]
    idx = {s: i for i, s in enumerate(last.slots)}
    trees = [CombinatorialTree(idx[o], tuple(idx[m] for m in ms)) for o, ms in last.trees]
    return CombinatorialCover(len(last.slots), trees, "132")


def _trees_123(c: int) -> tuple[int, list[tuple[int, tuple[int, ...]]]]:
    """Size and trees in label space (labels start at -1 for c >= 1)."""
    if c == 0:
        return 1, []
    n, inner = _trees_123(c - 1)
    trees = [(0, (-1, 2)), (1, (0, 2))]
    trees += [(i + n + 1, (i, i + 1)) for i in range(1, n + 1)]
    # the suffix {n+2 .. 2n+1} is covered recursively; inner labels start at -1
    shift = n + 2 - (-1 if c - 1 >= 1 else 0)
    trees += [(o + shift, tuple(m + shift for m in ms)) for o, ms in inner]
    return 2 * n + 3, trees


def _case_123(c: int) -> CombinatorialCover:
    size, trees = _trees_123(c)
    return CombinatorialCover(size, [CombinatorialTree(o + 1, tuple(m + 1 for m in ms)) for o, ms in trees], "123")


def _case_231(n: int) -> CombinatorialCover:
    trees = [CombinatorialTree(0, (i, 4 * n + 1 - i)) for i in range(1, 2 * n + 1)]
    # remaining staircase between {1..2n} and {2n+1..4n}, peeled from the outside in
    trees += [CombinatorialTree(j, tuple(range(2 * n + j, 4 * n + 2 - j))) for j in range(1, n + 1)]
    return CombinatorialCover(4 * n + 1, trees, "231")


def build_cover(color, c: int) -> CombinatorialCover:
    color = _check_color(color)
    if c < 1:
        raise ValueError("gain must be at least 1")
    return {"321": _case_321, "132": _case_132, "123": _case_123, "231": _case_231}[color](c)


# -- instantiation ---------------------------------------------------------


@dataclass
class CoverInstance:
    trees: list[AdmissibleTree]
    fns: list[LipschitzFn]
    violations: list[AdmissibilityViolation]
    missing: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.missing

    def cover(self, ms: MetricSpace) -> EdgeCover:
        return EdgeCover(ms, tuple(self.fns))


def examine_cover(cc: CombinatorialCover, ms: MetricSpace) -> CoverInstance:
    """Instantiate every tree and record, without raising, what goes wrong."""
    if ms.n != cc.n_points:
        raise ValueError(f"cover is for {cc.n_points} points, space has {ms.n}")
    trees, fns, bad = [], [], []
    for t in cc.trees:
        at = instantiate(t, ms)
        trees.append(at)
        try:
            fns.append(tree_function(at))
        except AdmissibilityViolation as exc:
            bad.append(exc)
    missing = cover_check(EdgeCover(ms, tuple(fns)))
    return CoverInstance(trees, fns, bad, missing)


def instantiate_cover(cc: CombinatorialCover, ms: MetricSpace, check_color: bool = True) -> EdgeCover:
    """Compile a combinatorial cover on ``ms``; raise on any inadmissible tree or uncovered pair."""
    if check_color:
        if not genericity(ms).quad_generic:
            raise ValueError("space is not quadruple-generic")
        rep = mono_color(ms)
        if not rep.vacuous and rep.mono != cc.color:
            raise ValueError(f"space is not {cc.color}-monochromatic ({rep.summary()})")
    inst = examine_cover(cc, ms)
    if inst.violations:
        raise inst.violations[0]
    if inst.missing:
        raise CoverageGap(inst.missing)
    return inst.cover(ms)


# -- greedy fallback -------------------------------------------------------


def _tree_candidates(ms: MetricSpace, max_mains: int):
    """Admissible small-main trees as ``(tight pair bitmask, center, mains)``."""
    _, m = ms.scaled
    n = ms.n
    bit = {}
    for k, (i, j) in enumerate(combinations(range(n), 2)):
        bit[i, j] = bit[j, i] = 1 << k
    out = []
    for o in range(n):
        rest = [x for x in range(n) if x != o]
        for r in range(1, min(max_mains, len(rest)) + 1):
            for mains in combinations(rest, r):
                f = [0] * n
                for a in mains:
                    f[a] = m[a][o]
                for p in rest:
                    if p in mains:
                        continue
                    a = min(mains, key=lambda a: (m[p][a] - m[a][o], a))
                    f[p] = m[a][o] - m[a][p]
                mask = 0
                for i, j in combinations(range(n), 2):
                    diff = abs(f[i] - f[j])
                    if diff > m[i][j]:
                        break
                    if diff == m[i][j]:
                        mask |= bit[i, j]
                else:
                    out.append((mask, o, mains))
    return out


class _SearchLimit(Exception):
    pass


def _bounded_cover(cands, full: int, budget: int, node_limit: int):
    """Indices of at most ``budget`` candidates covering ``full``, by branch and bound.

    Branches on the uncovered pair with the fewest covering candidates.
    Returns ``None`` if no such cover exists or the node limit is hit.
    """
    masks = [c[0] for c in cands]
    n_bits = full.bit_length()
    by_bit = [[i for i, m in enumerate(masks) if m >> b & 1] for b in range(n_bits)]
    widest = max(m.bit_count() for m in masks)
    nodes = 0

    def dfs(covered, left):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise _SearchLimit
        if covered == full:
            return []
        open_bits = full & ~covered
        if left == 0 or open_bits.bit_count() > left * widest:
            return None
        bit = min((b for b in range(n_bits) if open_bits >> b & 1), key=lambda b: len(by_bit[b]))
        for i in sorted(by_bit[bit], key=lambda i: -(masks[i] & open_bits).bit_count()):
            got = dfs(covered | masks[i], left - 1)
            if got is not None:
                return [i, *got]
        return None

    try:
        return dfs(0, budget)
    except _SearchLimit:
        return None


def greedy_cover(ms: MetricSpace, budget: int | None = None, max_mains: int = 3, search_nodes: int = 300_000):
    """Cover all pairs with admissible trees having at most ``max_mains`` mains.

    Trees covering the most new pairs are picked first; if that needs more
    than ``budget`` trees a bounded branch-and-bound search over the same
    candidates is tried. Returns ``(EdgeCover, trees)`` or ``None``.
    """
    full = (1 << (ms.n * (ms.n - 1) // 2)) - 1
    if full == 0:
        return EdgeCover(ms, ()), []
    cands = list({c[0]: c for c in _tree_candidates(ms, max_mains)}.values())
    covered = 0
    chosen = []
    while covered != full:
        mask, o, mains = max(cands, key=lambda c: (c[0] & ~covered).bit_count())
        if not mask & ~covered:
            return None
        chosen.append(CombinatorialTree(o, mains))
        covered |= mask
    if budget is not None and len(chosen) > budget:
        picked = _bounded_cover(cands, full, budget, search_nodes)
        if picked is None:
            return None
        chosen = [CombinatorialTree(cands[i][1], cands[i][2]) for i in picked]
    trees = [instantiate(t, ms) for t in chosen]
    cover = EdgeCover(ms, tuple(tree_function(t) for t in trees))
    if cover_check(cover):
        return None
    return cover, trees


def tight_edge_sets(cover: EdgeCover) -> list[frozenset]:
    return [tight_graph(f).undirected() for f in cover.fns]
