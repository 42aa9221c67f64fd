from __future__ import annotations

import random
from itertools import combinations

import pytest

from helpers import random_graph_metric, random_space
from linf_embed.constructions import (
    CombinatorialCover,
    build_cover,
    case_132_steps,
    case_321_mirror,
    examine_cover,
    greedy_cover,
    instantiate_cover,
    required_size,
    tight_edge_sets,
)
from linf_embed.embedder import embedding_from_cover
from linf_embed.errors import CoverageGap, UnsupportedColor
from linf_embed.lipschitz import cover_check, verify_embedding
from linf_embed.metric import generate
from linf_embed.trees import CombinatorialTree, instantiate, tree_function

T = CombinatorialTree


def _pair(a, b):
    return (a, b) if a < b else (b, a)


@pytest.mark.parametrize(
    "color,c,size", [("321", 3, 6), ("123", 2, 13), ("132", 3, 9), ("231", 2, 9), ("123", 1, 5), ("123", 3, 29)]
)
def test_required_size(color, c, size):
    assert required_size(color, c) == size
    assert build_cover(color, c).n_points == size


def test_required_size_rejects():
    with pytest.raises(UnsupportedColor):
        required_size("213", 2)
    with pytest.raises(ValueError):
        required_size("321", 0)
    with pytest.raises(UnsupportedColor):
        build_cover("312", 1)


def test_cover_shapes():
    assert build_cover("321", 2).trees == (T(1, (0, 2)), T(0, (2, 3)))
    assert build_cover("132", 2).trees == (T(0, (1, 3)), T(3, (1, 2)))
    assert build_cover("123", 1).trees == (T(1, (0, 3)), T(2, (1, 3)), T(4, (2, 3)))
    assert build_cover("231", 1).trees == (T(0, (1, 4)), T(0, (2, 3)), T(1, (3, 4)))


@pytest.mark.parametrize(
    "color,cs,trees",
    [
        ("321", range(1, 9), lambda c: c),
        ("132", range(2, 6), lambda c: c * (c - 1)),
        ("123", range(1, 4), None),
        ("231", range(1, 5), lambda c: 3 * c),
    ],
)
def test_tree_counts_and_gain(color, cs, trees):
    for c in cs:
        cc = build_cover(color, c)
        if trees is not None:
            assert len(cc.trees) == trees(c)
        assert cc.claimed_gain == cc.n_points - len(cc.trees) >= c


def test_cover_rejects_out_of_range_vertex():
    with pytest.raises(ValueError):
        CombinatorialCover(3, [T(0, (3,))], "321")


def test_321_two_tree_example():
    ms = generate("321", 4, 0)
    t1, t2 = (instantiate(t, ms) for t in build_cover("321", 2).trees)
    assert t1.attach == {3: 2} and t2.attach == {1: 3}
    cover = instantiate_cover(build_cover("321", 2), ms)
    sets = tight_edge_sets(cover)
    assert sets[0] == {(0, 1), (1, 2), (2, 3)}
    assert sets[1] == {(0, 2), (0, 3), (1, 3)}
    assert cover_check(cover) == []


@pytest.mark.parametrize("k", range(2, 9))
def test_321_mirror_and_diameter(k):
    ms = generate("321", 2 * k, 1)
    cc = build_cover("321", k)
    for a, b in zip(cc.trees, case_321_mirror(k)):
        ta, tb = instantiate(a, ms), instantiate(b, ms)
        assert ta.edges() == tb.edges()
        assert ta.diameter() == 3


def test_132_step_invariants():
    steps = case_132_steps(4)
    assert len(steps) == 6
    for s in steps:
        a, b = s.pair
        pos = {lab: i for i, lab in enumerate(s.slots)}
        assert pos[("+", a, b)] == pos[("o", a)] + 1
        assert pos[("-", a, b)] == pos[("o", b)] - 1
    sizes = [len(s.slots) for s in steps]
    assert sizes == [6, 8, 10, 12, 14, 16]
    assert [len(s.trees) for s in steps] == [2, 4, 6, 8, 10, 12]


@pytest.mark.parametrize("c", [2, 3, 4])
def test_132_intermediate_covers(c):
    # after every insertion step the partial construction already covers its own slots
    steps = case_132_steps(c)
    base = generate("132", c * c, 0)
    final = {lab: i for i, lab in enumerate(steps[-1].slots)}
    for step in steps:
        points = sorted(final[lab] for lab in step.slots)
        sub = base.subspace(points)
        idx = {lab: i for i, lab in enumerate(step.slots)}
        trees = [T(idx[o], tuple(idx[m] for m in mains)) for o, mains in step.trees]
        inst = examine_cover(CombinatorialCover(len(step.slots), trees, "132"), sub)
        assert not inst.violations
        covered = {p for e in tight_edge_sets(inst.cover(sub)) for p in e}
        originals = sorted(idx[("o", i)] for i in range(c))
        handled = {_pair(idx[("o", a)], idx[("o", b)]) for a, b in (s.pair for s in steps[: steps.index(step) + 1])}
        assert handled <= covered
        # pairs involving an added point are all covered
        added = set(range(len(step.slots))) - set(originals)
        assert all(p in covered for p in combinations(range(len(step.slots)), 2) if added & set(p))


@pytest.mark.parametrize(
    "color,c",
    [("321", 2), ("321", 5), ("132", 2), ("132", 3), ("132", 4), ("123", 1), ("123", 2), ("231", 1), ("231", 2), ("231", 3)],
)
@pytest.mark.parametrize("family", [0, 1])
def test_cover_is_complete_and_isometric(color, c, family):
    cc = build_cover(color, c)
    for seed in range(2):
        ms = generate(color, cc.n_points, seed, family)
        cover = instantiate_cover(cc, ms)
        e = embedding_from_cover(cover)
        assert e.k == len(cc.trees)
        assert verify_embedding(ms, e).isometric


def test_231_remainder_attachment():
    ms = generate("231", 5, 0)
    last = instantiate(T(1, (3, 4)), ms)
    assert last.attach[2] == 3


@pytest.mark.parametrize("color", ["321", "132", "231"])
def test_attachments_depend_only_on_color(color):
    cc = build_cover(color, 2)
    ref = None
    for family in (0, 1):
        for seed in range(3):
            ms = generate(color, cc.n_points, seed, family)
            got = [instantiate(t, ms).attach for t in cc.trees]
            ref = ref or got
            assert got == ref


def test_wrong_color_is_refused():
    ms = generate("123", 4, 0)
    with pytest.raises(ValueError):
        instantiate_cover(build_cover("321", 2), ms)
    inst = examine_cover(build_cover("321", 2), ms)
    assert not inst.ok


def test_coverage_gap_is_reported():
    ms = generate("321", 4, 0)
    cc = CombinatorialCover(4, build_cover("321", 2).trees[:1], "321")
    with pytest.raises(CoverageGap) as err:
        instantiate_cover(cc, ms)
    assert err.value.missing == [(0, 2), (0, 3), (1, 3)]


def test_wrong_recipe_shows_up_as_coverage_gap():
    for color in ("123", "132", "231"):
        ms = generate(color, 4, 0)
        inst = examine_cover(build_cover("321", 2), ms)
        assert not inst.violations and inst.missing
        with pytest.raises(CoverageGap):
            instantiate_cover(build_cover("321", 2), ms, check_color=False)


@pytest.mark.parametrize("seed", range(20))
def test_argmin_trees_are_always_admissible(seed):
    # the compiled function is a max of x -> d(a, o) - d(a, x) over the mains a
    rng = random.Random(seed)
    ms = random_graph_metric(6, rng) if seed % 2 else random_space(6, rng)
    for o in range(6):
        rest = [x for x in range(6) if x != o]
        for r in (1, 2, 3):
            for mains in combinations(rest, r):
                t = instantiate(T(o, mains), ms)
                f = tree_function(t)
                assert all(f(x) == max(ms.d(a, o) - ms.d(a, x) for a in mains) for x in range(6))


def test_greedy_cover_on_random_space():
    ms = random_space(7, random.Random(3))
    got = greedy_cover(ms)
    assert got is not None
    cover, trees = got
    assert cover_check(cover) == []
    assert verify_embedding(ms, embedding_from_cover(cover)).isometric
    assert len(trees) == len(cover.fns)


def test_greedy_cover_budget():
    ms = generate("321", 8, 0)
    cover, _ = greedy_cover(ms, budget=6)
    assert len(cover.fns) <= 6
    cover, _ = greedy_cover(ms, budget=4, max_mains=4)
    assert len(cover.fns) == 4
    assert greedy_cover(random_space(7, random.Random(0)), budget=1) is None


def test_greedy_search_reaches_recipe_size_on_321():
    ms = generate("321", 6, 0)
    plain, _ = greedy_cover(ms)
    searched, _ = greedy_cover(ms, budget=3)
    assert len(searched.fns) == 3 < len(plain.fns)
    assert cover_check(searched) == []


def test_greedy_cover_two_points():
    from helpers import pair_space

    cover, trees = greedy_cover(pair_space(3))
    assert len(trees) == 1 and cover_check(cover) == []
