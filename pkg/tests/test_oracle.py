from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from helpers import pair_space, random_space
from linf_embed.constructions import build_cover, instantiate_cover
from linf_embed.errors import GuardExceeded
from linf_embed.lipschitz import is_lipschitz, tight_graph
from linf_embed.metric import generate, genericity
from linf_embed.oracle import (
    cross_check_construction,
    exact_m,
    induced_partition,
    min_partition,
    part_feasible,
)

F = Fraction


def test_two_edge_part_is_feasible():
    ms = pair_space(1, 1, "19/10")
    f = part_feasible(ms, [(0, 1), (0, 2)])
    assert f is not None and is_lipschitz(f)
    assert {(0, 1), (0, 2)} <= tight_graph(f).undirected()


def test_whole_generic_triangle_is_infeasible():
    assert part_feasible(pair_space(1, 2, "5/2"), [(0, 1), (0, 2), (1, 2)]) is None


def test_collinear_triangle_is_one_function():
    ms = pair_space(1, 2, 1)
    assert part_feasible(ms, ms.pairs()) is not None
    assert exact_m(ms) == 1


def test_empty_part_rejected():
    with pytest.raises(ValueError):
        part_feasible(pair_space(1), [])


def test_small_values():
    assert exact_m(pair_space()) == 0
    assert exact_m(pair_space("3/7")) == 1
    assert exact_m(pair_space(1, 2, "5/2")) == 2
    assert exact_m(pair_space(1, 2, "5/2"), k_max=1) is None


@pytest.mark.parametrize("seed", range(10))
def test_four_points_need_at_most_two(seed):
    ms = random_space(4, random.Random(seed))
    assert genericity(ms).quad_generic
    assert exact_m(ms) <= 2


def test_five_points():
    for seed in range(2):
        ms = generate("random", 5, seed)
        assert exact_m(ms) <= 3


@pytest.mark.parametrize("seed", range(6))
def test_partition_parts_are_feasible_and_disjoint(seed):
    ms = random_space(5, random.Random(100 + seed))
    got = min_partition(ms)
    seen = [p for part in got.parts for p in part]
    assert sorted(seen) == list(combinations(range(5), 2))
    for part, f in zip(got.parts, got.fns):
        assert is_lipschitz(f)
        assert set(part) <= tight_graph(f).undirected()


def test_partition_is_minimal_by_brute_force():
    # on 4 points compare against trying every assignment of the 6 pairs to k labels
    for seed in range(4):
        ms = random_space(4, random.Random(seed))
        m = exact_m(ms)
        pairs = list(ms.pairs())

        def splits(k):
            for labels in product(range(k), repeat=len(pairs)):
                parts = [[p for p, lab in zip(pairs, labels) if lab == i] for i in range(k)]
                if all(parts) and all(part_feasible(ms, p) for p in parts):
                    return True
            return False

        assert splits(m)
        assert m == 1 or not splits(m - 1)


def test_guard():
    with pytest.raises(GuardExceeded):
        exact_m(generate("random", 8, 0))
    with pytest.raises(GuardExceeded):
        cross_check_construction("132", 3)


@pytest.mark.parametrize("color,c", [("321", 2), ("321", 3), ("132", 2), ("123", 1), ("231", 1)])
def test_cross_check(color, c):
    rep = cross_check_construction(color, c)
    assert rep.consistent
    assert rep.construction_size == len(build_cover(color, c).trees)
    assert "consistent" in rep.summary()


def test_321_four_points_exact():
    assert cross_check_construction("321", 2).oracle_m == 2


def test_induced_partition_of_recipe():
    ms = generate("231", 5, 0)
    cover = instantiate_cover(build_cover("231", 1), ms)
    parts = induced_partition(cover)
    assert sum(len(p) for p in parts) == 10
    assert all(part_feasible(ms, p) is not None for p in parts)
