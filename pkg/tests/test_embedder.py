from __future__ import annotations

import random
from fractions import Fraction

import pytest

from helpers import plant, random_graph_metric, table_space
from linf_embed.constructions import build_cover, instantiate_cover
from linf_embed.embedder import color_order, default_epsilon, embed_with_gain, embedding_from_cover
from linf_embed.errors import IncompleteCover, NoMonochromaticSubset
from linf_embed.lipschitz import (
    EdgeCover,
    coordinate_functions,
    frechet_embedding,
    max_deviation,
    verify_embedding,
)
from linf_embed.metric import from_pairs, generate, genericity, perturb_to_generic

F = Fraction


def test_cover_round_trip_frechet():
    ms = generate("random", 6, 0)
    e = frechet_embedding(ms)
    assert embedding_from_cover(coordinate_functions(ms, e)) == e


def test_embedding_from_321_cover():
    ms = generate("321", 4, 0)
    e = embedding_from_cover(instantiate_cover(build_cover("321", 2), ms))
    assert (e.n, e.k) == (4, 2)
    assert verify_embedding(ms, e).isometric


def test_deleted_function_gives_exact_missing_pairs():
    ms = generate("321", 4, 0)
    cover = instantiate_cover(build_cover("321", 2), ms)
    with pytest.raises(IncompleteCover) as err:
        embedding_from_cover(EdgeCover(ms, cover.fns[1:]))
    assert err.value.missing == [(0, 1), (1, 2), (2, 3)]


def test_color_order():
    assert color_order(1) == ["132", "321", "231", "123"]
    assert color_order(2) == ["321", "132", "231", "123"]
    assert color_order(3) == ["321", "132", "231", "123"]
    assert color_order(5) == ["321", "231", "132", "123"]


def test_321_six_points_gain_three():
    ms = generate("321", 6, 7)
    res = embed_with_gain(ms, 3)
    assert res.embedding.k == 3
    assert res.report.gain_achieved and res.report.color == "321"
    assert not res.report.perturbed and res.metric == ms
    assert verify_embedding(ms, res.embedding).isometric


def test_123_thirteen_points_gain_two():
    ms = generate("123", 13, 1)
    res = embed_with_gain(ms, 2, colors=["123"])
    assert res.embedding.k <= 11
    assert res.report.color == "123" and not res.report.fallback_used
    assert verify_embedding(ms, res.embedding).isometric


def test_planted_231_with_perturbation():
    core = generate("231", 9, 2)
    base, slots = plant(core, 3, seed=4)
    # make {0, 9, 10, 11} equilateral so its three pair sums tie
    upper = {p: base.d(*p) for p in base.pairs()}
    for p in [(9, 10), (9, 11), (10, 11), (0, 9), (0, 10), (0, 11)]:
        upper[p] = F(3, 2)
    ms = from_pairs(12, upper)
    assert not genericity(ms).quad_generic
    eps = F(1, 10**6)
    res = embed_with_gain(ms, 2, epsilon=eps, colors=["231"])
    rep = res.report
    assert rep.perturbed and rep.epsilon == eps
    assert res.embedding.k <= 10 and rep.color == "231"
    assert verify_embedding(res.metric, res.embedding).isometric
    assert max_deviation(ms, res.embedding) == rep.max_deviation <= 2 * eps


@pytest.mark.parametrize("color", ["321", "132", "123", "231"])
@pytest.mark.parametrize("r", [1, 3])
def test_planted_cores_all_colors(color, r):
    c = {"321": 3, "132": 3, "123": 1, "231": 2}[color]
    core = generate(color, build_cover(color, c).n_points, 1)
    ms, _ = plant(core, r, seed=r, positions=None)
    ms = perturb_to_generic(ms, F(1, 10**9), r) if not genericity(ms).quad_generic else ms
    res = embed_with_gain(ms, c, colors=[color])
    assert res.report.gain_achieved
    assert res.embedding.k <= ms.n - c
    assert verify_embedding(res.metric, res.embedding).isometric


def test_321_space_reaches_every_gain_up_to_half():
    ms = generate("321", 10, 3)
    ks = [embed_with_gain(ms, c).embedding.k for c in range(1, 6)]
    assert all(k <= 10 - c for c, k in zip(range(1, 6), ks))


def test_deterministic():
    ms = perturb_to_generic(random_graph_metric(9, random.Random(5)), F(1, 1000), 0)
    a, b = embed_with_gain(ms, 2, seed=3), embed_with_gain(ms, 2, seed=3)
    assert a.embedding == b.embedding
    assert a.report.lines() == b.report.lines()


def test_strict_raises_when_no_core():
    ms = generate("random", 6, 0)
    with pytest.raises(NoMonochromaticSubset):
        embed_with_gain(ms, 6, strict=True)


def test_degrades_to_frechet():
    ms = generate("random", 6, 0)
    res = embed_with_gain(ms, 6)
    assert res.report.status == "gain-not-achieved"
    assert res.embedding.k == 5 and res.cover is None
    assert verify_embedding(ms, res.embedding).isometric


def test_frechet_strategy():
    ms = generate("321", 6, 0)
    res = embed_with_gain(ms, 3, strategy="frechet")
    assert res.embedding.k == 5 and not res.report.gain_achieved


def test_greedy_strategy():
    ms = generate("321", 6, 0)
    res = embed_with_gain(ms, 3, strategy="greedy")
    assert res.report.gain_achieved and res.embedding.k == 3
    assert not res.report.fallback_used


def test_small_gain_uses_tiny_core():
    ms = generate("random", 5, 2)
    res = embed_with_gain(ms, 1)
    assert res.report.gain_achieved and res.embedding.k == 4


def test_default_epsilon_and_non_generic_input():
    ms = table_space(5, lambda i, j: j - i)
    assert default_epsilon(ms) == F(1, 1000)
    res = embed_with_gain(ms, 1)
    assert res.report.perturbed
    assert res.report.max_deviation <= F(2, 1000)
    assert verify_embedding(res.metric, res.embedding).isometric
    assert "perturbed" in "\n".join(res.report.lines())


def test_bad_arguments():
    ms = generate("321", 4, 0)
    with pytest.raises(ValueError):
        embed_with_gain(ms, 0)
    with pytest.raises(ValueError):
        embed_with_gain(ms, 1, strategy="magic")
