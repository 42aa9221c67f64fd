"""End-to-end pipeline: perturb, find a monochromatic core, cover it, lift, verify."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import MonoSubset, find_monochromatic, mono_color
from .constructions import build_cover, examine_cover, greedy_cover, required_size
from .errors import IncompleteCover, NoMonochromaticSubset, VerificationFailed
from .lipschitz import (
    EdgeCover,
    Embedding,
    LipschitzFn,
    cover_check,
    frechet_embedding,
    lift_cover,
    max_deviation,
    verify_embedding,
)
from .metric import MetricSpace, as_rational, genericity, perturb_to_generic

STRATEGIES = ("construction", "greedy", "frechet")
# tie order among colours that need the same core size
_COLOR_PREFERENCE = ("321", "231", "132", "123")


def embedding_from_cover(cover: EdgeCover) -> Embedding:
    missing = cover_check(cover)
    if missing:
        raise IncompleteCover(missing)
    ms = cover.space
    rows = tuple(tuple(f(x) for f in cover.fns) for x in range(ms.n))
    return Embedding(ms.n, len(cover.fns), rows)


def color_order(c: int) -> list[str]:
    """Constructible colours, smallest required core first."""
    return sorted(_COLOR_PREFERENCE, key=lambda col: (required_size(col, c), _COLOR_PREFERENCE.index(col)))


def default_epsilon(ms: MetricSpace) -> Fraction:
    md = ms.min_distance()
    return Fraction(1, 1000) if md is None else md / 1000


@dataclass
class EmbedReport:
    n: int
    c: int
    k: int
    status: str
    strategy: str
    color: str | None = None
    subset: tuple[int, ...] | None = None
    subset_exhaustive: bool | None = None
    core_functions: int | None = None
    fallback_used: bool = False
    perturbed: bool = False
    epsilon: Fraction | None = None
    max_deviation: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def gain_achieved(self) -> bool:
        return self.status == "gain-achieved"

    def lines(self) -> list[str]:
        out = [
            f"status: {self.status}",
            f"points: {self.n}, coordinates: {self.k}, requested gain: {self.c}, realised gain: {self.n - self.k}",
            f"strategy: {self.strategy}" + (" (greedy fallback used)" if self.fallback_used else ""),
        ]
        if self.subset is not None:
            how = "exact search" if self.subset_exhaustive else "heuristic search"
            size = len(self.subset)
            out.append(
                f"monochromatic core: colour {self.color}, {size} point{'s' * (size != 1)} {list(self.subset)} ({how})"
            )
            out.append(f"core covered by {self.core_functions} functions")
        if self.perturbed:
            out.append(
                f"input was not generic: distances perturbed by [eps, 2 eps] with eps = {self.epsilon}; "
                f"embedding is exact for the perturbed metric and within {self.max_deviation} <= 2 eps "
                f"of the original distances"
            )
        out += [f"note: {n}" for n in self.notes]
        return out


@dataclass
class EmbedResult:
    embedding: Embedding
    report: EmbedReport
    metric: MetricSpace
    cover: EdgeCover | None = None


def _on_ambient(cover: EdgeCover, ms: MetricSpace, points) -> EdgeCover:
    """Move functions defined on the relabelled subspace back onto ``ms``."""
    return EdgeCover(ms, tuple(LipschitzFn(ms, {points[i]: v for i, v in f.values.items()}) for f in cover.fns))


def _core_cover(sub: MetricSpace, color: str, c: int, strategy: str, notes: list[str]):
    """Cover of the core by the colour recipe (or greedily); ``(cover, fallback_used)`` or ``None``."""
    if strategy == "construction":
        inst = examine_cover(build_cover(color, c), sub)
        if inst.ok:
            return inst.cover(sub), False
        if inst.violations:
            notes.append(f"counterexample to the {color} recipe: {inst.violations[0]}")
        if inst.missing:
            notes.append(f"counterexample to the {color} recipe: uncovered pairs {inst.missing}")
    got = greedy_cover(sub, budget=sub.n - c)
    if got is None:
        notes.append(f"greedy cover of the {color} core needs more than {sub.n - c} trees")
        return None
    return got[0], strategy == "construction"


def embed_with_gain(
    ms: MetricSpace,
    c: int,
    strategy: str = "construction",
    epsilon=None,
    seed: int = 0,
    strict: bool = False,
    colors=None,
) -> EmbedResult:
    """Embed ``ms`` isometrically into l-infinity^k with ``k <= n - c`` when possible.

    Non-generic inputs are first perturbed by amounts in ``[eps, 2*eps]``; the
    returned embedding is exact for the metric in ``result.metric``. When no
    usable monochromatic core is found the Frechet embedding (``k = n - 1``) is
    returned with status ``gain-not-achieved``, or :class:`NoMonochromaticSubset`
    is raised if ``strict``. ``colors`` restricts which core colours are tried.
    """
    if c < 1:
        raise ValueError("gain c must be at least 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    eps = default_epsilon(ms) if epsilon is None else as_rational(epsilon)
    original = ms
    perturbed = False
    if not genericity(ms).quad_generic:
        ms = perturb_to_generic(ms, eps, seed)
        perturbed = True

    notes: list[str] = []
    found = None
    if strategy != "frechet":
        found = _search_core(ms, c, strategy, seed, notes, colors)

    if found is None:
        if strict and strategy != "frechet":
            raise NoMonochromaticSubset(c)
        emb = frechet_embedding(ms)
        cover = None
        report = EmbedReport(ms.n, c, emb.k, "", strategy, notes=notes)
    else:
        color, sub_result, core, fallback = found
        cover = lift_cover(_on_ambient(core, ms, sub_result.subset), ms, domain=sub_result.subset)
        emb = embedding_from_cover(cover)
        report = EmbedReport(
            ms.n, c, emb.k, "", strategy,
            color=color, subset=sub_result.subset, subset_exhaustive=sub_result.exhaustive,
            core_functions=len(core), fallback_used=fallback, notes=notes,
        )

    check = verify_embedding(ms, emb)
    if not check.isometric:
        raise VerificationFailed(check.summary())
    report.status = "gain-achieved" if emb.k <= ms.n - c else "gain-not-achieved"
    if perturbed:
        report.perturbed = True
        report.epsilon = eps
        report.max_deviation = max_deviation(original, emb)
        if report.max_deviation > 2 * eps:
            raise VerificationFailed(f"deviation {report.max_deviation} exceeds 2 eps = {2 * eps}")
    return EmbedResult(emb, report, ms, cover)


def _search_core(ms: MetricSpace, c: int, strategy: str, seed: int, notes: list[str], colors=None):
    whole = mono_color(ms) if ms.n >= 4 else None
    allowed = None if colors is None else {str(col) for col in colors}
    for color in color_order(c):
        if allowed is not None and color not in allowed:
            continue
        size = required_size(color, c)
        if size > ms.n:
            continue
        if size < 4 or (whole is not None and whole.mono == color):
            # any subset of a monochromatic space (or of fewer than 4 points) will do
            hit = MonoSubset(tuple(range(size)), color, True)
        else:
            hit = find_monochromatic(ms, size, colors=[color], seed=seed)
        if hit is None:
            continue
        sub = ms.subspace(hit.subset)
        got = _core_cover(sub, color, c, strategy, notes)
        if got is None:
            continue
        core, fallback = got
        return color, hit, core, fallback
    return None
