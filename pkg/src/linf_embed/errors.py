"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from fractions import Fraction


class EmbedError(Exception):
    """Base class for all errors raised by linf_embed."""


class MetricError(EmbedError, ValueError):
    """Input does not describe a finite metric space."""


class NonPositiveDistance(MetricError):
    def __init__(self, i: int, j: int, value: Fraction):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"distance d({i},{j}) = {value} is not positive")


class AsymmetricInput(MetricError):
    def __init__(self, i: int, j: int, dij: Fraction, dji: Fraction):
        self.i, self.j = i, j
        super().__init__(f"d({i},{j}) = {dij} but d({j},{i}) = {dji}")


class TriangleViolation(MetricError):
    """``d(i, k) > d(i, j) + d(j, k)``; ``slack`` is the (negative) defect."""

    def __init__(self, i: int, j: int, k: int, slack: Fraction):
        self.i, self.j, self.k, self.slack = i, j, k, slack
        self.triple = tuple(sorted((i, j, k)))
        super().__init__(
            f"triangle inequality fails on triple {self.triple}: "
            f"d({i},{k}) exceeds d({i},{j}) + d({j},{k}) by {-slack}"
        )


class PerturbationFailed(EmbedError):
    pass


class GenerationFailed(EmbedError):
    def __init__(self, color: str, n: int, detail: str = ""):
        self.color, self.n = color, n
        super().__init__(f"could not generate a {color}-monochromatic space on {n} points {detail}".rstrip())


class NotLipschitz(EmbedError):
    def __init__(self, a: int, b: int, gap: Fraction, dist: Fraction):
        self.a, self.b, self.gap, self.dist = a, b, gap, dist
        super().__init__(f"|f({a}) - f({b})| = {gap} exceeds d({a},{b}) = {dist}")


class DimensionMismatch(EmbedError, ValueError):
    pass


class AdmissibilityViolation(EmbedError):
    """The function compiled from a tree is not 1-Lipschitz.

    ``pair`` is the first offending pair, ``path`` the first 4-vertex tree path
    ``a-b-c-d`` with ``d(a,d) + d(b,c) < d(a,b) + d(c,d)`` (``None`` if no such path
    was found, which would contradict the 4-path criterion).
    """

    def __init__(self, pair: tuple[int, int], gap: Fraction, dist: Fraction, path=None, tree=None):
        self.pair, self.gap, self.dist, self.path, self.tree = pair, gap, dist, path, tree
        msg = f"tree function violates 1-Lipschitz on pair {pair}: |df| = {gap} > d = {dist}"
        if path is not None:
            msg += f"; violating 4-path {path}"
        super().__init__(msg)


class TiedSums(EmbedError):
    def __init__(self, quad: tuple[int, int, int, int], sums):
        self.quad, self.sums = quad, tuple(sums)
        super().__init__(f"quadruple {quad} has tied pair sums {tuple(str(s) for s in sums)}")


class UnsupportedColor(EmbedError, ValueError):
    pass


class CoverageGap(EmbedError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"{len(self.missing)} pair(s) left uncovered: {self.missing[:10]}")


class IncompleteCover(CoverageGap):
    pass


class NoMonochromaticSubset(EmbedError):
    def __init__(self, c: int):
        self.c = c
        super().__init__(f"no monochromatic subset large enough for gain {c} was found")


class GuardExceeded(EmbedError, ValueError):
    def __init__(self, n: int, limit: int):
        self.n, self.limit = n, limit
        super().__init__(f"exact search refused: n = {n} exceeds the limit {limit}")


class VerificationFailed(EmbedError):
    pass
