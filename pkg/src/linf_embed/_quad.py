"""Low-level quadruple helpers shared by the metric and coloring modules.

Both work on any totally ordered numeric type; callers pass scaled integers
on hot paths and Fractions elsewhere.
"""

from __future__ import annotations

COLORS = ("123", "132", "213", "231", "312", "321")


def pair_sums(d, a: int, b: int, c: int, e: int):
    """The three perfect-matching sums ``(R1, R2, R3)`` of ``a < b < c < e``."""
    return d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]


def sums_label(r1, r2, r3) -> str | None:
    """Label ``s`` such that ``R_s[0] > R_s[1] > R_s[2]``; ``None`` on a tie."""
    if r1 == r2 or r1 == r3 or r2 == r3:
        return None
    if r1 > r2:
        if r2 > r3:
            return "123"
        return "132" if r1 > r3 else "312"
    # r2 > r1
    if r1 > r3:
        return "213"
    return "231" if r2 > r3 else "321"


def min_gap(r1, r2, r3):
    return min(abs(r1 - r2), abs(r1 - r3), abs(r2 - r3))
