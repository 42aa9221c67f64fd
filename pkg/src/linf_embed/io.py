"""Plain-text formats for metrics, embeddings and covers.

Metric file::

    # optional comments
    n
    i j d        (one line per pair, 0 <= i < j < n; d decimal or p/q)

Embedding file: a header ``n k`` then ``n`` rows of ``k`` rationals. Cover
file: per function one line of ``n`` values followed by a line of tight edges
written ``a>b``. Rationals are written ``p/q`` (or ``p`` when integral).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import MetricError
from .lipschitz import EdgeCover, Embedding, tight_graph
from .metric import MetricSpace, from_pairs


class FormatError(MetricError):
    pass


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {tok!r}") from exc


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s and not s.startswith("#"):
            out.append((no, s))
    return out


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise FormatError(f"line {no}: expected an integer, got {tok!r}") from exc


def dumps_metric(ms: MetricSpace, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(str(ms.n))
    lines += [f"{i} {j} {fmt(ms.d(i, j))}" for i, j in ms.pairs()]
    return "\n".join(lines) + "\n"


def loads_metric(text: str) -> MetricSpace:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty metric file")
    no, head = lines[0]
    n = _int(head, no)
    if n < 1:
        raise FormatError(f"line {no}: point count must be positive")
    expected = n * (n - 1) // 2
    if len(lines) - 1 != expected:
        raise FormatError(f"expected {expected} distance lines for n={n}, found {len(lines) - 1}")
    upper = {}
    for no, line in lines[1:]:
        toks = line.split()
        if len(toks) != 3:
            raise FormatError(f"line {no}: expected 'i j d', got {line!r}")
        i, j = _int(toks[0], no), _int(toks[1], no)
        if not 0 <= i < j < n:
            raise FormatError(f"line {no}: need 0 <= i < j < {n}, got {i} {j}")
        if (i, j) in upper:
            raise FormatError(f"line {no}: pair ({i},{j}) given twice")
        upper[i, j] = parse_rational(toks[2])
    return from_pairs(n, upper)


def dumps_embedding(e: Embedding) -> str:
    lines = [f"{e.n} {e.k}"]
    lines += [" ".join(fmt(x) for x in row) for row in e.coords]
    return "\n".join(lines) + "\n"


def loads_embedding(text: str) -> Embedding:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty embedding file")
    no, head = lines[0]
    toks = head.split()
    if len(toks) != 2:
        raise FormatError(f"line {no}: expected header 'n k'")
    n, k = _int(toks[0], no), _int(toks[1], no)
    rows = []
    for no, line in lines[1:]:
        vals = [parse_rational(t) for t in line.split()]
        if len(vals) != k:
            raise FormatError(f"line {no}: expected {k} coordinates, got {len(vals)}")
        rows.append(tuple(vals))
    if k == 0:
        # rows of zero coordinates are blank lines and do not survive comment stripping
        rows = [()] * n
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, found {len(rows)}")
    return Embedding(n, k, tuple(rows))


def dumps_cover(cover: EdgeCover) -> str:
    lines = []
    for f in cover.fns:
        lines.append(" ".join(fmt(f(x)) for x in range(cover.space.n)))
        lines.append(" ".join(f"{a}>{b}" for a, b in sorted(tight_graph(f).edges)))
    return "\n".join(lines) + "\n"


def read_metric(path) -> MetricSpace:
    return loads_metric(Path(path).read_text(encoding="utf-8"))


def write_metric(path, ms: MetricSpace, comment: str | None = None) -> None:
    Path(path).write_text(dumps_metric(ms, comment), encoding="utf-8")


def read_embedding(path) -> Embedding:
    return loads_embedding(Path(path).read_text(encoding="utf-8"))


def write_embedding(path, e: Embedding) -> None:
    Path(path).write_text(dumps_embedding(e), encoding="utf-8")
