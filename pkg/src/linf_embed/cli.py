"""Command-line interface.

Exit codes: 0 success, 1 verification failure or a counterexample to a
construction claim, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .coloring import (
    color_quadruple,
    find_monochromatic,
    impossibility_certificate,
    lemma4_search,
    mono_color,
    quad_sums,
)
from .embedder import STRATEGIES, embed_with_gain
from .errors import EmbedError, GuardExceeded, MetricError, TiedSums, VerificationFailed
from .lipschitz import DimensionMismatch, verify_embedding
from .metric import CONSTRUCTIBLE, generate
from .oracle import MAX_POINTS, exact_m

OK, FAIL, BAD_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linf-embed", description="Isometric embeddings of finite metric spaces into l-infinity^k.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a generic (optionally monochromatic) metric space")
    g.add_argument("--color", required=True, choices=[*CONSTRUCTIBLE, "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    e = sub.add_parser("embed", help="embed a metric file with a requested dimension gain")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--gain", type=int, required=True)
    e.add_argument("--strategy", choices=STRATEGIES, default="construction")
    e.add_argument("--epsilon", type=io.parse_rational, default=None, help="perturbation size P/Q")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)
    e.add_argument("--cover-out")
    e.add_argument("--metric-out", help="write the (possibly perturbed) metric the embedding is exact for")

    v = sub.add_parser("verify", help="check an embedding file against a metric file")
    v.add_argument("--metric", required=True)
    v.add_argument("--embedding", required=True)

    c = sub.add_parser("color", help="quadruple colours and monochromatic subsets")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--quad", type=int, nargs=4, metavar=("A", "B", "C", "D"))
    c.add_argument("--find-mono", type=int, metavar="K")
    c.add_argument("--seed", type=int, default=0)

    x = sub.add_parser("exact-m", help=f"exact minimal dimension (n <= {MAX_POINTS})")
    x.add_argument("--in", dest="inp", required=True)
    x.add_argument("--max-k", type=int)

    lm = sub.add_parser("lemma4", help="5-point impossibility certificate for colours 213 and 312")
    lm.add_argument("--trials", type=int, default=1000)
    lm.add_argument("--seed", type=int, default=0)
    return p


def _gen(args) -> int:
    if args.n < 1:
        raise _UsageError("--n must be positive")
    ms = generate(args.color, args.n, args.seed)
    io.write_metric(args.out, ms, comment=f"gen --color {args.color} --n {args.n} --seed {args.seed}")
    rep = mono_color(ms)
    print(f"wrote {args.out}: {rep.summary()}")
    return OK


def _embed(args) -> int:
    if args.gain < 1:
        raise _UsageError("--gain must be at least 1")
    if args.epsilon is not None and args.epsilon <= 0:
        raise _UsageError("--epsilon must be positive")
    ms = io.read_metric(args.inp)
    res = embed_with_gain(ms, args.gain, strategy=args.strategy, epsilon=args.epsilon, seed=args.seed)
    io.write_embedding(args.out, res.embedding)
    if args.cover_out and res.cover is not None:
        Path(args.cover_out).write_text(io.dumps_cover(res.cover), encoding="utf-8")
    if args.metric_out:
        io.write_metric(args.metric_out, res.metric)
    for line in res.report.lines():
        print(line)
    print(verify_embedding(res.metric, res.embedding).summary())
    return OK


def _verify(args) -> int:
    ms = io.read_metric(args.metric)
    emb = io.read_embedding(args.embedding)
    try:
        rep = verify_embedding(ms, emb)
    except DimensionMismatch as exc:
        print(f"NOT isometric: {exc}")
        return FAIL
    print(rep.summary())
    return OK if rep.isometric else FAIL


def _color(args) -> int:
    ms = io.read_metric(args.inp)
    if args.quad:
        q = args.quad
        if len(set(q)) != 4 or not all(0 <= x < ms.n for x in q):
            raise _UsageError("--quad needs four distinct points of the space")
        r1, r2, r3 = quad_sums(ms, *q)
        try:
            label = color_quadruple(ms, *q)
        except TiedSums:
            label = "tie"
        print(label)
        print(f"R1 = {r1}\nR2 = {r2}\nR3 = {r3}")
        return OK
    if args.find_mono:
        k = args.find_mono
        if not 4 <= k <= ms.n:
            raise _UsageError(f"--find-mono needs 4 <= K <= {ms.n}")
        hit = find_monochromatic(ms, k, seed=args.seed)
        if hit is None:
            print(f"no monochromatic {k}-subset found" + ("" if ms.n <= 15 else " (heuristic search)"))
        else:
            how = "exact" if hit.exhaustive else "heuristic"
            print(f"colour {hit.color}: {' '.join(map(str, hit.subset))} ({how} search)")
        return OK
    print(mono_color(ms).summary())
    return OK


def _exact_m(args) -> int:
    ms = io.read_metric(args.inp)
    k_max = args.max_k if args.max_k is not None else max(ms.n - 1, 0)
    m = exact_m(ms, k_max)
    print(f"m = {m}" if m is not None else f"m exceeds {k_max}")
    return OK


def _lemma4(args) -> int:
    status = OK
    for color in ("213", "312"):
        cert = impossibility_certificate(color)
        print(cert.summary())
        if not cert.identity_holds:
            status = FAIL
    hits = lemma4_search(args.trials, args.seed)
    print(f"{hits}/{args.trials} random 5-point spaces monochromatic 213/312")
    return FAIL if hits else status


_COMMANDS = {
    "gen": _gen,
    "embed": _embed,
    "verify": _verify,
    "color": _color,
    "exact-m": _exact_m,
    "lemma4": _lemma4,
}


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.cmd](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return BAD_INPUT
    except (MetricError, GuardExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (VerificationFailed, EmbedError) as exc:
        print(f"FAILED: {exc}")
        return FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
