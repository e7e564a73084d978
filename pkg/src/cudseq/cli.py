"""Command-line front end.

Subcommands: ford (digit sequences), gen (term streams), locate / term
(prefix arithmetic), verify (exact property checks), stats (stream
statistics). All outputs are deterministic for identical flags.

Exit codes: 0 success, 1 property/assertion failure or short input,
2 usage error, 3 capacity/overflow.
"""

import argparse
import itertools
import json
import os
import sys
from contextlib import contextmanager

from .cud import GrowthFn, d_boundaries, l_stream, locate, term_at
from .debruijn import best_count, enumerate_debruijn, ford_digits, ford_digitseq, ford_stream, is_debruijn
from .errors import CapacityError, CudseqError, InputError, ShortStreamError
from .formats import (
    read_rational_text,
    write_convergence_csv,
    write_digit_binary,
    write_digit_text,
    write_float_csv,
    write_rational_text,
)
from .knuth import b_boundaries, k_stream
from .stats import (
    DEFAULT_SEED,
    Box,
    box_count,
    cyclic_box_count,
    cyclic_weyl_sum,
    perm_order_stats,
    power_sum_bound,
    random_boxes,
    star_discrepancy_estimate,
    convergence_series,
    weyl_sum,
)

SEED_ENV = "CUDSEQ_SEED"


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _parse_ell(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"bad ell spec {text!r} (expected comma-separated integers)") from None


@contextmanager
def _out_text(path):
    if path:
        with open(path, "w", encoding="utf-8") as fp:
            yield fp
    else:
        yield sys.stdout


@contextmanager
def _out_binary(path):
    if path:
        with open(path, "wb") as fp:
            yield fp
    else:
        yield sys.stdout.buffer


def _emit_json(report: dict, out_path) -> None:
    with _out_text(out_path) as fp:
        json.dump(report, fp, indent=2)
        fp.write("\n")


def _make_source(spec: str):
    if spec == "knuth":
        return k_stream()
    if spec.startswith("l:"):
        return l_stream(GrowthFn.parse(spec[len("l:"):]))
    if spec.startswith("file:"):
        path = spec[len("file:"):]
        if not os.path.exists(path):
            raise InputError(f"input file {path!r} does not exist")

        def file_terms():
            with open(path, "r", encoding="utf-8") as fp:
                yield from read_rational_text(fp)

        return file_terms()
    raise InputError(f"unknown source {spec!r} (expected knuth, l:<growth> or file:<path>)")


# ---------------------------------------------------------------- commands


def _cmd_ford(args) -> int:
    if args.format == "text":
        with _out_text(args.out) as fp:
            write_digit_text(fp, args.base, args.order, ford_stream(args.base, args.order))
    else:
        count = args.base**args.order
        with _out_binary(args.out) as fp:
            write_digit_binary(fp, args.base, count, ford_stream(args.base, args.order))
    return 0


def _cmd_gen(args) -> int:
    if args.variant == "knuth":
        if args.t is not None:
            raise InputError("--t is only valid with --variant l")
        stream = k_stream()
    else:
        if args.t is None:
            raise InputError("--variant l requires --t")
        stream = l_stream(GrowthFn.parse(args.t))
    terms = itertools.islice(iter(stream), args.count)
    with _out_text(args.out) as fp:
        if args.format == "text":
            write_rational_text(fp, terms)
        else:
            write_float_csv(fp, terms)
    return 0


def _cmd_locate(args) -> int:
    loc = locate(args.N, GrowthFn.parse(args.t))
    with _out_text(args.out) as fp:
        fp.write(f"r={loc.r} q={loc.q} p={loc.p}\n")
    return 0


def _cmd_term(args) -> int:
    num, den = term_at(args.N, GrowthFn.parse(args.t))
    with _out_text(args.out) as fp:
        if args.format == "text":
            fp.write(f"{num}/{den}\n")
        else:
            fp.write(f"{num / den!r}\n")
    return 0


def _verify_debruijn(args) -> dict:
    seq = ford_digitseq(args.base, args.order)
    ok = is_debruijn(seq, args.order)
    return {
        "check": "debruijn",
        "params": {"base": args.base, "order": args.order},
        "ok": ok,
        "length": len(seq),
    }


def _verify_best(args) -> dict:
    formula = best_count(args.base, args.order)
    found = enumerate_debruijn(args.base, args.order)
    ford = tuple(ford_digits(args.base, args.order))
    counts_agree = formula == len(found)
    ford_is_min = bool(found) and found[0].digits == ford
    report = {
        "check": "best",
        "params": {"base": args.base, "order": args.order},
        "formula_count": formula,
        "enumerated_count": len(found),
        "ford_is_minimum": ford_is_min,
        "ok": counts_agree and ford_is_min,
    }
    if not report["ok"]:
        report["counterexample"] = {
            "formula_count": formula,
            "enumerated_count": len(found),
        }
    return report


def _verify_lemma1(args) -> dict:
    n = args.n
    k_max = args.k if args.k is not None else min(n, 3)
    if k_max > n:
        raise InputError(f"--k must not exceed --n (got k={k_max}, n={n})")
    seed = args.seed
    max_eps = 0.0
    boxes_run = 0
    counterexample = None
    for k in range(1, k_max + 1):
        for i, box in enumerate(random_boxes(k, args.boxes, seed + 100 * n + k)):
            count, eps = cyclic_box_count(n, box)
            boxes_run += 1
            if abs(eps) > max_eps:
                max_eps = abs(eps)
            if abs(eps) >= 1.0 and counterexample is None:
                counterexample = {
                    "k": k,
                    "box_index": i,
                    "bounds": [list(b) for b in box.bounds],
                    "count": count,
                    "epsilon": eps,
                }
    return {
        "check": "lemma1",
        "params": {"n": n, "k_max": k_max, "boxes_per_k": args.boxes, "seed": seed},
        "boxes_run": boxes_run,
        "max_abs_epsilon": max_eps,
        "ok": counterexample is None,
        "counterexample": counterexample,
    }


def _verify_lemma2(args) -> dict:
    ell = _parse_ell(args.ell)
    result = cyclic_weyl_sum(args.n, ell)
    report = {
        "check": "lemma2",
        "params": {"n": args.n, "ell": list(ell)},
        "gcd": result.gcd,
        "multiplicities": list(result.multiplicities),
        "sum_re": result.value.real,
        "sum_im": result.value.imag,
        "condition_met": result.condition_met,
    }
    if result.condition_met:
        tol = 1e-9 * args.n**args.n
        ok = result.structurally_zero and abs(result.value) < tol
        report["ok"] = ok
        if not ok:
            report["counterexample"] = {"magnitude": abs(result.value)}
    else:
        report["ok"] = True
        report["note"] = "vanishing is only asserted for n > max(k, min |l_i|)"
    return report


def _verify_prop3(args) -> dict:
    rows = []
    counterexample = None
    for n in range(1, args.n_max + 1):
        lhs, rhs = power_sum_bound(n)
        rows.append({"n": n, "sum": str(lhs), "bound": str(rhs)})
        if lhs > rhs and counterexample is None:
            counterexample = {"n": n, "sum": str(lhs), "bound": str(rhs)}
    return {
        "check": "prop3",
        "params": {"n_max": args.n_max},
        "rows": rows,
        "ok": counterexample is None,
        "counterexample": counterexample,
    }


_VERIFY_HANDLERS = {
    "debruijn": _verify_debruijn,
    "best": _verify_best,
    "lemma1": _verify_lemma1,
    "lemma2": _verify_lemma2,
    "prop3": _verify_prop3,
}


def _cmd_verify(args) -> int:
    report = _VERIFY_HANDLERS[args.check](args)
    _emit_json(report, args.out)
    return 0 if report["ok"] else 1


def _cmd_stats(args) -> int:
    source = _make_source(args.source)
    if args.op == "boxcount":
        box = Box.parse(args.box)
        wc = box_count(source, args.count, box, threads=args.threads)
        report = {
            "op": "boxcount",
            "params": {"source": args.source, "box": args.box, "threads": args.threads},
            "N": args.count,
            "result": {"nu": wc.nu, "ratio": wc.ratio, "volume": box.volume},
            "deviation": abs(wc.ratio - box.volume),
        }
        _emit_json(report, args.out)
    elif args.op == "weyl":
        ell = _parse_ell(args.ell)
        value = weyl_sum(source, args.count, ell)
        normalized = abs(value) / args.count
        report = {
            "op": "weyl",
            "params": {"source": args.source, "ell": list(ell)},
            "N": args.count,
            "result": {"sum_re": value.real, "sum_im": value.imag, "normalized": normalized},
            "deviation": normalized,
        }
        _emit_json(report, args.out)
    elif args.op == "perms":
        result = perm_order_stats(source, args.count, args.k)
        freqs = result.frequencies()
        uniform = 1.0 / len(freqs)
        deviation = max(abs(f - uniform) for f in freqs.values()) if result.strict_windows else 1.0
        report = {
            "op": "perms",
            "params": {"source": args.source, "k": args.k},
            "N": args.count,
            "result": {
                "orders": {"".join(map(str, perm)): result.counts[perm] for perm in sorted(result.counts)},
                "frequencies": {"".join(map(str, perm)): freqs[perm] for perm in sorted(freqs)},
                "tie_count": result.tie_count,
                "tie_fraction": result.tie_fraction,
            },
            "deviation": deviation,
        }
        _emit_json(report, args.out)
    elif args.op == "discrepancy":
        estimate = star_discrepancy_estimate(source, args.count, args.k, args.grid)
        report = {
            "op": "discrepancy",
            "params": {"source": args.source, "k": args.k, "grid": args.grid},
            "N": args.count,
            "result": {"estimate": estimate},
            "deviation": estimate,
        }
        _emit_json(report, args.out)
    else:  # converge
        box = Box.parse(args.box)
        checkpoints = _resolve_checkpoints(args)
        rows = convergence_series(source, checkpoints, box)
        with _out_text(args.out) as fp:
            write_convergence_csv(fp, rows)
    return 0


def _resolve_checkpoints(args) -> list:
    if args.checkpoints != "auto":
        try:
            return [int(part) for part in args.checkpoints.split(",")]
        except ValueError:
            raise InputError(f"bad checkpoint list {args.checkpoints!r}") from None
    limit = args.count
    if args.source.startswith("l:"):
        cps = d_boundaries(GrowthFn.parse(args.source[len("l:"):]), limit)
    elif args.source == "knuth":
        cps = b_boundaries(limit)
    else:
        raise InputError("--checkpoints auto requires a generator source (knuth or l:<growth>)")
    k = len(Box.parse(args.box).bounds)
    cps = [c for c in cps if c >= k]
    if not cps:
        raise InputError(f"no segment boundary at or below --count {limit}")
    return cps


# ---------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cudseq",
        description="Generate and verify completely uniformly distributed sequences "
        "built from de Bruijn (Ford) sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ford = sub.add_parser("ford", help="emit a Ford sequence")
    p_ford.add_argument("--base", type=_positive_int, required=True)
    p_ford.add_argument("--order", type=_positive_int, required=True)
    p_ford.add_argument("--format", choices=("text", "binary"), default="text")
    p_ford.add_argument("--out", default=None)
    p_ford.set_defaults(func=_cmd_ford)

    p_gen = sub.add_parser("gen", help="emit terms of K or L^(t)")
    p_gen.add_argument("--variant", choices=("knuth", "l"), required=True)
    p_gen.add_argument("--t", default=None, help="growth spec: id, sq or table:1=1,2=4,...")
    p_gen.add_argument("--count", type=_positive_int, required=True)
    p_gen.add_argument("--format", choices=("text", "csv"), default="text")
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_locate = sub.add_parser("locate", help="decompose a prefix length into (r, q, p)")
    p_locate.add_argument("--t", required=True)
    p_locate.add_argument("N", type=_positive_int)
    p_locate.add_argument("--out", default=None)
    p_locate.set_defaults(func=_cmd_locate)

    p_term = sub.add_parser("term", help="the N-th term of L^(t)")
    p_term.add_argument("--t", required=True)
    p_term.add_argument("N", type=_positive_int)
    p_term.add_argument("--format", choices=("text", "csv"), default="text")
    p_term.add_argument("--out", default=None)
    p_term.set_defaults(func=_cmd_term)

    p_verify = sub.add_parser("verify", help="run an exact property check")
    v_sub = p_verify.add_subparsers(dest="check", required=True)

    v_debruijn = v_sub.add_parser("debruijn", help="Ford output is a de Bruijn sequence")
    v_debruijn.add_argument("--base", type=_positive_int, required=True)
    v_debruijn.add_argument("--order", type=_positive_int, required=True)

    v_best = v_sub.add_parser("best", help="sequence count formula vs exhaustive search")
    v_best.add_argument("--base", type=_positive_int, required=True)
    v_best.add_argument("--order", type=_positive_int, required=True)

    v_lemma1 = v_sub.add_parser("lemma1", help="cyclic window-count error bound")
    v_lemma1.add_argument("--n", type=_positive_int, required=True)
    v_lemma1.add_argument("--k", type=_positive_int, default=None)
    v_lemma1.add_argument("--boxes", type=_positive_int, default=200)
    v_lemma1.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get(SEED_ENV, DEFAULT_SEED)),
        help=f"box sampling seed (default from ${SEED_ENV} or {DEFAULT_SEED})",
    )

    v_lemma2 = v_sub.add_parser("lemma2", help="cyclic Weyl sum vanishes")
    v_lemma2.add_argument("--n", type=_positive_int, required=True)
    v_lemma2.add_argument("--ell", required=True)

    v_prop3 = v_sub.add_parser("prop3", help="partial power-sum bound")
    v_prop3.add_argument("--n-max", type=_positive_int, default=12)

    for v_parser in (v_debruijn, v_best, v_lemma1, v_lemma2, v_prop3):
        v_parser.add_argument("--out", default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_stats = sub.add_parser("stats", help="stream statistics")
    s_sub = p_stats.add_subparsers(dest="op", required=True)

    s_box = s_sub.add_parser("boxcount", help="windows inside a box")
    s_box.add_argument("--box", required=True, help="u1:v1,u2:v2,...")
    s_box.add_argument("--threads", type=_positive_int, default=1)

    s_weyl = s_sub.add_parser("weyl", help="exponential sum over windows")
    s_weyl.add_argument("--ell", required=True, help="comma-separated integers")

    s_perms = s_sub.add_parser("perms", help="relative-order statistics")
    s_perms.add_argument("--k", type=_positive_int, required=True)

    s_disc = s_sub.add_parser("discrepancy", help="grid star-discrepancy lower bound")
    s_disc.add_argument("--k", type=_positive_int, required=True)
    s_disc.add_argument("--grid", type=_positive_int, required=True)

    s_conv = s_sub.add_parser("converge", help="ratio table at checkpoints")
    s_conv.add_argument("--box", required=True)
    s_conv.add_argument("--checkpoints", default="auto", help="auto or comma-separated list")

    for s_parser in (s_box, s_weyl, s_perms, s_disc, s_conv):
        s_parser.add_argument("--source", required=True, help="knuth, l:<growth> or file:<path>")
        s_parser.add_argument("--count", type=_positive_int, required=True)
        s_parser.add_argument("--out", default=None)
    p_stats.set_defaults(func=_cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ShortStreamError as exc:
        print(f"cudseq: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"cudseq: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"cudseq: {exc}", file=sys.stderr)
        return 2
    except CudseqError as exc:
        print(f"cudseq: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
