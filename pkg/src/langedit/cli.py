"""Command-line surface: distance, correct, chart, compile, oracle, bench.

Exit codes: 0 success, 1 usage error (bad flags, bad input string),
2 grammar error (unreadable or invalid grammar file).  All diagnostics
go to stderr; results go to stdout or the requested output file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time

from .closure import bounded_distance, exact_distance, init_matrix, valiant_closure
from .covering import CoveringGrammar, build_covering, template_cost
from .cyk import distance_from_chart, ec_parse
from .grammar import AlphabetError, GrammarError, load_grammar
from .oracle import brute_force_distance
from .retrieval import correct
from .semiring import MulStats

ALGOS = ("cyk", "valiant", "valiant-tropical")
STRATEGY = {"valiant": "direct", "valiant-tropical": "tropical"}


class UsageError(ValueError):
    """Bad flag combination or bad input; exits with status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser, with_input: bool = True) -> None:
    sub.add_argument("-g", "--grammar", required=True, help="grammar file")
    if with_input:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("-i", "--input", help="input string")
        group.add_argument(
            "--input-file", help="read the input string from a file"
        )


def _read_input(args: argparse.Namespace) -> str:
    if args.input is not None:
        return args.input
    try:
        with open(args.input_file, encoding="utf-8") as fh:
            return fh.read().rstrip("\n")
    except OSError as exc:
        raise UsageError(f"cannot read input file: {exc}") from exc


def _load_covering(path: str) -> CoveringGrammar:
    return build_covering(load_grammar(path))


def _exact_distance(cg: CoveringGrammar, text: str, algo: str, threads: int) -> int:
    if algo == "cyk":
        return distance_from_chart(ec_parse(cg, text), cg)
    return exact_distance(cg, text, strategy=STRATEGY[algo], threads=threads)


def _cmd_distance(args: argparse.Namespace) -> int:
    if args.max_distance is not None and args.approx is not None:
        raise UsageError("--max-distance and --approx are mutually exclusive")
    if args.max_distance is not None and args.max_distance < 0:
        raise UsageError("--max-distance must be nonnegative")
    if args.approx is not None and args.approx < 0:
        raise UsageError("--approx must be nonnegative")
    cg = _load_covering(args.grammar)
    text = _read_input(args)

    if args.max_distance is not None:
        m = args.max_distance
        d = _bounded(cg, text, m, args.algo, args.threads)
        if args.json:
            print(json.dumps({"distance": d, "max_distance": m}))
        else:
            print(f">{m}" if d is None else d)
        return 0
    if args.approx is not None:
        m = args.approx
        d = _bounded(cg, text, m, args.algo, args.threads)
        value = len(text) if d is None else d
        if args.json:
            print(json.dumps({"distance": value, "threshold": m}))
        else:
            print(value)
        return 0
    d = _exact_distance(cg, text, args.algo, args.threads)
    print(json.dumps({"distance": d}) if args.json else d)
    return 0


def _bounded(
    cg: CoveringGrammar, text: str, m: int, algo: str, threads: int
) -> int | None:
    if algo == "cyk":
        d = distance_from_chart(ec_parse(cg, text), cg)
        return d if d <= m else None
    return bounded_distance(cg, text, m, strategy=STRATEGY[algo], threads=threads)


def _cmd_correct(args: argparse.Namespace) -> int:
    cg = _load_covering(args.grammar)
    text = _read_input(args)
    res = correct(cg, text)
    if args.json:
        print(
            json.dumps(
                {
                    "distance": res.distance,
                    "corrected": res.corrected,
                    "edits": [e.as_dict() for e in res.edits],
                }
            )
        )
        return 0
    print(f"distance: {res.distance}")
    print(f"corrected: {res.corrected}")
    rendered = []
    for e in res.edits:
        if e.op == "delete":
            rendered.append(f"delete@{e.pos}")
        elif e.op == "insert":
            rendered.append(f"insert@{e.pos}:{e.char}")
        else:
            rendered.append(f"substitute@{e.pos}:{e.char}")
    print("edits: " + (" ".join(rendered) if rendered else "(none)"))
    return 0


def _cmd_chart(args: argparse.Namespace) -> int:
    cg = _load_covering(args.grammar)
    text = _read_input(args)
    chart = ec_parse(cg, text)
    cells = []
    for i in range(chart.n):
        for j in range(i + 1, chart.n + 1):
            entries = [
                {"nt": name, "cost": cost} for name, cost in chart.entries(i, j)
            ]
            cells.append({"i": i + 1, "j": j + 1, "entries": entries})
    print(json.dumps({"cells": cells}))
    return 0


def _render_template(tmpl: tuple) -> list:
    return [list(item) for item in tmpl]


def _cmd_compile(args: argparse.Namespace) -> int:
    cg = _load_covering(args.grammar)
    g = cg.grammar
    productions = []
    for p in g.productions:
        ann = cg.annotations[p]
        assert template_cost(ann) == p.cost
        productions.append(
            {
                "lhs": p.lhs,
                "rhs": [repr(s) for s in p.rhs],
                "cost": p.cost,
                "annotation": _render_template(ann),
            }
        )
    doc = {
        "nonterminals": sorted(g.nonterminals),
        "terminals": sorted(g.terminals),
        "start": g.start,
        "productions": productions,
        "nullinfo": {
            name: {"mnullcount": info.mnullcount, "witness": info.witness}
            for name, info in sorted(cg.nullinfo.items())
        },
    }
    payload = json.dumps(doc, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    cg_grammar = load_grammar(args.grammar)
    text = _read_input(args)
    res = brute_force_distance(cg_grammar, text)
    witnesses = sorted(res.witnesses)
    if args.json:
        print(json.dumps({"distance": res.distance, "witnesses": witnesses}))
        return 0
    print(f"distance: {res.distance}")
    print("witnesses: " + " ".join(witnesses))
    return 0


def _bench_rows(
    cg: CoveringGrammar, sizes: list[int], algos: list[str], threads: int, seed: int
) -> list[dict]:
    rng = random.Random(seed)
    alphabet = sorted(cg.grammar.terminals)
    rows = []
    for n in sizes:
        text = "".join(rng.choice(alphabet) for _ in range(n))
        for algo in algos:
            start = time.perf_counter()
            if algo == "cyk":
                chart = ec_parse(cg, text)
                d = distance_from_chart(chart, cg)
                ops = chart.combination_attempts
            else:
                result = valiant_closure(
                    init_matrix(cg, text), cg, STRATEGY[algo], threads
                )
                d = result.distance
                ops = _ops_of(result.stats, algo, cg)
            wall_ms = (time.perf_counter() - start) * 1000.0
            rows.append(
                {
                    "algo": algo,
                    "n": n,
                    "distance": d,
                    "min_plus_ops": ops,
                    "wall_ms": round(wall_ms, 3),
                }
            )
    return rows


def _ops_of(stats: MulStats, algo: str, cg: CoveringGrammar) -> int:
    if algo == "valiant":
        return stats.pairset_probes * len(cg.binary_prods)
    return stats.min_plus_ops


def _cmd_bench(args: argparse.Namespace) -> int:
    cg = _load_covering(args.grammar)
    try:
        sizes = [int(tok) for tok in args.n.split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"bad --n list: {args.n!r}") from exc
    if not sizes or any(n <= 0 for n in sizes):
        raise UsageError("--n needs a comma-separated list of positive sizes")
    algos = [tok for tok in args.algo.split(",") if tok]
    for algo in algos:
        if algo not in ALGOS:
            raise UsageError(f"unknown algo {algo!r}; choose from {ALGOS}")
    if args.plot and not args.output:
        raise UsageError("--plot requires -o so figures have a home")
    seed = int(os.environ.get("LED_SEED", "0"))
    rows = _bench_rows(cg, sizes, algos, args.threads, seed)

    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["algo", "n", "distance", "min_plus_ops", "wall_ms"]
    )
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.plot:
        from .benchplot import render_figures

        for path in render_figures(rows, args.output):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="led", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("distance", help="edit distance to the language")
    _add_common(p_dist)
    p_dist.add_argument("--algo", choices=ALGOS, default="cyk")
    p_dist.add_argument("--max-distance", type=int, default=None, metavar="M")
    p_dist.add_argument("--approx", type=int, default=None, metavar="M")
    p_dist.add_argument("--threads", type=int, default=1)
    p_dist.add_argument("--json", action="store_true")
    p_dist.set_defaults(func=_cmd_distance)

    p_corr = sub.add_parser("correct", help="nearest language string and edits")
    _add_common(p_corr)
    p_corr.add_argument("--json", action="store_true")
    p_corr.set_defaults(func=_cmd_correct)

    p_chart = sub.add_parser("chart", help="dump the full parse chart as JSON")
    _add_common(p_chart)
    p_chart.set_defaults(func=_cmd_chart)

    p_comp = sub.add_parser("compile", help="serialize the covering grammar")
    _add_common(p_comp, with_input=False)
    p_comp.add_argument("-o", "--output", default=None, help="output JSON file")
    p_comp.set_defaults(func=_cmd_compile)

    p_oracle = sub.add_parser("oracle", help="brute-force distance and witnesses")
    _add_common(p_oracle)
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_bench = sub.add_parser("bench", help="benchmark the algorithms to CSV")
    p_bench.add_argument("-g", "--grammar", required=True, help="grammar file")
    p_bench.add_argument("--n", required=True, help="comma-separated sizes")
    p_bench.add_argument("--algo", default="cyk,valiant-tropical")
    p_bench.add_argument("--threads", type=int, default=1)
    p_bench.add_argument("-o", "--output", default=None, help="CSV output file")
    p_bench.add_argument(
        "--plot", action="store_true", help="render figures next to the CSV"
    )
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"led: {exc}", file=sys.stderr)
        return 1
    except AlphabetError as exc:
        print(f"led: {exc}", file=sys.stderr)
        return 1
    except GrammarError as exc:
        print(f"led: grammar error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"led: grammar error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
