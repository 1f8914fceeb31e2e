"""Command-line front end.

Three subcommands, all deterministic given their flags:

* ``run``    -- simulate a rule over a network under a scheduler and
                print a RESULT line (exit 0 stable, 2 budget exhausted).
* ``oracle`` -- exact optima by brute force, optionally with the
                cutset-conditioning decomposition table.
* ``demo``   -- named reproducible experiments (PASS/FAIL verdict).

First output tokens are machine-parseable: RESULT / OPT / COND / PASS / FAIL.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .engine import result_line, run, trace_line
from .fixtures import fixture, illegal_ring
from .network import parse_network
from .oracle import (
    brute_force_optima,
    cutset_exact_optimize,
    greedy_cutset,
    plan_from_members,
    tree_conditioned_max,
)
from .schedulers import parse_scheduler
from .weights import Weight


def _load_network(args):
    if args.fixture:
        return fixture(args.fixture)
    with open(args.net, encoding="utf-8") as fh:
        return parse_network(fh.read())


def _parse_cutset(net, text):
    if text is None:
        return None
    if text == "auto":
        return greedy_cutset(net).members
    return frozenset(int(t) for t in text.split(",") if t)


def cmd_run(args) -> int:
    net = _load_network(args)
    scheduler = parse_scheduler(args.sched, seed=args.seed)
    if args.cutset is not None and args.rule != "activate-with-cutset":
        print("error: --cutset is only meaningful with --rule activate-with-cutset", file=sys.stderr)
        return 1
    cutset = _parse_cutset(net, args.cutset)
    preset = None
    if args.init == "preset":
        if not (args.fixture or "").startswith("illegal_ring"):
            print("error: --init preset is only available for illegal_ring fixtures", file=sys.stderr)
            return 1
        n = int(args.fixture.split(":", 1)[1])
        _, preset = illegal_ring(n)
    want_trace = args.format == "tsv" or args.trace is not None
    result = run(
        net,
        args.rule,
        scheduler,
        init=args.init,
        seed=args.seed,
        temperature=Weight.from_decimal(args.temp) if args.temp else None,
        cutset=cutset,
        preset=preset,
        max_passes=args.max_passes,
        collect_trace=want_trace,
        track_illegal=want_trace,
    )
    lines = [trace_line(ev) for ev in result.trace] if want_trace else []
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    if args.format == "tsv":
        for line in lines:
            print(line)
    print(result_line(result))
    return 0 if result.stable else 2


def cmd_oracle(args) -> int:
    net = _load_network(args)
    cutset = _parse_cutset(net, args.cutset)
    if cutset is None and net.cutset:
        cutset = net.cutset
    if cutset:
        plan = plan_from_members(net, cutset)
        report = cutset_exact_optimize(net, plan)
    else:
        report = brute_force_optima(net)
    print(f"OPT goodness={report.gmax} count={len(report.argmax)}")
    for a in report.argmax:
        print("".join(str(b) for b in a))
    if cutset:
        members = sorted(cutset)
        for code in range(1 << len(members)):
            y = {node: (code >> (len(members) - 1 - idx)) & 1 for idx, node in enumerate(members)}
            value, _ = tree_conditioned_max(net, y)
            bits = "".join(str(y[node]) for node in members)
            print(f"COND y={bits} goodness={value}")
    return 0


def cmd_demo(args) -> int:
    demo = experiments.DEMOS.get(args.name)
    if demo is None:
        print(f"error: unknown demo {args.name!r}; choose from {sorted(experiments.DEMOS)}", file=sys.stderr)
        return 1
    kwargs = {}
    if args.name in ("selfstab", "dominance"):
        kwargs = {"trials": args.trials, "seed": args.seed}
    result = demo(**kwargs)
    for line in result.lines:
        print(line)
    if result.passed:
        print(f"PASS: demo {result.name}")
        return 0
    if result.inconclusive:
        print(f"FAIL: demo {result.name} (inconclusive)")
        return 2
    print(f"FAIL: demo {result.name}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goodnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_net_args(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--net", help="network file path")
        group.add_argument("--fixture", help="named fixture (fig1, example51, ring6, chain2i:<i>, illegal_ring:<n>)")

    p_run = sub.add_parser("run", help="simulate a rule under a scheduler")
    add_net_args(p_run)
    p_run.add_argument("--rule", default="activate", choices=["hopfield", "boltzmann", "activate", "activate-with-cutset"])
    p_run.add_argument("--sched", default="central-rr", help="central-rr[:order] | central-random | sync-all | fair-excl | scripted:<ids>")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--init", default="zeros", choices=["zeros", "random", "preset"])
    p_run.add_argument("--temp", help="temperature for the boltzmann rule (decimal)")
    p_run.add_argument("--cutset", help="comma-separated node ids, or 'auto'")
    p_run.add_argument("--max-passes", type=int, default=100)
    p_run.add_argument("--trace", help="write the event trace (TSV) to this path")
    p_run.add_argument("--format", default="summary", choices=["summary", "tsv"])
    p_run.set_defaults(func=cmd_run)

    p_oracle = sub.add_parser("oracle", help="exact optima by exhaustive scan or cutset conditioning")
    add_net_args(p_oracle)
    p_oracle.add_argument("--cutset", help="comma-separated node ids, or 'auto'")
    p_oracle.set_defaults(func=cmd_oracle)

    p_demo = sub.add_parser("demo", help="run a named experiment")
    p_demo.add_argument("name", help="thm41 | thm42 | fig9 | selfstab | dominance | linear")
    p_demo.add_argument("--trials", type=int, default=100)
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
