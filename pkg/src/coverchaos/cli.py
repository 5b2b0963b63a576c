"""Command-line front end.

Verbs: validate | build | verify | schedule | simulate.  Exit status:
0 everything passed, 1 a verification failed, 2 usage or parse error,
3 a size budget or provider depth was exceeded.  Report bodies are
deterministic; timing goes to standard error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import verify as V
from .address import ImplicitTower
from .anchors import AnchorError
from .covering import validate_covering
from .embed import build_embedding, verify_construction
from .fileio import CoveringParseError, format_covering, format_dot, parse_covering
from .providers import (BudgetExceededError, DepthExceededError,
                        ExplicitCoveringProvider, GENERATORS, make_generator)

PASS, FAIL, USAGE, BUDGET = 0, 1, 2, 3


def _provider(args):
    if args.gen:
        return make_generator(args.gen)
    text = Path(args.file).read_text(encoding="utf-8")
    return ExplicitCoveringProvider(parse_covering(text))


def _engine(args):
    return ImplicitTower(_provider(args), l11=args.l11, l21=args.l21)


def _add_input_flags(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", choices=sorted(GENERATORS), help="built-in input covering")
    src.add_argument("--file", help="covering file path")
    p.add_argument("--l11", type=int, default=1, help="length of the first connector path")
    p.add_argument("--l21", type=int, default=1, help="length of the second connector path")


def cmd_validate(args) -> int:
    provider = _provider(args)
    depth = args.levels if args.levels is not None else (provider.depth or 4)
    seq = provider.materialize(depth)
    report = validate_covering(seq)
    print(report.render())
    return PASS if report.ok else FAIL


def cmd_build(args) -> int:
    provider = _provider(args)
    tower = build_embedding(provider, args.levels, l11=args.l11, l21=args.l21,
                            budget=args.budget)
    for n in range(1, tower.depth + 1):
        level = tower.level(n)
        g = level.graph
        print(f"level {n}: |V|={len(g)} |E|={len(g.edges)} "
              f"l1={level.l1} l2={level.l2} lw={level.w.length}")
    print("l1 table: " + " ".join(str(tower.level(n).l1) for n in range(1, tower.depth + 1)))
    if args.dot:
        outdir = Path(args.dot)
        outdir.mkdir(parents=True, exist_ok=True)
        for n in range(1, tower.depth + 1):
            (outdir / f"level{n}.dot").write_text(format_dot(tower, n), encoding="utf-8")
        print(f"dot files written to {outdir}")
    report = verify_construction(tower)
    print(report.serialize())
    return PASS if report.verdict else FAIL


def _schedule_pairs(engine, mode, kmax):
    if mode == "strict":
        return engine.strict_schedule(1, kmax)
    return engine.relaxed_schedule(1, kmax)


def _claim_reports(args, claim, engine, provider):
    pairs = lambda kmax: _schedule_pairs(engine, args.mode, kmax)  # noqa: E731
    if claim == "well-defined":
        tower = build_embedding(provider, args.levels, l11=args.l11, l21=args.l21)
        return [verify_construction(tower, mode=args.mode)]
    if claim == "fixed-point-pattern":
        return [V.verify_fixed_point_pattern(engine, args.m, args.n, mode=args.mode)]
    if claim == "property1":
        return [V.verify_property1(engine, args.m, args.n, mode=args.mode)]
    if claim == "property2":
        return [V.verify_property2(engine, args.m, args.n, mode=args.mode)]
    if claim == "triple-cover":
        return [V.verify_triple_cover(engine, pairs(args.k + 1), args.k, mode=args.mode)]
    if claim == "density":
        return [V.verify_density(engine, pairs(args.k + 1), args.k, mode=args.mode)]
    if claim == "proximal":
        return [V.proximality_witness(engine, pairs(args.k), args.N, args.k,
                                      args.resolution, samples=args.samples,
                                      seed=args.seed, mode=args.mode)]
    if claim == "recurrent":
        return [V.recurrence_witness(engine, pairs(args.k), args.N, args.k,
                                     args.resolution, samples=args.samples,
                                     seed=args.seed, mode=args.mode)]
    if claim == "invariant":
        return [V.verify_invariance(engine, pairs(args.k), args.N, args.k, mode=args.mode)]
    if claim == "scrambled":
        sched = pairs(args.k)
        n_k, m_k = sched[args.k - 1]
        qlo, qhi = engine.q_interval(m_k, n_k)
        a = engine.path_addr(m_k, 1, qlo)
        b = engine.path_addr(m_k, 1, qhi)
        return [V.scrambled_pair_witness(engine, a, b, args.resolution,
                                         horizon=args.horizon, mode=args.mode)]
    if claim == "outside-homeo":
        tower = build_embedding(provider, max(args.n, args.levels),
                                l11=args.l11, l21=args.l21)
        return [V.verify_outside_bidirectional(tower, args.n, mode=args.mode)]
    if claim == "transitive":
        return [V.transitivity_witness(engine, pairs(args.k + 1), args.k, mode=args.mode)]
    raise ValueError(f"unknown claim {claim!r}")


def cmd_verify(args) -> int:
    if args.claim != "all" and args.claim not in V.CLAIMS:
        print(f"unknown claim {args.claim!r}; choose from {', '.join(V.CLAIMS)} or all",
              file=sys.stderr)
        return USAGE
    provider = _provider(args)
    engine = ImplicitTower(provider, l11=args.l11, l21=args.l21)
    claims = list(V.CLAIMS) if args.claim == "all" else [args.claim]
    t0 = time.monotonic()
    reports = []
    for claim in claims:
        reports.extend(_claim_reports(args, claim, engine, provider))
    for rep in reports:
        print(rep.serialize())
    print(f"cost: {int((time.monotonic() - t0) * 1000)}ms "
          f"claims={len(reports)}", file=sys.stderr)
    return PASS if all(r.verdict for r in reports) else FAIL


def cmd_schedule(args) -> int:
    engine = _engine(args)
    strict_error = None
    try:
        strict = engine.strict_schedule(args.n0, args.k)
        for i, (n, m) in enumerate(strict, start=1):
            print(f"strict k={i} n={n} m={m} l1_n={engine.path_lengths(n)[0]}")
    except DepthExceededError as exc:
        strict_error = exc
        print(f"strict schedule unavailable: {exc}")
    for i, (n, m) in enumerate(engine.relaxed_schedule(args.n0, args.k), start=1):
        print(f"relaxed k={i} n={n} m={m}")
    return BUDGET if strict_error else PASS


def cmd_simulate(args) -> int:
    if args.depth < args.steps:
        print(f"depth {args.depth} cannot absorb {args.steps} steps", file=sys.stderr)
        return USAGE
    engine = _engine(args)
    start = engine.parse_address(args.depth, args.thread)
    prefix = engine.thread_from(start)
    for t in range(args.steps + 1):
        print(f"t={t} depth={prefix.depth}: {prefix}")
        if t < args.steps:
            prefix = engine.push_forward(prefix, 1)
    return PASS


def cmd_export(args) -> int:
    provider = _provider(args)
    depth = args.levels if args.levels is not None else (provider.depth or 4)
    print(format_covering(provider.materialize(depth)), end="")
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverchaos",
        description="Build chaotic extensions of chain-transitive graph coverings "
                    "and machine-check their dynamics at finite depth.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a covering: surjectivity, covers, chain transitivity")
    _add_input_flags(p)
    p.add_argument("--levels", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="materialize the augmented tower explicitly")
    _add_input_flags(p)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--budget", type=int, default=200_000, help="vertex budget per level")
    p.add_argument("--dot", help="directory for one DOT file per level")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run one claim checker, or all of them")
    _add_input_flags(p)
    p.add_argument("--claim", required=True)
    p.add_argument("--mode", choices=("strict", "relaxed"), default="relaxed")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--N", type=int, default=1, dest="N")
    p.add_argument("--resolution", type=int, default=1)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--levels", type=int, default=4, help="explicit depth for construction claims")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schedule", help="print strict and relaxed deep-level schedules")
    _add_input_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n0", type=int, default=1)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("simulate", help="run a finite-depth orbit prefix forward")
    _add_input_flags(p)
    p.add_argument("--thread", default="H", help="address at --depth: H, p1:<j>, p2:<j>, F:<v>")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export", help="write a covering back out in the file format")
    _add_input_flags(p)
    p.add_argument("--levels", type=int, default=None)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CoveringParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (DepthExceededError, BudgetExceededError) as exc:
        print(f"budget/depth: {exc}", file=sys.stderr)
        return BUDGET
    except (AnchorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
