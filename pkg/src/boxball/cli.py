"""``boxball`` command line: simulate, invariants, verify, render."""

from __future__ import annotations

import argparse
import json
import sys

from .carrier import r_step
from .matching import match_stack, stack_permutation
from .poset import stack_poset
from .rsk import p_symbol, shape
from .state import StateParseError, evolve, parse_state
from .verify import corrupted_r_step, invariant_report, random_corpus, verify_corpus
from .walkpath import group_partition, render_walk, to_walk

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxball", description="Box-ball soliton automaton and its conserved quantities.")
    parser.add_argument("command", choices=["simulate", "invariants", "verify", "render"])
    parser.add_argument("--state", help="state as 0/1 text with optional @OFFSET suffix")
    parser.add_argument("--seed", type=int, help="seed for a random corpus")
    parser.add_argument("--count", type=int, help="number of random states")
    parser.add_argument("--max-window", type=int, default=40)
    parser.add_argument("--max-balls", type=int, default=12)
    parser.add_argument("--steps", type=int, help="time steps (default 1 for simulate, 20 otherwise)")
    parser.add_argument("--lmax", type=int, help="largest carrier capacity reported (default: ball count)")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    parser.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    return parser


def _states(args, parser):
    if args.state is not None:
        if args.seed is not None or args.count is not None:
            parser.error("--state cannot be combined with --seed/--count")
        try:
            return [parse_state(args.state)]
        except StateParseError as exc:
            parser.error(str(exc))
    seed = 42 if args.seed is None else args.seed
    count = args.count
    if count is None:
        count = 500 if args.command == "verify" else 1
    if count < 0 or args.max_window < 1 or args.max_balls < 0:
        parser.error("corpus parameters must be non-negative")
    return random_corpus(seed, count, args.max_window, args.max_balls)


def _emit(obj, fmt):
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(obj)


def simulate_rows(history) -> list[str]:
    """Rows of cells aligned at absolute positions, with two blank cells of margin."""
    occupied = [s for s in history if s.window]
    if not occupied:
        return [f"t={t}:" for t in range(len(history))]
    lo = min(s.offset for s in occupied) - 2
    hi = max(s.end for s in occupied) + 2
    width = len(str(len(history) - 1))
    return [f"t={t:<{width}} : " + " ".join(map(str, s.cells(lo, hi))) for t, s in enumerate(history)]


def cmd_simulate(states, args):
    steps = 1 if args.steps is None else args.steps
    out = []
    for p in states:
        history = evolve(p, steps)
        if args.format == "json":
            out.append([{"step": t, "state": str(s), "offset": s.offset, "pattern": s.pattern()}
                        for t, s in enumerate(history)])
        else:
            out.append("\n".join(simulate_rows(history)))
    if args.format == "json":
        _emit({"runs": out}, "json")
    else:
        print("\n\n".join(out))
    return EXIT_OK


def _verdict_lines(report):
    lines = []
    for v in report.verdicts:
        mark = "PASS" if v.passed else "FAIL"
        line = f"{mark}  {v.name}  ({v.cases} cases)"
        if v.detail:
            line += f"  {v.detail}"
        if v.counterexample:
            line += f"\n      counterexample: {v.counterexample}"
        lines.append(line)
    return lines


def cmd_invariants(states, args):
    steps = 20 if args.steps is None else args.steps
    r = corrupted_r_step if args.mutate else r_step
    reports = [invariant_report(p, steps, args.lmax, r) for p in states]
    if args.format == "json":
        _emit({"reports": [rep.to_json() for rep in reports]}, "json")
    else:
        blocks = []
        for rep in reports:
            lines = []
            for rec in rep.records:
                energies = " ".join(f"{v}" for _, v in sorted(rec.energy["E"].items(), key=lambda kv: int(kv[0])))
                perm = " ".join(map(str, rec.stack_permutation))
                lines.append(
                    f"t={rec.step:<3} {rec.state:<24} w=[{perm}]"
                    f"  shape={tuple(rec.shape)}  depths={tuple(rec.depth_histogram)}  E=({energies})"
                )
            lines.extend(_verdict_lines(rep))
            blocks.append("\n".join(lines))
        print("\n\n".join(blocks))
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def cmd_verify(states, args):
    steps = 20 if args.steps is None else args.steps
    r = corrupted_r_step if args.mutate else r_step
    report = verify_corpus(states, steps=steps, r=r, jobs=args.jobs)
    if args.format == "json":
        _emit(report.to_json(), "json")
    else:
        print("\n".join(_verdict_lines(report)))
        print(f"{'ALL PASS' if report.passed else 'FAILED'}: {len(states)} state(s), {steps} step(s)")
    return EXIT_OK if report.passed else EXIT_FAIL


def render(p) -> dict:
    seq = match_stack(p)
    walk = to_walk(seq)
    w = stack_permutation(seq)
    return {
        "state": str(p),
        "parens": seq,
        "walk": walk,
        "groups": group_partition(walk),
        "stack_permutation": w,
        "poset": stack_poset(seq),
        "p_symbol": p_symbol(w),
    }


def cmd_render(states, args):
    out = []
    for p in states:
        r = render(p)
        if args.format == "json":
            out.append({
                "state": r["state"],
                "parens": r["parens"].to_json(),
                "walk": r["walk"].to_json(),
                "groups": r["groups"].to_json(),
                "stack_permutation": list(r["stack_permutation"]),
                "poset": r["poset"].to_json(),
                "p_symbol": r["p_symbol"].to_json(),
                "shape": list(shape(r["p_symbol"])),
            })
            continue
        seq = r["parens"]
        lines = [
            f"state   {r['state']}",
            f"cells   {' '.join(map(str, p.cells(seq.base_offset, seq.base_offset + len(seq.tokens))))}",
            f"parens  {seq.text()}",
            f"depths  {seq.depth_line()}",
            f"walk    {r['walk'].text()}  (anchor x={r['walk'].anchor_x})",
            render_walk(r["walk"]),
            f"stack permutation  {' '.join(map(str, r['stack_permutation']))}",
            f"P-symbol shape     {tuple(shape(r['p_symbol']))}",
            r["p_symbol"].render(),
        ]
        out.append("\n".join(line for line in lines if line))
    if args.format == "json":
        _emit({"renders": out}, "json")
    else:
        print("\n\n".join(out))
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "render": cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.steps is not None and args.steps < 0:
        parser.error("--steps must be >= 0")
    if args.lmax is not None and args.lmax < 1:
        parser.error("--lmax must be >= 1")
    states = _states(args, parser)
    return COMMANDS[args.command](states, args)


if __name__ == "__main__":
    sys.exit(main())
