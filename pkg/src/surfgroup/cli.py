"""
Command line front end.

    surfgroup compute  INPUT | --n N --sigma CYCLE ...
    surfgroup verify   INPUT | --trace-file PATH | --count N --seed S
    surfgroup random   --seed S [--count N] [--n N] [--r R]
    surfgroup example  nonCyclic | hyperelliptic [--r R]

INPUT is a JSON file ``{"n": 4, "sigmas": ["(123)", ...]}``, ``-`` for stdin,
or the text form ``4 (123) (234) (234) (134)`` given inline or in a file.
Exit codes: 0 success, 2 invalid input, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import defaultdict

from .freegroup import Word
from .permrep import InvalidInput, MonodromyInput
from .pipeline import Computation, run, verify
from .relators import InternalError
from .samples import EXAMPLES, random_batch, random_input
from .trace import trace_from_json, trace_to_json, verify_trace

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3


def parse_text(text: str) -> MonodromyInput:
    """``n`` followed by one cycle string per branch point."""
    tokens = text.split()
    if not tokens:
        raise InvalidInput("empty input")
    try:
        n = int(tokens[0])
    except ValueError:
        raise InvalidInput(f"expected the degree n first, got {tokens[0]!r}") from None
    return MonodromyInput.from_cycles(n, tokens[1:])


def parse_input(text: str) -> MonodromyInput:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad JSON: {exc}") from None
        return MonodromyInput.from_json(data)
    return parse_text(text)


def load_input(args) -> MonodromyInput:
    if args.sigma:
        if args.n is None:
            raise InvalidInput("--sigma needs --n")
        return MonodromyInput.from_cycles(args.n, args.sigma)
    if not args.input:
        raise InvalidInput("no input given (file, '-', inline text, or --n/--sigma)")
    if args.input == ["-"]:
        return parse_input(sys.stdin.read())
    if len(args.input) == 1:
        try:
            with open(args.input[0]) as fh:
                return parse_input(fh.read())
        except FileNotFoundError:
            pass
        except OSError as exc:
            raise InvalidInput(str(exc)) from None
    return parse_input(" ".join(args.input))


# ---------------------------------------------------------------- output


def gamma_r_text(inp: MonodromyInput) -> str:
    gamma = inp.gamma_alphabet()
    return f"g{inp.r} = ({gamma.format(Word(range(1, inp.r)))})^-1"


def presentation_text(c: Computation) -> str:
    alph = c.output.alphabet
    if not c.output.genus:
        return "< | >"
    return f"< {', '.join(alph.names)} | {alph.format(c.output.relation)} >"


def expansions(c: Computation) -> dict[str, str]:
    gamma = c.output.gamma
    return {name: gamma.format(w) for name, w in zip(c.output.alphabet.names, c.output.generators)}


def schreier_dump(c: Computation) -> dict:
    gamma = c.output.gamma
    alph = c.basis.alphabet()
    return {
        "transversal": [gamma.format(w) for w in c.transversal.reps],
        "basis": [{"name": alph.names[g.id], "point": g.point + 1, "generator": g.gen + 1,
                   "value": gamma.format(g.value)} for g in c.basis.generators],
    }


def relators_dump(c: Computation) -> list[dict]:
    gamma = c.output.gamma
    alph = c.basis.alphabet()
    return [{"kind": r.kind, "branch": r.branch, "index": r.cycle, "cycle": [p + 1 for p in r.points],
             "gamma": gamma.format(r.gamma_word), "word": alph.format(r.word)}
            for r in c.relators.relators]


def chain_dump(c: Computation) -> list[str]:
    return [p.format() for p in c.chain]


def normalization_dump(c: Computation) -> list[dict]:
    return [{"kind": rec.kind, "word": rec.alphabet.format(rec.word), "measure": list(rec.measure)}
            for rec in c.normal_form.log]


def result_json(c: Computation, args) -> dict:
    out = {
        "input": c.original.to_json(),
        "basepointSwap": None if c.swapped_point is None else c.swapped_point + 1,
        "gamma": list(c.output.gamma.names),
        "gammaR": gamma_r_text(c.input),
        "genus": c.output.genus,
        "generators": list(c.output.alphabet.names),
        "relation": c.output.alphabet.format(c.output.relation) if c.output.genus else None,
        "expansions": expansions(c),
    }
    if args.dump_schreier:
        out["schreier"] = schreier_dump(c)
    if args.dump_relators:
        out["relators"] = relators_dump(c)
    if args.dump_steps:
        out["steps"] = chain_dump(c)
    if args.dump_normalization:
        out["normalization"] = normalization_dump(c)
    return out


def print_text(c: Computation, args, out) -> None:
    if c.swapped_point is not None:
        print(f"fiber points 1 and {c.swapped_point + 1} swapped so that sigma_1 moves the base point", file=out)
    if args.dump_schreier:
        d = schreier_dump(c)
        print(f"transversal ({len(d['transversal'])}): {', '.join(d['transversal'])}", file=out)
        print(f"Schreier basis ({len(d['basis'])}):", file=out)
        for g in d["basis"]:
            print(f"  {g['name']} = {g['value']}", file=out)
    if args.dump_relators:
        print(f"relators ({len(c.relators)}):", file=out)
        for r in relators_dump(c):
            print(f"  {r['kind']}{r['branch']},{r['index']} {r['word']}    [{r['gamma']}]", file=out)
    if args.dump_steps:
        print("simplification:", file=out)
        for s in chain_dump(c):
            print(f"  {s}", file=out)
    if args.dump_normalization:
        print("normalization:", file=out)
        for r in normalization_dump(c):
            print(f"  {r['kind']:9} L={tuple(r['measure'])}  {r['word']}", file=out)
    print(f"genus: {c.output.genus}", file=out)
    print(f"presentation: {presentation_text(c)}", file=out)
    print(gamma_r_text(c.input), file=out)
    for name, w in expansions(c).items():
        print(f"{name} = {w}", file=out)


def emit(c: Computation, args) -> None:
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(trace_to_json(c.trace), fh, indent=1)
            fh.write("\n")
    if args.json:
        json.dump(result_json(c, args), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print_text(c, args, sys.stdout)


# ---------------------------------------------------------------- commands


def cmd_compute(args) -> int:
    c = run(load_input(args))
    emit(c, args)
    return EXIT_OK


def cmd_example(args) -> int:
    if args.name not in EXAMPLES:
        raise InvalidInput(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}")
    c = run(EXAMPLES[args.name](args.r))
    emit(c, args)
    return EXIT_OK


def _report_lines(c: Computation, res) -> list[str]:
    gr = res.genus
    return [
        f"trace: {'ok' if res.trace.ok else res.trace.message} ({len(c.trace.steps)} steps)",
        f"genus: pipeline {gr.genus_pipeline}, Riemann-Hurwitz {gr.genus_rh}",
        f"basis rank: {gr.basis_rank_actual} (expected {gr.basis_rank_expected})",
        f"abelianization: free rank {gr.abelian_free_rank}, torsion {gr.torsion or 'none'}",
        f"relation monodromy: {res.relation_monodromy}",
    ]


def cmd_verify(args) -> int:
    if args.trace_file:
        return verify_trace_file(args.trace_file, args.json)
    if args.count:
        return sweep(args.seed, args.count, args.max_n, args.max_r, args.json)
    c = run(load_input(args))
    res = verify(c)
    if args.json:
        payload = res.genus.to_json()
        payload.update(trace=res.trace.ok, steps=len(c.trace.steps),
                       relationMonodromy=str(res.relation_monodromy),
                       ok=res.ok, failures=res.failures)
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in _report_lines(c, res):
            print(line)
        print("ok" if res.ok else f"FAILED: {res.failures[0]}")
    if not res.ok:
        print(f"verify: {res.failures[0]}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def verify_trace_file(path: str, as_json: bool) -> int:
    try:
        with open(path) as fh:
            data = json.load(fh)
        tr = trace_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"cannot read trace {path}: {exc}") from None
    rep = verify_trace(tr)
    if as_json:
        json.dump({"ok": rep.ok, "steps": len(tr.steps), "failedStep": rep.failed_step,
                   "message": rep.message}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif rep.ok:
        print(f"trace ok ({len(tr.steps)} steps)")
    else:
        print(f"trace FAILED at {rep.message}")
    if not rep.ok:
        print(f"verify: {rep.message}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def sweep(seed: int, count: int, max_n: int, max_r: int, as_json: bool) -> int:
    rows: dict[tuple[int, int], dict] = defaultdict(lambda: {"count": 0, "ok": 0, "genera": set()})
    first_failure = None
    for inp in random_batch(seed, count, max_n=max_n, max_r=max_r):
        row = rows[inp.n, inp.r]
        row["count"] += 1
        try:
            c = run(inp)
            res = verify(c)
            failures = res.failures
            row["genera"].add(c.output.genus)
        except InternalError as exc:
            failures = [str(exc)]
        if failures:
            first_failure = first_failure or (inp.to_json(), failures[0])
        else:
            row["ok"] += 1
    total = sum(r["count"] for r in rows.values())
    passed = sum(r["ok"] for r in rows.values())
    if as_json:
        table = [{"n": n, "r": r, "count": v["count"], "ok": v["ok"], "genera": sorted(v["genera"])}
                 for (n, r), v in sorted(rows.items())]
        json.dump({"seed": seed, "count": total, "ok": passed, "table": table,
                   "firstFailure": first_failure}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(f"{'n':>3} {'r':>3} {'count':>6} {'ok':>6}  genera")
        for (n, r), v in sorted(rows.items()):
            print(f"{n:>3} {r:>3} {v['count']:>6} {v['ok']:>6}  {','.join(map(str, sorted(v['genera'])))}")
        print(f"total {passed}/{total} ok (seed {seed})")
    if first_failure:
        print(f"verify: first failure on {json.dumps(first_failure[0])}: {first_failure[1]}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.count):
        n = args.n if args.n is not None else rng.randint(2, args.max_n)
        r = args.r if args.r is not None else rng.randint(2, args.max_r)
        if n == 2 and r % 2:
            # r transpositions multiply to the identity only for even r
            if args.r is None:
                r += 1
            elif args.n is None:
                n = 3
            else:
                raise InvalidInput("no valid tuple: n = 2 needs an even r")
        out.append(random_input(rng, n, r).to_json())
    for item in out:
        print(json.dumps(item))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="*", help="JSON file, '-' for stdin, or inline 'n cycle cycle ...'")
    p.add_argument("--n", type=int, help="degree, used with --sigma")
    p.add_argument("--sigma", action="append", default=[], help="one cycle string per branch point")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--trace", metavar="PATH", help="write the isomorphism trace as JSON")
    p.add_argument("--dump-schreier", action="store_true")
    p.add_argument("--dump-relators", action="store_true")
    p.add_argument("--dump-steps", action="store_true")
    p.add_argument("--dump-normalization", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfgroup", description="Surface-group presentations from monodromy data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="run the pipeline on one input")
    _add_input(p)
    _add_output(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run the pipeline plus every cross-check")
    _add_input(p)
    p.add_argument("--trace-file", metavar="PATH", help="verify a saved trace instead")
    p.add_argument("--count", type=int, default=0, help="random sweep of this many inputs")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-r", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="print seeded random valid inputs, one JSON object per line")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-r", type=int, default=6)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("example", help="run a built-in example")
    p.add_argument("name", help=", ".join(EXAMPLES))
    p.add_argument("--r", type=int, help="branch points for hyperelliptic")
    _add_output(p)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
