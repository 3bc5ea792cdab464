"""``vasreach`` command line.

Exit codes (stable):

    0   reachable / valid certificate / covers / perfect / member
    1   unreachable / invalid certificate / does not cover / not perfect / not member
    2   budget exhausted
    64  usage error (bad arguments, unreadable or malformed input)

``--porcelain`` switches every command to one JSON record per line.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .decider import BudgetExhausted, DeciderConfig, Reachable, Unreachable, decide_reach
from .formats import (FormatError, format_linear, parse_config, parse_endpoint, parse_mrgs,
                      parse_semilinear, parse_system)
from .invariant import Certificate, Valid, check_certificate
from .mrgs import (check_level, input_loop_condition, integer_solution, is_perfect,
                   large_solution_condition, output_loop_condition, realize_accepted)
from .presburger import FormulaSyntaxError, format_formula, parse
from .semilinear import NEG_INF, SemilinearSet, dim_semilinear, intersect_semilinear, member_semilinear
from .vas import UsageError, VassSystem, cover_witness, karp_miller_covers

EXIT_OK = 0
EXIT_NO = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64

log = logging.getLogger("vasreach")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage, which would collide with 'budget exhausted'."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class _Out:
    def __init__(self, porcelain: bool):
        self.porcelain = porcelain

    def emit(self, record: dict, human: Sequence[str]):
        if self.porcelain:
            print(json.dumps(record, sort_keys=True))
        else:
            for line in human:
                print(line)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def _word_text(word: Sequence[str]) -> str:
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return " ".join(word)


def _bool(v: bool) -> str:
    return "true" if v else "false"


# -- commands ---------------------------------------------------------------

def cmd_reach(args, out: _Out) -> int:
    sys_ = parse_system(_read(args.file))
    s, s_out = parse_endpoint(args.src, sys_), parse_endpoint(args.dst, sys_)
    cfg = DeciderConfig(max_rounds=args.max_rounds, step_budget=args.step_budget,
                        formula_budget=args.formula_budget, templates=args.templates)
    verdict = decide_reach(sys_, s, s_out, cfg)
    if isinstance(verdict, Reachable):
        out.emit({"verdict": "reachable", "word": list(verdict.word), "length": len(verdict.word),
                  "round": verdict.round, "expanded": verdict.expanded},
                 ["verdict: reachable", f"length: {len(verdict.word)}",
                  f"witness: {_word_text(verdict.word)}"])
        return EXIT_OK
    if isinstance(verdict, Unreachable):
        text = verdict.certificate.text()
        if args.cert_out:
            try:
                Path(args.cert_out).write_text(text + "\n", encoding="utf-8")
            except OSError as err:
                raise UsageError(f"cannot write {args.cert_out}: {err.strerror}") from None
        out.emit({"verdict": "unreachable", "certificate": text, "via": verdict.via,
                  "round": verdict.round, "cert_file": args.cert_out},
                 ["verdict: unreachable", f"certificate: {text}", f"found by: {verdict.via}"]
                 + ([f"written to: {args.cert_out}"] if args.cert_out else []))
        return EXIT_NO
    assert isinstance(verdict, BudgetExhausted)
    out.emit({"verdict": "budget-exhausted", "rounds": verdict.rounds, "expanded": verdict.expanded,
              "formulas_checked": verdict.formulas_checked},
             ["verdict: budget exhausted", f"rounds: {verdict.rounds}",
              f"configurations expanded: {verdict.expanded}",
              f"formulas checked: {verdict.formulas_checked}"])
    return EXIT_BUDGET


def _load_formula(path: str):
    text = "\n".join(line.split("#", 1)[0] for line in _read(path).splitlines()).strip()
    try:
        return parse(text)
    except FormulaSyntaxError as err:
        raise UsageError(f"{path}: {err}") from None


def cmd_check_cert(args, out: _Out) -> int:
    sys_ = parse_system(_read(args.file))
    s, s_out = parse_endpoint(args.src, sys_), parse_endpoint(args.dst, sys_)
    phi = _load_formula(args.cert)
    res = check_certificate(Certificate(phi, s, s_out, sys_))
    if isinstance(res, Valid):
        out.emit({"certificate": format_formula(phi), "result": "valid"}, ["valid"])
        return EXIT_OK
    rec = {"certificate": format_formula(phi), "result": "invalid", "reason": res.reason}
    if res.step is not None:
        rec.update(step=res.step, witness=list(res.witness))
    out.emit(rec, [res.describe()])
    return EXIT_NO


def _ext_endpoint(text: str, sys_):
    if ":" in text:
        state, cfg = text.split(":", 1)
        return (state.strip(), parse_config(cfg, allow_top=True))
    if isinstance(sys_, VassSystem) and not sys_.is_single_state:
        raise FormatError(f"VASS endpoint needs a state, as in p:{text}")
    return parse_config(text, allow_top=True)


def cmd_covers(args, out: _Out) -> int:
    sys_ = parse_system(_read(args.file))
    init, target = _ext_endpoint(args.src, sys_), _ext_endpoint(args.dst, sys_)
    ok = karp_miller_covers(sys_, init, target)
    rec = {"covers": ok}
    human = [f"covers={_bool(ok)}"]
    if ok:
        path = cover_witness(sys_, init, target, max_expanded=args.witness_budget)
        if path is not None:
            word = [t.action for t in path]
            rec["witness"] = word
            human.append(f"witness: {_word_text(word)}")
    out.emit(rec, human)
    return EXIT_OK if ok else EXIT_NO


def _semilinear_arg(text: str) -> SemilinearSet:
    p = Path(text)
    body = p.read_text(encoding="utf-8") if p.is_file() else text
    return parse_semilinear(body)


def cmd_semilinear(args, out: _Out) -> int:
    if args.op == "intersect":
        res = intersect_semilinear(_semilinear_arg(args.a), _semilinear_arg(args.b))
        d = dim_semilinear(res)
        comps = [format_linear(c) for c in res.components]
        out.emit({"components": comps, "dim": None if d is NEG_INF else d},
                 (comps or [f"empty {res.ambient}"]) + [f"dim={d}"])
        return EXIT_OK
    if args.op == "dim":
        d = dim_semilinear(_semilinear_arg(args.a))
        out.emit({"dim": None if d is NEG_INF else d}, [f"dim={d}"])
        return EXIT_OK
    S = _semilinear_arg(args.a)
    v = _int_vector(args.point)
    if S.ambient is not None and len(v) != S.ambient:
        raise UsageError(f"point has {len(v)} entries, the set lives in dimension {S.ambient}")
    ok = member_semilinear(S, v)
    out.emit({"member": ok}, [f"member={_bool(ok)}"])
    return EXIT_OK if ok else EXIT_NO


def _int_vector(text: str):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return tuple(int(t) for t in body.replace(" ", "").split(",") if t)
    except ValueError:
        raise FormatError(f"bad integer vector {text!r}") from None


def cmd_mrgs_check(args, out: _Out) -> int:
    U = parse_mrgs(_read(args.file))
    lsc = large_solution_condition(U)
    sol = integer_solution(U)
    inputs = [input_loop_condition(M) for M in U.blocks]
    outputs = [output_loop_condition(M) for M in U.blocks]
    perfect = is_perfect(U)
    rec = {"large_solution": lsc, "integer_solution": sol is not None,
           "input_loop": inputs, "output_loop": outputs, "perfect": perfect}
    human = [f"integer_solution={_bool(sol is not None)}", f"large_solution={_bool(lsc)}"]
    for j, (a, b) in enumerate(zip(inputs, outputs)):
        human.append(f"graph {j}: input_loop={_bool(a)} output_loop={_bool(b)}")
    human.append(f"perfect={_bool(perfect)}")
    if args.realize is not None:
        if args.realize < 0:
            raise UsageError("--realize needs c >= 0")
        seq = realize_accepted(U, args.realize) if perfect else None
        if seq is not None:
            problem = check_level(U, seq, args.realize)
            rec["realized"] = {"c": args.realize, "word": list(seq.word), "valid": problem is None}
            human.append(f"realized c={args.realize}: length {len(seq.word)}, "
                         f"level check {'ok' if problem is None else problem}")
        else:
            rec["realized"] = None
            human.append(f"realized c={args.realize}: none")
    out.emit(rec, human)
    return EXIT_OK if perfect else EXIT_NO


def cmd_fixtures(args, out: _Out) -> int:
    root = resources.files("vasreach") / "fixtures"
    names = sorted(p.name for p in root.iterdir() if not p.name.startswith(("_", ".")))
    out.emit({"dir": str(root), "files": names}, [str(root / n) for n in names])
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="one JSON record per line")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = _Parser(prog="vasreach", description="Reachability workbench for vector addition systems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("reach", parents=[common], help="decide reachability between two configurations")
    r.add_argument("file")
    r.add_argument("--from", dest="src", required=True, help="source, e.g. 0,2 or p:1,0,0")
    r.add_argument("--to", dest="dst", required=True, help="target configuration")
    r.add_argument("--templates", dest="templates", action="store_true", default=True,
                   help="try half-space certificates before enumeration (default)")
    r.add_argument("--no-templates", dest="templates", action="store_false")
    r.add_argument("--max-rounds", type=int, default=None, help="stop after this many rounds")
    r.add_argument("--step-budget", type=int, default=1000, help="BFS expansions per round")
    r.add_argument("--formula-budget", type=int, default=None, help="solver checks per round")
    r.add_argument("--cert-out", default=None, help="write the certificate formula here")
    r.set_defaults(func=cmd_reach)

    c = sub.add_parser("check-cert", parents=[common], help="check a non-reachability certificate")
    c.add_argument("file")
    c.add_argument("--from", dest="src", required=True)
    c.add_argument("--to", dest="dst", required=True)
    c.add_argument("--cert", required=True, help="file holding the formula")
    c.set_defaults(func=cmd_check_cert)

    k = sub.add_parser("covers", parents=[common], help="Karp-Miller coverability")
    k.add_argument("file")
    k.add_argument("--from", dest="src", required=True, help="initial configuration (T allowed)")
    k.add_argument("--to", dest="dst", required=True, help="configuration to cover (T = any)")
    k.add_argument("--witness-budget", type=int, default=100000,
                   help="node limit for the concrete covering run")
    k.set_defaults(func=cmd_covers)

    s = sub.add_parser("semilinear", parents=[common], help="linear set utilities")
    s.add_argument("op", choices=("intersect", "dim", "member"))
    s.add_argument("a", help="file or literal like 'base (0,0) periods {(1,0)}'")
    s.add_argument("b", nargs="?", help="second set (intersect)")
    s.add_argument("--point", help="vector to test (member)")
    s.set_defaults(func=cmd_semilinear)

    m = sub.add_parser("mrgs-check", parents=[common], help="perfectness conditions of an MRGS")
    m.add_argument("file")
    m.add_argument("--realize", type=int, default=None, metavar="C",
                   help="also build and validate an accepted sequence at level C")
    m.set_defaults(func=cmd_mrgs_check)

    f = sub.add_parser("fixtures", parents=[common], help="list the bundled example files")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "semilinear":
        missing = ((args.op == "intersect" and args.b is None and "a second set")
                   or (args.op == "member" and args.point is None and "--point"))
        if missing:
            print(f"vasreach semilinear: error: {args.op} needs {missing}", file=sys.stderr)
            return EXIT_USAGE
    out = _Out(args.porcelain)
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as err:
        if args.porcelain:
            print(json.dumps({"error": str(err)}))
        print(f"vasreach: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
