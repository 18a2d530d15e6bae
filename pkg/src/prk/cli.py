"""Command-line interface.

Exit codes: 0 success / valid / provable; 1 well-formed negative answer
(ill-typed, countermodel found, invalid sequent); 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ParseError, PrkError, TypingError, WrongModeError
from .kripke import (countermodel_search, forces, parse_model, print_model,
                     validate_model)
from .rewrite import ETA, PLAIN, classify, normalize
from .surface import parse_mprop, parse_term, print_mprop, print_term
from .syntax import MProp, Term, dual, mprop_dual
from .typecheck import Context, infer_type
from .systemf import f_infer, print_fterm, print_ftype, translate_ctx, translate_prop, translate_term
from .classical import decide_oplus, embed_nk, nk_context, parse_nk


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def parse_judgment(text: str) -> tuple[Context, Term]:
    """Judgment files: lines 'x : prop' then '|- term'."""
    ctx = Context()
    term = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("|-"):
            term = parse_term(line[2:])
        elif ":" in line:
            name, _, prop_src = line.partition(":")
            ctx = ctx.extend(name.strip(), parse_mprop(prop_src))
        else:
            raise ParseError("expected 'x : prop' or '|- term'", lineno, 1)
    if term is None:
        raise ParseError("no term line ('|- ...') found", 1, 1)
    return ctx, term


def parse_sequent(text: str) -> tuple[list[MProp], MProp]:
    """Sequent files: hypothesis props one per line, then '|- prop'."""
    hyps: list[MProp] = []
    goal = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("|-"):
            goal = parse_mprop(line[2:])
        else:
            hyps.append(parse_mprop(line))
    if goal is None:
        raise ParseError("no goal line ('|- ...') found", 1, 1)
    return hyps, goal


class Output:
    def __init__(self, machine: bool):
        self.machine = machine

    def emit(self, key: str, value) -> None:
        if self.machine:
            print(f"{key}={value}")
        else:
            print(value)


def cmd_check(args, out: Output) -> int:
    ctx, term = parse_judgment(_read(args.file))
    try:
        d = infer_type(ctx, term)
    except TypingError as e:
        out.emit("error", f"ill-typed: {e}")
        return 1
    out.emit("type", print_mprop(d.conclusion))
    return 0


def cmd_normalize(args, out: Output) -> int:
    from .errors import CannotInferError
    ctx, term = parse_judgment(_read(args.file))
    try:
        infer_type(ctx, term)  # reject ill-typed input before reducing
    except CannotInferError:
        pass  # e.g. a bare injection: not ill-typed, only not inferable
    mode = ETA if args.eta else PLAIN
    nf, trace = normalize(term, mode=mode, fuel=args.fuel)
    if args.trace:
        from .rewrite import binder_names_at, replay
        current = term
        for entry in trace:
            env = binder_names_at(current, entry.position)
            pos = ".".join(map(str, entry.position)) or "root"
            print(f"{pos} {entry.rule} {print_term(entry.redex, env)} ==> "
                  f"{print_term(entry.reduct, env)}")
            current = replay(current, (entry,))
    out.emit("normal_form", print_term(nf))
    return 0


def cmd_classify(args, out: Output) -> int:
    ctx, term = parse_judgment(_read(args.file))
    try:
        d = infer_type(ctx, term)
    except TypingError:
        d = None
    report = classify(term, d)
    out.emit("normal", str(report.normal).lower())
    out.emit("neutral", str(report.neutral).lower())
    out.emit("canonical", str(report.canonical).lower())
    if report.clause is not None:
        out.emit("canonicity_clause", report.clause)
        out.emit("canonicity_shape", report.clause_shape)
    return 0


def cmd_translate(args, out: Output) -> int:
    ctx, term = parse_judgment(_read(args.file))
    try:
        d = infer_type(ctx, term)
    except TypingError as e:
        out.emit("error", f"ill-typed: {e}")
        return 1
    fterm = translate_term(d)
    out.emit("fterm", print_fterm(fterm))
    out.emit("ftype", print_ftype(translate_prop(d.conclusion)))
    if args.check:
        inferred = f_infer(translate_ctx(d.ctx), fterm)
        out.emit("ftype_inferred", print_ftype(inferred))
    return 0


def cmd_dual(args, out: Output) -> int:
    ctx, term = parse_judgment(_read(args.file))
    for name, p in ctx:
        out.emit("hyp", f"{name} : {print_mprop(mprop_dual(p))}")
    out.emit("term", print_term(dual(term)))
    return 0


def cmd_kripke(args, out: Output) -> int:
    if args.kripke_cmd == "eval":
        model = parse_model(_read(args.model))
        report = validate_model(model)
        if not report.valid:
            out.emit("error", f"invalid model: {report.violations[0]}")
            return 1
        prop = parse_mprop(args.prop)
        out.emit("forces", str(forces(model, args.world, prop)).lower())
        return 0
    if args.kripke_cmd == "validate":
        model = parse_model(_read(args.model))
        report = validate_model(model)
        if report.valid:
            out.emit("valid", "true")
            return 0
        for violation in report.violations:
            out.emit("violation", violation)
        return 1
    if args.kripke_cmd == "countermodel":
        hyps, goal = parse_sequent(_read(args.judgment))
        found = countermodel_search(hyps, goal, max_worlds=args.max_worlds)
        if found is None:
            out.emit("countermodel", "none within bound (inconclusive)")
            return 0
        model, world = found
        out.emit("world", world)
        sys.stdout.write(print_model(model))
        return 1
    raise ValueError(args.kripke_cmd)


def cmd_decide(args, out: Output) -> int:
    hyps, goal = parse_sequent(_read(args.file))
    try:
        result = decide_oplus(hyps, goal)
    except WrongModeError as e:
        out.emit("error", str(e))
        return 2
    out.emit("provable", str(result).lower())
    return 0 if result else 1


def cmd_embed(args, out: Output) -> int:
    proof = parse_nk(_read(args.file))
    term = embed_nk(proof)
    ctx, _names = nk_context(proof)
    d = infer_type(ctx, term)
    out.emit("term", print_term(term))
    out.emit("type", print_mprop(d.conclusion))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prk",
        description="workbench for proofs and refutations: check, normalize, "
                    "translate, and model-check proof terms")
    parser.add_argument("--format", choices=("plain", "machine"), default="plain")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="type-check a judgment file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("normalize", help="reduce a judgment file's term to normal form")
    p.add_argument("file")
    p.add_argument("--eta", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--fuel", type=int, default=100_000)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("classify", help="report normal/neutral/canonical shape")
    p.add_argument("file")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("translate", help="translate a judgment into System F")
    p.add_argument("file")
    p.add_argument("--check", action="store_true",
                   help="also re-infer the translated term's type")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("dual", help="dualize a judgment file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("kripke", help="evaluate or search finite models")
    ksub = p.add_subparsers(dest="kripke_cmd", required=True)
    k = ksub.add_parser("eval", help="evaluate forcing at a world")
    k.add_argument("model")
    k.add_argument("world")
    k.add_argument("prop")
    k = ksub.add_parser("validate", help="check the model conditions")
    k.add_argument("model")
    k = ksub.add_parser("countermodel", help="search for a small counter-model")
    k.add_argument("judgment")
    k.add_argument("--max-worlds", type=int, default=3)
    p.set_defaults(fn=cmd_kripke)

    p = sub.add_parser("decide", help="decide a classical-affirmation sequent")
    p.add_argument("file")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("embed", help="compile an NK proof file into a proof term")
    p.add_argument("file")
    p.set_defaults(fn=cmd_embed)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    out = Output(machine=args.format == "machine")
    try:
        return args.fn(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TypingError as e:
        print(f"ill-typed: {e}", file=sys.stderr)
        return 1
    except PrkError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
