"""``noop`` command-line front end."""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import signatures as sg
from .class_types import NotAValidObject, enumerate_members, member_of
from .domains import FiniteDomain, FlatNaturals
from .objects import filter_object
from .parser import ParseError, parse_signatures
from .records import dump_basis
from .report import BudgetExceeded, Report
from .sexpr import SExprError, format_object, read_object
from .suites import SUITES, suite_enum, suite_projection, suite_rank, suite_rec_laws, suite_theorem
from .universe import DEFAULT_BUDGET, DEFAULT_STEPS

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3

_ENV_CONDITION = {
    sg.DuplicateName: "env-unique-names",
    sg.DanglingReference: "env-condition-i",
    sg.SupersignatureCycle: "env-condition-ii",
    sg.MemberNotInherited: "env-condition-iii",
}


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        self.code, self.message = code, message


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise _Exit(EXIT_IO, f"{path}: cannot read: {e}")


def _signatures(path: str):
    text = _read(path)
    try:
        return parse_signatures(text)
    except ParseError as e:
        raise _Exit(EXIT_FAIL, e.render(path))


def _env(path: str) -> sg.SignatureEnvironment:
    sigs = _signatures(path)
    try:
        return sg.validate_environment(sigs)
    except sg.InvalidEnvironment as e:
        raise _Exit(EXIT_FAIL, "\n".join(f"{path}: {d}" for d in e.diagnostics))


def _closure(env, name):
    try:
        return sg.closure_of(env, name)
    except sg.UnboundName as e:
        raise _Exit(EXIT_FAIL, str(e))


def _object(env, literal: str):
    if literal.startswith("@"):
        literal = _read(literal[1:])
    try:
        return read_object(literal, env)
    except (SExprError, sg.UnboundName, ValueError) as e:
        raise _Exit(EXIT_FAIL, f"bad object literal: {e}")


def cmd_parse(args, out):
    sigs = _signatures(args.file)
    for s in sorted(sigs, key=lambda s: s.name):
        print(sg.to_sexpr(s), file=out)


def cmd_check_env(args, out):
    sigs = _signatures(args.file)
    diags = sg.environment_diagnostics(sigs)
    for d in diags:
        print(f"{args.file}: {d}", file=out)
    if diags:
        return EXIT_FAIL
    print(f"VALID {len({s.name for s in sigs})} classes", file=out)


def cmd_closure(args, out):
    print(sg.closure_to_sexpr(_closure(_env(args.file), args.name)), file=out)


def cmd_subsign(args, out):
    env = _env(args.file)
    a, b = _closure(env, args.name1), _closure(env, args.name2)
    print("SUBSIGN" if sg.subsign(a, b) else "NOT-SUBSIGN", file=out)


def cmd_shapes(args, out):
    env = _env(args.file)
    try:
        fs, ms = sg.shapes(env[args.name])
    except sg.UnboundName as e:
        raise _Exit(EXIT_FAIL, str(e))
    print("fields: " + " ".join(sorted(fs)), file=out)
    print("methods: " + " ".join(sorted(ms)), file=out)


def cmd_filter(args, out):
    env = _env(args.file)
    print(format_object(filter_object(_object(env, args.object))), file=out)


def cmd_member(args, out):
    env = _env(args.file)
    o = _object(env, args.object)
    try:
        ok = member_of(o, _closure(env, args.name))
    except NotAValidObject as e:
        raise _Exit(EXIT_FAIL, f"NotAValidObject: {e}")
    print("MEMBER" if ok else "NOT-MEMBER", file=out)


def _oracle(spec: str):
    if spec == "naturals":
        return FlatNaturals()
    kind, _, n = spec.partition(":")
    if kind in ("flat", "chain") and n.isdigit() and int(n) >= 1:
        return getattr(FiniteDomain, kind)(int(n))
    raise _Exit(EXIT_IO, f"unknown oracle {spec!r} (use flat:N, chain:N or naturals)")


def cmd_enum_basis(args, out):
    for line in dump_basis(args.prefix, _oracle(args.oracle)):
        print(line, file=out)


def cmd_enum_members(args, out):
    env = _env(args.file)
    sc = _closure(env, args.name)
    members = enumerate_members(sc, args.rank, env=env, max_steps=args.steps, budget=args.budget, use_pool=False)
    for o in members:
        print(format_object(o), file=out)


def _env_report(path: str, name: str):
    """(environment or None, report of the environment conditions)."""
    rep = Report()
    sigs = _signatures(path)
    diags = sg.environment_diagnostics(sigs)
    for d in diags:
        rep.add(_ENV_CONDITION[type(d)], name, False, str(d))
    if diags:
        return None, rep
    rep.add("env-valid", name, True, f"classes={len({s.name for s in sigs})}")
    return sg.SignatureEnvironment(sigs), rep


def _render_human(report: Report, out) -> None:
    color = os.environ.get("NOOP_COLOR", "1") != "0" and getattr(out, "isatty", lambda: False)()
    rows = [(("PASS" if c.passed else "FAIL"), c.prop, c.subject, c.detail) for c in report.checks]
    widths = [max([len(r[i]) for r in rows] + [0]) for i in range(3)]
    print(f"# noop verify  {time.strftime('%Y-%m-%d %H:%M:%S')}", file=out)
    for verdict, prop, subject, detail in rows:
        tag = verdict.ljust(widths[0])
        if color:
            tag = ("\033[32m" if verdict == "PASS" else "\033[31m") + tag + "\033[0m"
        print(f"{tag}  {prop.ljust(widths[1])}  {subject.ljust(widths[2])}  {detail}".rstrip(), file=out)
    passed = sum(c.passed for c in report.checks)
    print(f"# {passed}/{len(report.checks)} passed", file=out)


def cmd_verify(args, out):
    name = Path(args.file).stem
    env, report = _env_report(args.file, name)
    suites = SUITES if args.suite == "all" else (args.suite,)
    for suite in suites:
        if suite == "rec-laws":
            report.extend(suite_rec_laws())
        elif suite == "enum":
            report.extend(suite_enum(args.prefix, args.seed))
        elif env is None:
            report.add(suite, name, False, "skipped:invalid-environment")
        elif suite == "projection":
            report.extend(suite_projection(env, name, args.rank, args.budget))
        elif suite == "rank":
            report.extend(suite_rank(env, name, args.rank, args.budget))
        elif suite == "theorem":
            report.extend(suite_theorem(env, args.rank, args.budget, args.steps))
    if args.human:
        _render_human(report, out)
    else:
        for line in report.lines():
            print(line, file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noop", description="Nominal OOP signatures, objects and class types.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = cmd("parse", cmd_parse, "print canonical signatures of a .noop file")
    sp.add_argument("file")
    sp = cmd("check-env", cmd_check_env, "validate the signature environment of a .noop file")
    sp.add_argument("file")
    sp = cmd("closure", cmd_closure, "print the signature closure of a class")
    sp.add_argument("file")
    sp.add_argument("name")
    sp = cmd("subsign", cmd_subsign, "decide whether NAME1's closure subsigns NAME2's")
    sp.add_argument("file")
    sp.add_argument("name1")
    sp.add_argument("name2")
    sp = cmd("shapes", cmd_shapes, "print the field and method shapes of a class")
    sp.add_argument("file")
    sp.add_argument("name")
    sp = cmd("filter", cmd_filter, "filter an object literal (or @file) to its closest valid object")
    sp.add_argument("file")
    sp.add_argument("object")
    sp = cmd("member", cmd_member, "decide class-type membership of an object literal")
    sp.add_argument("file")
    sp.add_argument("object")
    sp.add_argument("name")
    sp = cmd("enum-basis", cmd_enum_basis, "dump a prefix of the record basis enumeration")
    sp.add_argument("--prefix", type=int, default=20)
    sp.add_argument("--oracle", default="flat:3")
    sp = cmd("enum-members", cmd_enum_members, "list rank-bounded members of a class type")
    sp.add_argument("file")
    sp.add_argument("name")
    sp.add_argument("--rank", type=int, default=1)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    sp = cmd("verify", cmd_verify, "run verification suites")
    sp.add_argument("file")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--prefix", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    sp.add_argument("--human", action="store_true")
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args, out)
    except _Exit as e:
        if e.message:
            print(e.message, file=sys.stderr)
        return e.code
    except BudgetExceeded as e:
        print(str(e), file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
