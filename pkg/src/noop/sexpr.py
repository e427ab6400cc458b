"""Textual object literals.

    obj    := "⊥" | "bot"
            | "(obj" NAME "(fields" ("(" LABEL obj ")")* ")" "(methods" ("(" LABEL meth ")")* "))"
    meth   := "⊥M" | "botM" | "(table" ("((" obj* ")" obj ")")* ")"

The closure of an ``(obj NAME ...)`` form is ``closure_of(env, NAME)`` for the
environment supplied to :func:`read_object`.
"""
from __future__ import annotations

import re
from typing import List, Union

from .objects import METH_BOTTOM, OBJ_BOTTOM, FiniteMethod, mk_method, mk_object
from .records import mk_record
from .signatures import SignatureEnvironment, closure_of

SExpr = Union[str, list]

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")

BOTTOM_ATOMS = {"⊥", "bot"}
METH_BOTTOM_ATOMS = {"⊥M", "botM"}


class SExprError(ValueError):
    pass


def read_sexpr(text: str) -> SExpr:
    pos, stack, result = 0, [[]], None
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SExprError(f"unexpected input at offset {pos}")
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise SExprError(f"unbalanced ')' at offset {m.start(2)}")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(m.group(3))
    if len(stack) != 1:
        raise SExprError("unbalanced '(' at end of input")
    if len(stack[0]) != 1:
        raise SExprError(f"expected exactly one form, found {len(stack[0])}")
    return stack[0][0]


def _head(form, name):
    if not isinstance(form, list) or not form or form[0] != name:
        raise SExprError(f"expected ({name} ...), found {form!r}")
    return form[1:]


def _pairs(forms, what):
    out = {}
    for f in forms:
        if not isinstance(f, list) or len(f) != 2 or not isinstance(f[0], str):
            raise SExprError(f"malformed {what} binding {f!r}")
        if f[0] in out:
            raise SExprError(f"duplicate {what} label {f[0]}")
        out[f[0]] = f[1]
    return out


def object_from_sexpr(form: SExpr, env: SignatureEnvironment):
    if isinstance(form, str):
        if form in BOTTOM_ATOMS:
            return OBJ_BOTTOM
        raise SExprError(f"unknown object atom {form!r}")
    rest = _head(form, "obj")
    if len(rest) != 3 or not isinstance(rest[0], str):
        raise SExprError("an object is (obj NAME (fields ...) (methods ...))")
    sc = closure_of(env, rest[0])
    fields = {k: object_from_sexpr(v, env) for k, v in _pairs(_head(rest[1], "fields"), "field").items()}
    methods = {k: method_from_sexpr(v, env) for k, v in _pairs(_head(rest[2], "methods"), "method").items()}
    return mk_object(sc, mk_record(fields), mk_record(methods))


def method_from_sexpr(form: SExpr, env: SignatureEnvironment) -> FiniteMethod:
    if isinstance(form, str):
        if form in METH_BOTTOM_ATOMS:
            return METH_BOTTOM
        raise SExprError(f"unknown method atom {form!r}")
    steps = []
    for step in _head(form, "table"):
        if not isinstance(step, list) or len(step) != 2 or not isinstance(step[0], list):
            raise SExprError(f"a step is ((ARGS...) RESULT), found {step!r}")
        steps.append(([object_from_sexpr(a, env) for a in step[0]], object_from_sexpr(step[1], env)))
    return mk_method(steps)


def read_object(text: str, env: SignatureEnvironment):
    return object_from_sexpr(read_sexpr(text), env)


def format_object(o) -> str:
    if o is OBJ_BOTTOM:
        return "⊥"
    flds = "".join(f" ({l} {format_object(v)})" for l, v in o.fields.entries)
    meths = "".join(f" ({l} {format_method(m)})" for l, m in o.methods.entries)
    return f"(obj {o.closure.root_name} (fields{flds}) (methods{meths}))"


def format_method(m: FiniteMethod) -> str:
    if not m.steps:
        return "⊥M"
    steps = sorted(
        "((" + " ".join(format_object(a) for a in args) + ") " + format_object(res) + ")" for args, res in m.steps
    )
    return "(table " + " ".join(steps) + ")"
