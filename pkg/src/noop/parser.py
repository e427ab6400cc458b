"""Parser for a minimal Java-like class declaration language.

    unit      := classDecl*
    classDecl := "class" IDENT ["extends" IDENT ("," IDENT)*] "{" member* "}"
    member    := IDENT IDENT ("," IDENT)* ";"                 -- field group
               | IDENT IDENT "(" [IDENT IDENT ("," IDENT IDENT)*] ")" body
               | "..."                                        -- elided members
    body      := ";" | "{" ... "}"                            -- skipped

Method bodies are skipped by brace matching; ``//`` and ``/* */`` comments
are ignored everywhere, and string/char literals inside bodies may contain
braces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .signatures import ClassSignature, FieldSignature, MethodSignature

PUNCT = set("{}(),;")


@dataclass(frozen=True)
class Span:
    start: int
    end: int


@dataclass(frozen=True)
class FieldDecl:
    type_name: str
    name: str
    span: Span


@dataclass(frozen=True)
class MethodDecl:
    return_type: str
    name: str
    params: Tuple[Tuple[str, str], ...]  # (type, parameter name)
    span: Span


@dataclass(frozen=True)
class ClassDecl:
    name: str
    supers: Tuple[str, ...]
    fields: Tuple[FieldDecl, ...]
    methods: Tuple[MethodDecl, ...]
    span: Span
    super_spans: Tuple[Span, ...] = ()


@dataclass(frozen=True)
class SourceUnit:
    text: str
    decls: Tuple[ClassDecl, ...]


def line_col(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


@dataclass
class ParseDiagnostic:
    pos: int
    message: str
    kind: str = "SyntaxError"

    def render(self, text: str, filename: str = "<input>") -> str:
        line, col = line_col(text, self.pos)
        return f"{filename}:{line}:{col}: {self.kind}: {self.message}"


class ParseError(Exception):
    """Raised by :func:`parse` and :func:`lower`; carries every diagnostic."""

    def __init__(self, text: str, diagnostics: Sequence[ParseDiagnostic]):
        self.text = text
        self.diagnostics = list(diagnostics)
        super().__init__(self.render())

    def render(self, filename: str = "<input>") -> str:
        return "\n".join(d.render(self.text, filename) for d in self.diagnostics)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "punct", "ellipsis", "eof"
    value: str
    start: int
    end: int


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.peeked: Optional[Token] = None

    def _skip_trivia(self):
        t, n = self.text, len(self.text)
        while self.pos < n:
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif t.startswith("//", self.pos):
                nl = t.find("\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif t.startswith("/*", self.pos):
                close = t.find("*/", self.pos + 2)
                if close < 0:
                    raise _Fail(self.pos, "unterminated block comment")
                self.pos = close + 2
            else:
                break

    def peek(self) -> Token:
        if self.peeked is None:
            self.peeked = self._lex()
        return self.peeked

    def next(self) -> Token:
        tok = self.peek()
        self.peeked = None
        return tok

    def _lex(self) -> Token:
        self._skip_trivia()
        t, start = self.text, self.pos
        if start >= len(t):
            return Token("eof", "", start, start)
        c = t[start]
        if c.isalpha() or c == "_":
            end = start + 1
            while end < len(t) and (t[end].isalnum() or t[end] == "_") and t[end].isascii():
                end += 1
            self.pos = end
            return Token("ident", t[start:end], start, end)
        if t.startswith("...", start):
            self.pos = start + 3
            return Token("ellipsis", "...", start, start + 3)
        if c in PUNCT:
            self.pos = start + 1
            return Token("punct", c, start, start + 1)
        raise _Fail(start, f"unexpected character {c!r}")

    def skip_block(self, open_pos: int):
        """Skip a brace-balanced block whose '{' was at open_pos."""
        assert self.peeked is None
        t, n = self.text, len(self.text)
        depth, i = 1, open_pos + 1
        while i < n:
            c = t[i]
            if t.startswith("//", i):
                nl = t.find("\n", i)
                i = n if nl < 0 else nl + 1
                continue
            if t.startswith("/*", i):
                close = t.find("*/", i + 2)
                i = n if close < 0 else close + 2
                continue
            if c in "\"'":
                i += 1
                while i < n and t[i] != c and t[i] != "\n":
                    i += 2 if t[i] == "\\" else 1
                i += 1
                continue
            if c == "{":
                depth += 1
            elif c == "}":
                depth -= 1
                if depth == 0:
                    self.pos = i + 1
                    return
            i += 1
        raise _Fail(open_pos, "unbalanced brace: block is never closed", "UnbalancedBrace")


class _Fail(Exception):
    def __init__(self, pos: int, message: str, kind: str = "SyntaxError"):
        self.diag = ParseDiagnostic(pos, message, kind)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.value)


class _Parser:
    def __init__(self, text: str):
        self.s = _Scanner(text)

    def expect(self, kind: str, value: Optional[str] = None, what: Optional[str] = None) -> Token:
        tok = self.s.peek()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = what or (repr(value) if value else kind)
            raise _Fail(tok.start, f"expected {want}, found {_describe(tok)}")
        return self.s.next()

    def ident(self, what: str) -> Token:
        tok = self.expect("ident", what=what)
        if tok.value in ("class", "extends"):
            raise _Fail(tok.start, f"expected {what}, found keyword {tok.value!r}")
        return tok

    def accept(self, value: str) -> Optional[Token]:
        tok = self.s.peek()
        if tok.kind == "punct" and tok.value == value:
            return self.s.next()
        return None

    def unit(self) -> Tuple[ClassDecl, ...]:
        decls = []
        while self.s.peek().kind != "eof":
            decls.append(self.class_decl())
        return tuple(decls)

    def class_decl(self) -> ClassDecl:
        kw = self.expect("ident", "class", "'class'")
        name = self.ident("class name").value
        supers, spans = [], []
        tok = self.s.peek()
        if tok.kind == "ident" and tok.value == "extends":
            self.s.next()
            while True:
                sup = self.ident("superclass name")
                supers.append(sup.value)
                spans.append(Span(sup.start, sup.end))
                if not self.accept(","):
                    break
        open_tok = self.expect("punct", "{")
        fields, methods = [], []
        while True:
            tok = self.s.peek()
            if tok.kind == "punct" and tok.value == "}":
                close = self.s.next()
                break
            if tok.kind == "eof" or (tok.kind == "ident" and tok.value == "class"):
                raise _Fail(open_tok.start, "unbalanced brace: class body is never closed", "UnbalancedBrace")
            if tok.kind == "ellipsis":
                self.s.next()
                continue
            self.member(fields, methods)
        return ClassDecl(name, tuple(supers), tuple(fields), tuple(methods), Span(kw.start, close.end), tuple(spans))

    def member(self, fields: list, methods: list):
        type_tok = self.ident("type name")
        name_tok = self.ident("member name")
        if self.accept("("):
            params = []
            if not self.accept(")"):
                while True:
                    ptype = self.ident("parameter type").value
                    pname = self.ident("parameter name").value
                    params.append((ptype, pname))
                    if self.accept(")"):
                        break
                    self.expect("punct", ",", "',' or ')'")
            tok = self.s.peek()
            if tok.kind == "punct" and tok.value == ";":
                end = self.s.next().end
            elif tok.kind == "punct" and tok.value == "{":
                self.s.next()
                self.s.skip_block(tok.start)
                end = self.s.pos
            else:
                raise _Fail(tok.start, f"expected ';' or method body, found {_describe(tok)}")
            methods.append(MethodDecl(type_tok.value, name_tok.value, tuple(params), Span(type_tok.start, end)))
            return
        names = [name_tok]
        while self.accept(","):
            names.append(self.ident("field name"))
        semi = self.expect("punct", ";", "';', ',' or '('")
        for n in names:
            fields.append(FieldDecl(type_tok.value, n.value, Span(type_tok.start, semi.end)))


def parse(text: str) -> SourceUnit:
    """Parse declaration text; raises ParseError on the first syntax error."""
    p = _Parser(text)
    try:
        decls = p.unit()
    except _Fail as e:
        raise ParseError(text, [e.diag]) from None
    return SourceUnit(text, decls)


def lower(unit: SourceUnit) -> List[ClassSignature]:
    """Turn parsed declarations into class signatures, in declaration order."""
    diags: List[ParseDiagnostic] = []
    seen_classes = set()
    out = []
    for d in unit.decls:
        bad = False
        if d.name in seen_classes:
            diags.append(ParseDiagnostic(d.span.start, f"DuplicateClass({d.name})", "DuplicateClass"))
            bad = True
        seen_classes.add(d.name)
        seen = set()
        for sup, span in zip(d.supers, d.super_spans or [d.span] * len(d.supers)):
            if sup in seen:
                diags.append(ParseDiagnostic(span.start, f"DuplicateSuper({d.name},{sup})", "DuplicateSuper"))
                bad = True
            seen.add(sup)
        for kind, members in (("field", d.fields), ("method", d.methods)):
            seen = set()
            for m in members:
                if m.name in seen:
                    diags.append(ParseDiagnostic(m.span.start, f"DuplicateMember({d.name},{m.name})", "DuplicateMember"))
                    bad = True
                seen.add(m.name)
        if bad:
            continue
        out.append(
            ClassSignature(
                d.name,
                d.supers,
                tuple(FieldSignature(f.name, f.type_name) for f in d.fields),
                tuple(MethodSignature(m.name, tuple(t for t, _ in m.params), m.return_type) for m in d.methods),
            )
        )
    if diags:
        raise ParseError(unit.text, diags)
    return out


def parse_signatures(text: str) -> List[ClassSignature]:
    return lower(parse(text))


def _param_names(n: int) -> List[str]:
    return ["o" if i == 0 else f"o{i}" for i in range(n)]


def pretty_print(sigs) -> str:
    blocks = []
    for s in sigs:
        head = f"class {s.name}"
        if s.super_names:
            head += " extends " + ", ".join(s.super_names)
        lines = [head + " {"]
        for f in s.fields:
            lines.append(f"  {f.type_name} {f.name};")
        for m in s.methods:
            params = ", ".join(f"{t} {n}" for t, n in zip(m.param_type_names, _param_names(m.arity)))
            lines.append(f"  {m.return_type_name} {m.name}({params});")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)
