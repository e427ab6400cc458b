"""Class signatures, signature environments and signature closures.

Signatures are purely nominal: a class is identified by its name, and the
inheritance structure is carried explicitly by the supersignature names.
Everything here is immutable; environments validate themselves on
construction so an invalid one can never be observed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class SignatureError(ValueError):
    """A single class signature breaks its own well-formedness rules."""


class UnboundName(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"UnboundName({self.name})"


def check_identifier(text: str, what: str = "identifier") -> str:
    if not isinstance(text, str) or not IDENT.match(text):
        raise SignatureError(f"invalid {what}: {text!r}")
    return text


@dataclass(frozen=True)
class FieldSignature:
    name: str
    type_name: str

    def __post_init__(self):
        check_identifier(self.name, "field name")
        check_identifier(self.type_name, "class name")


@dataclass(frozen=True)
class MethodSignature:
    name: str
    param_type_names: Tuple[str, ...]
    return_type_name: str

    def __post_init__(self):
        object.__setattr__(self, "param_type_names", tuple(self.param_type_names))
        check_identifier(self.name, "method name")
        for p in self.param_type_names:
            check_identifier(p, "class name")
        check_identifier(self.return_type_name, "class name")

    @property
    def arity(self) -> int:
        return len(self.param_type_names)


def _first_duplicate(names: Iterable[str]) -> Optional[str]:
    seen = set()
    for n in names:
        if n in seen:
            return n
        seen.add(n)
    return None


@dataclass(frozen=True, eq=False)
class ClassSignature:
    """(name, supersignature names, field signatures, method signatures).

    Sequence order is kept as given, but equality and hashing treat the three
    sequences as sets. Parameter lists inside method signatures are compared
    as sequences.
    """

    name: str
    super_names: Tuple[str, ...] = ()
    fields: Tuple[FieldSignature, ...] = ()
    methods: Tuple[MethodSignature, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "super_names", tuple(self.super_names))
        object.__setattr__(self, "fields", tuple(self.fields))
        object.__setattr__(self, "methods", tuple(self.methods))
        check_identifier(self.name, "class name")
        for s in self.super_names:
            check_identifier(s, "class name")
        dup = _first_duplicate(self.super_names)
        if dup is not None:
            raise SignatureError(f"{self.name}: duplicate supersignature name {dup}")
        dup = _first_duplicate(f.name for f in self.fields)
        if dup is not None:
            raise SignatureError(f"{self.name}: duplicate field name {dup}")
        dup = _first_duplicate(m.name for m in self.methods)
        if dup is not None:
            raise SignatureError(f"{self.name}: duplicate method name {dup}")

    @cached_property
    def key(self) -> tuple:
        return (self.name, frozenset(self.super_names), frozenset(self.fields), frozenset(self.methods))

    def __eq__(self, other):
        if not isinstance(other, ClassSignature):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ClassSignature({to_sexpr(self)})"

    def referenced_names(self) -> List[str]:
        """Every class name this signature points at, in first-seen order."""
        out: List[str] = []
        for n in self.super_names:
            out.append(n)
        for f in self.fields:
            out.append(f.type_name)
        for m in self.methods:
            out.extend(m.param_type_names)
            out.append(m.return_type_name)
        return list(dict.fromkeys(out))

    def field(self, label: str) -> FieldSignature:
        for f in self.fields:
            if f.name == label:
                return f
        raise KeyError(label)

    def method(self, label: str) -> MethodSignature:
        for m in self.methods:
            if m.name == label:
                return m
        raise KeyError(label)


def sig_equals(s1: ClassSignature, s2: ClassSignature) -> bool:
    return s1 == s2


def shapes(s: ClassSignature) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """Field shape and method shape of a signature (or of a closure's root)."""
    if isinstance(s, SignatureClosure):
        s = s.root
    return frozenset(f.name for f in s.fields), frozenset(m.name for m in s.methods)


# -- diagnostics -------------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    def __str__(self):
        return f"{type(self).__name__}: {self.describe()}"

    def describe(self) -> str:  # pragma: no cover - overridden
        return ""


@dataclass(frozen=True)
class DuplicateName(Diagnostic):
    name: str

    def describe(self):
        return f"class {self.name} is defined more than once"


@dataclass(frozen=True)
class DanglingReference(Diagnostic):
    cls: str
    name: str

    def describe(self):
        return f"class {self.cls} refers to undefined class {self.name}"


@dataclass(frozen=True)
class SupersignatureCycle(Diagnostic):
    path: Tuple[str, ...]

    def describe(self):
        return "supersignature cycle " + " -> ".join(self.path)


@dataclass(frozen=True)
class MemberNotInherited(Diagnostic):
    cls: str
    member: str
    supername: str

    def describe(self):
        return f"class {self.cls} does not carry member {self.member} of supersignature {self.supername}"


class InvalidEnvironment(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def _member_text(member) -> str:
    if isinstance(member, FieldSignature):
        return f"field {member.name}:{member.type_name}"
    params = ",".join(member.param_type_names)
    return f"method {member.name}({params}):{member.return_type_name}"


def _find_cycles(graph: Dict[str, Tuple[str, ...]]) -> List[Tuple[str, ...]]:
    # iterative DFS; one reported cycle per back edge
    WHITE, GREY, BLACK = 0, 1, 2
    color = {n: WHITE for n in graph}
    cycles = []
    for start in sorted(graph):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(graph[start]))]
        path = [start]
        color[start] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                color[node] = BLACK
                continue
            if nxt not in color:
                continue
            if color[nxt] == GREY:
                i = path.index(nxt)
                cycles.append(tuple(path[i:]) + (nxt,))
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append((nxt, iter(graph[nxt])))
    return cycles


def environment_diagnostics(sigs: Iterable[ClassSignature]) -> List[Diagnostic]:
    """All violations of the environment conditions, in a stable order."""
    sigs = list(sigs)
    diags: List[Diagnostic] = []
    by_name: Dict[str, ClassSignature] = {}
    for s in sigs:
        if s.name in by_name and by_name[s.name] != s:
            if DuplicateName(s.name) not in diags:
                diags.append(DuplicateName(s.name))
            continue
        by_name.setdefault(s.name, s)

    # (i) referential closure
    for name in sorted(by_name):
        for ref in by_name[name].referenced_names():
            if ref not in by_name:
                diags.append(DanglingReference(name, ref))

    # (ii) acyclic supersignature graph
    graph = {n: by_name[n].super_names for n in by_name}
    for cyc in _find_cycles(graph):
        diags.append(SupersignatureCycle(cyc))

    # (iii) exact member inclusion w.r.t. immediate supersignatures
    for name in sorted(by_name):
        s = by_name[name]
        mine = set(s.fields) | set(s.methods)
        for sup in s.super_names:
            if sup not in by_name:
                continue
            parent = by_name[sup]
            for member in list(parent.fields) + list(parent.methods):
                if member not in mine:
                    diags.append(MemberNotInherited(name, _member_text(member), sup))
    return diags


class SignatureEnvironment:
    """A validated, finite set of class signatures keyed by name."""

    __slots__ = ("_sigs", "_names", "_set", "_hash")

    def __init__(self, sigs: Iterable[ClassSignature] = ()):
        sigs = list(sigs)
        diags = environment_diagnostics(sigs)
        if diags:
            raise InvalidEnvironment(diags)
        table = {s.name: s for s in sigs}
        self._sigs = table
        self._names = tuple(sorted(table))
        self._set = frozenset(table.values())
        self._hash = hash(self._set)

    def __getitem__(self, name: str) -> ClassSignature:
        try:
            return self._sigs[name]
        except KeyError:
            raise UnboundName(name) from None

    def __contains__(self, item) -> bool:
        if isinstance(item, ClassSignature):
            return item in self._set
        return item in self._sigs

    def __iter__(self) -> Iterator[ClassSignature]:
        return (self._sigs[n] for n in self._names)

    def __len__(self):
        return len(self._names)

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    def __eq__(self, other):
        if not isinstance(other, SignatureEnvironment):
            return NotImplemented
        return self._set == other._set

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SignatureEnvironment({list(self._names)})"

    def extends(self, other: "SignatureEnvironment") -> bool:
        return self._set >= other._set

    def adjacent(self, name: str) -> List[str]:
        return self[name].referenced_names()


def validate_environment(sigs: Iterable[ClassSignature]) -> SignatureEnvironment:
    """Build an environment, raising InvalidEnvironment with every violation."""
    return SignatureEnvironment(sigs)


def lookup(env: SignatureEnvironment, name: str) -> ClassSignature:
    return env[name]


def extends_env(e2: SignatureEnvironment, e1: SignatureEnvironment) -> bool:
    return e2.extends(e1)


def _reachable(env: SignatureEnvironment, root: str) -> List[str]:
    env[root]
    seen = {root: None}
    queue = [root]
    while queue:
        n = queue.pop(0)
        for m in env.adjacent(n):
            if m not in seen:
                seen[m] = None
                queue.append(m)
    return list(seen)


@dataclass(frozen=True, eq=False)
class SignatureClosure:
    """A root name together with the minimal environment that closes it."""

    root_name: str
    env: SignatureEnvironment

    def __post_init__(self):
        if self.root_name not in self.env:
            raise UnboundName(self.root_name)
        if len(_reachable(self.env, self.root_name)) != len(self.env):
            raise SignatureError(f"environment of closure {self.root_name} is not minimal")

    @property
    def root(self) -> ClassSignature:
        return self.env[self.root_name]

    @property
    def name(self) -> str:
        return self.root_name

    def __eq__(self, other):
        if not isinstance(other, SignatureClosure):
            return NotImplemented
        return self.root_name == other.root_name and self.env == other.env

    @cached_property
    def _hash(self):
        return hash((self.root_name, self.env))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SignatureClosure({self.root_name}, {list(self.env.names)})"


def closure_of(env: SignatureEnvironment, name: str) -> SignatureClosure:
    reach = _reachable(env, name)
    sub = env if len(reach) == len(env) else SignatureEnvironment(env[n] for n in reach)
    return SignatureClosure(name, sub)


def all_closures(env: SignatureEnvironment) -> List[SignatureClosure]:
    return [closure_of(env, n) for n in env.names]


def immediate_subsign(sc2: SignatureClosure, sc1: SignatureClosure) -> bool:
    return sc2.env.extends(sc1.env) and sc1.root_name in sc2.root.super_names


def supersignature_ancestors(env: SignatureEnvironment, name: str) -> List[str]:
    """Names reachable from ``name`` along supersignature edges, ``name`` included."""
    seen = {name: None}
    stack = [name]
    while stack:
        n = stack.pop()
        for s in env[n].super_names:
            if s not in seen:
                seen[s] = None
                stack.append(s)
    return list(seen)


def subsign(sc2: SignatureClosure, sc1: SignatureClosure) -> bool:
    """Reflexive-transitive closure of immediate subsigning.

    Every chain of immediate steps starting at sc2 visits closures of the form
    closure_of(sc2.env, n) for supersignature ancestors n, so the relation holds
    exactly when sc1 is one of those.
    """
    if sc1 == sc2:
        return True
    if sc1.root_name not in supersignature_ancestors(sc2.env, sc2.root_name):
        return False
    return closure_of(sc2.env, sc1.root_name) == sc1


# -- canonical S-expression form ---------------------------------------------


def to_sexpr(s: ClassSignature) -> str:
    ext = " ".join(("extends",) + s.super_names)
    flds = " ".join(["fields"] + [f"({f.name} {f.type_name})" for f in s.fields])
    meths = " ".join(
        ["methods"] + [f"({m.name} ({' '.join(m.param_type_names)}) {m.return_type_name})" for m in s.methods]
    )
    return f"(class {s.name} ({ext}) ({flds}) ({meths}))"


def env_to_sexpr(env: Iterable[ClassSignature]) -> str:
    forms = [to_sexpr(s) for s in sorted(env, key=lambda s: s.name)]
    return "(env" + "".join(" " + f for f in forms) + ")"


def closure_to_sexpr(sc: SignatureClosure) -> str:
    return f"(closure {sc.root_name} {env_to_sexpr(sc.env)})"
