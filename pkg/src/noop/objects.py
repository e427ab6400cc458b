"""Rank-bounded finite elements of the raw object domain, and ``filter``.

A raw object is ⊥ or a triple (signature closure, fields record, methods
record). The product is strict, so a triple with a bottom component is ⊥.
Methods are finite step tables: a set of (argument sequence, result) pairs
denoting the function ``s ↦ ⊔{result | args ⊑ s}``, which is strict because
no step fires on the bottom sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .domains import DomainOracle, Inconsistent
from .records import REC_BOTTOM, RecordFunction, mk_record, rec_approx, rec_consistent, rec_lub
from .signatures import SignatureClosure, closure_of, shapes, subsign


class _Sentinel:
    def __init__(self, text):
        self.text = text

    def __repr__(self):
        return self.text


OBJ_BOTTOM = _Sentinel("⊥")
SEQ_BOTTOM = _Sentinel("⊥seq")


class ArityMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RawObject:
    closure: SignatureClosure
    fields: RecordFunction
    methods: RecordFunction

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RawObject) or hash(self) != hash(other):
            return False
        return (self.closure, self.fields, self.methods) == (other.closure, other.fields, other.methods)

    @cached_property
    def _hash(self):
        return hash((self.closure, self.fields, self.methods))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .sexpr import format_object

        return f"RawObject({format_object(self)})"


def mk_object(closure, fields, methods):
    """Strict triple: any bottom component collapses the object to ⊥."""
    if closure is None or closure is OBJ_BOTTOM or fields is REC_BOTTOM or methods is REC_BOTTOM:
        return OBJ_BOTTOM
    return RawObject(closure, fields, methods)


def is_bottom(o) -> bool:
    return o is OBJ_BOTTOM


# -- argument sequences ------------------------------------------------------


def seq_approx(s1, s2) -> bool:
    if s1 is SEQ_BOTTOM:
        return True
    if s2 is SEQ_BOTTOM or len(s1) != len(s2):
        return False
    return all(obj_approx(a, b) for a, b in zip(s1, s2))


def seq_consistent(s1, s2) -> bool:
    if s1 is SEQ_BOTTOM or s2 is SEQ_BOTTOM:
        return True
    return len(s1) == len(s2) and all(obj_consistent(a, b) for a, b in zip(s1, s2))


# -- methods as step tables --------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteMethod:
    steps: FrozenSet[Tuple[tuple, object]]

    def __post_init__(self):
        merged = {}
        for args, res in self.steps:
            if args is SEQ_BOTTOM:
                raise ValueError("a strict method cannot have a step at the bottom sequence")
            args = tuple(args)
            if res is OBJ_BOTTOM:
                continue
            merged[args] = obj_lub(merged[args], res) if args in merged else res
        arities = {len(a) for a in merged}
        if len(arities) > 1:
            raise ArityMismatch(f"steps of mixed arity {sorted(arities)}")
        object.__setattr__(self, "steps", frozenset(merged.items()))

    @property
    def arity(self) -> Optional[int]:
        for args, _ in self.steps:
            return len(args)
        return None

    def __call__(self, s):
        return apply_method(self, s)

    def __eq__(self, other):
        return isinstance(other, FiniteMethod) and self.steps == other.steps

    @cached_property
    def _hash(self):
        return hash(self.steps)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.steps:
            return "METH_BOTTOM"
        from .sexpr import format_method

        return f"FiniteMethod({format_method(self)})"


METH_BOTTOM = FiniteMethod(frozenset())


def mk_method(steps: Iterable[Tuple[Sequence, object]]) -> FiniteMethod:
    return FiniteMethod(frozenset((tuple(a), r) for a, r in steps))


def apply_method(m: FiniteMethod, s):
    """Lub of the results of every step whose argument sequence is below ``s``."""
    if s is SEQ_BOTTOM:
        return OBJ_BOTTOM
    s = tuple(s)
    out = OBJ_BOTTOM
    for args, res in m.steps:
        if seq_approx(args, s):
            out = obj_lub(out, res)
    return out


def meth_approx(m1: FiniteMethod, m2: FiniteMethod) -> bool:
    # enough to compare at m1's own step arguments: m2 is monotone
    return all(obj_approx(res, apply_method(m2, args)) for args, res in m1.steps)


def meth_approx_extensional(m1: FiniteMethod, m2: FiniteMethod) -> bool:
    """m1 ⊑ m2 pointwise over every argument sequence named by either table."""
    points = [SEQ_BOTTOM] + [a for a, _ in m1.steps] + [a for a, _ in m2.steps]
    return all(obj_approx(apply_method(m1, s), apply_method(m2, s)) for s in points)


def _table_consistent(steps) -> bool:
    steps = list(steps)
    for i, (a1, r1) in enumerate(steps):
        for a2, r2 in steps[i + 1:]:
            if seq_consistent(a1, a2) and not obj_consistent(r1, r2):
                return False
    return True


def meth_consistent(m1: FiniteMethod, m2: FiniteMethod) -> bool:
    return _table_consistent(m1.steps | m2.steps)


def meth_lub(m1: FiniteMethod, m2: FiniteMethod) -> FiniteMethod:
    if not meth_consistent(m1, m2):
        raise Inconsistent(m1, m2)
    return FiniteMethod(m1.steps | m2.steps)


def method_is_consistent(m: FiniteMethod) -> bool:
    return _table_consistent(m.steps)


# -- object ordering ---------------------------------------------------------


class _ObjectOracle(DomainOracle):
    bottom = OBJ_BOTTOM

    def approx(self, a, b):
        return obj_approx(a, b)

    def consistent(self, a, b):
        return obj_consistent(a, b)

    def lub(self, a, b):
        return obj_lub(a, b)


class _MethodOracle(DomainOracle):
    bottom = METH_BOTTOM

    def approx(self, a, b):
        return meth_approx(a, b)

    def consistent(self, a, b):
        return meth_consistent(a, b)

    def lub(self, a, b):
        return meth_lub(a, b)


OBJECTS = _ObjectOracle()
METHODS = _MethodOracle()


@lru_cache(maxsize=1 << 20)
def obj_approx(o1, o2) -> bool:
    if o1 is OBJ_BOTTOM:
        return True
    if o2 is OBJ_BOTTOM:
        return False
    if o1.closure != o2.closure:
        return False
    return rec_approx(o1.fields, o2.fields, OBJECTS) and rec_approx(o1.methods, o2.methods, METHODS)


def obj_consistent(o1, o2) -> bool:
    if o1 is OBJ_BOTTOM or o2 is OBJ_BOTTOM:
        return True
    return (
        o1.closure == o2.closure
        and rec_consistent(o1.fields, o2.fields, OBJECTS)
        and rec_consistent(o1.methods, o2.methods, METHODS)
    )


def obj_lub(o1, o2):
    if o1 is OBJ_BOTTOM:
        return o2
    if o2 is OBJ_BOTTOM:
        return o1
    if not obj_consistent(o1, o2):
        raise Inconsistent(o1, o2)
    return RawObject(o1.closure, rec_lub(o1.fields, o2.fields, OBJECTS), rec_lub(o1.methods, o2.methods, METHODS))


def obj_equal(o1, o2) -> bool:
    return obj_approx(o1, o2) and obj_approx(o2, o1)


@lru_cache(maxsize=1 << 20)
def rank(o) -> int:
    if o is OBJ_BOTTOM:
        return 0
    inner = [rank(v) for v in o.fields.values()]
    for m in o.methods.values():
        for args, res in m.steps:
            inner.extend(rank(a) for a in args)
            inner.append(rank(res))
    return 1 + max(inner, default=0)


# -- validity and filtering --------------------------------------------------


@lru_cache(maxsize=None)
def _closure(sc: SignatureClosure, name: str) -> SignatureClosure:
    return closure_of(sc.env, name)


@lru_cache(maxsize=1 << 16)
def subsigns(a: SignatureClosure, b: SignatureClosure) -> bool:
    return subsign(a, b)


def method_closures(sc: SignatureClosure, label: str) -> Tuple[Tuple[SignatureClosure, ...], SignatureClosure]:
    """Declared input closures (self first) and output closure of a method."""
    ms = sc.root.method(label)
    ins = (sc,) + tuple(_closure(sc, p) for p in ms.param_type_names)
    return ins, _closure(sc, ms.return_type_name)


def field_closure(sc: SignatureClosure, label: str) -> SignatureClosure:
    return _closure(sc, sc.root.field(label).type_name)


def _conforming(o, declared: SignatureClosure) -> Optional[str]:
    if o is OBJ_BOTTOM:
        return None
    why = validity_problem(o)
    if why is not None:
        return why
    if not subsigns(o.closure, declared):
        return f"closure {o.closure.root_name} does not subsign {declared.root_name}"
    return None


@lru_cache(maxsize=1 << 20)
def validity_problem(o) -> Optional[str]:
    """None for a valid object, otherwise the first violated clause."""
    if o is OBJ_BOTTOM:
        return None
    sc = o.closure
    fshape, mshape = shapes(sc.root)
    if o.fields.shape != fshape:
        return f"fields shape {sorted(o.fields.shape)} != {sorted(fshape)}"
    if o.methods.shape != mshape:
        return f"methods shape {sorted(o.methods.shape)} != {sorted(mshape)}"
    for label, v in o.fields.entries:
        why = _conforming(v, field_closure(sc, label))
        if why is not None:
            return f"field {label}: {why}"
    for label, m in o.methods.entries:
        ins, out = method_closures(sc, label)
        for args, res in m.steps:
            if len(args) != len(ins):
                return f"method {label}: step of arity {len(args)}, expected {len(ins)}"
            for j, (a, c) in enumerate(zip(args, ins)):
                why = _conforming(a, c)
                if why is not None:
                    return f"method {label}: argument {j}: {why}"
            why = _conforming(res, out)
            if why is not None:
                return f"method {label}: result: {why}"
    return None


def valid(o) -> bool:
    return validity_problem(o) is None


@lru_cache(maxsize=1 << 20)
def filter_object(o):
    """The closest valid object below ``o``."""
    if o is OBJ_BOTTOM:
        return OBJ_BOTTOM
    sc = o.closure
    fshape, mshape = shapes(sc.root)
    if o.fields.shape != fshape or o.methods.shape != mshape:
        return OBJ_BOTTOM  # non-matching shapes
    fields = mk_record({label: filter_obj_sig(field_closure(sc, label), v) for label, v in o.fields.entries})
    methods = {}
    for label, m in o.methods.entries:
        ins, out = method_closures(sc, label)
        methods[label] = filter_meth_sig(ins, out, restrict_arity(m, len(ins)))
    return RawObject(sc, fields, mk_record(methods))


def filter_obj_sig(declared: SignatureClosure, o):
    if o is OBJ_BOTTOM or not subsigns(o.closure, declared):
        return OBJ_BOTTOM
    return filter_object(o)


def filter_seq(ins: Sequence[SignatureClosure], s):
    """Componentwise filter_obj_sig; ⊥seq when the lengths disagree."""
    if s is SEQ_BOTTOM or len(s) != len(ins):
        return SEQ_BOTTOM
    return tuple(filter_obj_sig(c, a) for c, a in zip(ins, s))


def restrict_arity(m: FiniteMethod, arity: int) -> FiniteMethod:
    """Drop steps that no argument sequence of the given length can fire."""
    if m.arity in (None, arity):
        return m
    return METH_BOTTOM


def filter_meth_sig(ins: Sequence[SignatureClosure], out: SignatureClosure, m: FiniteMethod) -> FiniteMethod:
    """Step table for ``s ↦ filter_obj_sig(out, m(filter_seq(ins, s)))``.

    A step survives when its arguments are already fixed by the input
    filtering; its result is filtered against ``out``. Steps whose arguments
    change under filtering can only fire on inputs that filtering never
    produces, so they are dropped.
    """
    ins = tuple(ins)
    if not ins:
        raise ValueError("a method always takes at least the self argument")
    steps = []
    for args, res in m.steps:
        if len(args) != len(ins):
            raise ArityMismatch(f"step of arity {len(args)} against {len(ins)} declared inputs")
        if filter_seq(ins, args) == args:
            steps.append((args, filter_obj_sig(out, res)))
    return mk_method(steps)


def filter_meth_pointwise(ins: Sequence[SignatureClosure], out: SignatureClosure, m: FiniteMethod, s):
    """Direct evaluation of the filtered method at ``s`` (no table rewriting)."""
    vs = filter_seq(tuple(ins), s)
    return filter_obj_sig(out, apply_method(m, vs))


def clear_caches() -> None:
    for f in (obj_approx, rank, validity_problem, filter_object, subsigns, _closure):
        f.cache_clear()
