"""Class types as sets of valid objects whose closure subsigns a given closure."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .objects import (
    METH_BOTTOM,
    OBJ_BOTTOM,
    RawObject,
    field_closure,
    method_closures,
    rank,
    subsigns,
    valid,
    validity_problem,
)
from .records import mk_record
from .report import BudgetExceeded, Report
from .sexpr import format_object
from .signatures import SignatureClosure, SignatureEnvironment, all_closures
from .universe import DEFAULT_BUDGET, DEFAULT_STEPS, step_tables


class NotAValidObject(ValueError):
    pass


def member_of(o, sc: SignatureClosure) -> bool:
    if o is OBJ_BOTTOM:
        return True
    why = validity_problem(o)
    if why is not None:
        raise NotAValidObject(why)
    return subsigns(o.closure, sc)


def witness(sc: SignatureClosure) -> RawObject:
    """The object of closure ``sc`` with every field ⊥ and every method ⊥."""
    return RawObject(
        sc,
        mk_record({f.name: OBJ_BOTTOM for f in sc.root.fields}),
        mk_record({m.name: METH_BOTTOM for m in sc.root.methods}),
    )


def _eligible(pool, declared: SignatureClosure) -> List:
    return [OBJ_BOTTOM] + [o for o in pool if o is not OBJ_BOTTOM and subsigns(o.closure, declared)]


def _members_of_closure(sc, pool, max_steps, budget, count) -> List:
    options = []
    for f in sc.root.fields:
        options.append(_eligible(pool, field_closure(sc, f.name)))
    for m in sc.root.methods:
        ins, out = method_closures(sc, m.name)
        results = _eligible(pool, out)
        options.append([METH_BOTTOM] + step_tables([_eligible(pool, c) for c in ins], results, max_steps))
    total = 1
    for opt in options:
        total *= len(opt)
    if count + total > budget:
        raise BudgetExceeded(budget)
    nf = len(sc.root.fields)
    out = []
    for choice in itertools.product(*options):
        fields = {f.name: v for f, v in zip(sc.root.fields, choice[:nf])}
        methods = {m.name: v for m, v in zip(sc.root.methods, choice[nf:])}
        out.append(RawObject(sc, mk_record(fields), mk_record(methods)))
    return out


@lru_cache(maxsize=64)
def valid_objects(env: SignatureEnvironment, rank_bound: int, max_steps: int = DEFAULT_STEPS,
                  budget: int = DEFAULT_BUDGET, pool: Optional[Tuple] = None) -> Tuple:
    """Valid objects over ``env`` of rank ≤ rank_bound, ⊥ first, in canonical order.

    Without a pool, members of rank r draw their embedded objects from the
    valid objects of rank < r. With a pool, they draw from ⊥ and the pool only.
    """
    if rank_bound <= 0:
        return (OBJ_BOTTOM,)
    closures = all_closures(env)
    found = {OBJ_BOTTOM: None}
    layers = range(1, rank_bound + 1) if pool is None else [None]
    for _ in layers:
        src = list(found) if pool is None else [OBJ_BOTTOM, *pool]
        fresh = []
        for sc in closures:
            fresh.extend(_members_of_closure(sc, src, max_steps, budget, len(found) + len(fresh)))
        for o in fresh:
            if rank(o) <= rank_bound:
                found.setdefault(o, None)
    rest = sorted((o for o in found if o is not OBJ_BOTTOM), key=lambda o: (rank(o), format_object(o)))
    return (OBJ_BOTTOM, *rest)


def enumerate_members(sc: SignatureClosure, rank_bound: int, value_pool: Sequence = (),
                      env: Optional[SignatureEnvironment] = None, max_steps: int = DEFAULT_STEPS,
                      budget: int = DEFAULT_BUDGET, use_pool: bool = True) -> List:
    """Rank-bounded members of the class type of ``sc``.

    Candidate closures come from ``env`` (default: ``sc.env``). Embedded
    objects are drawn from ``value_pool``; pass ``use_pool=False`` to draw
    them from all lower-rank valid objects instead.
    """
    env = env or sc.env
    pool = None
    if use_pool:
        pool = tuple(o for o in value_pool if o is not OBJ_BOTTOM)
        for o in pool:
            if not valid(o):
                raise NotAValidObject(validity_problem(o))
    objs = valid_objects(env, rank_bound, max_steps, budget, pool)
    return [o for o in objs if o is OBJ_BOTTOM or subsigns(o.closure, sc)]


def check_inheritance_is_subtyping(sc1: SignatureClosure, sc2: SignatureClosure, rank_bound: int,
                                   env: Optional[SignatureEnvironment] = None,
                                   max_steps: int = DEFAULT_STEPS, budget: int = DEFAULT_BUDGET) -> Report:
    """sc1 ⊴ sc2 iff the class type of sc1 is contained in that of sc2.

    Forward: every enumerated member of sc1's type is a member of sc2's.
    Reverse: when sc1 does not subsign sc2, the witness of sc1 is the member
    of sc1's type that sc2's type lacks.
    """
    env = env or sc1.env
    rep = Report()
    subject = f"{sc1.root_name},{sc2.root_name}"
    w = witness(sc1)
    rep.add("class-type-nonempty", subject, valid(w) and member_of(w, sc1), f"witness={format_object(w)}")
    if subsigns(sc1, sc2):
        members = enumerate_members(sc1, rank_bound, env=env, max_steps=max_steps, budget=budget, use_pool=False)
        bad = next((o for o in members if not member_of(o, sc2)), None)
        detail = f"members={len(members)}" if bad is None else f"counterexample={format_object(bad)}"
        rep.add("theorem-forward", subject, bad is None, detail)
    else:
        rep.add("theorem-reverse", subject, not member_of(w, sc2), "witness-not-member")
    return rep


def check_theorem_all_pairs(env: SignatureEnvironment, rank_bound: int, max_steps: int = DEFAULT_STEPS,
                            budget: int = DEFAULT_BUDGET) -> Report:
    rep = Report()
    closures = all_closures(env)
    for a in closures:
        for b in closures:
            rep.extend(check_inheritance_is_subtyping(a, b, rank_bound, env, max_steps, budget))
    return rep
