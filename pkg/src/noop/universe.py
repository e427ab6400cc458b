"""Desk-scale universes of raw objects and the checks run over them."""
from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .objects import (
    METH_BOTTOM,
    OBJ_BOTTOM,
    RawObject,
    filter_object,
    meth_consistent,
    mk_method,
    obj_approx,
    obj_equal,
    rank,
    valid,
    validity_problem,
)
from .records import mk_record
from .report import BudgetExceeded, Report
from .sexpr import format_object
from .signatures import SignatureClosure, SignatureEnvironment, all_closures, shapes

DEFAULT_BUDGET = 10_000
DEFAULT_STEPS = 2


def step_tables(arg_pools: Sequence[Sequence], results: Sequence, max_steps: int) -> List:
    """Every consistent, non-bottom step table with at most ``max_steps`` steps.

    ``arg_pools[j]`` lists the candidates for argument position j. Tables that
    normalize to the same step set are reported once, in first-seen order.
    """
    steps = [(args, r) for args in itertools.product(*arg_pools) for r in results if r is not OBJ_BOTTOM]
    seen = {}
    for k in range(1, max_steps + 1):
        for combo in itertools.combinations(steps, k):
            try:
                m = mk_method(combo)
            except ValueError:
                continue
            if not m.steps or m in seen:
                continue
            if k > 1 and not meth_consistent(m, m):
                continue
            seen[m] = None
    return list(seen)


def shape_variants(sc: SignatureClosure) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    """The declared shape, then the shape with each single member removed."""
    fshape, mshape = shapes(sc.root)
    fs, ms = tuple(sorted(fshape)), tuple(sorted(mshape))
    out = [(fs, ms)]
    out += [(tuple(x for x in fs if x != f), ms) for f in fs]
    out += [(fs, tuple(x for x in ms if x != m)) for m in ms]
    return list(dict.fromkeys(out))


def object_key(o) -> tuple:
    """Objects with different keys are never related by the approximation order."""
    if o is OBJ_BOTTOM:
        return ()
    return (o.closure, o.fields.tag, o.methods.tag)


def object_universe(
    env: SignatureEnvironment,
    rank_bound: int = 2,
    max_steps: int = 1,
    live_members: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> List:
    """Raw objects (valid or not) of rank ≤ ``rank_bound`` over ``env``.

    Rank r objects are built, for each closure and each shape variant, from the
    objects of rank < r: every member is ⊥ except at most ``live_members`` of
    them, and each live member ranges over all lower-rank objects (fields) or
    all step tables over them with the declared arity (methods).
    """
    closures = all_closures(env)
    universe: List = [OBJ_BOTTOM]
    seen = {OBJ_BOTTOM}
    for r in range(1, rank_bound + 1):
        pool = list(universe)
        proper = [o for o in pool if o is not OBJ_BOTTOM]
        tables: Dict[int, List] = {}
        for sc in closures:
            for fs, ms in shape_variants(sc):
                slots = []
                for f in fs:
                    slots.append(("f", f, proper))
                for m in ms:
                    arity = sc.root.method(m).arity + 1
                    if arity not in tables:
                        tables[arity] = step_tables([pool] * arity, proper, max_steps)
                    slots.append(("m", m, tables[arity]))
                for k in range(0, min(live_members, len(slots)) + 1):
                    for live in itertools.combinations(range(len(slots)), k):
                        options = [slots[i][2] for i in live]
                        for choice in itertools.product(*options):
                            fields = {f: OBJ_BOTTOM for f in fs}
                            methods = {m: METH_BOTTOM for m in ms}
                            for i, val in zip(live, choice):
                                kind, label, _ = slots[i]
                                (fields if kind == "f" else methods)[label] = val
                            o = RawObject(sc, mk_record(fields), mk_record(methods))
                            if rank(o) != r or o in seen:
                                continue
                            seen.add(o)
                            universe.append(o)
                            if len(universe) > budget:
                                raise BudgetExceeded(budget)
    return universe


def _group(universe: Iterable) -> Dict[tuple, List]:
    groups: Dict[tuple, List] = defaultdict(list)
    for o in universe:
        if o is not OBJ_BOTTOM:
            groups[object_key(o)].append(o)
    return groups


def check_rank_proposition(universe: Sequence, subject: str = "universe") -> Report:
    """rank(o1) < rank(o2) implies o2 ⋢ o1, over every pair of the universe.

    Pairs with different closures or tags are unrelated by definition of the
    order, so only pairs within a group are compared explicitly; ⊥ is below
    everything and never above a proper object.
    """
    rep = Report()
    bad = None
    pairs = 0
    if OBJ_BOTTOM in universe:
        for o in universe:
            if o is not OBJ_BOTTOM:
                pairs += 1
                if obj_approx(o, OBJ_BOTTOM):
                    bad = bad or (o, OBJ_BOTTOM)
    for members in _group(universe).values():
        by_rank = defaultdict(list)
        for o in members:
            by_rank[rank(o)].append(o)
        ranks = sorted(by_rank)
        for i, lo in enumerate(ranks):
            for hi in ranks[i + 1:]:
                for o1 in by_rank[lo]:
                    for o2 in by_rank[hi]:
                        pairs += 1
                        if bad is None and obj_approx(o2, o1):
                            bad = (o2, o1)
    detail = f"pairs={pairs}" if bad is None else f"counterexample={format_object(bad[0])} ⊑ {format_object(bad[1])}"
    rep.add("rank-proposition", subject, bad is None, detail)
    return rep


def check_finitary_projection(universe: Sequence, subject: str = "universe", monotone: bool = True) -> Report:
    """filter is idempotent, deflationary, valid-producing and closest-valid on the universe.

    Also checks that filter never raises rank and, when ``monotone`` is set,
    that it is monotone on comparable pairs of the universe.
    """
    rep = Report()
    groups = _group(universe)
    valid_by_key = {k: [o for o in members if valid(o)] for k, members in groups.items()}
    first_bad: Dict[str, Optional[str]] = {
        "filter-idempotent": None,
        "filter-deflationary": None,
        "filter-valid": None,
        "filter-closest-valid": None,
        "filter-rank-nonincreasing": None,
    }

    def fail(prop, o, extra=""):
        if first_bad[prop] is None:
            first_bad[prop] = f"counterexample={format_object(o)}{extra}"

    compared = 0
    for o in universe:
        fo = filter_object(o)
        if not obj_equal(filter_object(fo), fo):
            fail("filter-idempotent", o)
        if not obj_approx(fo, o):
            fail("filter-deflationary", o)
        why = validity_problem(fo)
        if why is not None:
            fail("filter-valid", o, f" ({why})")
        if rank(fo) > rank(o):
            fail("filter-rank-nonincreasing", o)
        for o2 in valid_by_key.get(object_key(o), ()):
            compared += 1
            if obj_approx(o2, o) and not obj_approx(o2, fo):
                fail("filter-closest-valid", o, f" below={format_object(o2)}")
    for prop, bad in first_bad.items():
        detail = bad or (f"objects={len(universe)}" if prop != "filter-closest-valid" else f"pairs={compared}")
        rep.add(prop, subject, bad is None, detail)
    if monotone:
        bad, pairs = None, 0
        for members in groups.values():
            for o1 in members:
                f1 = filter_object(o1)
                for o2 in members:
                    if o1 is not o2 and obj_approx(o1, o2):
                        pairs += 1
                        if bad is None and not obj_approx(f1, filter_object(o2)):
                            bad = (o1, o2)
        detail = f"pairs={pairs}" if bad is None else f"counterexample={format_object(bad[0])} ⊑ {format_object(bad[1])}"
        rep.add("filter-monotone", subject, bad is None, detail)
    return rep
