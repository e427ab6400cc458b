import pytest

from noop.class_types import (
    NotAValidObject,
    check_inheritance_is_subtyping,
    check_theorem_all_pairs,
    enumerate_members,
    member_of,
    valid_objects,
    witness,
)
from noop.objects import METH_BOTTOM, OBJ_BOTTOM, RawObject, obj_approx, rank, subsigns, valid
from noop.records import mk_record
from noop.report import BudgetExceeded
from noop.signatures import all_closures, shapes


def test_member_of_examples(clos):
    assert member_of(OBJ_BOTTOM, clos["Pair"])
    assert member_of(witness(clos["Pair"]), clos["Object"])
    assert not member_of(witness(clos["Object"]), clos["Pair"])


def test_member_of_requires_valid(clos):
    w = witness(clos["Pair"])
    with pytest.raises(NotAValidObject):
        member_of(RawObject(clos["Pair"], mk_record({}), w.methods), clos["Object"])


def test_witness_shape(clos):
    wo = witness(clos["Object"])
    assert wo.fields == mk_record({}) and wo.methods == mk_record({"equals": METH_BOTTOM})
    assert witness(clos["Pair"]).fields.shape == {"first", "second"}


def test_witness_nonempty_everywhere(clos, dclos):
    for sc in (*clos.values(), *dclos.values()):
        w = witness(sc)
        assert w is not OBJ_BOTTOM and valid(w) and member_of(w, sc) and rank(w) == 1
        assert (w.fields.shape, w.methods.shape) == shapes(sc)


def test_enumerate_members_examples(pair_env, clos):
    assert enumerate_members(clos["Object"], 0) == [OBJ_BOTTOM]
    objs = enumerate_members(clos["Object"], 1, env=pair_env)
    for n in ("Object", "Boolean", "Pair"):
        assert witness(clos[n]) in objs
    pairs = enumerate_members(clos["Pair"], 1, env=pair_env)
    assert witness(clos["Object"]) not in pairs and witness(clos["Pair"]) in pairs


def test_enumerate_members_from_pool(pair_env, clos):
    pool = [witness(clos["Boolean"])]
    members = enumerate_members(clos["Pair"], 2, pool, env=pair_env, max_steps=1)
    assert all(valid(o) and member_of(o, clos["Pair"]) for o in members)
    # first may hold the Boolean witness drawn from the pool
    assert any(o is not OBJ_BOTTOM and o.fields["first"] == pool[0] for o in members)
    with pytest.raises(NotAValidObject):
        enumerate_members(clos["Pair"], 2, [RawObject(clos["Pair"], mk_record({}), mk_record({}))], env=pair_env)


def test_enumeration_is_deterministic_and_bounded(pair_env):
    a = valid_objects(pair_env, 2, 1)
    valid_objects.cache_clear()
    b = valid_objects(pair_env, 2, 1)
    assert a == b and a[0] is OBJ_BOTTOM
    assert all(valid(o) and rank(o) <= 2 for o in a)
    assert len(set(a)) == len(a)


def test_budget_exceeded(pair_env, clos):
    with pytest.raises(BudgetExceeded):
        enumerate_members(clos["Object"], 2, env=pair_env, budget=50, use_pool=False)


def test_theorem_examples(pair_env, clos):
    fwd = check_inheritance_is_subtyping(clos["Pair"], clos["Object"], 2, pair_env)
    assert fwd.ok and any(c.prop == "theorem-forward" for c in fwd.checks)
    rev = check_inheritance_is_subtyping(clos["Object"], clos["Pair"], 2, pair_env)
    assert rev.ok and [c.detail for c in rev.checks if c.prop == "theorem-reverse"] == ["witness-not-member"]
    assert check_inheritance_is_subtyping(clos["Pair"], clos["Pair"], 1, pair_env).ok


@pytest.mark.parametrize("which", ["pair_env", "diamond_env"])
def test_theorem_all_pairs(which, request):
    env = request.getfixturevalue(which)
    rep = check_theorem_all_pairs(env, 2)
    n = len(env)
    assert rep.ok, [c.line() for c in rep.failures]
    assert sum(c.prop in ("theorem-forward", "theorem-reverse") for c in rep.checks) == n * n


def test_membership_monotone_and_downward_closed(diamond_env):
    objs = valid_objects(diamond_env, 2, 1)
    cs = all_closures(diamond_env)
    for o in objs:
        for a in cs:
            for b in cs:
                if subsigns(a, b) and member_of(o, a):
                    assert member_of(o, b)
    for sc in cs:
        members = [o for o in objs if member_of(o, sc)]
        for o in members:
            for o2 in objs:
                if obj_approx(o2, o) and (o2 is OBJ_BOTTOM or o2.closure == o.closure):
                    assert member_of(o2, sc)
