import pytest

from noop import universe as U
from noop.class_types import witness
from noop.objects import OBJ_BOTTOM, RawObject, rank, valid
from noop.records import mk_record
from noop.report import BudgetExceeded
from noop.signatures import all_closures, shapes
from noop.universe import (
    check_finitary_projection,
    check_rank_proposition,
    object_universe,
    shape_variants,
    step_tables,
)


def test_shape_variants(clos):
    vs = shape_variants(clos["Pair"])
    assert vs[0] == (("first", "second"), ("equals", "swap"))
    assert len(vs) == 5
    assert shape_variants(clos["Object"]) == [((), ("equals",)), ((), ())]


def test_step_tables_are_distinct_and_nonbottom(clos):
    w = witness(clos["Pair"])
    tabs = step_tables([[OBJ_BOTTOM, w]], [OBJ_BOTTOM, w], 2)
    assert len(tabs) == len(set(tabs))
    assert all(t.steps for t in tabs)


def test_universe_contents(pair_env, clos):
    u = object_universe(pair_env, 1)
    assert u[0] is OBJ_BOTTOM and len(u) == len(set(u))
    assert all(rank(o) <= 1 for o in u)
    for sc in clos.values():
        assert witness(sc) in u
    assert any(not valid(o) for o in u)


def test_universe_budget(pair_env):
    with pytest.raises(BudgetExceeded):
        object_universe(pair_env, 2, budget=500)


def test_small_universe_examples(clos):
    assert check_rank_proposition([]).ok
    assert check_rank_proposition([OBJ_BOTTOM, witness(clos["Pair"])]).ok
    assert check_finitary_projection([OBJ_BOTTOM]).ok
    assert check_finitary_projection([witness(clos["Pair"])]).ok


def test_diamond_rank1_projection(diamond_env):
    u = object_universe(diamond_env, 1)
    assert check_finitary_projection(u, "diamond").ok
    assert check_rank_proposition(u, "diamond").ok


def test_checker_catches_identity_filter(pair_env, monkeypatch):
    u = object_universe(pair_env, 1)
    monkeypatch.setattr(U, "filter_object", lambda o: o)
    rep = check_finitary_projection(u, monotone=False)
    assert {c.prop for c in rep.failures} == {"filter-valid"}


def test_checker_catches_overeager_filter(pair_env, monkeypatch):
    u = object_universe(pair_env, 1)
    monkeypatch.setattr(U, "filter_object", lambda o: OBJ_BOTTOM)
    rep = check_finitary_projection(u, monotone=False)
    assert "filter-closest-valid" in {c.prop for c in rep.failures}


def test_rank_checker_catches_bad_order(pair_env, monkeypatch):
    u = object_universe(pair_env, 2, budget=10_000)
    monkeypatch.setattr(U, "obj_approx", lambda a, b: True)
    assert not check_rank_proposition(u).ok
