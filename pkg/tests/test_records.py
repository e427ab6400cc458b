import itertools

import pytest
from hypothesis import given, settings, strategies as st

from noop.domains import FiniteDomain, FlatNaturals, Inconsistent, ascending_chains, nested_pairs, small_domains
from noop.records import (
    EMPTY_RECORD,
    REC_BOTTOM,
    _fiber_offset,
    basis_element,
    basis_index,
    cantor_pair,
    cantor_presentation,
    cantor_unpair,
    check_rec_lub_preservation,
    check_rec_monotonic,
    dump_basis,
    first_appearance,
    label_index,
    label_name,
    label_seq,
    label_seq_index,
    mk_record,
    rec_approx,
    rec_consistent,
    rec_lub,
    rec_universe,
    tuple_index,
    tuple_unindex,
)

FLAT3 = FiniteDomain.flat(3)
CHAIN3 = FiniteDomain.chain(3)


def brute_force_basis(oracle, count):
    """⊥, then label sets in index order, each with its value tuples in base-|D| order."""
    out = [REC_BOTTOM]
    elems = oracle.elements()
    for n in itertools.count():
        labels = [label_name(j) for j in label_seq(n)]
        for vals in itertools.product(elems, repeat=len(labels)):
            out.append(mk_record(dict(zip(labels, vals))))
            if len(out) >= count:
                return out


def test_mk_record():
    assert EMPTY_RECORD.tag == () and mk_record({}) == EMPTY_RECORD
    r = mk_record({"x": "⊥"})
    assert r.tag == ("x",) and r is not REC_BOTTOM
    r2 = mk_record({"second": "d2", "first": "d1"})
    assert r2.tag == ("first", "second") and r2["second"] == "d2"


def test_rec_order_examples():
    x = mk_record({"x": "c1"})
    assert rec_approx(REC_BOTTOM, x, CHAIN3)
    xy = mk_record({"x": "c1", "y": "⊥"})
    assert not rec_approx(x, xy, CHAIN3) and not rec_approx(xy, x, CHAIN3)
    assert rec_approx(mk_record({"x": "⊥"}), mk_record({"x": "c2"}), CHAIN3)
    assert not rec_consistent(x, xy, CHAIN3)
    assert rec_lub(x, REC_BOTTOM, CHAIN3) == x
    assert rec_lub(mk_record({"x": "c1"}), mk_record({"x": "c2"}), CHAIN3) == mk_record({"x": "c2"})
    with pytest.raises(Inconsistent):
        rec_lub(mk_record({"x": "d1"}), mk_record({"x": "d2"}), FLAT3)


@pytest.mark.parametrize("dom", small_domains(), ids=str)
def test_rec_laws_exhaustive(dom):
    rs = rec_universe(dom, ("a", "b"))
    for a in rs:
        assert rec_approx(REC_BOTTOM, a, dom) and rec_approx(a, a, dom)
        for b in rs:
            if rec_approx(a, b, dom) and rec_approx(b, a, dom):
                assert a == b
            ok = rec_consistent(a, b, dom)
            if not ok:
                with pytest.raises(Inconsistent):
                    rec_lub(a, b, dom)
                continue
            j = rec_lub(a, b, dom)
            assert rec_approx(a, j, dom) and rec_approx(b, j, dom)
            for u in rs:
                if rec_approx(a, u, dom) and rec_approx(b, u, dom):
                    assert rec_approx(j, u, dom)


def test_label_seq_examples():
    assert label_seq(0) == []
    assert label_seq(1) == [1]
    assert label_seq(5) == [1, 3]
    assert [label_name(j) for j in (1, 26, 27, 52, 53, 702, 703)] == ["a", "z", "aa", "az", "ba", "zz", "aaa"]
    assert all(label_index(label_name(j)) == j for j in range(1, 2000))


def test_cantor_examples():
    assert cantor_pair(0, 0) == 0
    assert cantor_pair(1, 2) == 8
    assert tuple_index(3, [4, 5, 6]) == cantor_pair(cantor_pair(4, 5), 6)
    assert tuple_index(1, [7]) == 7
    assert tuple_unindex(0, 5) == []


@given(st.integers(0, 10 ** 30), st.integers(0, 10 ** 30))
def test_cantor_bijection(p, q):
    assert cantor_unpair(cantor_pair(p, q)) == (p, q)


@given(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=5))
def test_tuple_bijection(ns):
    assert tuple_unindex(len(ns), tuple_index(len(ns), ns)) == ns


def test_cantor_pair_is_onto_prefix():
    assert sorted(cantor_pair(p, q) for p in range(40) for q in range(40) if p + q < 40) == list(range(820))


def test_basis_element_two_is_single_label_bottom():
    for oracle in (FLAT3, FlatNaturals()):
        assert basis_element(0, oracle) is REC_BOTTOM
        assert basis_element(2, oracle) == mk_record({"a": oracle.bottom})


def test_fiber_offset_against_sum():
    for s in range(1, 6):
        for n in range(600):
            assert _fiber_offset(n, s) == sum(s ** bin(k).count("1") for k in range(n))


def test_finite_basis_matches_brute_force():
    expected = brute_force_basis(FLAT3, 10_001)
    for i, r in enumerate(expected):
        assert basis_element(i, FLAT3) == r
        assert basis_index(r, FLAT3) == i


def test_finite_basis_other_sizes():
    for oracle in (FiniteDomain.flat(1), FiniteDomain.flat(2), FiniteDomain.chain(4)):
        for i, r in enumerate(brute_force_basis(oracle, 3000)):
            assert basis_element(i, oracle) == r and basis_index(r, oracle) == i


def test_basis_dump_prefix():
    assert dump_basis(14, FLAT3) == [
        "0: ⊥", "1: {}", "2: {a:⊥}", "3: {a:d1}", "4: {a:d2}", "5: {b:⊥}", "6: {b:d1}", "7: {b:d2}",
        "8: {a:⊥, b:⊥}", "9: {a:⊥, b:d1}", "10: {a:⊥, b:d2}", "11: {a:d1, b:⊥}", "12: {a:d1, b:d1}",
        "13: {a:d1, b:d2}",
    ]


def test_literal_presentation_is_not_injective():
    nat = FlatNaturals()
    # n = 0 gives the empty record for every m
    empties = [i for i in range(1, 60) if cantor_presentation(i, nat) == EMPTY_RECORD]
    assert len(empties) > 1


def test_infinite_basis_reindexes_the_literal_presentation():
    nat = FlatNaturals()
    assert basis_element(1, nat) == EMPTY_RECORD
    for n in range(1, 30):
        for m in range(30):
            assert basis_element(cantor_pair(n - 1, m) + 2, nat) == cantor_presentation(cantor_pair(n, m) + 1, nat)


@settings(max_examples=300)
@given(st.integers(0, 10 ** 40))
def test_infinite_basis_round_trip(i):
    nat = FlatNaturals()
    assert basis_index(basis_element(i, nat), nat) == i


def test_infinite_basis_is_injective_on_prefix():
    nat = FlatNaturals()
    seen = {basis_element(i, nat) for i in range(20_000)}
    assert len(seen) == 20_000


def test_label_seq_laws():
    seen = {}
    for n in range(4097):
        js = label_seq(n)
        assert tuple(js) not in seen
        seen[tuple(js)] = n
        assert label_seq_index(js) == n
        assert 2 * n == sum(2 ** j for j in js)
        k = len(js)
        assert k == bin(n).count("1")
        assert 2 ** k <= n + 1
        assert (2 ** k == n + 1) == ((n + 1) & n == 0)


# -- continuity of the record constructor ------------------------------------


def test_monotonic_examples():
    assert check_rec_monotonic(FiniteDomain.flat(1), FiniteDomain.flat(2)).ok
    assert check_rec_monotonic(CHAIN3, CHAIN3).ok
    assert check_rec_monotonic(CHAIN3, FiniteDomain.chain(4)).ok


def test_monotonic_rejects_non_subdomain():
    # same elements, but the big order adds a relation the small one lacks
    small = FiniteDomain(["⊥", "x", "y"])
    big = FiniteDomain(["⊥", "x", "y"], [("x", "y")])
    rep = check_rec_monotonic(small, big)
    assert not rep.ok
    assert {c.prop for c in rep.failures} >= {"subdomain-premise", "rec-approx-agrees"}


def test_all_nested_pairs_clean():
    doms = small_domains()
    pairs = list(nested_pairs(doms))
    assert len(pairs) > 100
    for s, b in pairs:
        assert check_rec_monotonic(s, b).ok


def test_lub_preservation_examples():
    assert check_rec_lub_preservation([FLAT3]).ok
    chain = [FiniteDomain.flat(2), FLAT3, FiniteDomain.flat(4)]
    assert check_rec_lub_preservation(chain).ok
    first = first_appearance(chain)
    assert first[mk_record({"a": "d3"})] == 3
    assert first[mk_record({"a": "d1", "b": "d3"})] == 3
    assert first[mk_record({"a": "d1"})] == 1


def test_all_chains_clean():
    for chain in ascending_chains(small_domains(), 4):
        assert check_rec_lub_preservation(chain).ok
