"""Record functions: tagged finite maps from labels to elements of a domain.

A proper record function is its tag (the sorted label set) plus one value per
label. The strict pair (⊥_L ↦ ⊥_D) every record function contains is implied
and never stored. Records with different tags are incomparable; ``REC_BOTTOM``
sits below everything.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import isqrt
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from .domains import DomainOracle, FiniteDomain, Inconsistent, is_subdomain
from .report import Report


class _RecordBottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "REC_BOTTOM"

    def __reduce__(self):
        return (_RecordBottom, ())


REC_BOTTOM = _RecordBottom()


@dataclass(frozen=True)
class RecordFunction:
    entries: Tuple[Tuple[str, Any], ...]

    def __post_init__(self):
        labels = [l for l, _ in self.entries]
        if labels != sorted(labels) or len(set(labels)) != len(labels):
            raise ValueError("record entries must be sorted by label and duplicate-free")

    @cached_property
    def tag(self) -> Tuple[str, ...]:
        return tuple(l for l, _ in self.entries)

    @property
    def shape(self) -> frozenset:
        return frozenset(self.tag)

    def values(self) -> Tuple[Any, ...]:
        return tuple(v for _, v in self.entries)

    def __getitem__(self, label: str):
        for l, v in self.entries:
            if l == label:
                return v
        raise KeyError(label)

    def as_dict(self) -> Dict[str, Any]:
        return dict(self.entries)

    @cached_property
    def _hash(self):
        return hash(self.entries)

    def __hash__(self):
        return self._hash


def mk_record(bindings: Mapping[str, Any]) -> RecordFunction:
    return RecordFunction(tuple(sorted(dict(bindings).items(), key=lambda kv: kv[0])))


EMPTY_RECORD = RecordFunction(())


def rec_approx(r1, r2, oracle: DomainOracle) -> bool:
    if r1 is REC_BOTTOM:
        return True
    if r2 is REC_BOTTOM or r1.tag != r2.tag:
        return False
    return all(oracle.approx(a, b) for (_, a), (_, b) in zip(r1.entries, r2.entries))


def rec_consistent(r1, r2, oracle: DomainOracle) -> bool:
    if r1 is REC_BOTTOM or r2 is REC_BOTTOM:
        return True
    if r1.tag != r2.tag:
        return False
    return all(oracle.consistent(a, b) for (_, a), (_, b) in zip(r1.entries, r2.entries))


def rec_lub(r1, r2, oracle: DomainOracle):
    if r1 is REC_BOTTOM:
        return r2
    if r2 is REC_BOTTOM:
        return r1
    if not rec_consistent(r1, r2, oracle):
        raise Inconsistent(r1, r2)
    return RecordFunction(tuple((l, oracle.lub(a, b)) for (l, a), (_, b) in zip(r1.entries, r2.entries)))


# -- effective presentation --------------------------------------------------

_ALPHA = "abcdefghijklmnopqrstuvwxyz"


def label_name(j: int) -> str:
    """The j-th label of the fixed universe l1=a, ..., l26=z, l27=aa, ..."""
    if j < 1:
        raise ValueError("label indices start at 1 (index 0 is the improper bottom label)")
    out = []
    while j:
        j, r = divmod(j - 1, 26)
        out.append(_ALPHA[r])
    return "".join(reversed(out))


def label_index(name: str) -> int:
    if not name or any(c not in _ALPHA for c in name):
        raise ValueError(f"{name!r} is not in the enumerated label universe")
    j = 0
    for c in name:
        j = j * 26 + _ALPHA.index(c) + 1
    return j


def label_seq(n: int) -> List[int]:
    """Increasing label indices j1 < ... < jk with 2n = sum of 2**j."""
    if n < 0:
        raise ValueError("n must be a natural number")
    out, j = [], 1
    while n:
        if n & 1:
            out.append(j)
        n >>= 1
        j += 1
    return out


def label_seq_index(js: Iterable[int]) -> int:
    return sum(1 << (j - 1) for j in set(js))


def cantor_pair(p: int, q: int) -> int:
    return (p + q) * (p + q + 1) // 2 + q


def cantor_unpair(z: int) -> Tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    q = z - w * (w + 1) // 2
    return w - q, q


def tuple_index(k: int, ns: Sequence[int]) -> int:
    ns = list(ns)
    if len(ns) != k:
        raise ValueError(f"expected {k} components, got {len(ns)}")
    if k == 0:
        return 0
    acc = ns[0]
    for n in ns[1:]:
        acc = cantor_pair(acc, n)
    return acc


def tuple_unindex(k: int, z: int) -> List[int]:
    """Inverse of tuple_index. For k = 0 every z decodes to the empty tuple."""
    if k == 0:
        return []
    out = []
    for _ in range(k - 1):
        z, last = cantor_unpair(z)
        out.append(last)
    out.append(z)
    return out[::-1]


def _record_from(js: Sequence[int], values: Sequence[Any]) -> RecordFunction:
    return mk_record({label_name(j): v for j, v in zip(js, values)})


def cantor_presentation(i: int, oracle: DomainOracle):
    """r0 = ⊥ and r_{π(n,m)+1} = (tag(L_n), zip(L_n, (D^k)_m)), taken literally.

    This is onto but not one-to-one: with n = 0 every m yields the empty record.
    """
    if i == 0:
        return REC_BOTTOM
    n, m = cantor_unpair(i - 1)
    js = label_seq(n)
    return _record_from(js, [oracle.enumerate(x) for x in tuple_unindex(len(js), m)])


def _fiber_offset(n: int, s: int) -> int:
    """Number of records with label-set index below n when |D| = s.

    Equals sum(s ** popcount(n2) for n2 < n), computed bitwise: each set bit b
    of n contributes the numbers that agree with n above b, have 0 at b and are
    free below b.
    """
    total, higher = 0, 0
    for b in range(n.bit_length() - 1, -1, -1):
        if n >> b & 1:
            total += s ** higher * (1 + s) ** b
            higher += 1
    return total


def basis_element(i: int, oracle: DomainOracle):
    """The i-th finite record over ``oracle``, as a bijection from the naturals.

    Infinite oracle: r0 = ⊥, r1 = the empty record, and for n ≥ 1,
    r_{π(n-1, m)+2} = (tag(L_n), zip(L_n, (D^k)_m)) with Cantor k-tupling.
    Finite oracle of size s: after ⊥, records are listed by label-set index n,
    the s**k value tuples of each n in base-s order.
    """
    if i < 0:
        raise ValueError("index must be a natural number")
    if i == 0:
        return REC_BOTTOM
    s = oracle.size
    if s is None:
        if i == 1:
            return EMPTY_RECORD
        n, m = cantor_unpair(i - 2)
        js = label_seq(n + 1)
        return _record_from(js, [oracle.enumerate(x) for x in tuple_unindex(len(js), m)])
    pos = i - 1
    hi = 1
    while _fiber_offset(hi, s) <= pos:
        hi *= 2
    lo = 0  # offset(lo) <= pos < offset(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _fiber_offset(mid, s) <= pos:
            lo = mid
        else:
            hi = mid
    n, m = lo, pos - _fiber_offset(lo, s)
    js = label_seq(n)
    digits = []
    for _ in js:
        m, d = divmod(m, s)
        digits.append(d)
    return _record_from(js, [oracle.enumerate(d) for d in reversed(digits)])


def basis_index(r, oracle: DomainOracle) -> int:
    """Inverse of :func:`basis_element`."""
    if r is REC_BOTTOM:
        return 0
    js = [label_index(l) for l in r.tag]
    js.sort()
    # entries are sorted by label name; reorder values by label index
    by_label = r.as_dict()
    idx = [oracle.index_of(by_label[label_name(j)]) for j in js]
    n = label_seq_index(js)
    s = oracle.size
    if s is None:
        if n == 0:
            return 1
        return cantor_pair(n - 1, tuple_index(len(idx), idx)) + 2
    m = 0
    for d in idx:
        m = m * s + d
    return 1 + _fiber_offset(n, s) + m


def format_record(r, oracle: DomainOracle) -> str:
    if r is REC_BOTTOM:
        return "⊥"
    js = sorted(r.tag, key=label_index) if all(l.isalpha() and l.islower() for l in r.tag) else list(r.tag)
    return "{" + ", ".join(f"{l}:{oracle.show(r[l])}" for l in js) + "}"


def dump_basis(count: int, oracle: DomainOracle) -> List[str]:
    return [f"{i}: {format_record(basis_element(i, oracle), oracle)}" for i in range(count)]


# -- finite universes and the continuity checks ------------------------------


def rec_universe(oracle: DomainOracle, labels: Sequence[str]) -> List:
    """⊥ plus every record over a subset of ``labels`` with values from the oracle."""
    elems = oracle.elements()
    out: List = [REC_BOTTOM]
    labels = sorted(labels)
    for k in range(len(labels) + 1):
        for tag in itertools.combinations(labels, k):
            for vals in itertools.product(elems, repeat=k):
                out.append(RecordFunction(tuple(zip(tag, vals))))
    return out


def describe_domain(d: DomainOracle) -> str:
    if isinstance(d, FiniteDomain):
        rel = sorted(f"{a}<{b}" for a, b in d.order_pairs if a != b and a != d.bottom)
        return "{" + ",".join(d.elements()) + ("|" + ",".join(rel) if rel else "") + "}"
    return type(d).__name__


def check_rec_monotonic(small: DomainOracle, big: DomainOracle, labels: Sequence[str] = ("a", "b")) -> Report:
    """Records over a subdomain form a subdomain of the records over the bigger domain."""
    rep = Report()
    subject = f"{describe_domain(small)}<={describe_domain(big)}"
    rep.add("subdomain-premise", subject, is_subdomain(small, big))
    rs = rec_universe(small, labels)
    big_universe = set(rec_universe(big, labels))
    missing = [r for r in rs if r not in big_universe]
    rep.add("rec-universe-inclusion", subject, not missing, f"missing={format_record(missing[0], small)}" if missing else f"records={len(rs)}")
    bad = {"rec-approx-agrees": None, "rec-consistent-agrees": None, "rec-lub-agrees": None}
    for r1 in rs:
        for r2 in rs:
            if bad["rec-approx-agrees"] is None and rec_approx(r1, r2, small) != rec_approx(r1, r2, big):
                bad["rec-approx-agrees"] = (r1, r2)
            c = rec_consistent(r1, r2, small)
            if bad["rec-consistent-agrees"] is None and c != rec_consistent(r1, r2, big):
                bad["rec-consistent-agrees"] = (r1, r2)
            if c and bad["rec-lub-agrees"] is None and rec_lub(r1, r2, small) != rec_lub(r1, r2, big):
                bad["rec-lub-agrees"] = (r1, r2)
    for prop, pair in bad.items():
        detail = "" if pair is None else f"pair={format_record(pair[0], small)},{format_record(pair[1], small)}"
        rep.add(prop, subject, pair is None, detail)
    rep.add("rec-shared-bottom", subject, small.bottom == big.bottom)
    return rep


def union_domain(chain: Sequence[FiniteDomain]) -> FiniteDomain:
    acc = chain[0]
    for d in chain[1:]:
        acc = acc.union(d)
    return acc


def first_appearance(chain: Sequence[FiniteDomain], labels: Sequence[str] = ("a", "b")) -> Dict[Any, int]:
    """Map each record to the 1-based index of the first chain member that builds it."""
    seen: Dict[Any, int] = {}
    for i, d in enumerate(chain, start=1):
        for r in rec_universe(d, labels):
            seen.setdefault(r, i)
    return seen


def check_rec_lub_preservation(chain: Sequence[FiniteDomain], labels: Sequence[str] = ("a", "b")) -> Report:
    """The union of the record universes along a chain equals the records over the union."""
    rep = Report()
    subject = "->".join(describe_domain(d) for d in chain)
    ok_chain = all(is_subdomain(a, b) for a, b in zip(chain, chain[1:]))
    rep.add("chain-ascending", subject, ok_chain)
    top = union_domain(chain)
    rep.add("chain-union-is-domain", subject, top.is_domain())
    lhs = set(first_appearance(chain, labels))
    rhs = set(rec_universe(top, labels))
    only_l = lhs - rhs
    only_r = rhs - lhs
    detail = f"records={len(rhs)}"
    if only_l:
        detail = f"only-in-union-of-records={format_record(next(iter(only_l)), top)}"
    elif only_r:
        detail = f"only-in-records-of-union={format_record(next(iter(only_r)), top)}"
    rep.add("rec-lub-preserved", subject, not only_l and not only_r, detail)
    return rep
