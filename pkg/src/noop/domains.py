"""Element-domain oracles that parameterize the record constructor.

An oracle presents a domain through its finite elements: a bottom element,
a decidable approximation order, consistency and binary lub, and (when the
domain is enumerable) an effective enumeration starting at bottom.
"""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple


class Inconsistent(ValueError):
    """A lub was requested for elements with no common upper bound."""

    def __init__(self, a, b):
        super().__init__(f"Inconsistent({a!r}, {b!r})")
        self.a, self.b = a, b


class DomainOracle(ABC):
    bottom: Hashable
    #: number of finite elements; None for an infinite enumeration
    size: Optional[int] = None

    @abstractmethod
    def approx(self, a, b) -> bool: ...

    @abstractmethod
    def consistent(self, a, b) -> bool: ...

    @abstractmethod
    def lub(self, a, b): ...

    def enumerate(self, i: int):
        raise NotImplementedError(f"{type(self).__name__} has no effective enumeration")

    def index_of(self, x) -> int:
        raise NotImplementedError(f"{type(self).__name__} has no effective enumeration")

    def show(self, x) -> str:
        return str(x)

    def elements(self) -> List:
        if self.size is None:
            raise ValueError("infinite domain has no finite universe")
        return [self.enumerate(i) for i in range(self.size)]


class FiniteDomain(DomainOracle):
    """A finite poset with least element, closed under lubs of consistent pairs.

    ``elements[0]`` is bottom and the list order is the enumeration order.
    ``order`` holds generating pairs ``(a, b)`` meaning a ⊑ b; its
    reflexive-transitive closure is taken.
    """

    def __init__(self, elements: Sequence[str], order: Iterable[Tuple[str, str]] = ()):
        elements = tuple(elements)
        if not elements:
            raise ValueError("a domain needs at least a bottom element")
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate elements")
        self._elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        self.bottom = elements[0]
        self.size = len(elements)
        leq = {(e, e) for e in elements} | {(self.bottom, e) for e in elements}
        for a, b in order:
            if a not in self._index or b not in self._index:
                raise ValueError(f"order mentions unknown element in {(a, b)}")
            leq.add((a, b))
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(leq), list(leq)):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
        for a, b in leq:
            if a != b and (b, a) in leq:
                raise ValueError(f"order is not antisymmetric on {a}, {b}")
        self._leq: FrozenSet[Tuple[str, str]] = frozenset(leq)
        self._lubs: Dict[Tuple[str, str], Optional[str]] = {}
        for a in elements:
            for b in elements:
                ups = [u for u in elements if (a, u) in leq and (b, u) in leq]
                least = [u for u in ups if all((u, v) in leq for v in ups)]
                self._lubs[a, b] = least[0] if least else None

    @classmethod
    def flat(cls, n: int) -> "FiniteDomain":
        """Bottom plus n-1 pairwise incomparable elements d1..d(n-1)."""
        return cls(["⊥"] + [f"d{i}" for i in range(1, n)])

    @classmethod
    def chain(cls, n: int) -> "FiniteDomain":
        names = ["⊥"] + [f"c{i}" for i in range(1, n)]
        return cls(names, zip(names, names[1:]))

    @property
    def order_pairs(self) -> FrozenSet[Tuple[str, str]]:
        return self._leq

    def approx(self, a, b) -> bool:
        return (a, b) in self._leq

    def consistent(self, a, b) -> bool:
        return any((a, u) in self._leq and (b, u) in self._leq for u in self._elements)

    def lub(self, a, b):
        if not self.consistent(a, b):
            raise Inconsistent(a, b)
        r = self._lubs[a, b]
        if r is None:
            raise ValueError(f"{a} and {b} are consistent but have no least upper bound")
        return r

    def is_domain(self) -> bool:
        """Every consistent pair has a least upper bound."""
        return all(
            self._lubs[a, b] is not None
            for a in self._elements
            for b in self._elements
            if self.consistent(a, b)
        )

    def enumerate(self, i: int):
        if not 0 <= i < self.size:
            raise IndexError(i)
        return self._elements[i]

    def index_of(self, x) -> int:
        return self._index[x]

    def elements(self) -> List:
        return list(self._elements)

    def restrict(self, subset: Iterable[str]) -> "FiniteDomain":
        keep = [e for e in self._elements if e in set(subset)]
        if keep[:1] != [self.bottom]:
            raise ValueError("restriction must keep the bottom element")
        return FiniteDomain(keep, [(a, b) for a, b in self._leq if a in keep and b in keep])

    def union(self, other: "FiniteDomain") -> "FiniteDomain":
        if other.bottom != self.bottom:
            raise ValueError("domains do not share a bottom element")
        elems = list(self._elements) + [e for e in other._elements if e not in self._index]
        return FiniteDomain(elems, self._leq | other._leq)

    def __eq__(self, other):
        return isinstance(other, FiniteDomain) and set(self._elements) == set(other._elements) and self._leq == other._leq

    def __hash__(self):
        return hash((frozenset(self._elements), self._leq))

    def __repr__(self):
        rel = sorted((a, b) for a, b in self._leq if a != b and a != self.bottom)
        return f"FiniteDomain({list(self._elements)}, {rel})"


class FlatNaturals(DomainOracle):
    """The infinite flat domain ⊥, d1, d2, ... with element i encoded as the int i."""

    bottom = 0
    size = None

    def approx(self, a, b):
        return a == 0 or a == b

    def consistent(self, a, b):
        return a == 0 or b == 0 or a == b

    def lub(self, a, b):
        if not self.consistent(a, b):
            raise Inconsistent(a, b)
        return b if a == 0 else a

    def enumerate(self, i):
        if i < 0:
            raise IndexError(i)
        return i

    def index_of(self, x):
        return x

    def show(self, x):
        return "⊥" if x == 0 else f"d{x}"


def is_subdomain(small: DomainOracle, big: DomainOracle) -> bool:
    """Subdomain test for finite oracles: shared bottom, universe inclusion, and
    agreement of order, consistency and lubs on the smaller universe."""
    if small.bottom != big.bottom:
        return False
    xs = small.elements()
    big_set = set(big.elements())
    if not set(xs) <= big_set:
        return False
    for a in xs:
        for b in xs:
            if small.approx(a, b) != big.approx(a, b):
                return False
            c = small.consistent(a, b)
            if c != big.consistent(a, b):
                return False
            if c and small.lub(a, b) != big.lub(a, b):
                return False
    return True


def small_domains(pool: Sequence[str] = ("a", "b", "c"), bottom: str = "⊥", max_size: int = 4) -> List[FiniteDomain]:
    """Every finite domain whose proper elements are drawn from ``pool``.

    A candidate is any strict partial order on a subset of the pool, topped
    up with a least element; those lacking lubs for consistent pairs are
    discarded. Deterministic order.
    """
    out = []
    for k in range(0, min(len(pool), max_size - 1) + 1):
        for subset in itertools.combinations(pool, k):
            pairs = [(a, b) for a in subset for b in subset if a != b]
            for bits in itertools.product((False, True), repeat=len(pairs)):
                rel = {p for p, on in zip(pairs, bits) if on}
                if any((b, a) in rel for a, b in rel):
                    continue
                if any((a, d) not in rel for (a, b) in rel for (c, d) in rel if b == c and a != d):
                    continue
                dom = FiniteDomain((bottom,) + subset, rel)
                if dom.is_domain():
                    out.append(dom)
    return out


def nested_pairs(domains: Sequence[FiniteDomain]) -> Iterator[Tuple[FiniteDomain, FiniteDomain]]:
    for big in domains:
        for small in domains:
            if is_subdomain(small, big):
                yield small, big


def ascending_chains(domains: Sequence[FiniteDomain], max_length: int = 4) -> Iterator[Tuple[FiniteDomain, ...]]:
    """Strictly ascending subdomain chains of length 1..max_length."""
    succ = {
        i: [j for j, b in enumerate(domains) if i != j and len(b.elements()) > len(a.elements()) and is_subdomain(a, b)]
        for i, a in enumerate(domains)
    }

    def extend(chain):
        yield tuple(domains[i] for i in chain)
        if len(chain) < max_length:
            for j in succ[chain[-1]]:
                yield from extend(chain + [j])

    for i in range(len(domains)):
        yield from extend([i])
