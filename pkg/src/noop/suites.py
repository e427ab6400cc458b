"""Verification suites run by ``noop verify``."""
from __future__ import annotations

import random
from collections import OrderedDict
from typing import Iterable

from .class_types import check_theorem_all_pairs
from .domains import FiniteDomain, FlatNaturals, ascending_chains, nested_pairs, small_domains
from .records import (
    basis_element,
    basis_index,
    check_rec_lub_preservation,
    check_rec_monotonic,
    label_seq,
    label_seq_index,
)
from .report import Report
from .signatures import SignatureEnvironment
from .universe import DEFAULT_BUDGET, check_finitary_projection, check_rank_proposition, object_universe

SUITES = ("rec-laws", "enum", "projection", "rank", "theorem")


def summarize(reports: Iterable[Report], subject: str) -> Report:
    """Collapse many reports into one line per property, keeping the first failure."""
    agg: "OrderedDict[str, list]" = OrderedDict()
    for rep in reports:
        for c in rep.checks:
            slot = agg.setdefault(c.prop, [0, None])
            slot[0] += 1
            if not c.passed and slot[1] is None:
                slot[1] = c
    out = Report()
    for prop, (n, bad) in agg.items():
        if bad is None:
            out.add(prop, subject, True, f"cases={n}")
        else:
            out.add(prop, subject, False, f"at={bad.subject} {bad.detail}".rstrip())
    return out


def suite_rec_laws(max_size: int = 4, labels=("a", "b"), max_chain: int = 4) -> Report:
    doms = small_domains(max_size=max_size)
    mono = (check_rec_monotonic(s, b, labels) for s, b in nested_pairs(doms))
    subject = f"oracles<={max_size},labels={len(labels)}"
    rep = summarize(mono, subject)
    chains = (check_rec_lub_preservation(c, labels) for c in ascending_chains(doms, max_chain))
    rep.extend(summarize(chains, f"chains<={max_chain},labels={len(labels)}"))
    return rep


def suite_enum(prefix: int = 10_000, seed: int = 0, label_limit: int = 4096, samples: int = 200) -> Report:
    rep = Report()
    flat3 = FiniteDomain.flat(3)
    bad = None
    for i in range(prefix + 1):
        r = basis_element(i, flat3)
        if basis_index(r, flat3) != i or basis_element(basis_index(r, flat3), flat3) != r:
            bad = i
            break
    rep.add("basis-roundtrip", f"flat3,0..{prefix}", bad is None, "" if bad is None else f"index={bad}")

    seqs, bad = {}, None
    for n in range(label_limit + 1):
        js = label_seq(n)
        key = tuple(js)
        if key in seqs or label_seq_index(js) != n:
            bad = bad or f"n={n}"
        seqs[key] = n
        k = len(js)
        if k != bin(n).count("1") or any(a >= b for a, b in zip(js, js[1:])) or (js and js[0] < 1):
            bad = bad or f"n={n}"
        if not (2 ** k <= n + 1 and (2 ** k == n + 1) == ((n + 1) & n == 0)):
            bad = bad or f"n={n}"
    rep.add("label-seq-laws", f"0..{label_limit}", bad is None, bad or "")

    rng = random.Random(seed)
    nat = FlatNaturals()
    bad = None
    for _ in range(samples):
        i = rng.randrange(10 ** 40)
        if basis_index(basis_element(i, nat), nat) != i:
            bad = bad or f"index={i}"
    rep.add("basis-roundtrip-sampled", f"naturals,seed={seed}", bad is None, bad or f"samples={samples}")
    return rep


def suite_projection(env: SignatureEnvironment, name: str, rank_bound: int = 2, budget: int = DEFAULT_BUDGET,
                     max_steps: int = 1) -> Report:
    universe = object_universe(env, rank_bound, max_steps=max_steps, budget=budget)
    return check_finitary_projection(universe, f"{name}:rank<={rank_bound}")


def suite_rank(env: SignatureEnvironment, name: str, rank_bound: int = 2, budget: int = DEFAULT_BUDGET,
               max_steps: int = 1) -> Report:
    universe = object_universe(env, rank_bound, max_steps=max_steps, budget=budget)
    return check_rank_proposition(universe, f"{name}:rank<={rank_bound}")


def suite_theorem(env: SignatureEnvironment, rank_bound: int = 2, budget: int = DEFAULT_BUDGET,
                  max_steps: int = 2) -> Report:
    return check_theorem_all_pairs(env, rank_bound, max_steps=max_steps, budget=budget)
