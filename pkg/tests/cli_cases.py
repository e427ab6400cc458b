"""Golden CLI cases: (golden file stem, argv, expected exit code).

Paths are relative to the package root. Regenerate with
``python3 scripts/regen_golden.py`` after an intended output change.
"""

SHORT_PAIR = "(obj Pair (fields (first ⊥)) (methods (equals ⊥M) (swap ⊥M)))"
BAD_SWAP = (
    "(obj Pair (fields (first ⊥) (second ⊥)) (methods (equals ⊥M)"
    " (swap (table ((⊥) (obj Object (fields) (methods (equals ⊥M))))))))"
)

CASES = [
    ("parse_appendixA", ["parse", "fixtures/appendixA.noop"], 0),
    ("parse_diamond", ["parse", "fixtures/diamond.noop"], 0),
    ("parse_empty", ["parse", "fixtures/empty.noop"], 0),
    ("check_env_appendixA", ["check-env", "fixtures/appendixA.noop"], 0),
    ("check_env_cycle", ["check-env", "fixtures/cycle.noop"], 1),
    ("check_env_dropped_method", ["check-env", "fixtures/dropped_method.noop"], 1),
    ("closure_object", ["closure", "fixtures/appendixA.noop", "Object"], 0),
    ("closure_leaf", ["closure", "fixtures/diamond.noop", "Leaf"], 0),
    ("subsign_pair_object", ["subsign", "fixtures/appendixA.noop", "Pair", "Object"], 0),
    ("subsign_object_pair", ["subsign", "fixtures/appendixA.noop", "Object", "Pair"], 0),
    ("subsign_pair_pair", ["subsign", "fixtures/appendixA.noop", "Pair", "Pair"], 0),
    ("subsign_leaf_left", ["subsign", "fixtures/diamond.noop", "Leaf", "Left"], 0),
    ("shapes_pair", ["shapes", "fixtures/appendixA.noop", "Pair"], 0),
    ("filter_shape_mismatch", ["filter", "fixtures/appendixA.noop", SHORT_PAIR], 0),
    ("filter_bad_swap", ["filter", "fixtures/appendixA.noop", BAD_SWAP], 0),
    ("member_pair_object", ["member", "fixtures/appendixA.noop",
                            "(obj Pair (fields (first ⊥) (second ⊥)) (methods (equals ⊥M) (swap ⊥M)))", "Object"], 0),
    ("member_object_pair", ["member", "fixtures/appendixA.noop", "(obj Object (fields) (methods (equals ⊥M)))", "Pair"], 0),
    ("enum_basis_flat3", ["enum-basis", "--prefix", "20"], 0),
    ("enum_basis_naturals", ["enum-basis", "--prefix", "20", "--oracle", "naturals"], 0),
    ("enum_members_object_rank1", ["enum-members", "fixtures/appendixA.noop", "Object", "--rank", "1"], 0),
    ("verify_appendixA_theorem", ["verify", "fixtures/appendixA.noop", "--suite", "theorem", "--rank", "2"], 0),
    ("verify_diamond_theorem", ["verify", "fixtures/diamond.noop", "--suite", "theorem", "--rank", "2"], 0),
    ("verify_appendixA_rank", ["verify", "fixtures/appendixA.noop", "--suite", "rank"], 0),
    ("verify_enum", ["verify", "fixtures/appendixA.noop", "--suite", "enum", "--prefix", "10000"], 0),
    ("verify_rec_laws", ["verify", "fixtures/appendixA.noop", "--suite", "rec-laws"], 0),
    ("verify_cycle_all", ["verify", "fixtures/cycle.noop", "--suite", "all"], 1),
    ("verify_dropped_method_theorem", ["verify", "fixtures/dropped_method.noop", "--suite", "theorem"], 1),
]
