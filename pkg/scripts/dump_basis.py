"""Print a prefix of the record basis enumeration together with the round-trip index.

    python3 scripts/dump_basis.py --count 30 --oracle chain:3
"""
import argparse

from noop.domains import FiniteDomain, FlatNaturals
from noop.records import basis_element, basis_index, format_record


def oracle_from(spec):
    if spec == "naturals":
        return FlatNaturals()
    kind, n = spec.split(":")
    return getattr(FiniteDomain, kind)(int(n))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--oracle", default="flat:3")
    args = ap.parse_args()
    d = oracle_from(args.oracle)
    for i in range(args.start, args.start + args.count):
        r = basis_element(i, d)
        print(f"{i:>8}  {format_record(r, d):<40}  index={basis_index(r, d)}")


if __name__ == "__main__":
    main()
