"""Run every acceptance criterion and print one PASS/FAIL line each.

Exit status is 0 iff every criterion passes within its time bound.
"""
import runpy
import sys
from pathlib import Path

if __name__ == "__main__":
    ns = runpy.run_path(str(Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"))
    sys.exit(0 if all(o.ok for o in ns["run_all"]()) else 1)
