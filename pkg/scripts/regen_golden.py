"""Rewrite tests/golden/*.out from the current CLI output."""
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES  # noqa: E402
from noop.cli import main  # noqa: E402


def run():
    import os

    os.chdir(ROOT)
    golden = ROOT / "tests" / "golden"
    golden.mkdir(exist_ok=True)
    for stem, argv, want in CASES:
        out = io.StringIO()
        code = main(argv, out)
        if code != want:
            print(f"{stem}: exit {code}, expected {want}", file=sys.stderr)
        (golden / f"{stem}.out").write_text(out.getvalue(), encoding="utf-8")
        print(f"wrote {stem}.out")


if __name__ == "__main__":
    run()
