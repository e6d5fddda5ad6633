"""Rewrite tests/golden/*.txt from the current CLI.  Review the diff before committing."""

import contextlib
import io
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES, render  # noqa: E402
from setoidw.cli import main  # noqa: E402


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return render(code, out.getvalue(), err.getvalue())


if __name__ == "__main__":
    os.chdir(ROOT)
    gold = ROOT / "tests" / "golden"
    gold.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (gold / f"{name}.txt").write_text(run(argv), encoding="utf-8")
    print(f"wrote {len(CASES)} golden files")
