"""Run every fixture's declared checks through the command-line front end.

A check is a command line without the program name; ``{file}`` stands for the
fixture path and is appended when absent.  Prints one line per check and exits
nonzero if any check does not pass.

    python3 scripts/verify_corpus.py [fixtures/]
"""

import argparse
import io
import json
import shlex
import sys
import time
from pathlib import Path

from polarcyl.cli import dispatch

ROOT = Path(__file__).resolve().parent.parent


def checks(path):
    doc = json.loads(path.read_text())
    for check in doc.get("checks", []) if isinstance(doc, dict) else []:
        argv = shlex.split(check)
        if "{file}" in argv:
            argv = [str(path) if a == "{file}" else a for a in argv]
        else:
            argv.append(str(path))
        yield argv


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("directory", nargs="?", default=str(ROOT / "fixtures"))
    ap.add_argument("-v", "--verbose", action="store_true", help="show the report of failing checks")
    args = ap.parse_args()
    passed = failed = 0
    for path in sorted(Path(args.directory).glob("*.json")):
        for argv in checks(path):
            out = io.StringIO()
            t = time.perf_counter()
            code = dispatch(argv, out)
            elapsed = time.perf_counter() - t
            ok = code == 0
            passed += ok
            failed += not ok
            print(f"{'PASS' if ok else 'FAIL'} [{code}] {elapsed:6.2f}s  {' '.join(argv)}")
            if not ok and args.verbose:
                print(out.getvalue())
    print(f"{passed} passed, {failed} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
