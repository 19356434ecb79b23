#!/usr/bin/env python3
"""Stand-in Prolog interpreter for hermetic tests.

Consults a clause file without interpreting it: counts clauses (lines ending
with a period) and distinct defined relations (head functors), then reports
what was loaded.  Options mimic the handful of interpreter behaviours the
test runner must cope with: passing a goal, sleeping, failing.
"""

import argparse
import re
import sys
import time

HEAD_RE = re.compile(r"^([a-z]\w*)")


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("file")
    parser.add_argument("-g", "--goal")
    parser.add_argument("--sleep", type=float, default=0.0)
    parser.add_argument("--exit", type=int, default=0)
    args = parser.parse_args()

    if args.sleep:
        time.sleep(args.sleep)

    with open(args.file, encoding="utf-8") as handle:
        lines = [line.rstrip() for line in handle]

    clause_lines = [line for line in lines if line.endswith(".")]
    functors = []
    for line in clause_lines:
        if line.startswith(":-"):
            continue
        m = HEAD_RE.match(line)
        if m and m.group(1) not in functors:
            functors.append(m.group(1))

    print(f"{len(functors)}-relation program loaded")
    print(f"{len(clause_lines)} clauses consulted")
    if args.goal:
        print(f"goal {args.goal}: true")
    return args.exit


if __name__ == "__main__":
    sys.exit(main())
