#!/usr/bin/env python3
"""Run every reproduction check and print the table.

Equivalent to `qsync --output text paper-suite`; kept as a script so the
whole validation story is one `python scripts/reproduce_paper.py` away.
"""

import sys

from qsync.papersuite import run_suite


def main():
    entries = run_suite()
    width = max(len(entry["id"]) for entry in entries)
    failures = 0
    for entry in entries:
        marker = {"pass": "ok", "erratum": "erratum", "fail": "FAIL"}[entry["status"]]
        print(f"{entry['id']:<{width}}  [{marker:^7}]  {entry['detail']}")
        if entry["status"] == "fail":
            failures += 1
            print(f"{'':<{width}}            {entry['description']}")
    print()
    print(
        f"{sum(e['status'] == 'pass' for e in entries)} reproduced, "
        f"{sum(e['status'] == 'erratum' for e in entries)} documented errata, "
        f"{failures} failures"
    )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
