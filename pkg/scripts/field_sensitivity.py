#!/usr/bin/env python3
"""Run every verification suite over several fields and tabulate outcome and runtime.

Over A3 and D4 all combinatorial answers are field independent; this checks that the
linear algebra agrees, and shows what larger fields cost. Suites that enumerate
subobjects need a finite field, and some exceed the enumeration bounds over F3;
those cells show n/a."""

import argparse
import time

from torsionlab.errors import SizeError
from torsionlab.exactla import Field
from torsionlab.suites import SUITES, SuiteConfig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", type=int, nargs="+", default=[2, 3, 0], help="primes, 0 for the rationals")
    ap.add_argument("--suites", nargs="+", default=sorted(SUITES), choices=sorted(SUITES))
    ap.add_argument("--exhaustive", action="store_true")
    args = ap.parse_args(argv)
    fields = [Field(p) for p in args.fields]
    print(f"{'suite':22}" + "".join(f"{f.name:>14}" for f in fields))
    failed = False
    for name in args.suites:
        row = f"{name:22}"
        for fld in fields:
            t0 = time.perf_counter()
            try:
                res = SUITES[name](SuiteConfig(fld, args.exhaustive))
            except SizeError:
                row += f"{'n/a':>14}"
                continue
            failed |= not res.ok
            row += f"{('ok' if res.ok else 'FAIL'):>6} {time.perf_counter() - t0:6.1f}s"
        print(row, flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
