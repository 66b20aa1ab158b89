#!/usr/bin/env python3
"""Cross-check canonical forms against brute-force orbits on a list of wedges.

    python3 scripts/oracle_sweep.py                  # the acceptance family
    python3 scripts/oracle_sweep.py S6vS7 "P7(2^1)vS7" --max-length 3
"""

import argparse
import sys
import time

from sigma3.errors import Indeterminate
from sigma3.oracle import ACCEPTANCE_WEDGES, DEFAULT_STATE_BUDGET, OracleConfig, cross_check
from sigma3.search import DEFAULT_MAX_LENGTH


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("wedges", nargs="*", default=list(ACCEPTANCE_WEDGES))
    ap.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    ap.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    ap.add_argument("-v", "--verbose", action="store_true", help="print every orbit")
    args = ap.parse_args(argv)

    cfg = OracleConfig(max_length=args.max_length, budget=args.budget)
    failed = 0
    t_all = time.time()
    for w in args.wedges:
        t0 = time.time()
        try:
            rep = cross_check(w, config=cfg)
        except Indeterminate as exc:
            print(f"{w:28s} indeterminate: {exc}")
            failed += 1
            continue
        status = "ok" if rep.ok else "MISMATCH"
        failed += not rep.ok
        print(f"{w:28s} {rep.vector_count:5d} vectors {rep.orbit_count:4d} orbits {rep.moves:4d} moves "
              f"{time.time() - t0:6.2f}s  {status}")  # fmt: skip
        if args.verbose or not rep.ok:
            print(rep.format())
    print(f"{len(args.wedges)} wedges, {failed} failing, {time.time() - t_all:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
