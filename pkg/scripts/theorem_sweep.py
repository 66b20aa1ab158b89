#!/usr/bin/env python3
"""Run the three classifiers over the bounded invariant enumeration.

Prints a tally of candidate tags per locality, the number of inputs that
raise FlagMismatch or NoCarrier, and any candidate failing the homology
audit.  `--stride N` keeps every N-th input for a quick look.
"""

import argparse
import itertools
import sys
import time
from collections import Counter

from sigma3.classify import classify_2local, classify_3local, classify_total, homology_audit
from sigma3.errors import FlagMismatch, NoCarrier
from sigma3.sweep import SweepConfig, invariants

CLASSIFY = {"2": classify_2local, "3": classify_3local, "total": classify_total}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=2)
    ap.add_argument("--max-exp", type=int, default=3)
    ap.add_argument("--max-t", type=int, default=1)
    ap.add_argument("--stride", type=int, default=1)
    ap.add_argument("--smooth", action="store_true")
    args = ap.parse_args(argv)

    cfg = SweepConfig(max_rank=args.max_rank, max_exp=args.max_exp, max_t=args.max_t)
    tags = {loc: Counter() for loc in CLASSIFY}
    errors = Counter()
    bad_audit = []
    n = 0
    t0 = time.time()
    for inv in itertools.islice(invariants(cfg, smooth=args.smooth), 0, None, args.stride):
        n += 1
        for loc, fn in CLASSIFY.items():
            try:
                out = fn(inv)
            except (FlagMismatch, NoCarrier) as exc:
                errors[(loc, type(exc).__name__)] += 1
                continue
            for d in out:
                tags[loc][d.tag] += 1
                if not homology_audit(d, inv):
                    bad_audit.append((loc, d.render()))
    print(f"{n} inputs in {time.time() - t0:.1f}s")
    for loc, c in tags.items():
        print(f"\n[{loc}]")
        for tag, k in sorted(c.items()):
            print(f"  {tag:18s} {k:8d}")
    print()
    for (loc, name), k in sorted(errors.items()):
        print(f"[{loc}] {name}: {k}")
    print(f"homology audit failures: {len(bad_audit)}")
    for loc, r in bad_audit[:20]:
        print(f"  [{loc}] {r}")
    return 1 if bad_audit else 0


if __name__ == "__main__":
    sys.exit(main())
