#!/usr/bin/env python3
"""Print pi_n of every tabulated elementary complex, exponents up to --max-exp."""

import argparse

from sigma3 import catalog
from sigma3.errors import UnsupportedTable


def hosts(max_exp):
    es = range(1, max_exp + 1)
    for n in (4, 5, 6, 7, 8):
        yield catalog.sphere(n)
    for top in (5, 6, 7, 8):
        for p in (2, 3):
            for e in es:
                yield catalog.moore(p, e, top)
    for top in (6, 7, 8):
        yield catalog.ceta(top)
        for e in es:
            yield catalog.cbar(e, top)
            yield catalog.chat(e, top)
        for r, s in zip(es, es):
            yield catalog.ccheck(r, s, top)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=2)
    args = ap.parse_args(argv)
    for x in hosts(args.max_exp):
        for n in range(x.bottom, x.bottom + 4):
            try:
                t = catalog.pi(x, n)
            except UnsupportedTable:
                continue
            print(f"pi_{n}({x.literal()}) = {t}")


if __name__ == "__main__":
    main()
