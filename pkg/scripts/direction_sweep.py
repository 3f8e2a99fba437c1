"""Attractive Poincare polynomials of one affine divisor for many downgrade directions.

    python3 scripts/direction_sweep.py                      # the bundled affine threefold
    python3 scripts/direction_sweep.py my.json --divisor 2 --box 4

Every primitive interior u with coordinates in 1..box (in the basis of the
tail cone's rays) is tried; the answer must not depend on u.
"""
import argparse
import math
import sys
from itertools import product

from tvarih import jsonio
from tvarih import linalg as la
from tvarih.downgrade import DowngradeError, downgrade
from tvarih.engine import EngineConfig, poincare_attractive
from tvarih.examples import affine_threefold


def directions(tail, box):
    seen = set()
    for coef in product(range(1, box + 1), repeat=len(tail.rays)):
        v = [0] * tail.ambient_dim
        for c, r in zip(coef, tail.rays):
            v = la.add(v, la.scale(c, r))
        g = math.gcd(*[int(x) for x in v])
        u = tuple(int(x) // g for x in v)
        if u not in seen:
            seen.add(u)
            yield u


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file", nargs="?")
    ap.add_argument("--divisor", type=int, default=0)
    ap.add_argument("--box", type=int, default=3)
    args = ap.parse_args(argv)
    if args.file:
        e = jsonio.load(args.file)
        d, curve = e.generators[args.divisor], e.curve
    else:
        d, curve = affine_threefold()

    values = {}
    for u in directions(d.tail, args.box):
        try:
            fan = downgrade(d, curve, u)
        except DowngradeError as exc:
            print(f"u = {u}: {exc}")
            continue
        p = poincare_attractive(d, curve, EngineConfig(u=u))
        values[u] = p
        print(f"u = {u}: {len(fan.generators)} divisors, attractive {p}")
    distinct = set(values.values())
    print(f"{len(values)} directions, {len(distinct)} distinct value(s)")
    return 0 if len(distinct) <= 1 else 1


if __name__ == "__main__":
    sys.exit(main())
