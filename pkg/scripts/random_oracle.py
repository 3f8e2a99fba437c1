"""Compare the general engine with the closed forms on random complete fans.

    python3 scripts/random_oracle.py --rank 2 --count 50 --seed 7 --tangency 0.5
    python3 scripts/random_oracle.py --rank 1 --count 500 --dump /tmp/fans

Prints one line per sample and a summary; exits 1 on any disagreement.
With --dump every sample is written as a JSON document that the CLI accepts.
"""
import argparse
import collections
import dataclasses
import pathlib
import sys
import time

from tvarih import jsonio
from tvarih.engine import poincare_complete, poincare_surface_closed_form, poincare_threefold_closed_form
from tvarih.randomgen import RandomFanConfig, random_fans


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--dump", type=pathlib.Path, default=None, help="directory for the sampled documents")
    ap.add_argument("--quiet", action="store_true")
    # every RandomFanConfig field becomes a flag
    for f in dataclasses.fields(RandomFanConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.type == "tuple":
            ap.add_argument(flag, type=lambda s: tuple(int(x) for x in s.split(",")), default=f.default)
        else:
            ap.add_argument(flag, type=type(f.default), default=f.default)
    return ap.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    cfg = RandomFanConfig(**{f.name: getattr(args, f.name) for f in dataclasses.fields(RandomFanConfig)})
    closed = {1: poincare_surface_closed_form, 2: poincare_threefold_closed_form}.get(cfg.rank)
    if closed is None:
        print("closed forms exist for rank 1 and 2 only", file=sys.stderr)
        return 2
    start = time.perf_counter()
    fans = random_fans(cfg, args.count)
    generated = time.perf_counter() - start
    if args.dump:
        args.dump.mkdir(parents=True, exist_ok=True)

    bad = 0
    seen = collections.Counter()
    start = time.perf_counter()
    for i, e in enumerate(fans):
        rep = poincare_complete(e)
        want = closed(e)
        ok = rep.poincare == want
        bad += not ok
        seen[str(rep.poincare)] += 1
        if args.dump:
            (args.dump / f"sample{i:04d}.json").write_text(jsonio.dumps(jsonio.emit(e)))
        if not args.quiet or not ok:
            dims = collections.Counter(o.orbit_dim for o in rep.orbits)
            print(f"{i:4d} genus {e.genus} |supp| {len(rep.support)} orbits {dict(sorted(dims.items()))} "
                  f"P = {rep.poincare}" + ("" if ok else f"  CLOSED FORM {want}"))
    print(f"{len(fans) - bad}/{len(fans)} agree; generation {generated:.1f}s, "
          f"engine {time.perf_counter() - start:.1f}s; {len(seen)} distinct polynomials")
    for p, n in seen.most_common(5):
        print(f"  {n:4d} x {p}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
