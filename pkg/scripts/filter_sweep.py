"""Coincidence probability of the Cheshire setup with one filter, versus filter strength.

    python3 scripts/filter_sweep.py [--tmax 10] [--n 11]
"""
import argparse

import numpy as np

from postselect import cheshire


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--tmax", type=float, default=10.0)
    ap.add_argument("--n", type=int, default=11)
    args = ap.parse_args()

    s = cheshire.build_scenario()
    ts = np.linspace(0.0, args.tmax, args.n)
    cols = [(loc, sens) for loc in cheshire.LOCATIONS for sens in (False, True)]
    head = ["t"] + [("down_pi_" if sens else "pi_") + loc for loc, sens in cols]
    print(" ".join(f"{h:>12}" for h in head))
    for t in ts:
        vals = [cheshire.filter_experiment(s, loc, sens, t) for loc, sens in cols]
        print(" ".join(f"{v:12.6f}" for v in [t, *vals]))


if __name__ == "__main__":
    main()
