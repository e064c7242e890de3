"""Recompute Table 1's C.-Z.+L79 and New bound columns and compare with the printed values.

Usage: python3 scripts/reproduce_table1.py [--rows 12,24] [--skip-new] [--measure arclength]
"""
import argparse
import time

from lpbounds.reference import TABLE1
from lpbounds.testfn import CheckConfig, SweepConfig, cz_l79_bound, new_packing_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", default=None)
    ap.add_argument("--skip-new", action="store_true")
    ap.add_argument("--measure", default="arclength", choices=["arclength", "pushforward"])
    args = ap.parse_args()
    rows = [int(x) for x in args.rows.split(",")] if args.rows else sorted(TABLE1)
    sweep = SweepConfig()
    print(f"{'n':>4} {'CZ+L79':>11} {'ref':>10} {'dev':>8}   {'New':>11} {'ref':>10} {'dev':>8}  cert  secs")
    for n in rows:
        t0 = time.perf_counter()
        ref_cz, ref_new = TABLE1[n][4], TABLE1[n][5]
        cz = cz_l79_bound(n, sweep)
        line = f"{n:>4} {cz.value:11.4e} {ref_cz:10.4g} {cz.value / ref_cz - 1:+8.2%}"
        if not args.skip_new:
            new = new_packing_bound(n, sweep, CheckConfig(measure=args.measure))
            line += f"   {new.value:11.4e} {ref_new:10.4g} {new.value / ref_new - 1:+8.2%}  {str(new.certified):5}"
        print(line + f" {time.perf_counter() - t0:5.1f}", flush=True)


if __name__ == "__main__":
    main()
