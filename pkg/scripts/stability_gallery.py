#!/usr/bin/env python3
"""Scan the nine stability regions (k = 2,3,4 x beta = 1,3,5) on a shared window.

Writes one PGM mask + JSON sidecar per scheme and an area comparison CSV,
for side-by-side comparison of the schemes on one shared scale.
"""
import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from betaimex.outputs import write_csv, write_json, write_pgm
from betaimex.stability import scan_region


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="stability_gallery")
    ap.add_argument("--res", type=int, default=600)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    rows = []
    for k in (2, 3, 4):
        for beta in (1.0, 3.0, 5.0):
            t0 = time.time()
            grid = scan_region(k, beta, resolution=(args.res, args.res))
            stem = os.path.join(args.out, f"k{k}_beta{beta:g}")
            write_pgm(stem + ".pgm", grid.mask)
            write_json(stem + ".json", {"k": k, "beta": beta,
                                        "window": list(grid.window),
                                        "area": grid.area})
            rows.append((k, beta, grid.area))
            print(f"k={k} beta={beta:g}: area={grid.area:.3f} ({time.time()-t0:.1f}s)")
    write_csv(os.path.join(args.out, "areas.csv"), ["k", "beta", "area"], rows)


if __name__ == "__main__":
    main()
