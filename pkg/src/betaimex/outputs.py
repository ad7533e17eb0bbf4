"""Deterministic file emitters: CSV, JSON, portable graymaps, run manifests.

Identical inputs produce byte-identical files (floats via repr, sorted JSON
keys, no timestamps), so reruns with the same config and seed can be diffed.
"""
from __future__ import annotations

import json
import os

import numpy as np

from . import __version__


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header, rows):
    try:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def write_json(path, payload):
    try:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write JSON to {path}: {exc}") from exc


def write_pgm(path, mask, binary=True):
    """Two-level portable graymap of a boolean mask (True -> 255).

    mask is indexed [re, im]; rows of the image run top-down in decreasing
    imaginary part, columns left-right in increasing real part.
    """
    image = (np.asarray(mask).T[::-1, :]).astype(np.uint8) * 255
    h, w = image.shape
    try:
        if binary:
            with open(path, "wb") as fh:
                fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
                fh.write(image.tobytes())
        else:
            with open(path, "w") as fh:
                fh.write(f"P2\n{w} {h}\n255\n")
                for row in image:
                    fh.write(" ".join(str(int(v)) for v in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write PGM to {path}: {exc}") from exc


def write_field_snapshot(stem, grid, values, t):
    """Field snapshot: row-major float64 at `stem.f64` plus `stem.json` metadata."""
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.float64))
    try:
        with open(stem + ".f64", "wb") as fh:
            fh.write(arr.tobytes())
    except OSError as exc:
        raise OSError(f"cannot write field snapshot to {stem}.f64: {exc}") from exc
    write_json(stem + ".json", {"nx": grid.nx, "ny": grid.ny,
                                "Lx": grid.Lx, "Ly": grid.Ly, "t": t})


def write_manifest(outdir, experiment, config_dict, seed):
    payload = {
        "experiment": experiment,
        "config": config_dict,
        "seed": seed,
        "version": __version__,
    }
    write_json(os.path.join(outdir, "manifest.json"), payload)
    return payload
