#!/usr/bin/env python3
"""Regenerate the sample CSVs consumed by the plotting front end.

Usage:
    python scripts/make_sample_csvs.py [outdir]   (default: frontend/samples)

One file per documented schema: a rate sweep, a compensated sandwich band and
a profile-error decay curve.  Timestamps are suppressed so reruns are
byte-identical.
"""

import pathlib
import sys

from logevo.cli import main

outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("frontend/samples")
outdir.mkdir(parents=True, exist_ok=True)

jobs = [
    ["rates", "--target", "l2", "--family", "gaussian", "--n", "3",
     "--tmin", "1e2", "--tmax", "1e4", "--points", "9",
     "--out", str(outdir / "rates_l2_n3.csv"), "--no-timestamp"],
    ["sandwich", "--claim", "P62", "--tmin", "1e3", "--tmax", "1e5", "--points", "7",
     "--out", str(outdir / "sandwich_P62.csv"), "--no-timestamp"],
    ["sandwich", "--claim", "P61", "--tmin", "1e3", "--tmax", "1e5", "--points", "7",
     "--out", str(outdir / "sandwich_P61.csv"), "--no-timestamp"],
    ["profile-error", "--family", "gaussian", "--n", "2",
     "--tmin", "10", "--tmax", "160", "--points", "9",
     "--out", str(outdir / "profile_error_n2.csv"), "--no-timestamp"],
]

for argv in jobs:
    code = main(argv)
    if code != 0:
        sys.exit(code)
    print("wrote", argv[argv.index("--out") + 1])
