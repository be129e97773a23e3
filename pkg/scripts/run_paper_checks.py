#!/usr/bin/env python3
"""Run the condensed verification battery and store the JSON summary.

Usage:
    python scripts/run_paper_checks.py [outdir]

Exits nonzero if any check fails, so it can gate CI.
"""

import pathlib
import sys

from logevo.cli import main

outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("out")
outdir.mkdir(parents=True, exist_ok=True)
code = main(["report", "--summary", str(outdir / "report.json"), "--seed", "0"])
print(f"summary written to {outdir / 'report.json'}")
sys.exit(code)
