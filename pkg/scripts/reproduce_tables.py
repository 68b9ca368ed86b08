"""Regenerate every desk-scale analysis artifact in one run.

Drives the installed CLI exactly as a user would, writing all outputs
under one directory (default ./tables). With the default ceiling of 1e8
the full run takes well under a minute; pass --top 1e9 or 1e10 for the
deeper counting rows if you have the minutes to spare.

Usage:
    python scripts/reproduce_tables.py [--outdir tables] [--top 1e8] [--seed 1]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from digitlaw.cli import main as digitlaw_main

ZEROS_DECADES = (10**3, 10**4, 10**5)


def run(argv: list[str]) -> None:
    print("$ digitlaw " + " ".join(argv), flush=True)
    code = digitlaw_main(argv)
    if code != 0:
        sys.exit(f"command failed with exit code {code}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("tables"))
    parser.add_argument("--top", type=float, default=1e8,
                        help="prime ceiling for counting table and batteries")
    parser.add_argument("--seed", type=int, default=1,
                        help="seed for the pseudo-prime realization")
    args = parser.parse_args(argv)
    out = args.outdir
    out.mkdir(parents=True, exist_ok=True)
    top = int(args.top)
    top_str = f"{top:g}" if top == float(f"{top:g}") else str(top)
    t0 = time.time()

    # counting + conformance-c + per-decade exponent tables in one pass
    run(["tables", "--max", top_str, "--a", "1.1", "--out", str(out / "primes")])

    # goodness-of-fit battery per decade, size-law exponent a = 1.1
    battery_top = min(top, 10**8)
    n = 10**4
    while n <= battery_top:
        run(["analyze", "--seq", "primes", "--max", str(n), "--a", "1.1",
             "--out", str(out / f"primes_{n:.0e}".replace("+0", ""))])
        n *= 10

    # zeros battery over the bundled table, effective constant a = 2.92
    for n in ZEROS_DECADES:
        run(["analyze", "--seq", "zeros", "--max", str(n), "--a", "2.92",
             "--out", str(out / f"zeros_{n:.0e}".replace("+0", ""))])

    # one seeded pseudo-prime realization and its battery
    n = 10**4
    while n <= battery_top:
        run(["analyze", "--seq", "cramer", "--max", str(n), "--a", "1.1",
             "--seed", str(args.seed),
             "--out", str(out / f"cramer_{n:.0e}".replace("+0", ""))])
        n *= 10
    run(["cramer", "--max", "1000000", "--seed", str(args.seed),
         "--out", str(out / "cramer_run")])

    # decade-folded conformance curves at N = 1e7
    run(["conform", "--max", "10000000", "--a", "1.1", "--grid", "100",
         "--out", str(out / "conform_1e7")])

    # per-decade moment fits and the least-squares size constant
    run(["fit", "--seq", "primes", "--max", top_str,
         "--out", str(out / "fit_primes")])
    run(["fit", "--seq", "zeros", "--max", "100000",
         "--out", str(out / "fit_zeros")])
    run(["fit", "--seq", "cramer", "--max", top_str, "--seed", str(args.seed),
         "--out", str(out / "fit_cramer")])

    # first-digit walks: prime-driven drift vs uniform-driven diffusion
    run(["walk", "--seq", "primes", "--max", "1000000", "--steps", "10000",
         "--out", str(out / "walk_primes")])
    run(["walk", "--seq", "integers", "--max", "1000000", "--steps", "10000",
         "--seed", "7", "--out", str(out / "walk_integers")])

    # two- and three-digit histograms for the extended-law comparison
    for k in (2, 3):
        run(["analyze", "--seq", "primes", "--max", str(battery_top),
             "--digits", str(k), "--a", "1.1",
             "--out", str(out / f"primes_k{k}")])

    print(f"all artifacts written under {out}/ in {time.time() - t0:.0f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
