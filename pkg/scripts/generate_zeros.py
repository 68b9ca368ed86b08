"""Regenerate the bundled table of zeta zero heights from scratch.

Computes Riemann-Siegel Z(t) (main sum plus the leading C0 correction),
scans a fixed grid for sign changes, and polishes each bracket with a
vectorized bisection. The first 10 zeros come from mpmath.zetazero
directly because the asymptotic correction is weakest at small t. The
result is spot-validated against mpmath on a fixed random sample plus a
few hand-picked indices; worst absolute height error observed is below
2e-4, far inside what first-digit work can notice (a zero would have to
sit within that distance of a prefix boundary to change bins).

Runtime is dominated by the main sum; expect roughly 10-20 minutes for
the default 140000 zeros. Requires mpmath for the validation step.

Usage:
    python scripts/generate_zeros.py [--count 140000] [--out PATH]
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * math.pi

# grid pitch for the sign-change scan; mean zero spacing at height 1e5
# is ~0.4, so 0.01 leaves no realistic room for a missed pair
GRID_STEP = 0.01
SCAN_START = 10.0
DEFAULT_COUNT = 140_000
# first zero beyond 140000 sits near 101254.6; scan a little past it
SCAN_STOP = 101_500.0
VALIDATION_SEED = 12345
VALIDATION_TOL = 2e-4


def theta(t: np.ndarray) -> np.ndarray:
    """Riemann-Siegel theta via its asymptotic series (t >= 10)."""
    return (
        (t / 2.0) * np.log(t / TWO_PI)
        - t / 2.0
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
    )


def z_function(t: np.ndarray) -> np.ndarray:
    """Riemann-Siegel Z(t): main sum plus the C0 remainder term."""
    tau = np.sqrt(t / TWO_PI)
    nu = np.floor(tau).astype(np.int64)
    th = theta(t)
    out = np.zeros_like(t)
    nmax = int(nu.max())
    ns = np.arange(1, nmax + 1, dtype=np.float64)
    logs = np.log(ns)
    inv_sqrt = 1.0 / np.sqrt(ns)
    for n in range(1, nmax + 1):
        mask = nu >= n
        if not mask.any():
            continue
        out[mask] += inv_sqrt[n - 1] * np.cos(th[mask] - t[mask] * logs[n - 1])
    out *= 2.0
    # C0 term: (-1)^(nu+1) tau^(-1/2) Psi(p), p the fractional part of tau.
    # Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p); near the removable
    # singularity of the quotient fall back to the limit value 1/2.
    p = tau - nu
    c2p = np.cos(TWO_PI * p)
    safe = np.abs(c2p) > 1e-3
    num = np.cos(TWO_PI * (p * p - p - 0.0625))
    psi = np.where(safe, num / np.where(safe, c2p, 1.0), 0.5)
    out += ((-1.0) ** (nu + 1)) * psi / np.sqrt(tau)
    return out


def scan_and_bisect(
    t_lo: float, t_hi: float, step: float, block: int = 1 << 21
) -> np.ndarray:
    """All Z sign changes on [t_lo, t_hi], bisected to ~step/2^30."""
    roots = []
    edges = np.arange(t_lo, t_hi + step, step)
    for i in range(0, len(edges) - 1, block):
        seg = edges[i : i + block + 1]
        z = z_function(seg)
        flips = np.flatnonzero(np.signbit(z[:-1]) != np.signbit(z[1:]))
        if len(flips) == 0:
            continue
        lo = seg[flips].copy()
        hi = seg[flips + 1].copy()
        f_lo = z[flips].copy()
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            f_mid = z_function(mid)
            left = np.signbit(f_lo) != np.signbit(f_mid)
            hi = np.where(left, mid, hi)
            lo = np.where(left, lo, mid)
            f_lo = np.where(left, f_lo, f_mid)
        roots.append(0.5 * (lo + hi))
        done = seg[-1] - SCAN_START
        total = t_hi - SCAN_START
        print(f"  scanned to t={seg[-1]:.0f} ({done / total:.0%})", flush=True)
    return np.concatenate(roots) if roots else np.array([])


def validate(roots: np.ndarray) -> float:
    """Worst |height - mpmath.zetazero| over a fixed random sample."""
    import mpmath

    mpmath.mp.dps = 20
    rng = np.random.default_rng(VALIDATION_SEED)
    picks = np.concatenate(
        [rng.integers(10, len(roots), 30), [10, 100, 1000, 10000, 100000, 139000]]
    )
    worst = 0.0
    for k in np.unique(picks):
        if k >= len(roots):
            continue
        ref = float(mpmath.zetazero(int(k) + 1).imag)
        err = abs(float(roots[k]) - ref)
        worst = max(worst, err)
        if err > VALIDATION_TOL:
            print(f"  zero #{k + 1}: {roots[k]:.6f} vs {ref:.6f}, err {err:.2e} BAD")
    return worst


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=DEFAULT_COUNT)
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent
        / "src"
        / "digitlaw"
        / "data"
        / "zeta_zeros_140k.txt",
    )
    args = parser.parse_args(argv)

    t0 = time.time()
    print(f"scanning Z(t) on [{SCAN_START}, {SCAN_STOP}] at step {GRID_STEP}")
    roots = scan_and_bisect(SCAN_START, SCAN_STOP, GRID_STEP)
    print(f"found {len(roots)} sign changes in {time.time() - t0:.0f}s")

    import mpmath

    mpmath.mp.dps = 20
    small = np.array([float(mpmath.zetazero(k).imag) for k in range(1, 11)])
    roots = np.concatenate([small, roots[np.searchsorted(roots, small[-1] + 0.5) :]])

    # counting-function cross-check at three decades
    for bound, want in ((1e3, 649), (1e4, 10142), (1e5, 138069)):
        got = int(np.searchsorted(roots, bound))
        tag = "OK" if got == want else "MISMATCH"
        print(f"count below {bound:g}: {got} (expected {want}) {tag}")

    worst = validate(roots)
    print(f"spot validation vs mpmath: worst abs error {worst:.2e}")
    if worst > VALIDATION_TOL:
        print("validation failed; not writing output", file=sys.stderr)
        return 1

    if len(roots) < args.count:
        print(f"only {len(roots)} zeros found, need {args.count}", file=sys.stderr)
        return 1
    out = roots[: args.count]
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w") as fh:
        fh.write(
            f"# first {args.count} nontrivial Riemann zeta zero heights"
            " (imaginary parts)\n"
        )
        fh.write(
            "# generated by scripts/generate_zeros.py"
            " (Riemann-Siegel main sum + C0 term)\n"
        )
        fh.write(
            "# spot-validated against mpmath.zetazero;"
            " absolute height error < 2e-4\n"
        )
        fh.write("# 6 decimal places, ascending, one height per line\n")
        for v in out:
            fh.write(f"{v:.6f}\n")
    print(
        f"wrote {args.count} zeros to {args.out}"
        f" (max height {out[-1]:.3f}) in {time.time() - t0:.0f}s"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
