"""Batch command-line front end: sequences in, CSV/JSON tables out.

Every command is deterministic given its flags and input files; re-running
writes byte-identical outputs. Each output file starts with a provenance
header line `# digitlaw <version> <command> <config-hash>` (strip it before
feeding the JSON documents to a strict parser).

Exit codes: 0 success, 2 usage or validation, 3 missing data, 4 numeric
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .cramer import cramer_sequence
from .digits import (
    DigitHistogram,
    digit_histogram,
    histogram_to_csv,
    integer_range_histogram,
)
from .gbl import GblParams, alpha_of_size, conformance_sum
from .primes import (
    ResourceLimitError,
    counting_table,
    counting_table_to_csv,
    iter_prime_segments,
    li,
    _li_unrestricted,
    sieve_decade_profile,
)
from .stats import (
    NonConvergenceError,
    conformance_chi2,
    fit_alpha_moments,
    fit_size_constant,
    test_report,
)
from .walk import (
    DEFAULT_RULE,
    prime_digit_source,
    trajectory_to_csv,
    uniform_digit_source,
    walk_trajectory,
)
from .zeros import bundled_zeros_path, load_zeros

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING_DATA = 3
EXIT_NUMERIC = 4

# conform materializes the primes <= N; keep the array desk-sized
CONFORM_CEILING = 10**8


@dataclass
class RunConfig:
    """Everything a command needs; hashed into the provenance header."""

    command: str
    seq: str = "primes"
    max_n: int = 10**6
    k: int = 1
    a: float | None = None
    seed: int = 0
    zeros_path: str | None = None
    fmt: str = "csv"
    out: str | None = None
    grid: int = 100
    steps: int = 10**4
    include_two: bool = False

    def config_hash(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:12]

    @property
    def prefix(self) -> str:
        return self.out if self.out else f"digitlaw_{self.command}"


class MissingDataError(FileNotFoundError):
    """Required input data is absent or does not cover the request."""


def _header_line(cfg: RunConfig) -> str:
    return f"# digitlaw {__version__} {cfg.command} {cfg.config_hash()}\n"


def _write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _emit(cfg: RunConfig, suffix: str, body: str) -> Path:
    path = Path(f"{cfg.prefix}{suffix}")
    _write_atomic(path, _header_line(cfg) + body)
    print(f"wrote {path}")
    return path


def _emit_table(cfg: RunConfig, suffix_stem: str, csv_body: str) -> Path:
    """Write a tabular artifact as CSV, or as a JSON row document."""
    if cfg.fmt == "csv":
        return _emit(cfg, f"{suffix_stem}.csv", csv_body)
    lines = csv_body.splitlines()
    notes = [ln.lstrip("# ") for ln in lines if ln.startswith("#")]
    data = [ln for ln in lines if not ln.startswith("#")]
    doc = json.dumps(
        {
            "columns": data[0].split(","),
            "rows": [ln.split(",") for ln in data[1:]],
            "notes": notes,
        },
        indent=2,
        sort_keys=True,
    )
    return _emit(cfg, f"{suffix_stem}.json", doc + "\n")


def _decade_exponent(n: int) -> int:
    """D with 10^D = n, or a usage error for non-powers of ten."""
    d = len(str(n)) - 1
    if n < 10 or 10**d != n:
        raise ValueError(
            f"N = {n} must be a power of 10 >= 10 for digit analyses "
            "(unbiased sampling requires whole decades)"
        )
    return d


def _parse_max(text: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_integer() or value < 1:
        raise argparse.ArgumentTypeError(f"--max must be a positive integer, got {text}")
    return int(value)


# ---------------------------------------------------------------------------
# sequence plumbing

def _zeros_table(cfg: RunConfig):
    path = Path(cfg.zeros_path) if cfg.zeros_path else bundled_zeros_path()
    if not path.exists():
        raise MissingDataError(f"zeros file not found: {path}")
    return load_zeros(path)


def _sequence_histograms(cfg: RunConfig) -> tuple[DigitHistogram, DigitHistogram]:
    """(k-digit histogram, first-digit histogram) of the configured sequence."""
    N, k = cfg.max_n, cfg.k
    if cfg.seq == "primes":
        profile = sieve_decade_profile(N, ks=(1,) if k == 1 else (1, k))
        return profile.histogram(N, k), profile.histogram(N, 1)
    if cfg.seq == "zeros":
        table = _zeros_table(cfg)
        if table.max_height < N:
            raise MissingDataError(
                f"zeros table ends at {table.max_height:.1f}, below N = {N}; "
                "supply a larger table via --zeros"
            )
        heights = table.up_to(N)
        hist_k = digit_histogram(heights, k)
        hist_1 = hist_k.first_digit_view() if k > 1 else hist_k
        return hist_k, hist_1
    if cfg.seq == "cramer":
        run = cramer_sequence(N, cfg.seed, include_two=cfg.include_two)
        hist_k = digit_histogram(run.pseudo_primes, k)
        hist_1 = hist_k.first_digit_view() if k > 1 else hist_k
        return hist_k, hist_1
    if cfg.seq == "integers":
        return integer_range_histogram(N, k), integer_range_histogram(N, 1)
    raise ValueError(f"unknown sequence {cfg.seq!r}")


def _model_for(cfg: RunConfig, hist_1: DigitHistogram) -> tuple[GblParams, float]:
    """Digit-law model and its convention exponent for the configured run.

    With --a the exponent comes from the size law; for zeros the flag is
    the effective constant (it already contains the ln(2pi) density shift,
    so the reference zeros value is around 2.92). Without --a the exponent
    comes from the moment fit of the first-digit histogram.
    """
    if cfg.a is not None:
        alpha = alpha_of_size(cfg.max_n, cfg.a)
    else:
        sign = "zeros" if cfg.seq == "zeros" else "primes"
        alpha = fit_alpha_moments(hist_1, sign).alpha
    beta = -alpha if cfg.seq == "zeros" else alpha
    return GblParams(exponent=beta, size_constant=cfg.a), alpha


# ---------------------------------------------------------------------------
# commands

def cmd_analyze(cfg: RunConfig) -> int:
    _decade_exponent(cfg.max_n)
    hist_k, hist_1 = _sequence_histograms(cfg)
    model, alpha = _model_for(cfg, hist_1)
    report = test_report(
        hist_1, model, alpha=alpha, N=cfg.max_n, sequence=cfg.seq
    )
    _emit_table(cfg, "_hist", histogram_to_csv(hist_k))
    doc = json.dumps(report.to_json_dict(), indent=2, sort_keys=True)
    _emit(cfg, "_report.json", doc + "\n")
    return EXIT_OK


def _pi_boundary_cdf(profile, N: int):
    """pi(t)/pi(N) evaluator, exact at the digit boundaries d*10^j."""
    counts = profile.decade_counts[1]
    pi_n = profile.pi(N)
    top = round(math.log10(N))

    def F(t: float) -> float:
        if t >= N:
            return 1.0
        if t < 2:
            return 0.0
        j = int(math.floor(math.log10(t) + 1e-12))
        d = t / 10.0**j
        d_int = int(round(d))
        if j >= top or abs(d - d_int) > 1e-9:
            raise ValueError(f"pi CDF is tabulated only at digit boundaries, got {t}")
        below = profile.pi(10**j) if j else 0
        return (below + int(counts[j][:d_int].sum())) / pi_n

    return F


def cmd_tables(cfg: RunConfig) -> int:
    a = cfg.a if cfg.a is not None else 1.1
    top = 10 ** (len(str(cfg.max_n)) - 1)
    if top < 100:
        raise ValueError(f"--max must be >= 100 for counting tables, got {cfg.max_n}")
    top_d = round(math.log10(top))
    profile = sieve_decade_profile(top)
    table = counting_table(top, a, pi_values=profile.pi_milestones)
    _emit_table(cfg, "_counting", counting_table_to_csv(table))

    conf_lines = ["N,c_pi,c_li"]
    for d in range(3, top_d + 1):
        n = 10**d
        alpha = alpha_of_size(n, a)
        f_pi = _pi_boundary_cdf(profile, n)
        li_n = li(n)
        f_li = lambda t: max(_li_unrestricted(t), 0.0) / li_n
        c_pi = conformance_chi2(f_pi, alpha, d - 1)
        c_li = conformance_chi2(f_li, alpha, d - 1)
        conf_lines.append(f"{n},{c_pi:.10g},{c_li:.10g}")
    _emit_table(cfg, "_conformance", "\n".join(conf_lines) + "\n")

    fit_lines = ["N,alpha"]
    points = []
    for d in range(4, top_d + 1):
        n = 10**d
        fit = fit_alpha_moments(profile.histogram(n, 1), "primes")
        points.append((n, fit.alpha))
        fit_lines.append(f"{n},{fit.alpha:.10g}")
    if len(points) >= 2:
        fit_lines.append(f"# fitted_a {fit_size_constant(points):.10g}")
    _emit_table(cfg, "_alpha_fit", "\n".join(fit_lines) + "\n")
    return EXIT_OK


def cmd_conform(cfg: RunConfig) -> int:
    D = _decade_exponent(cfg.max_n) - 1
    N = cfg.max_n
    if N > CONFORM_CEILING:
        raise ValueError(
            f"conform materializes all primes <= N; N = {N} exceeds {CONFORM_CEILING}"
        )
    a = cfg.a if cfg.a is not None else 1.1
    alpha = alpha_of_size(N, a)
    primes = np.concatenate(
        [seg.primes for seg in iter_prime_segments(2, N + 1)]
    )
    pi_n = float(primes.size)
    f_pi = lambda t: float(np.searchsorted(primes, t, side="right")) / pi_n
    li_n = li(N)
    f_li = lambda t: max(_li_unrestricted(t), 0.0) / li_n

    zs = [i / cfg.grid for i in range(1, cfg.grid)]
    sums_pi = [conformance_sum(f_pi, alpha, D, z) for z in zs]
    sums_li = [conformance_sum(f_li, alpha, D, z) for z in zs]
    r_pi = float(np.corrcoef(sums_pi, zs)[0, 1])
    r_li = float(np.corrcoef(sums_li, zs)[0, 1])
    lines = ["z,sum_pi,sum_li"]
    for z, s_p, s_l in zip(zs, sums_pi, sums_li):
        lines.append(f"{z:.10g},{s_p:.10g},{s_l:.10g}")
    lines.append(f"# r_pi {r_pi:.10g}")
    lines.append(f"# r_li {r_li:.10g}")
    _emit_table(cfg, "_conform", "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_cramer(cfg: RunConfig) -> int:
    run = cramer_sequence(cfg.max_n, cfg.seed, include_two=cfg.include_two)
    body = "\n".join(str(int(k)) for k in run.pseudo_primes) + "\n"
    _emit(cfg, "_pseudoprimes.txt", body)
    doc = json.dumps(run.manifest(), indent=2, sort_keys=True)
    _emit(cfg, "_manifest.json", doc + "\n")
    return EXIT_OK


def cmd_walk(cfg: RunConfig) -> int:
    _decade_exponent(cfg.max_n)
    if cfg.seq == "primes":
        digits = prime_digit_source(cfg.max_n)
        if digits.size < cfg.steps:
            raise ValueError(
                f"only {digits.size} primes <= {cfg.max_n}; "
                f"reduce --steps or raise --max"
            )
        source = digits
    elif cfg.seq == "integers":
        source = uniform_digit_source(cfg.seed, cfg.max_n)
    else:
        raise ValueError("walk sources are --seq primes or --seq integers")
    traj = walk_trajectory(source, cfg.steps, DEFAULT_RULE)
    _emit_table(cfg, "_trajectory", trajectory_to_csv(traj))
    return EXIT_OK


def cmd_fit(cfg: RunConfig) -> int:
    top_d = _decade_exponent(cfg.max_n)
    lines = ["N,alpha"]
    points: list[tuple[float, float]] = []
    if cfg.seq == "zeros":
        table = _zeros_table(cfg)
        lo_d = 3
        if table.max_height < cfg.max_n:
            raise MissingDataError(
                f"zeros table ends at {table.max_height:.1f}, below N = {cfg.max_n}"
            )
        for d in range(lo_d, top_d + 1):
            n = 10**d
            hist = digit_histogram(table.up_to(n), 1)
            fit = fit_alpha_moments(hist, "zeros")
            points.append((n, fit.alpha))
            lines.append(f"{n},{fit.alpha:.10g}")
    elif cfg.seq in ("primes", "cramer", "integers"):
        lo_d = 4
        if top_d < lo_d:
            raise ValueError(f"--max must be >= 10^{lo_d} for {cfg.seq} fits")
        if cfg.seq == "primes":
            profile = sieve_decade_profile(cfg.max_n)
            hists = {10**d: profile.histogram(10**d, 1) for d in range(lo_d, top_d + 1)}
        elif cfg.seq == "cramer":
            run = cramer_sequence(cfg.max_n, cfg.seed, include_two=cfg.include_two)
            hists = {
                10**d: digit_histogram(
                    run.pseudo_primes[: np.searchsorted(run.pseudo_primes, 10**d, side="right")], 1
                )
                for d in range(lo_d, top_d + 1)
            }
        else:
            hists = {10**d: integer_range_histogram(10**d, 1) for d in range(lo_d, top_d + 1)}
        for n in sorted(hists):
            fit = fit_alpha_moments(hists[n], "primes")
            points.append((n, fit.alpha))
            lines.append(f"{n},{fit.alpha:.10g}")
    else:
        raise ValueError(f"unknown sequence {cfg.seq!r}")
    if len(points) >= 2 and all(alpha > 0 for _, alpha in points):
        lines.append(f"# fitted_a {fit_size_constant(points):.10g}")
    else:
        lines.append("# fitted_a unavailable")
    _emit_table(cfg, "_alpha_fit", "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitlaw",
        description="First-digit law analyses of primes, zeta zeros, and "
        "Cramer pseudo-primes",
    )
    parser.add_argument("--version", action="version", version=f"digitlaw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, seqs: list[str], default_seq: str):
        p.add_argument("--seq", choices=seqs, default=default_seq)
        p.add_argument("--max", type=_parse_max, default=10**6, dest="max_n",
                       help="ceiling N; scientific notation accepted (1e8)")
        p.add_argument("--digits", type=int, default=1, dest="k",
                       help="prefix depth k (default 1)")
        p.add_argument("--a", type=float, default=None,
                       help="size constant; omit to fit the exponent instead")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--zeros", default=None, dest="zeros_path",
                       help="zeros table path (default: bundled 140k table)")
        p.add_argument("--format", choices=["csv", "json"], default="csv", dest="fmt")
        p.add_argument("--out", default=None, help="output path prefix")

    all_seqs = ["primes", "zeros", "cramer", "integers"]
    p = sub.add_parser("analyze", help="histogram + goodness-of-fit battery")
    add_common(p, all_seqs, "primes")
    p = sub.add_parser("tables", help="counting, conformance-c, and alpha-fit tables")
    add_common(p, ["primes"], "primes")
    p = sub.add_parser("conform", help="decade-folded conformance curves and r")
    add_common(p, ["primes"], "primes")
    p.add_argument("--grid", type=int, default=100, help="z grid density")
    p = sub.add_parser("cramer", help="export one pseudo-prime realization")
    add_common(p, ["cramer"], "cramer")
    p.add_argument("--include-two", action="store_true")
    p = sub.add_parser("walk", help="first-digit random-walk trajectory")
    add_common(p, ["primes", "integers"], "integers")
    p.add_argument("--steps", type=int, default=10**4)
    p = sub.add_parser("fit", help="per-decade exponent fits and size constant")
    add_common(p, all_seqs, "primes")
    return parser


_DISPATCH = {
    "analyze": cmd_analyze,
    "tables": cmd_tables,
    "conform": cmd_conform,
    "cramer": cmd_cramer,
    "walk": cmd_walk,
    "fit": cmd_fit,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fields = {f for f in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    try:
        return _DISPATCH[cfg.command](cfg)
    except MissingDataError as exc:
        print(f"digitlaw: missing data: {exc}", file=sys.stderr)
        return EXIT_MISSING_DATA
    except (ValueError, ResourceLimitError) as exc:
        print(f"digitlaw: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"digitlaw: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"digitlaw: missing data: {exc}", file=sys.stderr)
        return EXIT_MISSING_DATA


if __name__ == "__main__":
    sys.exit(main())
