"""Segmented prime sieve and the counting functions pi, li, L.

The sieve is odd-only and streams fixed-size segments, so digit statistics
and counting tables through 10^9 run in seconds on a desk machine and 10^10
stays within a coffee break. A small persistent cache keeps per-decade
pi(N) values across CLI invocations.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np
from scipy.special import expi

from .digits import DigitHistogram

__all__ = [
    "PrimeSegment",
    "CountingTable",
    "DecadeProfile",
    "ResourceLimitError",
    "primes_in_range",
    "iter_prime_segments",
    "prime_count",
    "sieve_decade_profile",
    "li",
    "l_count",
    "expansion_error_coeff",
    "counting_table",
    "counting_table_to_csv",
]

# hard ceiling for any sieve-backed computation
DEFAULT_CEILING = 10**10

# odd-only flags per segment; one segment spans twice this many integers
SEGMENT_FLAGS = 2**20

# widest range primes_in_range will materialize in one call
MAX_RANGE_WIDTH = 2**26


class ResourceLimitError(RuntimeError):
    """Request exceeds the configured sieve ceiling or memory budget."""


@dataclass(frozen=True)
class PrimeSegment:
    """All primes in [lo, hi), ascending."""

    lo: int
    hi: int
    primes: np.ndarray

    def __post_init__(self) -> None:
        if not 2 <= self.lo < self.hi:
            raise ValueError(f"need 2 <= lo < hi, got [{self.lo}, {self.hi})")

    def __len__(self) -> int:
        return int(self.primes.size)


def _base_primes(limit: int) -> np.ndarray:
    """Primes <= limit by a plain sieve; limit stays ~sqrt(ceiling), tiny."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0]


def _sieve_segment(lo: int, hi: int, odd_base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi) given the odd base primes up to sqrt(hi)."""
    lo_odd = lo | 1
    n = (hi - lo_odd + 1) // 2
    if n <= 0:
        out = np.empty(0, dtype=np.int64)
    else:
        flags = np.ones(n, dtype=bool)
        for p in odd_base:
            p = int(p)
            if p * p >= hi:
                break
            # first odd multiple of p in the window, never below p*p,
            # so base primes inside the window are never struck
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start < hi:
                flags[(start - lo_odd) // 2 :: p] = False
        out = lo_odd + 2 * np.nonzero(flags)[0].astype(np.int64)
    if lo <= 2 < hi:
        out = np.concatenate([np.array([2], dtype=np.int64), out])
    return out


def iter_prime_segments(
    lo: int, hi: int, segment_flags: int = SEGMENT_FLAGS
) -> Iterator[PrimeSegment]:
    """Stream the primes in [lo, hi) as fixed-width ascending segments."""
    if not 2 <= lo < hi:
        raise ValueError(f"need 2 <= lo < hi, got [{lo}, {hi})")
    if hi > DEFAULT_CEILING + 1:
        raise ResourceLimitError(
            f"hi = {hi} exceeds the sieve ceiling {DEFAULT_CEILING}"
        )
    base = _base_primes(math.isqrt(hi - 1) + 1)
    odd_base = base[base > 2]
    span = 2 * segment_flags
    for seg_lo in range(lo, hi, span):
        seg_hi = min(seg_lo + span, hi)
        yield PrimeSegment(seg_lo, seg_hi, _sieve_segment(seg_lo, seg_hi, odd_base))


def primes_in_range(lo: int, hi: int) -> PrimeSegment:
    """Exactly the primes in [lo, hi), ascending and deterministic.

    Raises ResourceLimitError when the window is too wide to materialize;
    wide scans should stream iter_prime_segments instead.
    """
    if not 2 <= lo < hi:
        raise ValueError(f"need 2 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > MAX_RANGE_WIDTH:
        raise ResourceLimitError(
            f"range width {hi - lo} exceeds {MAX_RANGE_WIDTH}; "
            "iterate segments instead"
        )
    parts = [seg.primes for seg in iter_prime_segments(lo, hi)]
    return PrimeSegment(lo, hi, np.concatenate(parts))


# ---------------------------------------------------------------------------
# persistent per-decade pi cache

def _cache_path() -> Path:
    root = os.environ.get("DIGITLAW_CACHE")
    if root:
        return Path(root) / "pi_decades.json"
    return Path.home() / ".cache" / "digitlaw" / "pi_decades.json"


def _load_pi_cache() -> dict[int, int]:
    path = _cache_path()
    try:
        raw = json.loads(path.read_text())
    except (OSError, ValueError):
        return {}
    return {int(k): int(v) for k, v in raw.items()}


def _store_pi_cache(entries: dict[int, int]) -> None:
    path = _cache_path()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        merged = _load_pi_cache()
        merged.update(entries)
        payload = json.dumps(
            {str(k): v for k, v in sorted(merged.items())}, indent=0
        )
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except OSError:
        pass  # cache is an optimization, never a failure


# ---------------------------------------------------------------------------
# streaming decade statistics

@dataclass
class DecadeProfile:
    """Per-decade digit-prefix counts and pi milestones for primes <= ceiling.

    decade_counts[k][j] is a dense count array over k-digit prefixes for the
    primes in [10^j, 10^(j+1)); primes with fewer than k digits contribute
    their zero-padded prefix. pi_milestones maps 10^j -> pi(10^j).
    """

    ceiling: int
    ks: tuple[int, ...]
    decade_counts: dict[int, dict[int, np.ndarray]] = field(default_factory=dict)
    pi_milestones: dict[int, int] = field(default_factory=dict)

    def histogram(self, N: int, k: int) -> DigitHistogram:
        """k-digit histogram of the primes <= N, N = 10^D <= ceiling."""
        D = round(math.log10(N))
        if 10**D != N or N > self.ceiling:
            raise ValueError(f"N must be a power of 10 <= {self.ceiling}")
        if k not in self.decade_counts:
            raise ValueError(f"profile was not built with k={k}")
        lo = 10 ** (k - 1)
        acc = np.zeros(10**k, dtype=np.int64)
        for j in range(D):
            acc += self.decade_counts[k][j]
        counts = {int(p): int(c) for p, c in enumerate(acc) if c and p >= lo}
        return DigitHistogram(k, counts, int(acc.sum()))

    def pi(self, N: int) -> int:
        if N not in self.pi_milestones:
            raise ValueError(f"pi({N}) not recorded in this profile")
        return self.pi_milestones[N]


def sieve_decade_profile(N: int, ks: tuple[int, ...] = (1,)) -> DecadeProfile:
    """One streaming pass over the primes <= N, N = 10^D.

    Collects k-digit prefix counts per decade for every requested k plus
    exact pi at each power of ten, and refreshes the persistent pi cache.
    """
    D = round(math.log10(N))
    if 10**D != N or D < 1:
        raise ValueError(f"N must be a power of 10 >= 10, got {N}")
    if N > DEFAULT_CEILING:
        raise ResourceLimitError(f"N = {N} exceeds ceiling {DEFAULT_CEILING}")
    profile = DecadeProfile(
        ceiling=N,
        ks=tuple(ks),
        decade_counts={k: {j: np.zeros(10**k, dtype=np.int64) for j in range(D)} for k in ks},
    )
    boundaries = [10**j for j in range(D + 1)]
    running = 0
    profile.pi_milestones[1] = 0
    for seg in iter_prime_segments(2, N + 1):
        vals = seg.primes
        for b in boundaries:
            if seg.lo < b <= seg.hi:
                profile.pi_milestones[b] = running + int(
                    np.searchsorted(vals, b, side="right")
                )
        # split the ascending segment at decade boundaries
        for j in range(max(0, len(str(seg.lo)) - 2), D):
            lo_b, hi_b = 10**j, 10 ** (j + 1)
            if hi_b <= seg.lo or lo_b >= seg.hi:
                continue
            i0 = int(np.searchsorted(vals, lo_b, side="left"))
            i1 = int(np.searchsorted(vals, hi_b, side="left"))
            if i0 == i1:
                continue
            chunk = vals[i0:i1]
            for k in ks:
                shift = (j + 1) - k
                if shift >= 0:
                    prefixes = chunk // 10**shift
                else:
                    prefixes = chunk * 10**(-shift)
                profile.decade_counts[k][j] += np.bincount(
                    prefixes, minlength=10**k
                )
        running += int(vals.size)
    profile.pi_milestones[N] = running
    _store_pi_cache({b: v for b, v in profile.pi_milestones.items() if b >= 10})
    return profile


def prime_count(N: int) -> int:
    """Exact pi(N) by streaming sieve, with a persistent per-decade cache."""
    N = int(N)
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if N < 2:
        return 0
    if N > DEFAULT_CEILING:
        raise ResourceLimitError(f"N = {N} exceeds ceiling {DEFAULT_CEILING}")
    cache = _load_pi_cache()
    if N in cache:
        return cache[N]
    running = 0
    new_entries: dict[int, int] = {}
    for seg in iter_prime_segments(2, N + 1):
        vals = seg.primes
        b = 10 ** len(str(seg.lo))  # smallest power of 10 above seg.lo
        while seg.lo < b <= seg.hi:
            new_entries[b] = running + int(np.searchsorted(vals, b, side="right"))
            b *= 10
        running += int(vals.size)
    if N >= 10 and N == 10 ** round(math.log10(N)):
        new_entries[N] = running
    if new_entries:
        _store_pi_cache(new_entries)
    return running


# ---------------------------------------------------------------------------
# counting functions

def li(N: float) -> float:
    """Logarithmic integral of N (principal value from 0).

    Evaluated through the exponential integral Ei(ln N); li(10^3) = 177.61,
    li(10^8) = 5762209.38.
    """
    if N < 2:
        raise ValueError(f"li requires N >= 2, got {N}")
    return float(expi(math.log(N)))


def _li_unrestricted(t: float) -> float:
    """li on (1, inf), for CDF construction on [1, N]; li(1+) -> -inf."""
    if t <= 1.0:
        return -math.inf
    return float(expi(math.log(t)))


def l_count(N: float, a: float = 1.1) -> float:
    """Power-law prime-counting approximation L(N) = e a(N)/(1-a(N)) N^(1-a(N)).

    a(N) here is the size-dependent exponent 1/(ln N - a). The lower-bound
    term of the defining integral is dropped: the tabulated integer values
    this function must reproduce (172 at 10^3, 1228 at 10^4) come from the
    asymptotic closed form without it.
    """
    if N <= 2:
        raise ValueError(f"l_count requires N > 2, got {N}")
    log_n = math.log(N)
    if log_n <= a:
        raise ValueError(f"ln N = {log_n:.6g} must exceed a = {a:.6g}")
    alpha = 1.0 / (log_n - a)
    if alpha >= 1.0:
        raise ValueError(f"alpha(N) = {alpha:.6g} >= 1; N too small for a = {a}")
    return math.e * alpha / (1.0 - alpha) * N ** (1.0 - alpha)


def expansion_error_coeff(a: float) -> float:
    """Leading coefficient 1 - a + a^2/2 of the counting-error expansion.

    Minimal at a = 1, which is why size constants near 1 make L track pi.
    """
    return 1.0 - a + a * a / 2.0


@dataclass
class CountingTable:
    """Per-decade counting-function comparison (the counting CSV schema).

    rows[N] = {pi, li, n_over_log, l, ratio_l_pi}. pi is exact from the
    sieve; ratio_l_pi carries pi(N)/L(N), the normalization the reference
    ratio values (1.00081 at 10^4, 1.00125 at 10^10) actually follow.
    """

    a: float
    rows: dict[int, dict[str, float]] = field(default_factory=dict)


def counting_table(
    max_n: int,
    a: float = 1.1,
    pi_values: dict[int, int] | None = None,
) -> CountingTable:
    """Counting table for decades 10^2 .. max_n.

    pi comes from the cache or one streaming sieve pass; callers that
    already hold exact counts (e.g. from a decade profile) can inject them.
    """
    top = round(math.log10(max_n))
    if 10**top != max_n or top < 2:
        raise ValueError(f"max_n must be a power of 10 >= 100, got {max_n}")
    decades = [10**j for j in range(2, top + 1)]
    known = dict(pi_values or {})
    if not all(n in known for n in decades):
        cache = _load_pi_cache()
        known = {**cache, **known}
        if not all(n in known for n in decades):
            # one pass to the largest missing decade fills everything below it
            largest = max(n for n in decades if n not in known)
            profile = sieve_decade_profile(largest)
            known.update(profile.pi_milestones)
    table = CountingTable(a=a)
    for n in decades:
        l_val = l_count(n, a)
        table.rows[n] = {
            "pi": known[n],
            "li": li(n),
            "n_over_log": n / math.log(n),
            "l": l_val,
            "ratio_l_pi": known[n] / l_val,
        }
    return table


def counting_table_to_csv(table: CountingTable) -> str:
    """Render `N,pi,li,n_over_log,l,ratio_l_pi` rows, decades ascending."""
    lines = ["N,pi,li,n_over_log,l,ratio_l_pi"]
    for n in sorted(table.rows):
        r = table.rows[n]
        lines.append(
            f"{n},{int(r['pi'])},{r['li']:.10g},{r['n_over_log']:.10g},"
            f"{r['l']:.10g},{r['ratio_l_pi']:.10g}"
        )
    return "\n".join(lines) + "\n"
