"""First-k significant digit extraction and mergeable digit histograms.

Prefix extraction is bit-exact: integers use integer arithmetic and floats
go through their shortest decimal representation, so values sitting next to
decade boundaries (999.9999 vs 1000) never land in the wrong bin the way
log10-based extraction can.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "DigitPrefix",
    "DigitHistogram",
    "leading_prefix",
    "digit_histogram",
    "integer_range_histogram",
    "merge_histograms",
    "histogram_to_csv",
]

# float repr carries at most 17 significant decimal digits
_FLOAT_MAX_DIGITS = 17

_POW10 = 10 ** np.arange(19, dtype=np.int64)


@dataclass(frozen=True)
class DigitPrefix:
    """The first k significant decimal digits of a number, as an integer."""

    value: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 10 ** (self.k - 1) <= self.value < 10**self.k:
            raise ValueError(
                f"prefix {self.value} is not a {self.k}-digit integer"
            )

    @property
    def first_digit(self) -> int:
        return int(str(self.value)[0])


@dataclass
class DigitHistogram:
    """Sparse counts of k-digit prefixes over a sample.

    Value type: merging two histograms (same k) is the only way they
    interact, which makes per-segment accumulation embarrassingly parallel.
    """

    k: int
    counts: dict[int, int] = field(default_factory=dict)
    total: int = 0

    def validate(self) -> None:
        lo, hi = 10 ** (self.k - 1), 10**self.k
        for prefix, count in self.counts.items():
            if not lo <= prefix < hi:
                raise ValueError(f"prefix {prefix} invalid for k={self.k}")
            if count < 0:
                raise ValueError(f"negative count for prefix {prefix}")
        if sum(self.counts.values()) != self.total:
            raise ValueError("total does not match sum of counts")

    def frequency(self, prefix: int) -> float:
        if self.total == 0:
            return 0.0
        return self.counts.get(prefix, 0) / self.total

    def frequencies(self) -> dict[int, float]:
        """All prefix frequencies for this k, including zero-count bins."""
        lo, hi = 10 ** (self.k - 1), 10**self.k
        if self.total == 0:
            return {p: 0.0 for p in range(lo, hi)}
        return {p: self.counts.get(p, 0) / self.total for p in range(lo, hi)}

    def first_digit_view(self) -> "DigitHistogram":
        """Collapse to the k=1 histogram of the same sample."""
        if self.k == 1:
            return DigitHistogram(1, dict(self.counts), self.total)
        out: dict[int, int] = {}
        for prefix, count in self.counts.items():
            d = prefix // 10 ** (self.k - 1)
            out[d] = out.get(d, 0) + count
        return DigitHistogram(1, out, self.total)

    def add_value(self, x, count: int = 1) -> None:
        p = leading_prefix(x, self.k).value
        self.counts[p] = self.counts.get(p, 0) + count
        self.total += count


def _prefix_of_digits(digits: str, k: int) -> int:
    # pad with zeros: 12 has first-3-digit prefix 120
    if len(digits) >= k:
        return int(digits[:k])
    return int(digits) * 10 ** (k - len(digits))


def leading_prefix(x, k: int) -> DigitPrefix:
    """First k significant digits of x as an integer in [10^(k-1), 10^k).

    Scale invariant: multiplying x by any power of ten leaves the result
    unchanged. Raises on nonpositive or non-finite x, and on k beyond the
    precision a float can represent.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(x, (int, np.integer)):
        n = int(x)
        if n <= 0:
            raise ValueError(f"x must be positive, got {n}")
        return DigitPrefix(_prefix_of_digits(str(n), k), k)
    if isinstance(x, Decimal):
        if not x.is_finite() or x <= 0:
            raise ValueError(f"x must be positive and finite, got {x}")
        digits = "".join(str(d) for d in x.normalize().as_tuple().digits)
        return DigitPrefix(_prefix_of_digits(digits, k), k)
    xf = float(x)
    if not np.isfinite(xf) or xf <= 0:
        raise ValueError(f"x must be positive and finite, got {x!r}")
    if k > _FLOAT_MAX_DIGITS:
        raise ValueError(
            f"k={k} exceeds float precision ({_FLOAT_MAX_DIGITS} digits)"
        )
    # shortest round-trip decimal, normalized so trailing zeros vanish
    digits = "".join(
        str(d) for d in Decimal(repr(xf)).normalize().as_tuple().digits
    )
    return DigitPrefix(_prefix_of_digits(digits, k), k)


def _int_array_prefixes(values: np.ndarray, k: int) -> np.ndarray:
    """Vectorized exact prefixes for an array of positive int64 values."""
    if values.size and values.min() <= 0:
        raise ValueError("values must be positive")
    ndigits = np.searchsorted(_POW10, values, side="right")
    shift = ndigits - k
    pos = np.clip(shift, 0, None)
    neg = np.clip(-shift, 0, None)
    return values // _POW10[pos] * _POW10[neg]


def digit_histogram(values, k: int = 1) -> DigitHistogram:
    """Histogram of first-k-digit prefixes over a sequence of positive reals.

    Integer numpy arrays take an exact vectorized path; everything else is
    fed through leading_prefix one value at a time.
    """
    if isinstance(values, np.ndarray) and np.issubdtype(values.dtype, np.integer):
        prefixes = _int_array_prefixes(values.astype(np.int64), k)
        binned = np.bincount(prefixes, minlength=10**k)
        counts = {
            int(p): int(c)
            for p, c in enumerate(binned[10 ** (k - 1) :], start=10 ** (k - 1))
            if c
        }
        return DigitHistogram(k, counts, int(values.size))
    hist = DigitHistogram(k)
    for x in values:
        hist.add_value(x)
    return hist


def integer_range_histogram(N: int, k: int = 1) -> DigitHistogram:
    """Exact k-digit histogram of the integers 1..N without materializing.

    Counted decade by decade: a full decade [10^j, 10^(j+1)) contributes
    10^(j+1-k) to every k-digit prefix once j+1 >= k, and one count to each
    zero-padded prefix below that.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if k < 1:
        raise ValueError("k must be >= 1")
    lo = 10 ** (k - 1)
    acc = np.zeros(10**k, dtype=np.int64)
    ndigits = len(str(N))
    for j in range(ndigits):
        dec_lo, dec_hi = 10**j, 10 ** (j + 1)
        top = min(N + 1, dec_hi)
        if top <= dec_lo:
            break
        if j + 1 >= k:
            step = 10 ** (j + 1 - k)
            full, rem = divmod(top - dec_lo, step)
            acc[lo : lo + full] += step
            if rem:
                acc[lo + full] += rem
        else:
            pad = 10 ** (k - 1 - j)
            acc[dec_lo * pad : top * pad : pad] += 1
    counts = {int(p): int(c) for p, c in enumerate(acc) if c and p >= lo}
    return DigitHistogram(k, counts, N)


def merge_histograms(a: DigitHistogram, b: DigitHistogram) -> DigitHistogram:
    """Pointwise sum of two histograms with the same k."""
    if a.k != b.k:
        raise ValueError(f"cannot merge histograms with k={a.k} and k={b.k}")
    counts = dict(a.counts)
    for prefix, count in b.counts.items():
        counts[prefix] = counts.get(prefix, 0) + count
    return DigitHistogram(a.k, counts, a.total + b.total)


def histogram_to_csv(hist: DigitHistogram) -> str:
    """Render `prefix,count,frequency` rows, prefixes ascending.

    Frequencies carry 10 significant digits.
    """
    lines = ["prefix,count,frequency"]
    for prefix in sorted(hist.counts):
        count = hist.counts[prefix]
        freq = count / hist.total
        lines.append(f"{prefix},{count},{freq:.10g}")
    return "\n".join(lines) + "\n"
