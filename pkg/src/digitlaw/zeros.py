"""Riemann zeta zero heights: file ingestion and mean counting estimates.

Heights are always ingested from text tables, never computed here; a
validated table of the first 140000 zeros ships with the package and a
companion script regenerates or extends it. The digit law of zero heights
is density-increasing, so the generalized Benford machinery applies with a
negated exponent and a shifted size constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .gbl import alpha_of_size

__all__ = [
    "ZeroTable",
    "ZerosParseError",
    "load_zeros",
    "bundled_zeros_path",
    "rvm_count",
    "zeros_alpha_of_size",
]

_TWO_PI = 2.0 * math.pi

# sanity band for the lowest nontrivial zero height
_FIRST_ZERO_BAND = (14.0, 14.3)


class ZerosParseError(ValueError):
    """A zeros file line failed to parse or violated ordering."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class ZeroTable:
    """Strictly increasing positive zero heights (imaginary parts)."""

    heights: np.ndarray

    def __len__(self) -> int:
        return int(self.heights.size)

    def count_below(self, N: float) -> int:
        """Number of heights <= N."""
        return int(np.searchsorted(self.heights, N, side="right"))

    def up_to(self, N: float) -> np.ndarray:
        """The heights <= N, ascending."""
        return self.heights[: self.count_below(N)]

    @property
    def max_height(self) -> float:
        return float(self.heights[-1]) if len(self) else 0.0


def _iter_lines(source) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
    elif hasattr(source, "read"):
        for raw in source:
            yield raw.decode("utf-8") if isinstance(raw, bytes) else raw
    else:
        yield from source


def load_zeros(source: str | Path | IO | Iterable[str]) -> ZeroTable:
    """Parse a zeros table: one height per line, '#' comments, ascending.

    Accepts a path, an open text/byte stream, or any iterable of lines
    (LF or CRLF). Non-numeric or out-of-order lines raise ZerosParseError
    carrying the offending line number. An empty table is valid.
    """
    heights: list[float] = []
    prev = 0.0
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            h = float(line)
        except ValueError:
            raise ZerosParseError(f"not a decimal height: {line!r}", lineno) from None
        if not math.isfinite(h) or h <= 0:
            raise ZerosParseError(f"height must be positive and finite: {h}", lineno)
        if h <= prev:
            raise ZerosParseError(
                f"heights must be strictly increasing: {h} after {prev}", lineno
            )
        heights.append(h)
        prev = h
    arr = np.asarray(heights, dtype=np.float64)
    if arr.size:
        lo, hi = _FIRST_ZERO_BAND
        if not lo <= arr[0] <= hi:
            raise ZerosParseError(
                f"first height {arr[0]} outside sanity band [{lo}, {hi}]; "
                "the table must start at the lowest zero",
                1,
            )
    return ZeroTable(arr)


def bundled_zeros_path() -> Path:
    """Path of the zeros table shipped with the package (140000 heights)."""
    return Path(resources.files("digitlaw").joinpath("data/zeta_zeros_140k.txt"))


def rvm_count(N: float) -> float:
    """Mean number of zeros with height <= N: (N/2pi) ln(N/2pi) - N/2pi.

    The fluctuation around the exact count is O(ln N). Requires N > 2pi.
    """
    if N <= _TWO_PI:
        raise ValueError(f"rvm_count requires N > 2*pi, got {N}")
    x = N / _TWO_PI
    return x * math.log(x) - x


def zeros_alpha_of_size(N: float, a: float = 1.1) -> float:
    """Size-dependent exponent for zero heights: 1/(ln N - ln(2pi) - a).

    Identical to alpha_of_size(N/2pi, a); the 2pi shift folds the mean
    zero density N/2pi ln(N/2pi) into the primes-style size law. With
    a = 1.1 the effective constant ln(2pi) + a is about 2.938.
    """
    return alpha_of_size(N, math.log(_TWO_PI) + a)
