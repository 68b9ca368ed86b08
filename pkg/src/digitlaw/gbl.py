"""Generalized Benford laws: densities ~ x^(-beta) restricted to decades.

A law is parameterized by the exponent beta of the underlying power-law
density. beta = 1 is the classical Benford law (handled as an explicit
limit), beta = 0 is the uniform digit law. Size-dependent laws tie beta to
an interval ceiling N through alpha_of_size; sequences whose density grows
with x (zeta zero heights) use the same machinery with beta = -alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .digits import DigitPrefix

__all__ = [
    "GblParams",
    "gbl_pmf",
    "gbl_extended_pmf",
    "alpha_of_size",
    "gbl_cdf",
    "sample_digit",
    "z_transform",
    "z_inverse",
    "conformance_sum",
]

# treat |1 - beta| below this as the Benford limit
_BENFORD_EPS = 1e-9


@dataclass(frozen=True)
class GblParams:
    """Exponent of a generalized Benford law, optionally tied to a size law.

    `exponent` is the beta of the density x^(-beta). Laws for digit
    statistics of increasing sequences sampled up to a ceiling N carry the
    size constant a, with beta = +alpha(N) for density-decreasing sequences
    (primes) and beta = -alpha(N) for density-increasing ones (zeta zeros).
    """

    exponent: float
    size_constant: float | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.exponent):
            raise ValueError("exponent must be finite")

    @property
    def is_benford(self) -> bool:
        return abs(1.0 - self.exponent) < _BENFORD_EPS


def _is_benford(beta: float) -> bool:
    return abs(1.0 - beta) < _BENFORD_EPS


def gbl_pmf(d: int, beta: float) -> float:
    """P(first digit = d) under the generalized Benford law with exponent beta.

    [(d+1)^(1-beta) - d^(1-beta)] / (10^(1-beta) - 1), with the beta -> 1
    limit log10(1 + 1/d) taken explicitly.
    """
    try:
        d = int(d)
    except (TypeError, ValueError):
        raise ValueError(f"digit must be an integer, got {d!r}") from None
    if not 1 <= d <= 9:
        raise ValueError(f"digit must be in 1..9, got {d}")
    if _is_benford(beta):
        return math.log10(1.0 + 1.0 / d)
    s = 1.0 - beta
    return ((d + 1) ** s - d**s) / (10.0**s - 1.0)


def gbl_extended_pmf(prefix: DigitPrefix | int, beta: float, k: int | None = None) -> float:
    """P(first k digits = D) under the k-digit extension of the law.

    [(D+1)^(1-beta) - D^(1-beta)] / [(10^k)^(1-beta) - (10^(k-1))^(1-beta)].
    Reduces exactly to gbl_pmf at k = 1 and sums to 1 over the 9*10^(k-1)
    prefixes of length k.
    """
    if isinstance(prefix, DigitPrefix):
        D, k = prefix.value, prefix.k
    else:
        if k is None:
            raise ValueError("k is required when prefix is a bare integer")
        D = DigitPrefix(int(prefix), k).value  # validates range
    if _is_benford(beta):
        return math.log10((D + 1) / D)
    s = 1.0 - beta
    lo, hi = 10.0 ** (k - 1), 10.0**k
    return ((D + 1) ** s - D**s) / (hi**s - lo**s)


def alpha_of_size(N: float, a: float) -> float:
    """Size-dependent exponent alpha(N) = 1/(ln N - a).

    Natural logarithm. Tends to 0 as N grows; undefined (domain error) when
    ln N <= a.
    """
    if N <= 0:
        raise ValueError(f"N must be positive, got {N}")
    log_n = math.log(N)
    if log_n <= a:
        raise ValueError(f"ln N = {log_n:.6g} must exceed a = {a:.6g}")
    return 1.0 / (log_n - a)


def gbl_cdf(y: int, beta: float) -> float:
    """P(first digit <= y): [(y+1)^(1-beta) - 1] / (10^(1-beta) - 1)."""
    if not 1 <= int(y) <= 9 or int(y) != y:
        raise ValueError(f"y must be an integer in 1..9, got {y!r}")
    if _is_benford(beta):
        return math.log10(y + 1)
    s = 1.0 - beta
    return ((y + 1) ** s - 1.0) / (10.0**s - 1.0)


def sample_digit(u: float, beta: float) -> int:
    """Inverse-transform sample of a first digit from a uniform u in [0,1).

    floor([(10^(1-beta) - 1) u + 1]^(1/(1-beta))), clamped to 1..9 so
    floating-point roundoff at bin edges cannot escape the digit range.
    """
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0,1), got {u}")
    if _is_benford(beta):
        y = 10.0**u
    else:
        s = 1.0 - beta
        y = ((10.0**s - 1.0) * u + 1.0) ** (1.0 / s)
    return min(9, max(1, int(y)))


def _decade_index(t: float) -> int:
    """Exact decade index D with 10^D <= t < 10^(D+1).

    Goes through the decimal string rather than log10 so values adjacent to
    a decade boundary (999.9999999 vs 1000.0) are never misclassified.
    """
    from decimal import Decimal

    return Decimal(repr(float(t))).normalize().adjusted()


def z_transform(t: float, beta: float) -> float:
    """Map t in [10^D, 10^(D+1)) to z in [0,1) via the within-decade CDF.

    z = ((t * 10^(-D))^(1-beta) - 1) / (10^(1-beta) - 1); z = 0 exactly at
    powers of ten. For t drawn from a density ~ x^(-beta), z is uniform.
    """
    if not (t > 0 and math.isfinite(t)):
        raise ValueError(f"t must be positive and finite, got {t}")
    D = _decade_index(t)
    y = float(t) / 10.0**D
    if y == 1.0:
        return 0.0
    if _is_benford(beta):
        return math.log10(y)
    s = 1.0 - beta
    return (y**s - 1.0) / (10.0**s - 1.0)


def z_inverse(z: float, beta: float) -> float:
    """The v in [1,10] with z_transform(v, beta) = z."""
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z must lie in [0,1], got {z}")
    if _is_benford(beta):
        return 10.0**z
    s = 1.0 - beta
    return ((10.0**s - 1.0) * z + 1.0) ** (1.0 / s)


def conformance_sum(
    F: Callable[[float], float], beta: float, D: int, z: float
) -> float:
    """Decade-folded probability mass below the z-quantile point.

    Sum over decades d = 0..D of F(v * 10^d) - F(10^d), where v is the
    within-decade point whose z-transform is z. For an F that follows the
    generalized Benford law with exponent beta exactly, the sum equals z
    for every z. F must be a nondecreasing CDF on [1, 10^(D+1)] with
    F(10^(D+1)) = 1.
    """
    if D < 0:
        raise ValueError(f"top decade index must be >= 0, got {D}")
    v = z_inverse(z, beta)
    total = 0.0
    prev = -math.inf
    for d in range(D + 1):
        lo = F(10.0**d)
        hi = F(v * 10.0**d)
        if hi < lo - 1e-12 or lo < prev - 1e-12:
            raise ValueError("F is not nondecreasing on [1, 10^(D+1)]")
        prev = hi
        total += hi - lo
    return total
