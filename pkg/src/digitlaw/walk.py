"""First-digit-driven 2D random walks for visual bias detection.

Each step moves by a rule image of the current number's first digit. Under
the default rule the nine images sum to (0, 0), so a uniform digit law
walks like Brownian motion while any skewed digit law (Benford-like laws
included) produces a visible drift. The expected per-step displacement is
exactly (sum_d P(d) x(d), sum_d P(d) y(d)) for digit law P.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .digits import _int_array_prefixes
from .primes import iter_prime_segments

__all__ = [
    "StepRule",
    "Trajectory",
    "DEFAULT_RULE",
    "walk_trajectory",
    "expected_step",
    "uniform_digit_source",
    "prime_digit_source",
    "trajectory_to_csv",
]


@dataclass(frozen=True)
class StepRule:
    """Total mapping from first digits 1..9 to unit steps in {-1,0,1}^2."""

    steps: Mapping[int, tuple[int, int]]

    def __post_init__(self) -> None:
        if set(self.steps) != set(range(1, 10)):
            raise ValueError("rule must map exactly the digits 1..9")
        for d, (x, y) in self.steps.items():
            if x not in (-1, 0, 1) or y not in (-1, 0, 1):
                raise ValueError(f"step for digit {d} must lie in {{-1,0,1}}^2")
        if tuple(self.steps[1]) != (1, 1):
            raise ValueError("digit 1 must map to (1, 1)")

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Step components indexed by digit (index 0 unused)."""
        sx = np.zeros(10, dtype=np.int64)
        sy = np.zeros(10, dtype=np.int64)
        for d, (x, y) in self.steps.items():
            sx[d], sy[d] = x, y
        return sx, sy


# digit d steps right/center/left with (d-1) mod 3 and up/flat/down with
# (d-1) // 3; images over 1..9 sum to (0,0), so uniform digits have no drift
DEFAULT_RULE = StepRule(
    {
        1: (1, 1), 2: (0, 1), 3: (-1, 1),
        4: (1, 0), 5: (0, 0), 6: (-1, 0),
        7: (1, -1), 8: (0, -1), 9: (-1, -1),
    }
)


@dataclass(frozen=True)
class Trajectory:
    """Walk positions from (0, 0), one row per time step."""

    points: np.ndarray  # shape (steps+1, 2), int64

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def displacement(self) -> tuple[int, int]:
        return int(self.points[-1, 0]), int(self.points[-1, 1])


def _draw_digits(sampler, steps: int) -> np.ndarray:
    if isinstance(sampler, np.ndarray):
        if sampler.size < steps:
            raise ValueError(f"digit array has {sampler.size} < {steps} entries")
        return sampler[:steps].astype(np.int64)
    if callable(sampler):
        return np.asarray(sampler(steps), dtype=np.int64)
    out = np.fromiter(
        (d for _, d in zip(range(steps), sampler)), dtype=np.int64, count=-1
    )
    if out.size < steps:
        raise ValueError(f"digit source exhausted after {out.size} of {steps}")
    return out


def walk_trajectory(sampler, steps: int, rule: StepRule = DEFAULT_RULE) -> Trajectory:
    """Walk `steps` steps driven by a digit source.

    The source may be a numpy digit array, a callable n -> n digits, or an
    iterable of digits; every digit must lie in 1..9 or the walk aborts
    with a contract violation.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    points = np.zeros((steps + 1, 2), dtype=np.int64)
    if steps:
        digits = _draw_digits(sampler, steps)
        if digits.min() < 1 or digits.max() > 9:
            bad = digits[(digits < 1) | (digits > 9)][0]
            raise ValueError(f"digit source produced {bad}, outside 1..9")
        sx, sy = rule.arrays()
        points[1:, 0] = np.cumsum(sx[digits])
        points[1:, 1] = np.cumsum(sy[digits])
    return Trajectory(points)


def expected_step(
    rule: StepRule, digit_law: Mapping[int, float]
) -> tuple[float, float]:
    """Drift vector (E[dx], E[dy]) of the rule under a digit law."""
    ex = sum(p * rule.steps[d][0] for d, p in digit_law.items())
    ey = sum(p * rule.steps[d][1] for d, p in digit_law.items())
    return ex, ey


def uniform_digit_source(seed: int, ceiling: int = 10**6) -> Callable[[int], np.ndarray]:
    """First digits of uniform integers in [1, ceiling], seeded.

    With ceiling a power of 10 the digit law is uniform to within one part
    in ceiling, the unbiased-sampling setup the walk comparisons assume.
    """
    rng = np.random.default_rng(seed)

    def draw(n: int) -> np.ndarray:
        values = rng.integers(1, ceiling + 1, size=n, dtype=np.int64)
        return _int_array_prefixes(values, 1)

    return draw


def prime_digit_source(ceiling: int = 10**6) -> np.ndarray:
    """First digits of the consecutive primes <= ceiling, in order."""
    chunks = [
        _int_array_prefixes(seg.primes, 1)
        for seg in iter_prime_segments(2, ceiling + 1)
    ]
    return np.concatenate(chunks)


def trajectory_to_csv(traj: Trajectory) -> str:
    """Render `t,x,y` rows, one per step starting at t = 0."""
    lines = ["t,x,y"]
    for t, (x, y) in enumerate(traj.points):
        lines.append(f"{t},{x},{y}")
    return "\n".join(lines) + "\n"
