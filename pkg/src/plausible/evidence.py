"""Comparing and acting on evidence.

Bayes factors and odds for the universal law theta = 1 against a uniform
alternative, their additive log10 accumulation, the confidence-based
acceptance construction (confidence density, confidence in the law, and
the extended likelihood ratio), a seeded coverage simulation, and
expected-utility decisions.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, IndeterminateProduct, VacuousEvidence
from .inference import BetaParams, EvidenceSummary, credible_interval
from .plausibility import FiniteDistribution
from .rng import SplitMix64Array


@dataclass(frozen=True)
class ExtendedNonneg:
    """A value in [0, inf]. ``infinite`` overrides ``value``."""

    value: float = 0.0
    infinite: bool = False

    def __post_init__(self):
        if self.infinite:
            object.__setattr__(self, "value", math.inf)
        elif not (math.isfinite(self.value) and self.value >= 0):
            raise DomainError(f"finite extended value must be >= 0, got {self.value!r}")

    @classmethod
    def finite(cls, value):
        return cls(value)

    @classmethod
    def inf(cls):
        return cls(infinite=True)

    @property
    def is_zero(self):
        return not self.infinite and self.value == 0

    def __float__(self):
        return math.inf if self.infinite else float(self.value)

    def __mul__(self, other):
        other = other if isinstance(other, ExtendedNonneg) else ExtendedNonneg(other)
        if self.infinite or other.infinite:
            if self.is_zero or other.is_zero:
                raise IndeterminateProduct("0 * inf is undefined")
            return ExtendedNonneg.inf()
        return ExtendedNonneg(self.value * other.value)

    __rmul__ = __mul__

    def log10(self) -> float:
        if self.infinite:
            return math.inf
        if self.value == 0:
            return -math.inf
        return math.log10(self.value)

    def __str__(self):
        return "inf" if self.infinite else repr(self.value)


INFINITE = ExtendedNonneg.inf()


def bayes_factor_law(data: EvidenceSummary) -> ExtendedNonneg:
    """BF of theta = 1 against theta ~ Beta(1, 1).

    For all successes the ratio is 1 / integral(theta^n) = n + 1; any
    failure is impossible under the law, giving exactly 0.
    """
    if data.t == data.n:
        return ExtendedNonneg(data.n + 1)
    return ExtendedNonneg(0)


def posterior_odds(prior_odds: float, bf: ExtendedNonneg) -> ExtendedNonneg:
    if not prior_odds >= 0:
        raise DomainError(f"prior odds must be nonnegative, got {prior_odds!r}")
    return ExtendedNonneg(prior_odds) * bf


def accumulate_log_bf(steps: Sequence[float]) -> float:
    steps = [float(s) for s in steps]
    if not all(math.isfinite(s) for s in steps):
        raise DomainError("log Bayes factors must be finite")
    return math.fsum(steps)


def sequential_log10_bf(n: int) -> list[float]:
    """Per-observation log10 BFs of an all-success stream of length ``n``.

    Observation i multiplies the BF from i to i + 1.
    """
    return [math.log10((i + 1) / i) for i in range(1, n + 1)]


@dataclass(frozen=True)
class PointMassAtOne:
    pass


@dataclass(frozen=True)
class ContinuousBeta:
    params: BetaParams


def _require_trials(data):
    if data.n == 0:
        raise VacuousEvidence("confidence constructions need at least one trial")


def confidence_density(data: EvidenceSummary):
    """Confidence density over theta: a point mass at 1 if every trial
    succeeded, else Beta(t + 1, n - t)."""
    _require_trials(data)
    if data.t == data.n:
        return PointMassAtOne()
    return ContinuousBeta(BetaParams(data.t + 1, data.n - data.t))


def confidence_in_law(data: EvidenceSummary) -> int:
    _require_trials(data)
    return 1 if data.t == data.n else 0


def elr(data: EvidenceSummary) -> ExtendedNonneg:
    _require_trials(data)
    return INFINITE if data.t == data.n else ExtendedNonneg(0)


@dataclass(frozen=True)
class CoverageResult:
    nominal: float
    empirical: float
    mc_stderr: float


def binomial_draws(theta0: float, n: int, replicates: int, seed: int) -> np.ndarray:
    """Success counts of ``replicates`` Bin(n, theta0) experiments.

    Replicate k runs its own SplitMix64 stream from state ``seed + k`` and
    scores a success whenever a uniform falls below ``theta0``.
    """
    gen = SplitMix64Array.consecutive(seed, replicates)
    counts = np.zeros(replicates, dtype=np.int64)
    for _ in range(n):
        counts += gen.uniform() < theta0
    return counts


def coverage_simulation(
    theta0: float, n: int, level: float, replicates: int, seed: int
) -> CoverageResult:
    """Empirical coverage of equal-tailed Beta(t+1, n-t+1) intervals."""
    if not 0.0 < theta0 < 1.0:
        raise DomainError(f"theta0 must lie in (0, 1), got {theta0!r}")
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    if n < 1 or replicates < 1:
        raise DomainError("need n >= 1 and replicates >= 1")
    if not 0 <= seed < 2**64:
        raise DomainError("seed must be an unsigned 64-bit integer")

    covers = np.array(
        [theta0 in credible_interval(BetaParams(t + 1, n - t + 1), level) for t in range(n + 1)]
    )
    counts = binomial_draws(theta0, n, replicates, seed)
    hits = int(covers[counts].sum())
    emp = hits / replicates
    return CoverageResult(level, emp, math.sqrt(emp * (1.0 - emp) / replicates))


@dataclass(frozen=True)
class Decision:
    action_index: int
    expected_utilities: list


def decide(post: FiniteDistribution, utilities) -> Decision:
    """Action maximizing posterior expected utility; ties go to the lowest index."""
    u = np.asarray(utilities, dtype=float)
    if u.ndim != 2 or u.shape[1] != len(post) or u.shape[0] == 0:
        raise DomainError(f"utility table must be (actions, {len(post)}), got {u.shape}")
    if not np.all(np.isfinite(u)):
        raise DomainError("utilities must be finite")
    p = post.array
    expected = [math.fsum(row * p) for row in u]
    best = max(range(len(expected)), key=lambda a: (expected[a], -a))
    return Decision(best, expected)
