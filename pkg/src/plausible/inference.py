"""Beta-Bernoulli conjugate updating.

Covers the uniform-prior (Laplace) posterior and rule of succession, the
boundary-mass prior that puts a point mass on theta = 1, equal-tailed
credible intervals and the normal approximation for the all-success case.
"""

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

from .errors import CromwellViolation, DomainError
from .special import RealInterval, inv_reg_inc_beta, log_beta

_MAX_COUNT = 2**63 - 1


@dataclass(frozen=True)
class BetaParams:
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if isinstance(v, bool) or not (isinstance(v, numbers.Real) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")

    @property
    def mean(self):
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self):
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1))


UNIFORM = BetaParams(1, 1)


@dataclass(frozen=True)
class EvidenceSummary:
    """``n`` Bernoulli trials of which ``t`` were successes."""

    n: int
    t: int

    def __post_init__(self):
        for name in ("n", "t"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, numbers.Integral):
                raise DomainError(f"{name} must be an integer count, got {v!r}")
        if not 0 <= self.t <= self.n <= _MAX_COUNT:
            raise DomainError(f"need 0 <= t <= n, got n={self.n}, t={self.t}")

    @classmethod
    def all_success(cls, n):
        return cls(n, n)

    @property
    def failures(self):
        return self.n - self.t

    def observe(self, outcome: int) -> "EvidenceSummary":
        if outcome not in (0, 1):
            raise DomainError(f"observation must be 0 or 1, got {outcome!r}")
        return EvidenceSummary(self.n + 1, self.t + outcome)


@dataclass(frozen=True)
class BoundaryMixture:
    """Prior with mass ``w`` on theta = 1 and ``1 - w`` on a Beta law."""

    w: float
    continuous: BetaParams = UNIFORM

    def __post_init__(self):
        if isinstance(self.w, bool) or not (isinstance(self.w, numbers.Real) and 0 < self.w < 1):
            raise CromwellViolation(
                f"boundary prior weight must lie strictly inside (0, 1), got {self.w!r}"
            )


@dataclass(frozen=True)
class PureBeta:
    params: BetaParams


@dataclass(frozen=True)
class Mixture:
    mass_at_one: float
    continuous: BetaParams

    def __post_init__(self):
        if not 0.0 <= self.mass_at_one <= 1.0:
            raise DomainError(f"mass_at_one must lie in [0, 1], got {self.mass_at_one!r}")


PosteriorState = PureBeta | Mixture


def posterior(prior: BetaParams, data: EvidenceSummary) -> BetaParams:
    return BetaParams(prior.alpha + data.t, prior.beta + data.failures)


def predictive(post: BetaParams) -> float:
    """Probability that the next trial succeeds (the posterior mean)."""
    return post.alpha / (post.alpha + post.beta)


def log_marginal_all_success(prior: BetaParams, n: int) -> float:
    """ln P(n straight successes | theta ~ Beta(alpha, beta))."""
    if n == 0:
        return 0.0
    return log_beta(prior.alpha + n, prior.beta) - log_beta(prior.alpha, prior.beta)


_EXACT_BETA_MAX = 256


def _small_integer_shapes(p: BetaParams) -> bool:
    return float(p.alpha).is_integer() and float(p.beta).is_integer() and p.beta <= _EXACT_BETA_MAX


def mixture_posterior(prior: BoundaryMixture, data: EvidenceSummary) -> Mixture:
    """Update a boundary-mass prior on Bernoulli counts.

    Any failure has likelihood exactly zero under theta = 1, so the point
    mass collapses to 0. Otherwise the mass is the point-mass share of the
    two marginal likelihoods.
    """
    if not isinstance(prior, BoundaryMixture):
        raise DomainError("mixture_posterior expects a BoundaryMixture prior")
    cont = posterior(prior.continuous, data)
    if data.t < data.n:
        return Mixture(0.0, cont)
    if _small_integer_shapes(prior.continuous):
        # exact ratio, rounded once
        return Mixture(float(mixture_mass_exact(prior.w, prior.continuous, data.n)), cont)
    w = float(prior.w)
    # mass = 1 / (1 + (1-w)/w * m), m the continuous marginal likelihood
    log_ratio = math.log1p(-w) - math.log(w) + log_marginal_all_success(prior.continuous, data.n)
    if log_ratio > 0:
        r = math.exp(-log_ratio)
        mass = r / (1.0 + r)
    else:
        mass = 1.0 / (1.0 + math.exp(log_ratio))
    return Mixture(mass, cont)


def mixture_mass_exact(w: Fraction, prior: BetaParams, n: int) -> Fraction:
    """Point mass after ``n`` straight successes in rational arithmetic.

    Needs integer shapes. The continuous marginal likelihood is
    B(a+n, b)/B(a, b) = prod_{i<b} (a+i)/(a+n+i).
    """
    a, b = prior.alpha, prior.beta
    if int(a) != a or int(b) != b:
        raise DomainError("exact mass needs integer Beta shapes")
    a, b = int(a), int(b)
    w = Fraction(w)
    if not 0 < w < 1:
        raise CromwellViolation(f"boundary prior weight must lie in (0, 1), got {w}")
    m = Fraction(1)
    for i in range(b):
        m *= Fraction(a + i, a + n + i)
    return w / (w + (1 - w) * m)


def mixture_step(state: Mixture, outcome: int) -> Mixture:
    """Update a mixture posterior on a single observation.

    Sequentially applying this reproduces :func:`mixture_posterior` up to
    rounding; the next-trial success probability under the continuous part
    is its mean.
    """
    if outcome not in (0, 1):
        raise DomainError(f"observation must be 0 or 1, got {outcome!r}")
    cont = posterior(state.continuous, EvidenceSummary(1, outcome))
    if outcome == 0:
        return Mixture(0.0, cont)
    w = state.mass_at_one
    mass = w / (w + (1.0 - w) * predictive(state.continuous))
    return Mixture(mass, cont)


def credible_interval(post: BetaParams, level: float) -> RealInterval:
    """Equal-tailed interval from the Beta quantiles."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    tail = (1.0 - level) / 2.0
    lo = inv_reg_inc_beta(tail, post.alpha, post.beta)
    hi = inv_reg_inc_beta(1.0 - tail, post.alpha, post.beta)
    return RealInterval(lo, hi)


@dataclass(frozen=True)
class NormalApprox:
    mu: float
    sigma2: float


def normal_approx(data: EvidenceSummary) -> NormalApprox:
    """Gaussian summary of the all-success posterior Beta(n+1, 1).

    The approximation is meant to be truncated to [0, 1]; the raw moments
    are returned untouched.
    """
    if data.t != data.n:
        raise DomainError("normal approximation is defined for all-success data only")
    n = data.n
    mu = (n + 1) / (n + 2)
    return NormalApprox(mu, mu * (1.0 - mu) / (n + 3))


def universal_law_probability(state) -> float:
    """Posterior probability that theta is exactly 1."""
    if isinstance(state, PureBeta):
        return 0.0
    if isinstance(state, Mixture):
        return state.mass_at_one
    raise DomainError(f"not a posterior state: {state!r}")
