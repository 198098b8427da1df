"""Bayesian tools for inductive inference from Bernoulli records.

Beta-Bernoulli updating, boundary-mass (point mass at theta = 1) priors,
Bayes factors against confidence-based acceptance, maximum-entropy
distributions and information-gain bookkeeping.
"""

from .errors import (
    ConvergenceError,
    CromwellViolation,
    DomainError,
    IndeterminateProduct,
    InfeasibleConstraint,
    NonConvergence,
    ParseError,
    PlausibleError,
    TotalEvidenceZero,
    VacuousEvidence,
    ZeroProbabilityCondition,
)
from .evidence import (
    ContinuousBeta,
    ExtendedNonneg,
    PointMassAtOne,
    accumulate_log_bf,
    bayes_factor_law,
    confidence_density,
    confidence_in_law,
    coverage_simulation,
    decide,
    elr,
    posterior_odds,
)
from .inference import (
    BetaParams,
    BoundaryMixture,
    EvidenceSummary,
    Mixture,
    PureBeta,
    credible_interval,
    mixture_posterior,
    normal_approx,
    posterior,
    predictive,
    universal_law_probability,
)
from .maxent import (
    Constraint,
    MaxEntProblem,
    MaxEntSolution,
    entropy,
    info_gain,
    kl_divergence,
    solve_maxent,
)
from .plausibility import FiniteDistribution, FiniteJoint, bayes_update, condition, rule_residuals
from .special import RealInterval, inv_reg_inc_beta, log_gamma, reg_inc_beta

__version__ = "0.1.0"
