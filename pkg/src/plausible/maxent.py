"""Maximum entropy over a finite outcome set under moment constraints.

The solution has the canonical form p_i = exp(-sum_k lambda_k f_k(x_i)) / Z.
The multipliers minimize the convex dual log Z(lambda) + lambda . F, which
is done by damped Newton iteration. Entropy, KL divergence and information
gain live here as well.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import DomainError, InfeasibleConstraint, NonConvergence
from .evidence import INFINITE, ExtendedNonneg
from .plausibility import FiniteDistribution

RIDGE = 1e-10
_MAX_HALVINGS = 60
_HULL_SLACK = 1e-12


@dataclass(frozen=True)
class Constraint:
    f_values: tuple
    target: float

    def __init__(self, f_values, target):
        object.__setattr__(self, "f_values", tuple(float(v) for v in f_values))
        object.__setattr__(self, "target", float(target))


@dataclass(frozen=True)
class MaxEntProblem:
    outcomes: tuple
    constraints: tuple = ()

    def __init__(self, outcomes, constraints=()):
        outcomes = tuple(float(x) for x in outcomes)
        if not outcomes:
            raise DomainError("need at least one outcome")
        cons = tuple(c if isinstance(c, Constraint) else Constraint(**c) for c in constraints)
        for c in cons:
            if len(c.f_values) != len(outcomes):
                raise DomainError(
                    f"constraint has {len(c.f_values)} values for {len(outcomes)} outcomes"
                )
            if not (all(map(math.isfinite, c.f_values)) and math.isfinite(c.target)):
                raise DomainError("constraint values must be finite")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def with_mean(cls, outcomes, mean):
        return cls(outcomes, [Constraint(outcomes, mean)])

    @property
    def matrix(self) -> np.ndarray:
        """Constraint functions as a (constraints, outcomes) array."""
        return np.array([c.f_values for c in self.constraints], dtype=float).reshape(
            len(self.constraints), len(self.outcomes)
        )

    @property
    def targets(self) -> np.ndarray:
        return np.array([c.target for c in self.constraints], dtype=float)


@dataclass(frozen=True)
class MaxEntSolution:
    lambdas: tuple
    log_z: float
    probs: FiniteDistribution
    entropy: float
    iterations: int
    residual: float
    dual_trace: tuple = field(default=(), repr=False)


def entropy(p: FiniteDistribution, base: float = math.e) -> float:
    h = -math.fsum(v * math.log(v) for v in p.probs if v > 0)
    h = max(h, 0.0)
    return h if base == math.e else h / math.log(base)


def kl_divergence(p: FiniteDistribution, q: FiniteDistribution) -> ExtendedNonneg:
    """D(p || q) in nats; infinite when p puts mass where q has none."""
    if len(p) != len(q):
        raise DomainError("distributions must share a support")
    terms = []
    for pi, qi in zip(p.probs, q.probs):
        if pi == 0:
            continue
        if qi == 0:
            return INFINITE
        terms.append(pi * math.log(pi / qi))
    # rounding can push the sum a hair below zero for near-identical inputs
    return ExtendedNonneg(max(math.fsum(terms), 0.0))


def info_gain(prior: FiniteDistribution, post: FiniteDistribution) -> float:
    """Entropy change attributed to an update: minus D(posterior || prior).

    Never positive; ``-inf`` if the posterior revives a hypothesis the
    prior had ruled out.
    """
    return -float(kl_divergence(post, prior))


def _log_weights(lam, A):
    return -(lam @ A)


def dual_objective(lam, A, F):
    """log Z(lambda) + lambda . F, computed with a log-sum-exp shift."""
    s = _log_weights(np.asarray(lam, dtype=float), A)
    m = s.max()
    return float(m) + math.log(math.fsum(np.exp(s - m))) + float(np.dot(lam, F))


def _state(lam, A):
    s = _log_weights(lam, A)
    m = s.max()
    w = np.exp(s - m)
    total = math.fsum(w)
    log_z = float(m) + math.log(total)
    return w / total, log_z


def _dual_change(p, d, A, F, lam, dual):
    """D(lam + d) - D(lam) without subtracting two nearly equal duals.

    log Z(lam + d) - log Z(lam) = log E_p[exp(-d . f)], taken as
    log1p(E_p[expm1(-d . f)]) so tiny steps near the optimum keep their sign.
    """
    s = -(d @ A)
    if s.max() > 30.0:
        return dual_objective(lam + d, A, F) - dual
    return math.log1p(math.fsum(p * np.expm1(s))) + float(d @ F)


def dual_gradient(lam, A, F):
    p, _ = _state(np.asarray(lam, dtype=float), A)
    return F - A @ p


def _check_feasible(A, F):
    k, n = A.shape
    active = []
    for j in range(k):
        row = A[j]
        lo, hi = row.min(), row.max()
        if lo == hi:
            if F[j] != lo:
                raise InfeasibleConstraint(
                    f"constraint {j} is constant {lo} but targets {F[j]}"
                )
            continue
        if not lo < F[j] < hi:
            raise InfeasibleConstraint(
                f"target {F[j]} of constraint {j} is not strictly inside ({lo}, {hi})"
            )
        active.append(j)
    if len(active) > 1:
        # largest s with p_i >= s, sum p = 1, A p = F; s > 0 iff F is in the relative interior
        c = np.zeros(n + 1)
        c[-1] = -1.0
        a_eq = np.zeros((len(active) + 1, n + 1))
        a_eq[:-1, :n] = A[active]
        a_eq[-1, :n] = 1.0
        b_eq = np.append(F[active], 1.0)
        a_ub = np.hstack([-np.eye(n), np.ones((n, 1))])
        res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n), A_eq=a_eq, b_eq=b_eq,
                      bounds=[(0, None)] * n + [(None, 1.0)], method="highs")
        if res.status != 0 or -res.fun <= _HULL_SLACK:
            raise InfeasibleConstraint("targets are not jointly attainable by any strictly positive distribution")
    return active


def solve_maxent(problem: MaxEntProblem, tol: float = 1e-10, max_iter: int = 100) -> MaxEntSolution:
    """Maximum-entropy distribution for ``problem``.

    Newton directions come from the covariance of the constraint functions
    (the dual Hessian), and each step is halved until the dual decreases.
    Constant constraint rows that match their target carry zero multipliers.
    """
    A_full = problem.matrix
    F_full = problem.targets
    active = _check_feasible(A_full, F_full)
    A = A_full[active]
    F = F_full[active]
    k = len(active)

    lam = np.zeros(k)
    p, log_z = _state(lam, A)
    dual = log_z + float(lam @ F)
    trace = [dual]
    residual = float(np.max(np.abs(A @ p - F))) if k else 0.0
    iterations = 0
    while residual > tol:
        if iterations >= max_iter:
            raise NonConvergence(
                f"maxent solver hit {max_iter} iterations, residual {residual:.3g}",
                best_residual=residual,
            )
        iterations += 1
        grad = F - A @ p
        mean = A @ p
        centered = A - mean[:, None]
        hess = (centered * p) @ centered.T
        try:
            if np.linalg.cond(hess) > 1e12:
                raise np.linalg.LinAlgError
            direction = -np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            direction = -np.linalg.solve(hess + RIDGE * np.eye(k), grad)

        step = 1.0
        for _ in range(_MAX_HALVINGS):
            change = _dual_change(p, step * direction, A, F, lam, dual)
            if change <= 0.0:
                break
            step *= 0.5
        else:
            raise NonConvergence(
                f"line search stalled at residual {residual:.3g}", best_residual=residual
            )
        lam = lam + step * direction
        p, log_z = _state(lam, A)
        dual = dual + change
        trace.append(dual)
        residual = float(np.max(np.abs(A @ p - F)))

    lambdas = np.zeros(len(F_full))
    lambdas[active] = lam
    full_residual = float(np.max(np.abs(A_full @ p - F_full))) if len(F_full) else 0.0
    dist = FiniteDistribution(p)
    return MaxEntSolution(
        lambdas=tuple(float(v) for v in lambdas),
        log_z=float(log_z),
        probs=dist,
        entropy=entropy(dist),
        iterations=iterations,
        residual=full_residual,
        dual_trace=tuple(trace),
    )
