"""Probability algebra over finitely many propositions.

Product rule, sum rule and Bayes's rule are exposed both as operations
(conditioning, updating) and as residual checks, so the identities can be
tested on arbitrary joint tables.
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Sequence

import numpy as np

from .errors import DomainError, TotalEvidenceZero, ZeroProbabilityCondition

NORM_TOL = 1e-12


def _labels(labels, n):
    if labels is None:
        return tuple(range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise DomainError(f"expected {n} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise DomainError("labels must be distinct")
    return labels


@dataclass(frozen=True, init=False)
class FiniteDistribution:
    """A probability vector over labelled propositions.

    Entries must already sum to one within ``NORM_TOL``; the stored vector
    is renormalized exactly. Use :meth:`from_weights` for unnormalized
    input.
    """

    labels: tuple
    probs: tuple

    def __init__(self, probs: Sequence[float], labels: Sequence[Hashable] | None = None):
        p = [float(v) for v in probs]
        if not p:
            raise DomainError("a distribution needs at least one outcome")
        if any(not (0.0 <= v <= 1.0) for v in p):
            raise DomainError(f"probabilities must lie in [0, 1]: {p}")
        total = math.fsum(p)
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "labels", _labels(labels, len(p)))
        object.__setattr__(self, "probs", tuple(v / total for v in p))

    @classmethod
    def from_weights(cls, weights, labels=None):
        w = [float(v) for v in weights]
        if any(not (v >= 0.0 and math.isfinite(v)) for v in w):
            raise DomainError(f"weights must be finite and nonnegative: {w}")
        total = math.fsum(w)
        if total <= 0.0:
            raise DomainError("weights sum to zero")
        return cls([v / total for v in w], labels)

    @classmethod
    def uniform(cls, n, labels=None):
        return cls([1.0 / n] * n, labels)

    def __len__(self):
        return len(self.probs)

    def __getitem__(self, label):
        return self.probs[self.labels.index(label)]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.probs)


@dataclass(frozen=True, init=False)
class FiniteJoint:
    """Joint table P(A_i B_j | C) with rows A_i and columns B_j."""

    row_labels: tuple
    col_labels: tuple
    table: np.ndarray

    def __init__(self, table, row_labels=None, col_labels=None):
        t = np.array(table, dtype=float)
        if t.ndim != 2 or t.size == 0:
            raise DomainError("joint table must be a nonempty matrix")
        if not np.all(np.isfinite(t)) or np.any(t < 0):
            raise DomainError("joint entries must be finite and nonnegative")
        total = math.fsum(t.ravel())
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError(f"joint table sums to {total!r}, not 1")
        t = t / total
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "row_labels", _labels(row_labels, t.shape[0]))
        object.__setattr__(self, "col_labels", _labels(col_labels, t.shape[1]))

    @classmethod
    def from_weights(cls, weights, row_labels=None, col_labels=None):
        w = np.asarray(weights, dtype=float)
        return cls(w / w.sum(), row_labels, col_labels)

    @property
    def shape(self):
        return self.table.shape

    def row_marginal(self) -> FiniteDistribution:
        return FiniteDistribution(self.table.sum(axis=1), self.row_labels)

    def col_marginal(self) -> FiniteDistribution:
        return FiniteDistribution(self.table.sum(axis=0), self.col_labels)

    def transpose(self) -> "FiniteJoint":
        return FiniteJoint(self.table.T, self.col_labels, self.row_labels)


def condition(joint: FiniteJoint, on: Hashable) -> FiniteDistribution:
    """P(row | column ``on``): the column slice renormalized.

    To condition on a row, pass ``joint.transpose()``.
    """
    try:
        j = joint.col_labels.index(on)
    except ValueError:
        raise DomainError(f"unknown column {on!r}") from None
    col = joint.table[:, j]
    total = math.fsum(col)
    if total <= 0.0:
        raise ZeroProbabilityCondition(f"column {on!r} has probability zero")
    return FiniteDistribution(col / total, joint.row_labels)


def _log_normalize(logw):
    finite = logw[np.isfinite(logw)]
    shift = finite.max()
    w = np.exp(logw - shift)
    return w / math.fsum(w)


def bayes_update(prior: FiniteDistribution, likelihoods: Sequence[float]) -> FiniteDistribution:
    """Posterior proportional to prior times likelihood, normalized in log space.

    A hypothesis with prior zero stays at zero whatever the likelihoods.
    """
    lik = np.asarray(likelihoods, dtype=float)
    if lik.shape != (len(prior),):
        raise DomainError(f"need {len(prior)} likelihoods, got shape {lik.shape}")
    if np.any(lik < 0) or not np.all(np.isfinite(lik)):
        raise DomainError("likelihoods must be finite and nonnegative")
    with np.errstate(divide="ignore"):
        logw = np.log(prior.array) + np.log(lik)
    if not np.any(np.isfinite(logw)):
        raise TotalEvidenceZero("evidence has zero probability under every hypothesis")
    return FiniteDistribution(_log_normalize(logw), prior.labels)


def bayes_update_log(prior: FiniteDistribution, log_likelihoods: Sequence[float]) -> FiniteDistribution:
    """Same as :func:`bayes_update` for likelihoods given as logs (``-inf`` allowed)."""
    ll = np.asarray(log_likelihoods, dtype=float)
    if ll.shape != (len(prior),):
        raise DomainError(f"need {len(prior)} log-likelihoods, got shape {ll.shape}")
    if np.any(np.isnan(ll)) or np.any(ll == np.inf):
        raise DomainError("log-likelihoods must be < +inf and not nan")
    with np.errstate(divide="ignore"):
        logw = np.log(prior.array) + ll
    if not np.any(np.isfinite(logw)):
        raise TotalEvidenceZero("evidence has zero probability under every hypothesis")
    return FiniteDistribution(_log_normalize(logw), prior.labels)


@dataclass(frozen=True)
class RuleResiduals:
    product_residual: float
    sum_residual: float
    bayes_residual: float

    def max(self):
        return max(self.product_residual, self.sum_residual, self.bayes_residual)


def rule_residuals(joint: FiniteJoint) -> RuleResiduals:
    """Largest violation of the product, sum and Bayes rules over the table.

    Row events A_i and column events B_j are read off the joint. Cells
    whose conditionals are undefined (zero-probability conditions) are
    skipped.
    """
    t = joint.table
    nr, nc = t.shape
    pa = t.sum(axis=1)
    pb = t.sum(axis=0)

    product = 0.0
    bayes = 0.0
    for i in range(nr):
        for j in range(nc):
            pab = t[i, j]
            if pa[i] > 0:
                b_given_a = pab / pa[i]
                product = max(product, abs(pab - pa[i] * b_given_a))
            if pb[j] > 0:
                a_given_b = pab / pb[j]
                product = max(product, abs(pab - pb[j] * a_given_b))
            if pa[i] > 0 and pb[j] > 0:
                bayes = max(bayes, abs(a_given_b - b_given_a * pa[i] / pb[j]))

    # sum rule on unions of cell sets: row/column pairs and row/row pairs
    total = 0.0
    for i in range(nr):
        for j in range(nc):
            direct = math.fsum(np.concatenate([t[i, :], np.delete(t[:, j], i)]))
            total = max(total, abs(direct - (pa[i] + pb[j] - t[i, j])))
    for i, k in combinations(range(nr), 2):
        # distinct rows are exclusive, so P(A_i A_k) = 0
        direct = math.fsum(np.concatenate([t[i, :], t[k, :]]))
        total = max(total, abs(direct - (pa[i] + pa[k])))
    return RuleResiduals(float(product), float(total), float(bayes))
