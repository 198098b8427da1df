"""Exit criteria. Test names carry the criterion number (``test_cNN_*``);
``conftest.py`` prints one PASS/FAIL line per criterion after the run."""

import csv
import io
import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from plausible.cli import main, stream_records
from plausible.errors import CromwellViolation, TotalEvidenceZero
from plausible.evidence import (
    bayes_factor_law,
    confidence_density,
    confidence_in_law,
    coverage_simulation,
    elr,
    sequential_log10_bf,
    accumulate_log_bf,
)
from plausible.inference import (
    UNIFORM,
    BetaParams,
    BoundaryMixture,
    EvidenceSummary,
    mixture_mass_exact,
    mixture_posterior,
    posterior,
    predictive,
)
from plausible.maxent import (
    MaxEntProblem,
    dual_gradient,
    dual_objective,
    info_gain,
    kl_divergence,
    solve_maxent,
)
from plausible.plausibility import FiniteDistribution, FiniteJoint, bayes_update, rule_residuals
from plausible.special import beta_log_pdf, inv_reg_inc_beta, reg_inc_beta


def cli(*args):
    out = io.StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = main(list(args))
    finally:
        sys.stdout = old
    assert code == 0
    return list(csv.DictReader(io.StringIO(out.getvalue())))


# 1 ---------------------------------------------------------------------------

def test_c01_rule_of_succession():
    start = time.perf_counter()
    (row,) = cli("sunrise-table", "--n", "10000")
    elapsed = time.perf_counter() - start
    assert row["predictive"] == repr(10001 / 10002)
    assert abs(float(row["predictive"]) - 0.99990002) <= 1e-8
    assert elapsed < 1.0


# 2 ---------------------------------------------------------------------------

def trapezoid_mass(n, w=0.5, nodes=10**6):
    theta = np.linspace(0.0, 1.0, nodes + 1)
    m = np.trapezoid(theta**n, theta)
    return w / (w + (1 - w) * m)


@pytest.mark.parametrize("n", [1, 10, 100, 10**4])
def test_c02_jeffreys_mass(n):
    start = time.perf_counter()
    assert mixture_mass_exact(Fraction(1, 2), UNIFORM, n) == Fraction(n + 1, n + 2)
    mass = mixture_posterior(BoundaryMixture(0.5), EvidenceSummary(n, n)).mass_at_one
    assert abs(mass - (n + 1) / (n + 2)) <= 1e-12
    assert abs(mass - trapezoid_mass(n)) <= 1e-9
    assert time.perf_counter() - start < 5.0


# 3 ---------------------------------------------------------------------------

def test_c03_bayes_factor_exact():
    for n in list(range(0, 2000)) + [10**5, 999_999, 10**6]:
        bf = bayes_factor_law(EvidenceSummary(n, n))
        assert bf.value == n + 1 and isinstance(bf.value, int)


def test_c03_first_failure_collapses():
    for n in (1, 2, 10, 10**4, 10**6):
        assert bayes_factor_law(EvidenceSummary(n, n - 1)).value == 0


@pytest.mark.parametrize("n", [1, 10, 1000, 10**6])
def test_c03_log_additivity(n):
    assert abs(accumulate_log_bf(sequential_log10_bf(n)) - math.log10(n + 1)) <= 1e-10


# 4 ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 10, 500, 10**4])
def test_c04_post_failure(n):
    post = posterior(UNIFORM, EvidenceSummary(n, n - 1))
    assert post == BetaParams(n, 2)
    assert predictive(post) == n / (n + 2)


@pytest.mark.parametrize("failure_at", [1, 7, 250])
def test_c04_stream_matches_batch(failure_at):
    obs = [1] * (failure_at - 1) + [0] + [1] * 30
    for step, rec in enumerate(stream_records(obs, 0.5), start=1):
        _, x, n, t, pred, log_bf, conf, mass, _gain = rec
        data = EvidenceSummary(step, sum(obs[:step]))
        assert (n, t) == (data.n, data.t)
        batch_post = posterior(UNIFORM, data)
        assert repr(pred) == repr(predictive(batch_post))
        assert repr(mass) == repr(mixture_posterior(BoundaryMixture(0.5), data).mass_at_one)
        assert repr(log_bf) == repr(bayes_factor_law(data).log10())
        assert conf == confidence_in_law(data)
        if step == failure_at:
            assert batch_post == BetaParams(step, 2)
            assert repr(pred) == repr(step / (step + 2))


# 5 ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 9, 99, 9999])
def test_c05_quantiles_closed_form(n):
    for q in (0.025, 0.05, 0.5, 0.95, 0.975):
        assert abs(inv_reg_inc_beta(q, n + 1, 1) - q ** (1 / (n + 1))) <= 1e-9


def test_c05_roundtrip():
    rng = np.random.default_rng(2024)
    qs = rng.random(10**4)
    a = rng.uniform(0.5, 50, 10**4)
    b = rng.uniform(0.5, 50, 10**4)
    worst = max(abs(reg_inc_beta(inv_reg_inc_beta(q, x, y), x, y) - q) for q, x, y in zip(qs, a, b))
    assert worst <= 1e-9


# 6 ---------------------------------------------------------------------------

def test_c06_acceptance_indicators():
    for n in range(1, 101):
        for t in range(n + 1):
            d = EvidenceSummary(n, t)
            assert (confidence_in_law(d) == 1) == (t == n)
            assert elr(d).infinite == (t == n)


def test_c06_densities_integrate_to_one():
    worst = 0.0
    for n in range(1, 101):
        for t in range(n):
            p = confidence_density(EvidenceSummary(n, t)).params
            mass, _ = integrate.quad(
                lambda x: math.exp(beta_log_pdf(x, p.alpha, p.beta)),
                0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200,
            )
            worst = max(worst, abs(mass - 1.0))
    assert worst <= 1e-10


# 7 ---------------------------------------------------------------------------

COVERAGE_GRID = [(th, n) for th in (0.3, 0.5, 0.7, 0.9) for n in (20, 50, 200)]


@pytest.mark.parametrize("theta0,n", COVERAGE_GRID)
def test_c07_coverage(theta0, n):
    r = coverage_simulation(theta0, n, 0.95, 10**5, 42)
    print(f"coverage theta0={theta0} n={n}: {r.empirical}")
    assert 0.935 <= r.empirical <= 0.965


def test_c07_bit_identical_and_fast():
    start = time.perf_counter()
    first = [coverage_simulation(th, n, 0.95, 10**5, 42) for th, n in COVERAGE_GRID]
    elapsed = time.perf_counter() - start
    second = [coverage_simulation(th, n, 0.95, 10**5, 42) for th, n in COVERAGE_GRID]
    assert [repr(r.empirical) for r in first] == [repr(r.empirical) for r in second]
    assert elapsed < 30.0


# 8 ---------------------------------------------------------------------------

DIE = [1, 2, 3, 4, 5, 6]


def grid_oracle(target, step=1e-5):
    x = np.array(DIE, dtype=float)
    lam = np.linspace(-2.0, 2.0, round(4.0 / step) + 1)
    s = -np.outer(lam, x)
    m = s.max(axis=1, keepdims=True)
    log_z = m[:, 0] + np.log(np.exp(s - m).sum(axis=1))
    i = np.argmin(log_z + lam * target)
    return np.exp(-lam[i] * x - log_z[i])


def test_c08_maxent():
    start = time.perf_counter()
    free = solve_maxent(MaxEntProblem(DIE))
    mid = solve_maxent(MaxEntProblem.with_mean(DIE, 3.5))
    skew = solve_maxent(MaxEntProblem.with_mean(DIE, 4.5))
    elapsed = time.perf_counter() - start

    assert np.max(np.abs(free.probs.array - 1 / 6)) <= 1e-12
    assert abs(mid.lambdas[0]) <= 1e-8
    assert np.max(np.abs(mid.probs.array - 1 / 6)) <= 1e-12
    assert skew.residual <= 1e-8
    assert np.max(np.abs(skew.probs.array - grid_oracle(4.5))) <= 1e-5
    assert elapsed < 1.0


def test_c08_gradient_check():
    A = np.array([DIE], dtype=float)
    F = np.array([4.5])
    h = 1e-6
    for lam in (-0.8, -0.37, 0.0, 0.6):
        lam = np.array([lam])
        g = dual_gradient(lam, A, F)[0]
        fd = (dual_objective(lam + h, A, F) - dual_objective(lam - h, A, F)) / (2 * h)
        assert abs(fd - g) <= 1e-6 * max(abs(g), 1e-3)


# 9 ---------------------------------------------------------------------------

def test_c09_information_gain():
    rng = np.random.default_rng(99)
    for i in range(1000):
        k = int(rng.integers(2, 8))
        prior = FiniteDistribution.from_weights(rng.random(k))
        post = prior if i % 10 == 0 else FiniteDistribution.from_weights(rng.random(k))
        d = float(kl_divergence(post, prior))
        assert d >= 0
        assert info_gain(prior, post) <= 0
        assert (d == 0) == (post == prior)


# 10 --------------------------------------------------------------------------

def test_c10_consistency_algebra():
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(1000):
        r, c = rng.integers(1, 7, size=2)
        w = rng.random((r, c))
        w[rng.random((r, c)) < 0.2] = 0.0
        if w.sum() == 0:
            w[0, 0] = 1.0
        worst = max(worst, rule_residuals(FiniteJoint.from_weights(w)).max())
    assert worst <= 1e-10


def test_c10_deduction_limit():
    rng = np.random.default_rng(11)
    for _ in range(200):
        k = int(rng.integers(2, 7))
        prior = FiniteDistribution.from_weights(rng.random(k) + 0.01)
        j = int(rng.integers(k))
        lik = np.zeros(k)
        lik[j] = rng.random() + 1e-3
        post = bayes_update(prior, lik)
        assert post.probs == tuple(1.0 if i == j else 0.0 for i in range(k))


# 11 --------------------------------------------------------------------------

@pytest.mark.parametrize("w", [0, 1, 0.0, 1.0])
def test_c11_cromwell_guard(w):
    with pytest.raises(CromwellViolation):
        BoundaryMixture(w)


def test_c11_no_resurrection():
    rng = np.random.default_rng(12)
    for _ in range(500):
        k = int(rng.integers(2, 7))
        w = rng.random(k)
        dead = int(rng.integers(k))
        w[dead] = 0.0
        state = FiniteDistribution.from_weights(w)
        for _ in range(5):
            lik = rng.random(k) * 10
            try:
                state = bayes_update(state, lik)
            except TotalEvidenceZero:
                break
            assert state.probs[dead] == 0.0
