"""Command-line tables and tools.

Every table is CSV with shortest round-trip float formatting, so identical
invocations give byte-identical output. Exit codes: 0 ok, 2 I/O, 3 domain,
4 numerical, 5 parse, 6 infeasible, 7 nonconvergence.
"""

import argparse
import contextlib
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import evidence, inference, maxent
from .errors import DomainError, ParseError, PlausibleError
from .inference import UNIFORM, BetaParams, BoundaryMixture, EvidenceSummary
from .plausibility import FiniteDistribution, FiniteJoint, rule_residuals

DEFAULT_GRID = (1, 2, 5, 10, 100, 1000, 10000)
RESIDUAL_TOL = 1e-10


def fmt(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, evidence.ExtendedNonneg):
        return str(v)
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def _write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def sunrise_rows(n_values):
    for n in n_values:
        post = inference.posterior(UNIFORM, EvidenceSummary.all_success(n))
        yield n, inference.predictive(post)


def jeffreys_rows(n_values, w):
    prior = BoundaryMixture(w)
    for n in n_values:
        yield n, w, inference.mixture_posterior(prior, EvidenceSummary.all_success(n)).mass_at_one


def bf_rows(n_values):
    for n in n_values:
        bf = evidence.bayes_factor_law(EvidenceSummary.all_success(n))
        yield n, bf.value, bf.log10()


def failure_rows(n_values):
    for n in n_values:
        if n < 1:
            raise DomainError("a failure needs at least one trial (n >= 1)")
        post = inference.posterior(UNIFORM, EvidenceSummary(n, n - 1))
        yield n, inference.predictive(post), post.alpha, post.beta


def ci_rows(n_values, level):
    for n in n_values:
        data = EvidenceSummary.all_success(n)
        post = inference.posterior(UNIFORM, data)
        ci = inference.credible_interval(post, level)
        approx = inference.normal_approx(data)
        yield n, level, post.mean, ci.lo, ci.hi, approx.mu, approx.sigma2


def summary_row(n):
    if n < 1:
        raise DomainError("summary needs n >= 1")
    data = EvidenceSummary.all_success(n)
    laplace = inference.posterior(UNIFORM, data)
    law_prob = inference.universal_law_probability(inference.PureBeta(laplace))
    mass = inference.mixture_posterior(BoundaryMixture(0.5), data).mass_at_one
    bf = evidence.bayes_factor_law(data).value
    failed = inference.posterior(UNIFORM, EvidenceSummary(n, n - 1))
    return (inference.predictive(laplace), law_prob, mass, bf, inference.predictive(failed))


STREAM_HEADER = [
    "step", "observation", "n", "t", "predictive", "log10_bf",
    "confidence_law", "mixture_mass", "info_gain_step",
]


def parse_stream(lines):
    obs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if line not in ("0", "1"):
            raise ParseError(f"line {lineno}: expected '0' or '1', got {line!r}")
        obs.append(int(line))
    if not obs:
        raise ParseError("observation stream is empty")
    return obs


def stream_records(observations, w, entropy_diff=False):
    """Per-observation records for a 0/1 stream.

    The Beta posterior is advanced one observation at a time; the
    point-mass share and Bayes factor are read off the running counts so
    that each row equals the batch answer for its (n, t).
    """
    prior = BoundaryMixture(w)
    beta = UNIFORM
    data = EvidenceSummary(0, 0)
    prev_mass = float(w)
    for step, x in enumerate(observations, start=1):
        data = data.observe(x)
        beta = inference.posterior(beta, EvidenceSummary(1, x))
        mass = inference.mixture_posterior(prior, data).mass_at_one
        before = FiniteDistribution.from_weights([prev_mass, 1.0 - prev_mass])
        after = FiniteDistribution.from_weights([mass, 1.0 - mass])
        row = [
            step, x, data.n, data.t,
            inference.predictive(beta),
            evidence.bayes_factor_law(data).log10(),
            evidence.confidence_in_law(data),
            mass,
            maxent.info_gain(before, after),
        ]
        if entropy_diff:
            row.append(maxent.entropy(after) - maxent.entropy(before))
        yield row
        prev_mass = mass


def load_maxent_problem(text):
    try:
        doc = json.loads(text)
        outcomes = doc["outcomes"]
        constraints = [
            maxent.Constraint(c["f_values"], c["target"]) for c in doc.get("constraints", [])
        ]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad maxent problem: {exc}") from exc
    try:
        return maxent.MaxEntProblem(outcomes, constraints)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad maxent problem: {exc}") from exc


def solution_document(sol, bits=False):
    base = 2.0 if bits else math.e
    return {
        "lambdas": list(sol.lambdas),
        "log_z": sol.log_z,
        "probabilities": list(sol.probs.probs),
        "entropy": maxent.entropy(sol.probs, base),
        "entropy_unit": "bits" if bits else "nats",
        "iterations": sol.iterations,
        "residual": sol.residual,
    }


def load_joint(text):
    try:
        doc = json.loads(text)
        if isinstance(doc, list):
            doc = {"table": doc}
        return FiniteJoint(doc["table"], doc.get("row_labels"), doc.get("col_labels"))
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad joint table: {exc}") from exc


def _count_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of counts: {text!r}")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"need nonnegative counts: {text!r}")
    return values


def _u64(text):
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    parser = _Parser(prog="plausible", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", default="-", help="output path (default: stdout)")
        return p

    p = add("sunrise-table", "rule of succession under a uniform prior")
    p.add_argument("--n", type=_count_list, default=list(DEFAULT_GRID))

    p = add("jeffreys-table", "posterior mass on theta = 1 under a boundary-mass prior")
    p.add_argument("--n", type=_count_list, default=list(DEFAULT_GRID))
    p.add_argument("--w", type=float, default=0.5)

    p = add("bf-table", "Bayes factor for the universal law after n successes")
    p.add_argument("--n", type=_count_list, default=list(DEFAULT_GRID))

    p = add("failure-table", "prediction after one failure in n trials")
    p.add_argument("--n", type=_count_list, default=list(DEFAULT_GRID))

    p = add("ci-table", "credible interval and normal approximation, all-success case")
    p.add_argument("--n", type=_count_list, default=list(DEFAULT_GRID))
    p.add_argument("--level", type=float, default=0.95)

    p = add("stream", "sequential updating over a 0/1 observation file")
    p.add_argument("observations", help="file with one 0 or 1 per line ('-' for stdin)")
    p.add_argument("--w", type=float, default=0.5)
    p.add_argument("--entropy-diff", action="store_true",
                   help="append the plain entropy difference H(after) - H(before)")

    p = add("maxent", "solve a maximum-entropy problem file (JSON)")
    p.add_argument("problem")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--bits", action="store_true", help="report entropy in bits")

    p = add("coverage", "Monte Carlo coverage of equal-tailed credible intervals")
    p.add_argument("--theta0", type=float, default=0.7)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--seed", type=_u64, default=42)

    p = add("summary", "closed-form summary for n straight successes")
    p.add_argument("--n", type=int, default=10000)

    p = add("rules-check", "product/sum/Bayes rule residuals of a joint table (JSON)")
    p.add_argument("joint")
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def run(args, out):
    cmd = args.command
    if cmd == "sunrise-table":
        _write_csv(out, ["n", "predictive"], sunrise_rows(args.n))
    elif cmd == "jeffreys-table":
        _write_csv(out, ["n", "w", "posterior_mass"], list(jeffreys_rows(args.n, args.w)))
    elif cmd == "bf-table":
        _write_csv(out, ["n", "bf", "log10_bf"], bf_rows(args.n))
    elif cmd == "failure-table":
        _write_csv(out, ["n", "predictive", "alpha", "beta"], list(failure_rows(args.n)))
    elif cmd == "ci-table":
        header = ["n", "level", "mean", "lower", "upper", "approx_mu", "approx_sigma2"]
        _write_csv(out, header, list(ci_rows(args.n, args.level)))
    elif cmd == "stream":
        try:
            text = _read(args.observations)
        except UnicodeDecodeError as exc:
            raise ParseError(f"stream is not ASCII: {exc}") from exc
        obs = parse_stream(text.splitlines(keepends=True))
        header = STREAM_HEADER + (["entropy_diff_step"] if args.entropy_diff else [])
        _write_csv(out, header, list(stream_records(obs, args.w, args.entropy_diff)))
    elif cmd == "maxent":
        problem = load_maxent_problem(_read(args.problem))
        sol = maxent.solve_maxent(problem, tol=args.tol, max_iter=args.max_iter)
        json.dump(solution_document(sol, args.bits), out, indent=2)
        out.write("\n")
    elif cmd == "coverage":
        res = evidence.coverage_simulation(args.theta0, args.n, args.level, args.reps, args.seed)
        _write_csv(out, ["nominal", "empirical", "mc_stderr"],
                   [(res.nominal, res.empirical, res.mc_stderr)])
    elif cmd == "summary":
        header = ["laplace_predictive", "laplace_law_prob", "jeffreys_mass",
                  "bf_all_success", "failure_predictive"]
        _write_csv(out, header, [summary_row(args.n)])
    elif cmd == "rules-check":
        res = rule_residuals(load_joint(_read(args.joint)))
        _write_csv(out, ["product_residual", "sum_residual", "bayes_residual"],
                   [(res.product_residual, res.sum_residual, res.bayes_residual)])
        return 0 if res.max() <= RESIDUAL_TOL else 1
    return 0


@contextlib.contextmanager
def _sink(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        # compute before opening the sink so a failed run leaves no partial file
        buf = io.StringIO()
        code = run(args, buf)
    except PlausibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        with _sink(args.out) as out:
            out.write(buf.getvalue())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
