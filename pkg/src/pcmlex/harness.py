"""Pipeline driver and reproduction harnesses.

The pipeline mirrors the three-step construction: preference DAG to
incomplete matrix, completion, weighting, then the ordinal audit of the
derived weights against the stated (incomplete) preferences.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .completion import (
    cr_optimal_completion,
    gci_optimal_completion,
    lex_optimal_completion,
)
from .core import (
    CompleteMatrix,
    IncompleteMatrix,
    OrdinalViolation,
    WeightVector,
    check_ordinal_violation,
    inconsistency_profile,
    saaty_lambda_max,
)
from .errors import PcmError
from .graph import PreferenceDag, dag_to_incomplete_matrix, random_cdag
from .weighting import eigenvector_weights, incomplete_llsm_weights, llsm_weights

COMPLETION_METHODS = ("lex", "gci", "cr")
WEIGHTING_METHODS = ("em", "llsm")


def complete_matrix(a: IncompleteMatrix, method: str) -> CompleteMatrix:
    """Dispatch one completion method by name."""
    if method == "lex":
        return lex_optimal_completion(a)[0]
    if method == "gci":
        return gci_optimal_completion(a)
    if method == "cr":
        return cr_optimal_completion(a)[0]
    raise ValueError(f"unknown completion method {method!r}")


def derive_weights(m: CompleteMatrix, method: str) -> WeightVector:
    """Dispatch one weighting method by name."""
    if method == "em":
        return eigenvector_weights(m).weights
    if method == "llsm":
        return llsm_weights(m)
    raise ValueError(f"unknown weighting method {method!r}")


@dataclass(frozen=True)
class PipelineReport:
    """Everything one completion-x-weighting run produces."""

    completion: str
    weighting: str
    weights: WeightVector
    violations: list[OrdinalViolation]
    max_ti: float
    ki: float
    lambda_max: float
    theta_prefix: tuple[float, ...]
    runtime_ms: float


def run_pipeline(
    a: IncompleteMatrix,
    completion: str,
    weighting: str,
    eq_tol: float = 1e-9,
    theta_prefix_len: int = 5,
) -> PipelineReport:
    """Complete, weight, and audit one incomplete matrix."""
    start = time.perf_counter()
    full = complete_matrix(a, completion)
    w = derive_weights(full, weighting)
    violations = check_ordinal_violation(a, w, eq_tol=eq_tol)
    profile = inconsistency_profile(full) if full.n >= 3 else None
    max_ti = profile.max_ti if profile else 1.0
    ki = 1.0 - 1.0 / max_ti
    prefix = tuple(float(v) for v in (profile.theta[:theta_prefix_len] if profile else ()))
    lam = saaty_lambda_max(full)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    return PipelineReport(
        completion=completion,
        weighting=weighting,
        weights=w,
        violations=violations,
        max_ti=max_ti,
        ki=ki,
        lambda_max=lam,
        theta_prefix=prefix,
        runtime_ms=runtime_ms,
    )


@dataclass(frozen=True)
class TrialFailure:
    """One fuzz trial that produced violations or a solver error."""

    trial: int
    n: int
    alpha: float
    seed: int
    weighting: str
    violations: list[OrdinalViolation]
    error: str | None
    matrix_text: str


@dataclass(frozen=True)
class Theorem1Summary:
    """Outcome of the ordinal-violation fuzz suite."""

    trials: int
    audits: int
    violation_failures: list[TrialFailure]
    solver_failures: list[TrialFailure]

    @property
    def passed(self) -> bool:
        return not self.violation_failures and not self.solver_failures


def verify_theorem1(
    trials: int,
    n_max: int,
    alphas: tuple[float, ...] = (2.0, 5.0, 9.0),
    seed: int = 0,
    n_min: int = 3,
    completion: str = "lex",
) -> Theorem1Summary:
    """Fuzz random connected DAGs through completion + both weightings.

    Each trial builds a random CDAG, its incomplete matrix at one alpha,
    completes it, derives weights by both the eigenvector and the log least
    squares methods, and audits each weight vector for ordinal violations.
    Deterministic given the seed.
    """
    from .fileio import dumps_matrix  # local import to avoid a cycle

    rng = np.random.default_rng(seed)
    violation_failures: list[TrialFailure] = []
    solver_failures: list[TrialFailure] = []
    audits = 0
    for trial in range(trials):
        n = int(rng.integers(n_min, n_max + 1))
        alpha = float(alphas[trial % len(alphas)])
        density = float(rng.uniform(0.15, 0.9))
        trial_seed = int(rng.integers(0, 2**31 - 1))
        g = random_cdag(n, density, trial_seed)
        a = dag_to_incomplete_matrix(g, alpha)
        try:
            full = complete_matrix(a, completion)
        except PcmError as exc:
            solver_failures.append(
                TrialFailure(trial, n, alpha, trial_seed, "-", [], repr(exc), dumps_matrix(a))
            )
            continue
        for weighting in WEIGHTING_METHODS:
            audits += 1
            try:
                w = derive_weights(full, weighting)
            except PcmError as exc:
                solver_failures.append(
                    TrialFailure(
                        trial, n, alpha, trial_seed, weighting, [], repr(exc), dumps_matrix(a)
                    )
                )
                continue
            violations = check_ordinal_violation(a, w)
            if violations:
                violation_failures.append(
                    TrialFailure(
                        trial, n, alpha, trial_seed, weighting, violations, None, dumps_matrix(a)
                    )
                )
    return Theorem1Summary(trials, audits, violation_failures, solver_failures)


SWEEP_COLUMNS = (
    "alpha",
    "method_pair",
    "n_violations",
    "max_ti",
    "ki",
    "lambda_max",
    "runtime_ms",
)


@dataclass(frozen=True)
class SweepRow:
    """One alpha of a sweep; a solver failure is recorded as n_violations=-1."""

    alpha: float
    method_pair: str
    n_violations: int
    max_ti: float
    ki: float
    lambda_max: float
    runtime_ms: float

    def as_csv(self) -> str:
        def num(x: float) -> str:
            return f"{x:.10g}"

        return ",".join(
            [
                num(self.alpha),
                self.method_pair,
                str(self.n_violations),
                num(self.max_ti),
                num(self.ki),
                num(self.lambda_max),
                num(self.runtime_ms),
            ]
        )


def alpha_grid(start: float = 1.1, stop: float = 10.0, step: float = 0.1) -> tuple[float, ...]:
    """Inclusive grid start, start+step, ..., up to stop (within rounding)."""
    count = int(round((stop - start) / step)) + 1
    return tuple(round(start + k * step, 12) for k in range(count))


def sweep_alpha(
    g: PreferenceDag,
    completion: str,
    weighting: str,
    alphas: tuple[float, ...] | None = None,
    eq_tol: float = 1e-9,
) -> list[SweepRow]:
    """Run the pipeline on one DAG for every alpha of a grid.

    A solver failure at some alpha is recorded in that row (violation count
    -1, NaN metrics) and the sweep continues.
    """
    if alphas is None:
        alphas = alpha_grid()
    pair = f"{completion}+{weighting}"
    rows: list[SweepRow] = []
    for alpha in alphas:
        a = dag_to_incomplete_matrix(g, alpha)
        start = time.perf_counter()
        try:
            report = run_pipeline(a, completion, weighting, eq_tol=eq_tol)
        except PcmError:
            runtime_ms = (time.perf_counter() - start) * 1000.0
            rows.append(
                SweepRow(alpha, pair, -1, float("nan"), float("nan"), float("nan"), runtime_ms)
            )
            continue
        rows.append(
            SweepRow(
                alpha,
                pair,
                len(report.violations),
                report.max_ti,
                report.ki,
                report.lambda_max,
                report.runtime_ms,
            )
        )
    return rows
