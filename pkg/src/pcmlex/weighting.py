"""Priority derivation: eigenvector method and (incomplete) log least squares."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    POWER_MAX_ITER,
    POWER_TOL,
    CompleteMatrix,
    IncompleteMatrix,
    WeightVector,
    _power_iteration,
)
from .errors import DisconnectedComparisonGraphError, SingularSystemError


@dataclass(frozen=True)
class EigenResult:
    """Perron eigenpair of a pairwise comparison matrix."""

    weights: WeightVector
    lambda_max: float
    iterations: int
    residual: float  # ||A w - lambda w||_inf / lambda


def eigenvector_weights(
    m: CompleteMatrix, tol: float = POWER_TOL, max_iter: int = POWER_MAX_ITER
) -> EigenResult:
    """Perron eigenvector normalized to sum 1, via power iteration.

    Iteration starts from the uniform vector and stops once successive
    normalized iterates differ by at most ``tol`` in the infinity norm.

    Raises:
        ConvergenceFailureError: if ``max_iter`` is exhausted.
    """
    w, lam, iters, residual = _power_iteration(m.entries, tol, max_iter)
    return EigenResult(WeightVector.from_raw(w), lam, iters, residual)


def llsm_weights(m: CompleteMatrix) -> WeightVector:
    """Row geometric means, normalized to sum 1 (computed in log space)."""
    logs = np.log(m.entries)
    y = logs.mean(axis=1)
    w = np.exp(y - y.max())
    return WeightVector.from_raw(w)


def incomplete_llsm_weights(a: IncompleteMatrix) -> WeightVector:
    """Log least squares weights restricted to the known pairs.

    Minimizes the squared log residuals sum over known (i, j) of
    (log a_ij - log w_i + log w_j)^2 by solving the Laplacian system
    L y = b of the comparison graph with the gauge y_0 = 0, where
    b_i = sum of log a_ij over known neighbours j. The solution is unique
    exactly when the comparison graph is connected.

    Raises:
        DisconnectedComparisonGraphError: no unique solution exists.
        SingularSystemError: reduced system singular (internal bug).
    """
    if not a.comparison_graph_connected():
        raise DisconnectedComparisonGraphError(
            "incomplete LLSM needs a connected comparison graph"
        )
    n = a.n
    off = a.known & ~np.eye(n, dtype=bool)
    lap = np.diag(off.sum(axis=1).astype(float)) - off.astype(float)
    logs = np.zeros((n, n))
    logs[off] = np.log(a.entries[off])
    b = logs.sum(axis=1)
    try:
        y_rest = np.linalg.solve(lap[1:, 1:], b[1:])
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            "Laplacian system singular despite connected graph"
        ) from exc
    y = np.concatenate(([0.0], y_rest))
    w = np.exp(y - y.max())
    return WeightVector.from_raw(w)


def lemma3_check(m: CompleteMatrix, i: int, j: int) -> bool:
    """True iff a_ij > 1 > a_ji and row i dominates row j elsewhere.

    Under this hypothesis both weighting methods must rank i strictly above
    j, since lambda w_i = sum_k a_ik w_k > sum_k a_jk w_k = lambda w_j and
    the row products satisfy the same strict inequality.
    """
    if i == j:
        return False
    a = m.entries
    if not (a[i, j] > 1.0 > a[j, i]):
        return False
    mask = np.ones(m.n, dtype=bool)
    mask[[i, j]] = False
    return bool(np.all(a[i, mask] >= a[j, mask]))
