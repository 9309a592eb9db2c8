"""Pairwise comparison matrices, inconsistency indices and the ordinal audit.

Matrices are reciprocal (a_ji = 1/a_ij) positive square matrices; incomplete
ones carry a symmetric mask of missing off-diagonal entries. Indices are
0-based throughout the library; file formats and CLI output use 1-based
labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    AsymmetricMissingnessError,
    ConvergenceFailureError,
    DimensionMismatchError,
    MatrixTooSmallError,
    NonPositiveEntryError,
    NonSquareError,
    ReciprocityViolationError,
)

RECIPROCITY_RTOL = 1e-9
EQUALITY_WINDOW = 1e-9  # |a_ij - 1| below this counts as a stated tie
POWER_TOL = 1e-12
POWER_MAX_ITER = 10_000


class TriadIndex(NamedTuple):
    """Unordered item triple, stored with i < j < k."""

    i: int
    j: int
    k: int


def all_triads(n: int) -> list[TriadIndex]:
    """All C(n, 3) triads of {0, ..., n-1} in lexicographic order."""
    return [TriadIndex(*t) for t in itertools.combinations(range(n), 3)]


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _canonical_reciprocal(values: np.ndarray, known: np.ndarray) -> np.ndarray:
    """Rebuild the lower triangle as 1/upper so reciprocity is exact."""
    n = values.shape[0]
    out = np.full((n, n), np.nan)
    np.fill_diagonal(out, 1.0)
    for i in range(n):
        for j in range(i + 1, n):
            if known[i, j]:
                out[i, j] = values[i, j]
                out[j, i] = 1.0 / values[i, j]
    return out


@dataclass(frozen=True)
class CompleteMatrix:
    """Fully specified reciprocal positive matrix."""

    n: int
    entries: np.ndarray

    @classmethod
    def from_array(cls, raw, rtol: float = RECIPROCITY_RTOL) -> "CompleteMatrix":
        """Validate a full array and canonicalize its lower triangle.

        Raises:
            NonSquareError, NonPositiveEntryError, ReciprocityViolationError
        """
        inc = validate_reciprocal(raw, rtol=rtol)
        if not inc.is_complete:
            raise AsymmetricMissingnessError(
                "complete matrix may not contain missing entries"
            )
        return inc.to_complete()

    @classmethod
    def _trusted(cls, entries: np.ndarray) -> "CompleteMatrix":
        """Wrap an already-canonical array without re-validating."""
        return cls(entries.shape[0], _freeze(np.asarray(entries, dtype=float)))

    def __getitem__(self, idx) -> float:
        return self.entries[idx]


@dataclass(frozen=True)
class IncompleteMatrix:
    """Reciprocal matrix with a symmetric missing-entry mask.

    ``entries`` holds NaN at missing positions; ``known`` is the mask. The
    NaN is a poison value, not data: every operation consults ``known``.
    """

    n: int
    entries: np.ndarray
    known: np.ndarray

    @property
    def is_complete(self) -> bool:
        return bool(self.known.all())

    @property
    def missing_pairs(self) -> tuple[tuple[int, int], ...]:
        """Missing (i, j) pairs with i < j, lexicographically sorted."""
        n = self.n
        return tuple(
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if not self.known[i, j]
        )

    @property
    def known_pairs(self) -> tuple[tuple[int, int], ...]:
        """Known off-diagonal (i, j) pairs with i < j."""
        n = self.n
        return tuple(
            (i, j) for i in range(n) for j in range(i + 1, n) if self.known[i, j]
        )

    def comparison_graph_connected(self) -> bool:
        """True iff the undirected graph of known pairs is connected."""
        n = self.n
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in range(n):
                if v != u and self.known[u, v] and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n

    def to_complete(self) -> CompleteMatrix:
        if not self.is_complete:
            raise AsymmetricMissingnessError(
                "matrix still has missing entries; complete it first"
            )
        return CompleteMatrix._trusted(self.entries)

    def __getitem__(self, idx):
        i, j = idx
        if not self.known[i, j]:
            return None
        return float(self.entries[i, j])


@dataclass(frozen=True)
class WeightVector:
    """Positive priority vector normalized to sum 1."""

    w: np.ndarray

    @classmethod
    def from_raw(cls, raw: Sequence[float] | np.ndarray) -> "WeightVector":
        w = np.asarray(raw, dtype=float)
        if w.ndim != 1 or w.size < 2:
            raise DimensionMismatchError("weight vector must be 1-D with n >= 2")
        if np.any(w <= 0):
            raise NonPositiveEntryError("weights must be strictly positive")
        return cls(_freeze(w / w.sum()))

    @property
    def n(self) -> int:
        return self.w.size

    def __getitem__(self, i: int) -> float:
        return float(self.w[i])


@dataclass(frozen=True)
class InconsistencyProfile:
    """Per-triad inconsistency values, sorted non-increasing."""

    theta: np.ndarray
    triad_map: dict[TriadIndex, float]

    @property
    def max_ti(self) -> float:
        return float(self.theta[0])


def _as_value_mask(raw) -> tuple[np.ndarray, np.ndarray]:
    """Split a raw array of numbers / None / NaN into (values, known-mask)."""
    if isinstance(raw, IncompleteMatrix):
        return raw.entries.copy(), raw.known.copy()
    if isinstance(raw, CompleteMatrix):
        return raw.entries.copy(), np.ones((raw.n, raw.n), dtype=bool)
    arr = np.asarray(raw, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NonSquareError(f"expected a square array, got shape {arr.shape}")
    n = arr.shape[0]
    values = np.full((n, n), np.nan)
    known = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            v = arr[i, j]
            if v is None:
                continue
            f = float(v)
            if np.isnan(f):
                continue
            values[i, j] = f
            known[i, j] = True
    return values, known


def validate_reciprocal(raw, rtol: float = RECIPROCITY_RTOL) -> IncompleteMatrix:
    """Validate a raw array into an incomplete pairwise comparison matrix.

    Missing entries are given as None or NaN. Checks squareness, n >= 2,
    unit diagonal, positivity, symmetric missingness and reciprocity (to
    relative tolerance ``rtol``), then canonicalizes by recomputing the
    lower triangle from the upper one.

    Args:
        raw: n x n array of numbers / None / NaN, or an existing matrix.
        rtol: relative tolerance for the reciprocity check.

    Returns:
        A validated, canonicalized IncompleteMatrix (possibly complete).
    """
    values, known = _as_value_mask(raw)
    n = values.shape[0]
    if n < 2:
        raise NonSquareError("matrix order must be at least 2")

    for i in range(n):
        if not known[i, i]:
            raise AsymmetricMissingnessError(f"diagonal entry ({i}, {i}) is missing")
        if abs(values[i, i] - 1.0) > rtol:
            raise ReciprocityViolationError(
                f"diagonal entry ({i}, {i}) = {values[i, i]} must equal 1",
                pair=(i, i),
                deviation=abs(values[i, i] - 1.0),
            )

    bad = known & ~(values > 0)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise NonPositiveEntryError(f"entry ({i}, {j}) = {values[i, j]} is not positive")

    worst_pair, worst_dev = None, 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if known[i, j] != known[j, i]:
                raise AsymmetricMissingnessError(
                    f"entry ({i}, {j}) and ({j}, {i}) disagree on missingness"
                )
            if known[i, j]:
                dev = abs(values[i, j] * values[j, i] - 1.0)
                if dev > worst_dev:
                    worst_pair, worst_dev = (i, j), dev
    if worst_pair is not None and worst_dev > rtol:
        i, j = worst_pair
        raise ReciprocityViolationError(
            f"entries ({i}, {j}) = {values[i, j]} and ({j}, {i}) = {values[j, i]} "
            f"violate reciprocity (|a_ij * a_ji - 1| = {worst_dev:.3e})",
            pair=worst_pair,
            deviation=worst_dev,
        )

    canon = _canonical_reciprocal(values, known)
    return IncompleteMatrix(n, _freeze(canon), _freeze(known))


def ratio_matrix(v: Sequence[float] | np.ndarray) -> CompleteMatrix:
    """Consistent matrix a_ij = v_i / v_j from a positive vector."""
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise NonPositiveEntryError("ratio matrix needs a strictly positive vector")
    return CompleteMatrix.from_array(np.outer(v, 1.0 / v))


def is_consistent(m: CompleteMatrix, tol: float = 1e-9) -> bool:
    """True iff |a_ik - a_ij * a_jk| <= tol * a_ik for every ordered triple."""
    a = m.entries
    prod = a[:, :, None] * a[None, :, :]  # (i, j, k) -> a_ij * a_jk
    target = a[:, None, :]
    return bool(np.all(np.abs(prod - target) <= tol * target))


def triad_ti(m: CompleteMatrix, t: TriadIndex) -> float:
    """Triad inconsistency max{a_ik / (a_ij a_jk), (a_ij a_jk) / a_ik} >= 1."""
    i, j, k = t
    r = m.entries[i, k] / (m.entries[i, j] * m.entries[j, k])
    return max(r, 1.0 / r)


def inconsistency_profile(m: CompleteMatrix) -> InconsistencyProfile:
    """All triad inconsistencies, sorted non-increasing.

    Raises:
        MatrixTooSmallError: if n < 3 (no triads exist).
    """
    if m.n < 3:
        raise MatrixTooSmallError("inconsistency profile needs n >= 3")
    triads = all_triads(m.n)
    idx = np.array(triads, dtype=int)
    a = m.entries
    i, j, k = idx[:, 0], idx[:, 1], idx[:, 2]
    r = a[i, k] / (a[i, j] * a[j, k])
    ti = np.maximum(r, 1.0 / r)
    order = np.argsort(-ti, kind="stable")
    return InconsistencyProfile(
        theta=_freeze(ti[order]),
        triad_map={t: float(v) for t, v in zip(triads, ti)},
    )


def koczkodaj_ki(m: CompleteMatrix) -> float:
    """Koczkodaj index 1 - 1/max TI, in [0, 1)."""
    return 1.0 - 1.0 / inconsistency_profile(m).max_ti


def _power_iteration(
    a: np.ndarray, tol: float, max_iter: int
) -> tuple[np.ndarray, float, int, float]:
    """Power iteration for the Perron pair of a positive matrix.

    Starts from the uniform vector, normalizes iterates to sum 1, and stops
    when successive iterates differ by at most ``tol`` in the infinity norm.

    Returns:
        (weights, lambda_max, iterations, residual) where residual is
        ||A w - lambda w||_inf / lambda.
    """
    n = a.shape[0]
    v = np.full(n, 1.0 / n)
    for it in range(1, max_iter + 1):
        av = a @ v
        s = av.sum()
        nxt = av / s
        delta = float(np.max(np.abs(nxt - v)))
        v = nxt
        if delta <= tol:
            lam = float((a @ v).sum())  # sum(Av) = lambda once sum(v) = 1
            residual = float(np.max(np.abs(a @ v - lam * v)) / lam)
            return v, lam, it, residual
    raise ConvergenceFailureError(
        f"power iteration did not converge in {max_iter} iterations"
    )


def saaty_lambda_max(
    m: CompleteMatrix, tol: float = POWER_TOL, max_iter: int = POWER_MAX_ITER
) -> float:
    """Dominant eigenvalue of the matrix via power iteration (>= n)."""
    _, lam, _, _ = _power_iteration(m.entries, tol, max_iter)
    return lam


@dataclass(frozen=True)
class OrdinalViolation:
    """A weight ordering that contradicts a stated preference."""

    i: int
    j: int
    value: float  # the stated a_ij
    w_i: float
    w_j: float
    kind: str  # "strict" (a_ij > 1 but w_i <= w_j) or "equality" (a_ij = 1, w_i != w_j)


def check_ordinal_violation(
    a: IncompleteMatrix,
    w: WeightVector | Sequence[float] | np.ndarray,
    eq_tol: float = 1e-9,
) -> list[OrdinalViolation]:
    """Every known pair whose weight order contradicts the stated preference.

    A strict violation is a known a_ij > 1 with w_i <= w_j. An equality
    violation is a known a_ij = 1 (within a 1e-9 window, since float inputs
    are never exactly 1) whose weights differ by more than
    ``eq_tol * max(w_i, w_j)``. An empty list means no ordinal violation.
    """
    wv = w if isinstance(w, WeightVector) else WeightVector.from_raw(w)
    if wv.n != a.n:
        raise DimensionMismatchError(
            f"weight vector has length {wv.n}, matrix order is {a.n}"
        )
    out: list[OrdinalViolation] = []
    ww = wv.w
    for i in range(a.n):
        for j in range(a.n):
            if i == j or not a.known[i, j]:
                continue
            v = a.entries[i, j]
            if abs(v - 1.0) <= EQUALITY_WINDOW:
                if i < j and abs(ww[i] - ww[j]) > eq_tol * max(ww[i], ww[j]):
                    out.append(OrdinalViolation(i, j, float(v), ww[i], ww[j], "equality"))
            elif v > 1.0 and ww[i] <= ww[j]:
                out.append(OrdinalViolation(i, j, float(v), ww[i], ww[j], "strict"))
    return out
