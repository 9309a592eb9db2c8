"""Completion of incomplete comparison matrices by three optimality targets.

* lexicographically optimal: sorted triad-inconsistency vector is
  lexicographically minimal, found by successive LPs over log-space
  variables with dual-guided freezing of bottleneck triads;
* GCI-optimal: missing entries filled with ratios of the incomplete
  log-least-squares weights;
* CR-optimal: missing entries minimize the dominant eigenvalue, found by
  cyclic coordinate descent with golden-section line searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    CompleteMatrix,
    IncompleteMatrix,
    TriadIndex,
    all_triads,
)
from .errors import (
    ConvergenceFailureError,
    DisconnectedComparisonGraphError,
    NoBindingDualFoundError,
    NoMissingEntriesError,
)
from .simplex import solve_simplex
from .weighting import incomplete_llsm_weights

OBJ_TOL = 1e-9  # log-space objective treated as zero below this
DUAL_TOL = 1e-9
DEGENERATE_MATCH_TOL = 1e-7


@dataclass
class LexLpState:
    """Bookkeeping for the successive-LP solver.

    One cycle-sum per triad: s = log a_ij + log a_jk - log a_ik over the
    triad's three pairs, where known entries contribute to ``const`` and
    missing ones a +/-1 coefficient on their log variable. Each triad not
    yet frozen contributes the constraint pair s <= z, -s <= z; a frozen
    triad keeps the pair with z replaced by its fixed bound. Triads with no
    missing entry have a constant cycle sum; once frozen, their pair is
    vacuous and is dropped.
    """

    n: int
    missing_pairs: tuple[tuple[int, int], ...]
    triads: tuple[TriadIndex, ...]
    coef: np.ndarray  # (T, m) coefficients of cycle sums on log variables
    const: np.ndarray  # (T,) known part of each cycle sum (natural log)
    has_missing: np.ndarray  # (T,) bool
    active: np.ndarray  # (T,) bool, the not-yet-frozen set
    frozen_bound: dict[TriadIndex, float] = field(default_factory=dict)

    @property
    def n_active(self) -> int:
        return int(self.active.sum())

    @property
    def constraint_count(self) -> int:
        """Constraint rows currently in the LP (two per contributing triad)."""
        contributing = self.active | self.has_missing
        return 2 * int(contributing.sum())

    def freeze(self, pos: int, bound: float) -> None:
        self.active[pos] = False
        self.frozen_bound[self.triads[pos]] = bound

    def cycle_sums(self, t: np.ndarray) -> np.ndarray:
        return self.const + self.coef @ t


@dataclass(frozen=True)
class LpSolution:
    """Optimal point of one stage LP."""

    objective: float
    primal: dict[tuple[int, int], float]  # missing pair -> log value
    z: float
    duals: dict[TriadIndex, float]  # triad -> dual on its bounding pair (<= 0)
    status: str
    feasibility_residual: float
    duality_gap: float
    t: np.ndarray  # log values in missing_pairs order


@dataclass(frozen=True)
class FreezeRecord:
    """One Algorithm-iteration freeze: triad pinned at its minimal TI."""

    triad: TriadIndex
    ti: float
    stage: int


def build_lex_lp(
    a: IncompleteMatrix, triad_order: tuple[TriadIndex, ...] | None = None
) -> LexLpState:
    """Assemble the first-stage LP for the lexicographic completion.

    Args:
        a: incomplete matrix with a connected comparison graph and at least
            one missing entry.
        triad_order: optional triad enumeration (testing hook); defaults to
            lexicographic order.

    Raises:
        NoMissingEntriesError: nothing to complete.
        DisconnectedComparisonGraphError: completion would not be unique.
    """
    if a.is_complete:
        raise NoMissingEntriesError("matrix has no missing entries")
    if not a.comparison_graph_connected():
        raise DisconnectedComparisonGraphError(
            "lexicographic completion needs a connected comparison graph"
        )
    missing = a.missing_pairs
    var_of = {pair: e for e, pair in enumerate(missing)}
    triads = tuple(triad_order) if triad_order is not None else tuple(all_triads(a.n))
    T, m = len(triads), len(missing)
    coef = np.zeros((T, m))
    const = np.zeros(T)
    for pos, (i, j, k) in enumerate(triads):
        # cycle sum log a_ij + log a_jk + log a_ki, with log a_ki = -log a_ik
        for p, q, s in ((i, j, 1.0), (j, k, 1.0), (i, k, -1.0)):
            if a.known[p, q]:
                const[pos] += s * math.log(a.entries[p, q])
            else:
                coef[pos, var_of[(p, q)]] += s
    has_missing = np.abs(coef).sum(axis=1) > 0
    return LexLpState(
        n=a.n,
        missing_pairs=missing,
        triads=triads,
        coef=coef,
        const=const,
        has_missing=has_missing,
        active=np.ones(T, dtype=bool),
    )


def solve_lp(state: LexLpState) -> LpSolution:
    """Solve the current stage LP; deterministic given the state.

    Free log variables are split into differences of nonnegative parts for
    the simplex. Each triad's dual is the sum of the duals on its two
    constraint rows, which equals the dual the bounding constraint z_l <= z
    would carry in the unprojected formulation.
    """
    m = len(state.missing_pairs)
    rows: list[np.ndarray] = []
    rhs: list[float] = []
    row_triad: list[int] = []
    for pos in range(len(state.triads)):
        if state.active[pos]:
            zcol, bound = -1.0, 0.0
        elif state.has_missing[pos]:
            zcol, bound = 0.0, state.frozen_bound[state.triads[pos]]
        else:
            continue  # frozen constant triad: |const| <= bound holds by choice
        row = state.coef[pos]
        rows.append(np.concatenate([row, -row, [zcol]]))
        rhs.append(bound - state.const[pos])
        row_triad.append(pos)
        rows.append(np.concatenate([-row, row, [zcol]]))
        rhs.append(bound + state.const[pos])
        row_triad.append(pos)

    ncols = 2 * m + 1
    if rows:
        A = np.vstack(rows)
        b = np.asarray(rhs)
    else:
        A = np.zeros((0, ncols))
        b = np.zeros(0)
    c = np.zeros(ncols)
    c[-1] = 1.0
    res = solve_simplex(c, A, b)

    t = res.x[:m] - res.x[m : 2 * m]
    z = float(res.x[-1])
    duals: dict[TriadIndex, float] = {tr: 0.0 for tr in state.triads}
    for r, pos in enumerate(row_triad):
        duals[state.triads[pos]] += float(res.duals[r])
    residual = float(np.max(A @ res.x - b, initial=0.0))
    gap = abs(res.objective - float(b @ res.duals)) if len(b) else 0.0
    return LpSolution(
        objective=res.objective,
        primal={pair: float(t[e]) for e, pair in enumerate(state.missing_pairs)},
        z=z,
        duals=duals,
        status="optimal",
        feasibility_residual=residual,
        duality_gap=gap,
        t=t,
    )


def _select_freeze(state: LexLpState, sol: LpSolution) -> int:
    """Position of the active triad to freeze at the current objective.

    Primary rule: the active triad whose bounding pair carries the largest
    |dual|, ties broken by smallest triad index. Degenerate fallback when
    every active dual vanishes: the active triad whose |cycle sum| is
    closest to the objective (within 1e-7), smallest index first.
    """
    best_pos, best_mag = -1, DUAL_TOL
    for pos in np.flatnonzero(state.active):
        mag = abs(sol.duals[state.triads[pos]])
        if mag > best_mag:
            best_pos, best_mag = int(pos), mag
    if best_pos >= 0:
        return best_pos
    sums = np.abs(state.cycle_sums(sol.t))
    gaps = np.abs(sums - sol.objective)
    for pos in np.flatnonzero(state.active):
        if gaps[pos] <= DEGENERATE_MATCH_TOL:
            return int(pos)
    raise NoBindingDualFoundError(
        f"objective {sol.objective:.3e} > 0 but no active constraint prices it"
    )


def lex_optimal_completion(
    a: IncompleteMatrix,
    obj_tol: float = OBJ_TOL,
    triad_order: tuple[TriadIndex, ...] | None = None,
) -> tuple[CompleteMatrix, list[FreezeRecord]]:
    """Lexicographically optimal completion with its freeze audit.

    Runs the successive-LP scheme: solve, and while the objective exceeds
    ``obj_tol``, freeze one bottleneck triad at the current objective,
    remove it from the active set and re-solve; stop when the objective is
    (numerically) zero or no active triad remains. The audit lists frozen
    triads with TI = exp(bound) in freeze order, which is non-increasing.

    A complete input is returned unchanged with an empty audit. The optimum
    is unique on connected comparison graphs, so ``triad_order`` (exposed
    for exactly that regression) must not change the result.
    """
    if a.is_complete:
        return a.to_complete(), []
    state = build_lex_lp(a, triad_order=triad_order)
    sol = solve_lp(state)
    audit: list[FreezeRecord] = []
    stage = 1
    while sol.objective > obj_tol and state.n_active > 0:
        pos = _select_freeze(state, sol)
        bound = sol.objective
        ti = math.exp(bound)
        state.freeze(pos, bound)
        audit.append(FreezeRecord(state.triads[pos], ti, stage))
        stage += 1
        if not state.has_missing[pos]:
            # Constant triads tied at the same cycle sum must all freeze at
            # this level before the objective can drop; the LP optimum is
            # unchanged while any of them stays active, so freeze the whole
            # tie in index order without intermediate re-solves.
            tied = np.flatnonzero(
                state.active
                & ~state.has_missing
                & (np.abs(state.const) == np.abs(state.const[pos]))
            )
            for pos2 in tied:
                state.freeze(int(pos2), bound)
                audit.append(FreezeRecord(state.triads[int(pos2)], ti, stage))
                stage += 1
        if state.n_active == 0:
            break
        sol = solve_lp(state)

    values = a.entries.copy()
    for pair in state.missing_pairs:
        x = math.exp(sol.primal[pair])
        values[pair[0], pair[1]] = x
        values[pair[1], pair[0]] = 1.0 / x
    return CompleteMatrix._trusted(values), audit


def gci_optimal_completion(a: IncompleteMatrix) -> CompleteMatrix:
    """Fill each missing entry with the incomplete-LLSM weight ratio."""
    if not a.comparison_graph_connected():
        raise DisconnectedComparisonGraphError(
            "GCI completion needs a connected comparison graph"
        )
    if a.is_complete:
        return a.to_complete()
    w = incomplete_llsm_weights(a).w
    values = a.entries.copy()
    for i, j in a.missing_pairs:
        values[i, j] = w[i] / w[j]
        values[j, i] = 1.0 / values[i, j]
    return CompleteMatrix._trusted(values)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, lo: float, hi: float, tol: float = 1e-9) -> tuple[float, float]:
    """Golden-section minimum of a unimodal f on [lo, hi]."""
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    mid = 0.5 * (lo + hi)
    return mid, min(fc, fd)


def cr_optimal_completion(
    a: IncompleteMatrix,
    sweep_tol: float = 1e-10,
    max_sweeps: int = 500,
    initial_logs: np.ndarray | None = None,
) -> tuple[CompleteMatrix, float]:
    """Completion minimizing the dominant eigenvalue, with that eigenvalue.

    Cyclic coordinate descent over the missing log entries, each coordinate
    minimized by golden-section search (the dominant eigenvalue is unimodal
    along each log coordinate; it is in fact log-convex in the log entries).
    Missing entries start from the GCI-optimal completion, a warm start the
    result must not depend on; ``initial_logs`` overrides it for exactly
    that regression. A sweep that improves the eigenvalue by at most
    ``sweep_tol`` ends the descent.

    Raises:
        ConvergenceFailureError: sweep cap exhausted.
    """
    if not a.comparison_graph_connected():
        raise DisconnectedComparisonGraphError(
            "CR completion needs a connected comparison graph"
        )
    pairs = a.missing_pairs
    if not pairs:
        complete = a.to_complete()
        lam, _ = _warm_lambda(complete.entries, np.full(a.n, 1.0 / a.n))
        return complete, lam

    values = gci_optimal_completion(a).entries.copy()
    if initial_logs is not None:
        t = np.asarray(initial_logs, dtype=float).copy()
        for e, (i, j) in enumerate(pairs):
            values[i, j] = math.exp(t[e])
            values[j, i] = math.exp(-t[e])
    else:
        t = np.array([math.log(values[i, j]) for i, j in pairs])
    v = np.full(a.n, 1.0 / a.n)
    u = np.full(a.n, 1.0 / a.n)

    def assign(e: int, tau: float) -> None:
        i, j = pairs[e]
        values[i, j] = math.exp(tau)
        values[j, i] = math.exp(-tau)

    def lam_at(e: int, tau: float) -> float:
        nonlocal v
        assign(e, tau)
        lam, v = _warm_lambda(values, v)
        return lam

    def dlam_at(e: int, tau: float) -> float:
        # Perron-root derivative along the log coordinate via the left and
        # right eigenvectors; its sign stays reliable far below the value
        # noise floor, which pure golden search cannot get under.
        nonlocal v, u
        assign(e, tau)
        _, v = _warm_lambda(values, v)
        _, u = _warm_lambda(values.T, u)
        i, j = pairs[e]
        return (u[i] * values[i, j] * v[j] - u[j] * values[j, i] * v[i]) / (u @ v)

    def polish(e: int, tau: float) -> float:
        half = 1e-3
        for _ in range(6):
            lo, hi = tau - half, tau + half
            dlo, dhi = dlam_at(e, lo), dlam_at(e, hi)
            if dlo < 0.0 < dhi:
                for _ in range(60):
                    mid = 0.5 * (lo + hi)
                    if dlam_at(e, mid) < 0.0:
                        lo = mid
                    else:
                        hi = mid
                    if hi - lo <= 1e-13:
                        break
                return 0.5 * (lo + hi)
            half *= 4.0
        return tau

    lam_prev, v = _warm_lambda(values, v)
    for _ in range(max_sweeps):
        for e in range(len(pairs)):
            current = t[e]
            f_current = lam_at(e, current)
            lo, hi = current - 8.0, current + 8.0
            for _expand in range(8):
                tau, f_tau = _golden_min(lambda x: lam_at(e, x), lo, hi, tol=1e-6)
                if tau - lo > 1e-3 and hi - tau > 1e-3:
                    break
                lo, hi = lo - 8.0, hi + 8.0
            if not f_tau < f_current:
                tau = current
            tau = polish(e, tau)
            t[e] = tau
            assign(e, tau)
        lam_new, v = _warm_lambda(values, v)
        if lam_prev - lam_new <= sweep_tol:
            return CompleteMatrix._trusted(values.copy()), lam_new
        lam_prev = lam_new
    raise ConvergenceFailureError(
        f"coordinate descent did not converge in {max_sweeps} sweeps"
    )


def _warm_lambda(
    entries: np.ndarray, v0: np.ndarray, tol: float = 1e-13, max_iter: int = 10_000
) -> tuple[float, np.ndarray]:
    """Dominant eigenvalue by power iteration warm-started at v0."""
    v = v0
    for _ in range(max_iter):
        av = entries @ v
        nxt = av / av.sum()
        if float(np.max(np.abs(nxt - v))) <= tol:
            v = nxt
            break
        v = nxt
    else:
        raise ConvergenceFailureError("power iteration stalled in CR completion")
    return float((entries @ v).sum()), v
