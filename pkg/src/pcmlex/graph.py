"""Directed acyclic preference graphs and their derived comparison matrices."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import CompleteMatrix, IncompleteMatrix, _canonical_reciprocal, _freeze
from .errors import (
    AlphaNotGreaterThanOneError,
    BidirectionalArcError,
    CycleDetectedError,
    DisconnectedError,
)


@dataclass(frozen=True)
class PreferenceDag:
    """Connected directed acyclic graph over n items (vertices 0..n-1).

    ``topo_order`` is the canonical topological order computed at
    construction: among ready vertices, the smallest index goes first.
    """

    n: int
    arcs: frozenset[tuple[int, int]]
    topo_order: tuple[int, ...]

    @property
    def sorted_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))


def _find_cycle(n: int, succ: list[list[int]]) -> list[int]:
    """One directed cycle, as a vertex list, in a graph known to have one."""
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    parent: dict[int, int] = {}

    def dfs(u: int) -> list[int] | None:
        color[u] = 1
        for v in succ[u]:
            if color[v] == 1:
                cycle = [v, u]
                w = u
                while w != v:
                    w = parent[w]
                    cycle.append(w)
                cycle.pop()  # drop the duplicated start
                return cycle[::-1]
            if color[v] == 0:
                parent[v] = u
                found = dfs(v)
                if found is not None:
                    return found
        color[u] = 2
        return None

    for s in range(n):
        if color[s] == 0:
            found = dfs(s)
            if found is not None:
                return found
    raise AssertionError("no cycle found in a cyclic graph")


def _components(n: int, arcs: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by smallest member."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in arcs:
        adj[i].add(j)
        adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def build_dag(n: int, arcs: Iterable[tuple[int, int]]) -> PreferenceDag:
    """Validate (n, arcs) as a connected DAG and fix its topological order.

    Raises:
        CycleDetectedError: with one witnessing cycle.
        DisconnectedError: with the weakly connected components.
        BidirectionalArcError: if some pair appears in both directions.
    """
    if n < 2:
        raise ValueError("a preference graph needs at least 2 vertices")
    arc_set = set()
    for i, j in arcs:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"arc ({i}, {j}) out of range for n = {n}")
        if i == j:
            raise CycleDetectedError(f"self-loop at vertex {i}", cycle=[i])
        if (j, i) in arc_set:
            raise BidirectionalArcError(f"both ({i}, {j}) and ({j}, {i}) present")
        arc_set.add((i, j))

    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for i, j in sorted(arc_set):
        succ[i].append(j)
        indeg[j] += 1

    # Kahn's algorithm with a min-heap: smallest ready index first.
    ready = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    if len(order) < n:
        cycle = _find_cycle(n, succ)
        raise CycleDetectedError(
            f"directed cycle {' -> '.join(map(str, cycle + cycle[:1]))}", cycle=cycle
        )

    comps = _components(n, arc_set)
    if len(comps) > 1:
        raise DisconnectedError(
            f"graph has {len(comps)} weakly connected components", components=comps
        )
    return PreferenceDag(n, frozenset(arc_set), tuple(order))


def reachable(g: PreferenceDag, i: int, j: int) -> bool:
    """True iff a directed walk from i to j exists; False when i == j."""
    if i == j:
        return False
    succ: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.arcs:
        succ[u].append(v)
    stack = [i]
    seen = {i}
    while stack:
        u = stack.pop()
        for v in succ[u]:
            if v == j:
                return True
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def _reach_matrix(g: PreferenceDag) -> np.ndarray:
    """Boolean reachability matrix (walks of length >= 1), diagonal False."""
    n = g.n
    reach = np.zeros((n, n), dtype=bool)
    succ: list[list[int]] = [[] for _ in range(n)]
    for i, j in g.arcs:
        succ[i].append(j)
    # Reverse topological order: successors are final before their parents.
    for u in reversed(g.topo_order):
        for v in succ[u]:
            reach[u] |= reach[v]
            reach[u, v] = True
    return reach


def dag_to_incomplete_matrix(g: PreferenceDag, alpha: float) -> IncompleteMatrix:
    """Incomplete matrix with a_ij = alpha per arc (i, j), others missing."""
    if not alpha > 1.0:
        raise AlphaNotGreaterThanOneError(f"alpha = {alpha} must exceed 1")
    n = g.n
    values = np.full((n, n), np.nan)
    known = np.eye(n, dtype=bool)
    np.fill_diagonal(values, 1.0)
    for i, j in g.arcs:
        values[i, j] = alpha
        values[j, i] = 1.0 / alpha
        known[i, j] = known[j, i] = True
    canon = _canonical_reciprocal(values, known)
    return IncompleteMatrix(n, _freeze(canon), _freeze(known))


def transitive_closure_matrix(g: PreferenceDag, alpha: float) -> CompleteMatrix:
    """Complete matrix fixing c_ij = alpha whenever j is reachable from i.

    Pairs connected in neither direction get c_ij = 1; the lower triangle is
    reciprocal. Every triad of the result has inconsistency at most alpha.
    """
    if not alpha > 1.0:
        raise AlphaNotGreaterThanOneError(f"alpha = {alpha} must exceed 1")
    n = g.n
    reach = _reach_matrix(g)
    c = np.ones((n, n))
    c[reach] = alpha
    c[reach.T] = 1.0 / alpha
    np.fill_diagonal(c, 1.0)
    known = np.ones((n, n), dtype=bool)
    return CompleteMatrix._trusted(_canonical_reciprocal(c, known))


def random_cdag(n: int, arc_density: float, seed: int) -> PreferenceDag:
    """Random connected DAG, deterministic given the seed.

    Draws a random topological order, keeps each forward pair independently
    with probability ``arc_density``, then repairs connectivity by linking
    the root of each weak component to the root of the next one (roots and
    components ordered by topological position), which preserves acyclicity.
    """
    if n < 2:
        raise ValueError("a preference graph needs at least 2 vertices")
    if not 0.0 < arc_density <= 1.0:
        raise ValueError("arc_density must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    pos = np.empty(n, dtype=int)
    pos[order] = np.arange(n)

    arcs: set[tuple[int, int]] = set()
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < arc_density:
                arcs.add((int(order[a]), int(order[b])))

    comps = _components(n, arcs)
    if len(comps) > 1:
        comps.sort(key=lambda comp: min(pos[v] for v in comp))
        roots = [min(comp, key=lambda v: pos[v]) for comp in comps]
        for a, b in zip(roots, roots[1:]):
            arcs.add((a, b))
    return build_dag(n, arcs)
