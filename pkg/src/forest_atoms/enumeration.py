"""Exact enumeration of spanning entering forests.

Everything downstream (atoms, measures, hierarchy) needs the *complete*
set of minimum-weight k-forests, which only exhaustive enumeration
guarantees, so this module is deliberately brute force: depth-first
over vertices, each choosing one available out-arc or "root", with
incremental contour detection and root-count pruning.  The enumeration
cap keeps desk-scale inputs honest about the cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .graph import INF, Digraph, Forest, Weight

DEFAULT_CAP = 14

STRICT = "strict"
EQUAL = "equal"
UNDEFINED = "undefined"


class CapExceeded(Exception):
    """Vertex count above the enumeration cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(
            f"graph has {n} vertices, above the enumeration cap {cap}; "
            f"raise the cap explicitly to proceed")
        self.n = n
        self.cap = cap


class InfeasibleLevel(Exception):
    """Requested level k has no spanning k-forest (phi^k = inf)."""

    def __init__(self, k: int):
        super().__init__(f"phi^{k} = inf: no spanning {k}-forest exists")
        self.k = k


def _check_cap(graph: Digraph, cap: int) -> None:
    if graph.n > cap:
        raise CapExceeded(graph.n, cap)


def _search(graph: Digraph, k: Optional[int],
            visit: Callable[[list[Optional[int]], int, Fraction], None]) -> None:
    """DFS over out-arc assignments in canonical (lexicographic) order.

    Visits every spanning forest exactly once, calling ``visit`` with
    the out list, root count and weight.  Targets are tried in
    ascending index order with "root" (None) last, which makes the
    visit order lexicographic on (vertex, target-or-inf).
    """
    n = graph.n
    out: list[Optional[int]] = [None] * n

    def creates_contour(v: int, t: int) -> bool:
        # out[v] is still None here, so the walk below terminates
        node = t
        while node != v and out[node] is not None:
            node = out[node]
        return node == v

    def rec(v: int, roots: int, weight: Fraction) -> None:
        if v == n:
            if k is None or roots == k:
                visit(out, roots, weight)
            return
        remaining = n - v
        if k is None or roots <= k <= roots + remaining - 1:
            for t, w in graph.out_lists[v]:
                if creates_contour(v, t):
                    continue
                out[v] = t
                rec(v + 1, roots, weight + w)
                out[v] = None
        # root choice last (canonical order: targets ascending, then inf)
        if k is None or roots + 1 <= k <= roots + remaining:
            rec(v + 1, roots + 1, weight)

    rec(0, 0, Fraction(0))


def enumerate_forests(graph: Digraph, k: Optional[int] = None,
                      cap: int = DEFAULT_CAP) -> Iterator[Forest]:
    """Yield each spanning k-forest exactly once, in canonical order.

    ``k=None`` yields all spanning forests regardless of component
    count.  Canonical order is lexicographic on the out-arc maps with
    "root" sorting last.
    """
    _check_cap(graph, cap)
    if k is not None and not 1 <= k <= graph.n:
        raise ValueError(f"component count {k} outside 1..{graph.n}")
    acc: list[Forest] = []

    def visit(out, roots, weight):
        acc.append(Forest(graph, tuple(out)))

    _search(graph, k, visit)
    return iter(acc)


def count_forests(graph: Digraph, k: Optional[int] = None,
                  cap: int = DEFAULT_CAP) -> int:
    _check_cap(graph, cap)
    counter = [0]

    def visit(out, roots, weight):
        counter[0] += 1

    _search(graph, k, visit)
    return counter[0]


@dataclass(frozen=True)
class MinForestSet:
    """All minimum-weight spanning k-forests, in canonical order."""

    k: int
    weight: Weight           # phi^k; INF when no k-forest exists
    forests: tuple[Forest, ...]

    def __post_init__(self):
        assert (self.weight == INF) == (not self.forests)


@dataclass(frozen=True)
class PhiSequence:
    """phi^0..phi^N with infinity; phi^0 = inf by definition."""

    values: tuple[Weight, ...]

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def gap(self, k: int) -> Weight:
        """Delta_k = phi^{k-1} - phi^k (inf minus finite is inf)."""
        prev, cur = self.values[k - 1], self.values[k]
        if prev == INF:
            assert cur != INF, "gap undefined at an infeasible level"
            return INF
        return prev - cur

    def feasible(self, k: int) -> bool:
        return 0 < k <= self.n and self.values[k] != INF


def all_minimal_forests(graph: Digraph, cap: int = DEFAULT_CAP) -> dict[int, MinForestSet]:
    """Minimum-weight tie sets for every k in one enumeration pass."""
    _check_cap(graph, cap)
    n = graph.n
    best: list[Optional[Fraction]] = [None] * (n + 1)
    argmin: list[list[tuple[Optional[int], ...]]] = [[] for _ in range(n + 1)]

    def visit(out, roots, weight):
        cur = best[roots]
        if cur is None or weight < cur:
            best[roots] = weight
            argmin[roots] = [tuple(out)]
        elif weight == cur:
            argmin[roots].append(tuple(out))

    _search(graph, None, visit)
    result = {}
    for k in range(1, n + 1):
        if best[k] is None:
            result[k] = MinForestSet(k, INF, ())
        else:
            forests = tuple(Forest(graph, o) for o in sorted(argmin[k], key=_sort_key))
            result[k] = MinForestSet(k, best[k], forests)
    return result


def _sort_key(out: tuple[Optional[int], ...]):
    return tuple(len(out) if t is None else t for t in out)


def minimal_forests(graph: Digraph, k: int, cap: int = DEFAULT_CAP) -> MinForestSet:
    if not 1 <= k <= graph.n:
        raise ValueError(f"component count {k} outside 1..{graph.n}")
    return all_minimal_forests(graph, cap)[k]


def phi_sequence(graph: Digraph, cap: int = DEFAULT_CAP) -> PhiSequence:
    """Exact phi^k for all k; phi^0 = inf, phi^N = 0 (the empty forest)."""
    sets = all_minimal_forests(graph, cap)
    values: list[Weight] = [INF]
    for k in range(1, graph.n + 1):
        values.append(sets[k].weight)
    phi = PhiSequence(tuple(values))
    assert phi.values[graph.n] == 0
    return phi


def convexity_profile(phi: PhiSequence) -> tuple[str, ...]:
    """Marker per interior k (1..N-1): strict / equal / undefined.

    "undefined" appears exactly at infeasible levels, where the left
    difference is inf - inf; from the first feasible k onward both
    sides are comparable.
    """
    markers = []
    for k in range(1, phi.n):
        prev, cur, nxt = phi.values[k - 1], phi.values[k], phi.values[k + 1]
        if cur == INF:
            assert prev == INF, "phi must be non-increasing"
            markers.append(UNDEFINED)
            continue
        lhs = INF if prev == INF else prev - cur
        rhs = cur - nxt  # nxt is finite whenever cur is
        assert lhs >= rhs, "convexity violated: implementation bug"
        markers.append(STRICT if lhs > rhs else EQUAL)
    return tuple(markers)


def is_strict_level(phi: PhiSequence, profile: tuple[str, ...], k: int) -> bool:
    """Strict-inequality test used as the hypothesis of most statements.

    Interior k reads the profile; k = N counts as strict (the algebra
    is Boolean there and every strict-level statement holds trivially).
    Infeasible levels are never strict.
    """
    if not phi.feasible(k):
        return False
    if k == phi.n:
        return True
    return profile[k - 1] == STRICT
