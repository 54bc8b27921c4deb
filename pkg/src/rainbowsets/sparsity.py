"""Weak coloring numbers, low tree-depth colorings, shortest-path closures
and WReach-profile refinements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable

from .exceptions import CapExceeded
from .forest import TREEDEPTH_CAP, treedepth_exact
from .graph import Graph, distances_from

WCOL_EXACT_CAP = 9
LTD_SUBSET_CAP = 100_000


@dataclass(frozen=True)
class LinearOrder:
    """A linear order of ``0 .. n-1``; ``order[i]`` is the vertex at rank ``i``."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("order must be a permutation of 0 .. n-1")

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def to_json(self) -> dict:
        return {"order": list(self.order)}

    @classmethod
    def from_json(cls, obj: dict) -> LinearOrder:
        return cls(tuple(obj["order"]))


@dataclass(frozen=True)
class ColorAssignment:
    colors: tuple[int, ...]
    palette: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.palette < 1:
            raise ValueError("palette size must be positive")
        if any(not (0 <= c < self.palette) for c in self.colors):
            raise ValueError(f"color ids must lie in [0, {self.palette})")

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def classes(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.palette)]
        for v, c in enumerate(self.colors):
            out[c].add(v)
        return [frozenset(s) for s in out]

    def to_json(self) -> dict:
        return {"palette": self.palette, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, obj: dict) -> ColorAssignment:
        return cls(tuple(obj["colors"]), obj["palette"])


# --- weak reachability ------------------------------------------------------

def _ball(adj: list[int], allowed: int, u: int, r: int) -> int:
    """Bitmask of vertices within distance r of u inside the subgraph on ``allowed``."""
    seen = frontier = 1 << u
    for _ in range(r):
        reach = 0
        while frontier:
            low = frontier & -frontier
            reach |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = reach & allowed & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def wreach(G: Graph, L: LinearOrder, v: int, r: int) -> frozenset[int]:
    """Vertices ``u`` with a path of length <= r from ``v`` on which ``u`` is L-minimal."""
    G._check_vertex(v)
    if len(L.order) != G.n:
        raise ValueError("order does not cover the graph's vertices")
    if r < 0:
        raise ValueError("r must be nonnegative")
    adj = G.adjacency_masks()
    out = []
    allowed = (1 << G.n) - 1
    for u in L.order:
        if _ball(adj, allowed, u, r) >> v & 1:
            out.append(u)
        if u == v:
            break
        allowed &= ~(1 << u)
    return frozenset(out)


def wreach_sizes(G: Graph, L: LinearOrder, r: int) -> list[int]:
    """``|WReach_r[G, L, v]|`` for every vertex ``v``."""
    adj = G.adjacency_masks()
    sizes = [0] * G.n
    allowed = (1 << G.n) - 1
    for u in L.order:
        ball = _ball(adj, allowed, u, r)
        while ball:
            low = ball & -ball
            sizes[low.bit_length() - 1] += 1
            ball ^= low
        allowed &= ~(1 << u)
    return sizes


def degeneracy_order(G: Graph) -> LinearOrder:
    """Repeatedly peel a minimum-degree vertex (lowest id on ties); peeled-last comes first."""
    alive = set(G.vertices())
    deg = {v: G.degree(v) for v in alive}
    peeled = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        peeled.append(v)
        alive.remove(v)
        for u in G.neighbors(v):
            if u in alive:
                deg[u] -= 1
    return LinearOrder(tuple(reversed(peeled)))


def wcol(G: Graph, r: int, mode: str = "exact") -> tuple[int, LinearOrder]:
    """Weak r-coloring number and an order attaining the reported value.

    ``mode="exact"`` runs branch-and-bound over order prefixes and returns
    the lexicographically least optimal order; it is limited to
    ``WCOL_EXACT_CAP`` vertices.  ``mode="heuristic"`` evaluates the
    degeneracy order, giving an upper bound.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"mode must be 'exact' or 'heuristic', got {mode!r}")
    if G.n == 0:
        return 0, LinearOrder(())
    greedy = degeneracy_order(G)
    upper = max(wreach_sizes(G, greedy, r))
    if mode == "heuristic":
        return upper, greedy
    if G.n > WCOL_EXACT_CAP:
        raise CapExceeded(f"wcol exact: {G.n} vertices exceeds cap {WCOL_EXACT_CAP}")
    return _wcol_branch_and_bound(G, r, upper)


def _wcol_branch_and_bound(G: Graph, r: int, upper: int) -> tuple[int, LinearOrder]:
    n = G.n
    adj = G.adjacency_masks()
    counts = [0] * n
    prefix: list[int] = []
    best_value = upper + 1
    best_order: tuple[int, ...] | None = None

    def search(remaining: int, placed_max: int) -> None:
        nonlocal best_value, best_order
        if not remaining:
            # strict improvement only, so the first optimum found is lex-least
            if placed_max < best_value:
                best_value, best_order = placed_max, tuple(prefix)
            return
        rest = remaining
        while rest:
            low = rest & -rest
            rest ^= low
            u = low.bit_length() - 1
            ball = _ball(adj, remaining, u, r)
            hit = []
            b = ball
            while b:
                lb = b & -b
                b ^= lb
                w = lb.bit_length() - 1
                counts[w] += 1
                hit.append(w)
            new_max = max(placed_max, counts[u])
            # every unplaced vertex will still count itself
            bound = new_max
            left = remaining & ~low
            while left:
                lb = left & -left
                left ^= lb
                c = counts[lb.bit_length() - 1] + 1
                if c > bound:
                    bound = c
            if bound < best_value:
                prefix.append(u)
                search(remaining & ~low, new_max)
                prefix.pop()
            for w in hit:
                counts[w] -= 1

    search((1 << n) - 1, 0)
    assert best_order is not None
    return best_value, LinearOrder(best_order)


def excellence_budget(G: Graph, r: int, mode: str = "auto") -> int:
    """Product over ``2 <= l <= r`` of ``2 * wcol_l(G)``.

    ``mode="auto"`` uses exact wcol when the graph is small enough and the
    heuristic upper bound otherwise; an upper bound only loosens the budget.
    """
    if mode == "auto":
        mode = "exact" if G.n <= WCOL_EXACT_CAP else "heuristic"
    d = 1
    for ell in range(2, r + 1):
        d *= 2 * wcol(G, ell, mode)[0]
    return d


# --- low tree-depth colorings -----------------------------------------------

def low_treedepth_coloring(G: Graph, p: int, cap: int = TREEDEPTH_CAP) -> ColorAssignment:
    """Color each vertex by its depth in an optimal elimination forest.

    Any ``i`` depth levels induce a subgraph embedded in a forest of height
    ``i``, so the guarantee holds for every ``p`` at once; the palette has
    ``td(G)`` colors.
    """
    if p < 1:
        raise ValueError("p must be positive")
    d, F = treedepth_exact(G, cap)
    return ColorAssignment(F.depth, max(d, 1))


@dataclass
class LtdReport:
    passed: bool
    checked: int
    bound_mode: str
    violation: dict | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked,
                "bound_mode": self.bound_mode, "violation": self.violation}


def verify_ltd(G: Graph, coloring: ColorAssignment, p: int, bound_mode: str = "i",
               cap: int = TREEDEPTH_CAP, subset_cap: int = LTD_SUBSET_CAP) -> LtdReport:
    """Check that every union of ``i <= p`` color classes has tree-depth <= i.

    ``bound_mode="i-1"`` checks the stricter ``<= i - 1`` reading instead.
    Stops at the first violation.
    """
    if bound_mode not in ("i", "i-1"):
        raise ValueError("bound_mode must be 'i' or 'i-1'")
    if len(coloring) != G.n:
        raise ValueError("coloring does not cover the graph's vertices")
    classes = coloring.classes()
    top = min(p, coloring.palette)
    total = sum(comb(coloring.palette, i) for i in range(1, top + 1))
    if total > subset_cap:
        raise CapExceeded(f"verify_ltd: {total} class subsets exceeds cap {subset_cap}")
    checked = 0
    for i in range(1, top + 1):
        bound = i if bound_mode == "i" else i - 1
        for chosen in combinations(range(coloring.palette), i):
            union = frozenset().union(*(classes[c] for c in chosen))
            sub, _ = G.induced_subgraph(union)
            td = treedepth_exact(sub, cap)[0]
            checked += 1
            if td > bound:
                return LtdReport(False, checked, bound_mode,
                                 {"classes": list(chosen), "treedepth": td, "bound": bound})
    return LtdReport(True, checked, bound_mode)


# --- shortest-path closures -------------------------------------------------

def _least_shortest_path(G: Graph, dist_u: dict[int, float], v: int) -> list[int]:
    # walk back from v, always to the least-id neighbor one step closer to u
    path = [v]
    x = v
    while dist_u[x] > 0:
        x = min(y for y in G.neighbors(x) if dist_u[y] == dist_u[x] - 1)
        path.append(x)
    return path


def shortest_path_closure(G: Graph, X: Iterable[int], r: int) -> frozenset[int]:
    """Superset of ``X`` that realizes, inside ``G[X']``, a shortest ``G``-path
    for every pair of ``X`` at distance at most ``r``.

    Each close pair ``u < v`` contributes the path found by BFS from ``u``
    and walking back from ``v`` through least-id predecessors.
    """
    if r < 1:
        raise ValueError("r must be positive")
    members = sorted(set(X))
    for v in members:
        G._check_vertex(v)
    out = set(members)
    for i, u in enumerate(members):
        dist_u = distances_from(G, u, cutoff=r)
        for v in members[i + 1:]:
            if dist_u[v] <= r:
                out.update(_least_shortest_path(G, dist_u, v))
    return frozenset(out)


def _shortest_paths(G: Graph, dist_u: dict[int, float], v: int) -> list[list[int]]:
    if dist_u[v] == 0:
        return [[v]]
    out = []
    for y in sorted(G.neighbors(v)):
        if dist_u[y] == dist_u[v] - 1:
            out.extend(p + [v] for p in _shortest_paths(G, dist_u, y))
    return out


def guided_closure(G: Graph, X: Iterable[int], r: int, L: LinearOrder) -> frozenset[int]:
    """Shortest-path closure whose paths pass through the L-least possible vertex.

    That vertex is weakly r-reachable from both endpoints.  Ties are broken
    by the lexicographically least path.
    """
    pos = L.position
    members = sorted(set(X))
    out = set(members)
    for i, u in enumerate(members):
        dist_u = distances_from(G, u, cutoff=r)
        for v in members[i + 1:]:
            if dist_u[v] <= r:
                paths = _shortest_paths(G, dist_u, v)
                out.update(min(paths, key=lambda p: (min(pos[x] for x in p), p)))
    return frozenset(out)


def closure_defects(G: Graph, X: Iterable[int], closure: Iterable[int], r: int) -> list[tuple[int, int]]:
    """Pairs of ``X`` at distance <= r in ``G`` whose distance grows inside ``G[closure]``."""
    members = sorted(set(X))
    sub, ids = G.induced_subgraph(closure)
    index = {v: i for i, v in enumerate(ids)}
    bad = []
    for i, u in enumerate(members):
        dist_g = distances_from(G, u, cutoff=r)
        dist_s = distances_from(sub, index[u], cutoff=r)
        for v in members[i + 1:]:
            if dist_g[v] <= r and dist_s[index[v]] != dist_g[v]:
                bad.append((u, v))
    return bad


# --- refinements ------------------------------------------------------------

def excellent_refinement(G: Graph, c: ColorAssignment, r: int, L: LinearOrder) -> ColorAssignment:
    """Refine ``c`` by each vertex's WReach color profile.

    The new color of ``v`` encodes the ``c``-colors of ``WReach_r[G, L, v]``
    listed in L-order together with the position of ``v`` in that list.
    Profile ids are handed out in order of first appearance by vertex id.
    """
    if len(c) != G.n or len(L.order) != G.n:
        raise ValueError("coloring and order must cover the graph's vertices")
    pos = L.position
    ids: dict[tuple, int] = {}
    out = []
    for v in G.vertices():
        reach = sorted(wreach(G, L, v, r), key=pos.__getitem__)
        profile = (tuple(c[u] for u in reach), reach.index(v))
        out.append(ids.setdefault(profile, len(ids)))
    return ColorAssignment(tuple(out), max(len(ids), 1))


@dataclass
class ExcellenceReport:
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"checked": self.checked, "passed": self.passed, "violations": self.violations}


def audit_excellence(G: Graph, c: ColorAssignment, refined: ColorAssignment, r: int, d: int,
                     sample_sets: Iterable[Iterable[int]], L: LinearOrder | None = None
                     ) -> ExcellenceReport:
    """Check the (d, r)-excellence inequality on sample vertex sets.

    For each ``X`` a closure ``X'`` is built (order-guided when ``L`` is
    given), re-verified as a shortest-path closure, and its number of
    ``c``-colors is compared with ``d`` times the ``refined``-colors of ``X``.
    """
    report = ExcellenceReport()
    for X in sample_sets:
        X = sorted(set(X))
        closed = guided_closure(G, X, r, L) if L is not None else shortest_path_closure(G, X, r)
        report.checked += 1
        defects = closure_defects(G, X, closed, r)
        if defects:
            report.violations.append({"set": X, "kind": "closure", "pairs": defects})
            continue
        used = len({c[v] for v in closed})
        allowed = d * len({refined[v] for v in X})
        if used > allowed:
            report.violations.append({"set": X, "kind": "colors", "used": used, "allowed": allowed})
    return report


def power_agreement_defects(G: Graph, X: Iterable[int], closure: Iterable[int], r: int
                            ) -> list[tuple[int, int]]:
    """Pairs of ``X`` adjacent in exactly one of ``G^r`` and ``G[closure]^r``."""
    members = sorted(set(X))
    sub, ids = G.induced_subgraph(closure)
    index = {v: i for i, v in enumerate(ids)}
    bad = []
    for i, u in enumerate(members):
        near_g = distances_from(G, u, cutoff=r)
        near_s = distances_from(sub, index[u], cutoff=r)
        for v in members[i + 1:]:
            if (near_g[v] <= r) != (near_s[index[v]] <= r):
                bad.append((u, v))
    return bad
