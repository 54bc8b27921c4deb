"""Extraction of rainbow independent sets in powers of sparse graphs.

The tree-depth extractor works on a rooted tree ``F`` whose closure
contains the base graph ``G``; families live in ``G^r``.  Vertices are
classified by their capped distances to the root path ("spine") above the
first node where the family branches, and the family is thinned by
pigeonhole until either a bipartite matching between child subtrees and
sets yields the answer directly, or König covers confine the family to a
few subtrees and the problem splits.

All extractors raise :class:`~rainbowsets.exceptions.ExtractionError` with
a :class:`~rainbowsets.family.FailureReport` when they give up.  A returned
selection is always re-validated against the caller's family.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .exceptions import CapExceeded, ExtractionError, PowerAgreementError
from .family import FailureReport, IndependentFamily, RainbowSelection
from .forest import TREEDEPTH_CAP, RootedForest, attach_root, elimination_forest, embeds_in_closure, treedepth_exact
from .graph import INF, Graph, distances_from, power, subdivide_once
from .matching import bipartite_matching_and_cover
from .oracle import rainbow_search
from .sparsity import (excellence_budget, excellent_refinement, low_treedepth_coloring,
                       power_agreement_defects, shortest_path_closure, wcol, WCOL_EXACT_CAP)

MAX_CALLS = 200_000
BASE_NODE_CAP = 1_000_000
COMBO_CAP = 200_000

Item = tuple[int, frozenset]  # (index in the caller's family, current set)


# --- building blocks --------------------------------------------------------

def _marked_ancestors(F: RootedForest, vertices: Iterable[int]) -> set[int]:
    marked: set[int] = set()
    for v in vertices:
        while v is not None and v not in marked:
            marked.add(v)
            v = F.parent[v]
    return marked


def _split_node(F: RootedForest, vertices: Iterable[int]) -> tuple[int, int | None]:
    """Split level and the branching node (``None`` when the sets sit on one root path)."""
    marked = _marked_ancestors(F, vertices)
    node = F.roots[0]
    level = 1
    while True:
        live = [c for c in F.children[node] if c in marked]
        if len(live) >= 2:
            return level, node
        if not live:
            return F.height(), None
        node = live[0]
        level += 1


def t_split_level(F: RootedForest, family: Iterable[Iterable[int]]) -> int:
    """Least ``t`` such that a node at distance ``t-1`` from the root has two
    child subtrees meeting the family; the height of ``F`` if none does.
    """
    if not F.is_tree():
        raise ValueError("t_split_level needs a rooted tree")
    union = set()
    for s in family:
        union.update(s)
    for v in union:
        if not (0 <= v < F.n):
            raise ValueError(f"vertex {v} is not a node of the tree")
    return _split_node(F, union)[0]


@dataclass
class SpineContext:
    """The root path ``v_1 .. v_q`` of a split, with capped distances from each spine vertex."""

    forest: RootedForest
    base_graph: Graph
    r: int
    spine: tuple[int, ...]
    _dist: list[dict] = field(init=False, repr=False)

    def __post_init__(self):
        self.spine = tuple(self.spine)
        if not self.spine or self.forest.parent[self.spine[0]] is not None:
            raise ValueError("spine must start at the root")
        for above, below in zip(self.spine, self.spine[1:]):
            if self.forest.parent[below] != above:
                raise ValueError("spine must follow parent links")
        self._dist = [distances_from(self.base_graph, s, cutoff=self.r) for s in self.spine]

    @property
    def q(self) -> int:
        return len(self.spine)


def distance_vector(ctx: SpineContext, v: int) -> tuple[int, ...]:
    """Distances from ``v`` to each spine vertex, with anything beyond ``r`` capped at ``r+1``."""
    cap = ctx.r + 1
    return tuple(cap if dist[v] == INF or dist[v] > ctx.r else dist[v] for dist in ctx._dist)


class Adjacency(enum.Enum):
    ADJACENT = "adjacent"
    NON_ADJACENT = "non-adjacent"
    UNDETERMINED = "undetermined"


def claim_adjacency(a: Sequence[int], b: Sequence[int], r: int, cross_subtree: bool) -> Adjacency:
    """What the distance vectors of two vertices say about adjacency in ``G^r``.

    A slot with ``a_i + b_i <= r`` gives a path of length <= r through that
    spine vertex.  Otherwise the vertices are non-adjacent provided one lies
    in a child subtree of the split node and the other outside it, since
    every path between them crosses the spine.
    """
    if len(a) != len(b):
        raise ValueError("distance vectors differ in length")
    if any(x + y <= r for x, y in zip(a, b)):
        return Adjacency.ADJACENT
    return Adjacency.NON_ADJACENT if cross_subtree else Adjacency.UNDETERMINED


# --- the recursive extractor ------------------------------------------------

class _TreedepthExtractor:
    def __init__(self, G: Graph, F: RootedForest, r: int, max_calls: int, base_node_cap: int):
        self.G = G
        self.F = F
        self.r = r
        self.host = power(G, r)
        self.d = F.height()
        self.max_calls = max_calls
        self.base_node_cap = base_node_cap
        self.calls = 0
        self._dist: dict[int, dict] = {}
        self._subtree_of: dict[int, dict[int, int]] = {}

    def fail(self, stage: str, depth: int, items: Sequence[Item], detail: str):
        raise ExtractionError(FailureReport(stage, depth, len(items), detail))

    def vector(self, spine: Sequence[int], v: int) -> tuple[int, ...]:
        out = []
        for s in spine:
            dist = self._dist.get(s)
            if dist is None:
                dist = self._dist[s] = distances_from(self.G, s, cutoff=self.r)
            x = dist[v]
            out.append(self.r + 1 if x == INF or x > self.r else x)
        return tuple(out)

    def subtree_of(self, node: int) -> dict[int, int]:
        """vertex -> position of the child subtree of ``node`` containing it."""
        hit = self._subtree_of.get(node)
        if hit is None:
            hit = {}
            for h, c in enumerate(self.F.children[node]):
                for v in self.F.subtree(c):
                    hit[v] = h
            self._subtree_of[node] = hit
        return hit

    def solve(self, items: list[Item], n: int, depth: int) -> list[tuple[int, int]]:
        self.calls += 1
        if self.calls > self.max_calls:
            self.fail("budget", depth, items, f"more than {self.max_calls} recursive calls")
        if n == 0:
            return []
        if len(items) < n:
            self.fail("starved", depth, items, f"{len(items)} sets cannot supply {n} picks")
        if n == 1:
            idx, s = items[0]
            return [(min(s), idx)]

        union = set().union(*(s for _, s in items))
        q, split = _split_node(self.F, union)
        if split is None:
            return self.solve_on_path(items, n, depth)

        spine = self.F.root_path(split)
        sub = self.subtree_of(split)
        vec = {v: self.vector(spine, v) for v in union}

        # (*) keep the largest group of sets meeting exactly the same cells U_A
        groups: dict[frozenset, list[Item]] = {}
        for item in items:
            groups.setdefault(frozenset(vec[v] for v in item[1]), []).append(item)
        first = max(groups.values(), key=len)
        cells = sorted(next(k for k, g in groups.items() if g is first))

        lefts = [("H", h) for h in range(len(self.F.children[split]))]
        rights = [("I", idx) for idx, _ in first]
        covers = []
        for A in cells:
            edges = {(("H", sub[v]), ("I", idx)) for idx, s in first for v in s
                     if vec[v] == A and v in sub}
            matching, cover = bipartite_matching_and_cover(lefts, rights, sorted(edges))
            covers.append(cover)
            if len(matching) >= n:
                try:
                    return self.case_matching(first, A, matching[:n], vec, sub, n, depth)
                except ExtractionError:
                    pass
        # matchings of size n that led nowhere still leave valid covers to try
        return self.case_covers(first, covers, vec, sub, n, depth)

    def solve_on_path(self, items: list[Item], n: int, depth: int) -> list[tuple[int, int]]:
        # all sets on one root-to-leaf path: G^r there has chromatic number <= height
        try:
            found = rainbow_search(self.host, [s for _, s in items], n, self.base_node_cap)
        except CapExceeded as exc:
            self.fail("base-path", depth, items, str(exc))
        if found is None:
            self.fail("base-path", depth, items,
                      f"no rainbow among {len(items)} sets on a root path "
                      f"(guaranteed from {self.d * (n - 1) + 1})")
        return [(v, items[pos][0]) for v, pos in found]

    def case_matching(self, first, A, pairs, vec, sub, n, depth):
        """Case 1: n subtrees matched to n sets inside the cell U_A."""
        picks = []
        for (_, h), (_, idx) in pairs:
            s = next(s for i, s in first if i == idx)
            picks.append((h, min(v for v in s if vec[v] == A and sub.get(v) == h), idx))
        if all(2 * a > self.r for a in A):
            return [(x, idx) for _, x, idx in picks]
        # U_A is a clique in G^r, so every set meets it exactly once
        used = {idx for _, _, idx in picks}
        rest = []
        for idx, s in first:
            if idx in used:
                continue
            trimmed = frozenset(v for v in s if vec[v] != A)
            assert len(trimmed) == len(s) - 1
            rest.append((idx, trimmed))
        found = self.solve(rest, n - 1, depth + 1)
        hit = {sub.get(v) for v, _ in found}
        for h, x, idx in picks:
            if h not in hit:
                return found + [(x, idx)]
        raise AssertionError("n-1 picks cannot meet n distinct subtrees")

    def case_covers(self, first, covers, vec, sub, n, depth):
        """Case 2: König covers confine the uncovered sets to a few subtrees."""
        covered_sets = {idx for cover in covers for kind, idx in cover if kind == "I"}
        rest = [item for item in first if item[0] not in covered_sets]
        if len(rest) < n:
            self.fail("case2-cover", depth, first,
                      f"{len(rest)} sets left outside the covers, need {n}")
        # (**) equal counts in every (subtree, cell) pair
        groups: dict[tuple, list[Item]] = {}
        for item in rest:
            key = tuple(sorted(Counter((sub[v], vec[v]) for v in item[1] if v in sub).items()))
            groups.setdefault(key, []).append(item)
        second = max(groups.values(), key=len)
        met = sorted({sub[v] for v in second[0][1] if v in sub})
        if len(met) <= 1:
            # everything inside the spine and one subtree: the split moves deeper
            return self.solve(second, n, depth + 1)
        last_error = None
        for h in met:
            inside = [(idx, frozenset(v for v in s if sub.get(v) == h)) for idx, s in second]
            y = len(inside[0][1])
            try:
                part1 = self.solve(inside, y, depth + 1)
                used = {idx for _, idx in part1}
                outside = [(idx, frozenset(v for v in s if sub.get(v) != h))
                           for idx, s in second if idx not in used]
                part2 = self.solve(outside, n - y, depth + 1)
                return part1 + part2
            except ExtractionError as exc:
                last_error = exc
        raise last_error


def _checked(family: IndependentFamily, picks: Iterable[tuple[int, int]]) -> RainbowSelection:
    selection = RainbowSelection(tuple(picks))
    problems = selection.problems(family)
    if problems:
        raise RuntimeError(f"extractor produced an invalid selection: {problems}")
    return selection


def extract_treedepth(G: Graph, F: RootedForest, r: int, family: IndependentFamily,
                      max_calls: int = MAX_CALLS, base_node_cap: int = BASE_NODE_CAP
                      ) -> RainbowSelection:
    """Rainbow independent set of ``family`` (a family in ``G^r``) using the tree ``F``.

    ``F`` may have more nodes than ``G`` has vertices; the extra nodes act
    as isolated vertices of ``G``.  Success is guaranteed once the family
    reaches the size given by :func:`~rainbowsets.bounds.m_bound`; below
    that every pigeonhole step proceeds with its largest group.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if not F.is_tree():
        raise ValueError("F must be a rooted tree")
    if F.n < G.n:
        raise ValueError(f"tree has {F.n} nodes but the graph has {G.n} vertices")
    if family.host != power(G, r):
        raise ValueError("family host must be the r-th power of G")
    padded = Graph(F.n, G.edges) if F.n > G.n else G
    if not embeds_in_closure(padded, F):
        raise ValueError("G is not contained in the closure of F")
    items = list(enumerate(family.sets))
    worker = _TreedepthExtractor(padded, F, r, max_calls, base_node_cap)
    return _checked(family, worker.solve(items, family.n, 0))


def decomposition_tree(G: Graph, cap: int = TREEDEPTH_CAP) -> RootedForest:
    """A rooted tree whose closure contains ``G`` (plus one new root vertex ``G.n``).

    Uses an optimal elimination forest when ``G`` fits under ``cap``, and a
    max-degree-first elimination forest otherwise.
    """
    if G.n <= cap:
        _, T = treedepth_exact(G, cap)
    else:
        T = elimination_forest(G, sorted(G.vertices(), key=lambda v: (-G.degree(v), v)))
    return attach_root(T)


def extract_treedepth_graph(G: Graph, r: int, family: IndependentFamily,
                            cap: int = TREEDEPTH_CAP, **kwargs) -> RainbowSelection:
    """Decompose ``G`` (see :func:`decomposition_tree`) and run :func:`extract_treedepth`."""
    return extract_treedepth(G, decomposition_tree(G, cap), r, family, **kwargs)


# --- bounded expansion pipeline ---------------------------------------------

def _class_combos(set_classes: list[frozenset], palette: int, k: int) -> list[tuple[int, ...]]:
    if comb(palette, k) <= COMBO_CAP:
        return list(combinations(range(palette), k))
    # too many: pad each set's own classes with the smallest unused ids
    out = set()
    for sc in set_classes:
        extra = [c for c in range(palette) if c not in sc][: k - len(sc)]
        out.add(tuple(sorted(sc | set(extra))))
    return sorted(out)


def extract_bounded_expansion(G: Graph, r: int, family: IndependentFamily, mode: str = "auto",
                              max_attempts: int = 8, cap: int = TREEDEPTH_CAP) -> RainbowSelection:
    """Reduce to a tree-depth instance through colorings, then extract.

    Steps: a low tree-depth coloring ``c``; its WReach-profile refinement
    ``c'`` under a wcol witness order; a choice of ``n`` classes of ``c'``
    holding as many sets as possible; the r-shortest-path closure ``X'`` of
    their union; extraction inside ``G[X']``.  The step from ``G^r`` to
    ``G[X']^r`` is checked on the class union every time and a disagreement
    raises :class:`PowerAgreementError`.  Up to ``max_attempts`` class
    choices are tried, best coverage first.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if family.host != power(G, r):
        raise ValueError("family host must be the r-th power of G")
    n = family.n
    if mode == "auto":
        mode = "exact" if G.n <= WCOL_EXACT_CAP else "heuristic"
    budget = excellence_budget(G, r, mode)
    coloring = low_treedepth_coloring(G, budget * n, cap)
    order = wcol(G, r, mode)[1]
    refined = excellent_refinement(G, coloring, r, order)

    classes = refined.classes()
    set_classes = [frozenset(refined[v] for v in s) for s in family]
    k = min(n, refined.palette)
    ranked = []
    for combo in _class_combos(set_classes, refined.palette, k):
        chosen = set(combo)
        held = [i for i, sc in enumerate(set_classes) if sc <= chosen]
        if len(held) >= n:
            ranked.append((-len(held), combo, held))
    ranked.sort()
    if not ranked:
        best = max((sum(1 for sc in set_classes if sc <= set(c))
                    for c in _class_combos(set_classes, refined.palette, k)), default=0)
        raise ExtractionError(FailureReport(
            "pigeonhole", 0, len(family),
            f"no {k} refined classes hold {n} sets (best holds {best}; palette {refined.palette})"))

    last = None
    for _, combo, held in ranked[:max_attempts]:
        union = frozenset().union(*(classes[c] for c in combo))
        closed = shortest_path_closure(G, union, r)
        defects = power_agreement_defects(G, union, closed, r)
        if defects:
            raise PowerAgreementError(f"G^r and G[X']^r disagree on pairs {defects[:5]}")
        sub, ids = G.induced_subgraph(closed)
        index = {v: i for i, v in enumerate(ids)}
        subfamily = IndependentFamily(power(sub, r), n, [[index[v] for v in family[i]] for i in held])
        try:
            found = extract_treedepth_graph(sub, r, subfamily, cap)
        except ExtractionError as exc:
            last = exc
            continue
        return _checked(family, [(ids[v], held[i]) for v, i in found.picks])
    rep = last.report
    raise ExtractionError(FailureReport(
        f"treedepth/{rep.stage}", rep.depth, len(family),
        f"{min(len(ranked), max_attempts)} class choices tried; last: {rep.detail}"))


# --- induced matchings ------------------------------------------------------

def _edge(e) -> tuple[int, int]:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


def induced_matching_problems(G: Graph, edges: Iterable) -> list[str]:
    """Reasons why ``edges`` is not an induced matching of ``G``."""
    es = [_edge(e) for e in edges]
    out = []
    for e in es:
        if not (0 <= e[0] < G.n and 0 <= e[1] < G.n) or not G.has_edge(*e):
            out.append(f"{e} is not an edge")
    if out:
        return out
    for e, f in combinations(es, 2):
        if set(e) & set(f):
            out.append(f"{e} and {f} share a vertex")
        elif any(G.has_edge(a, b) for a in e for b in f):
            out.append(f"{e} and {f} are joined by an edge")
    return out


def rainbow_induced_matching(G: Graph, n: int, matchings: Sequence[Iterable],
                             cap: int = TREEDEPTH_CAP) -> list[tuple[tuple[int, int], int]]:
    """Rainbow induced matching of size ``n`` from a family of induced matchings.

    Each edge becomes its subdivision vertex; an induced matching turns
    into a set of subdivision vertices pairwise at distance >= 6, hence an
    independent set in the 5th power of the subdivision.  The rainbow
    independent set found there maps back to an induced matching of ``G``.

    Returns ``((u, v), matching index)`` pairs sorted by edge.
    """
    if n < 1:
        raise ValueError("n must be positive")
    normalized = []
    for i, M in enumerate(matchings):
        es = [_edge(e) for e in M]
        if len(set(es)) != n:
            raise ValueError(f"matching {i} has {len(set(es))} edges, expected {n}")
        problems = induced_matching_problems(G, es)
        if problems:
            raise ValueError(f"matching {i} is not an induced matching: {problems[0]}")
        normalized.append(es)
    H, emap = subdivide_once(G)
    back = {x: e for e, x in emap.items()}
    family = IndependentFamily(power(H, 5), n, [[emap[e] for e in es] for es in normalized])
    found = extract_treedepth_graph(H, 5, family, cap)
    out = sorted((back[x], i) for x, i in found.picks)
    chosen = [e for e, _ in out]
    if induced_matching_problems(G, chosen):
        raise RuntimeError("mapped-back edges do not form an induced matching")
    return out


def subdivision_distances(G: Graph, matchings: Sequence[Iterable]) -> list[float]:
    """For each matching, the least distance between its subdivision vertices."""
    H, emap = subdivide_once(G)
    out = []
    for M in matchings:
        xs = [emap[_edge(e)] for e in M]
        least = INF
        for a, b in combinations(xs, 2):
            least = min(least, distances_from(H, a)[b])
        out.append(least)
    return out
