"""Slow, independent reference implementations used only by the tests.

Nothing here imports the algorithms under test; only the ``Graph``
container is shared.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations, product

import networkx as nx
from hypothesis import strategies as st

from rainbowsets.graph import Graph

INF = float("inf")


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def from_nx(H: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(H.nodes))}
    return Graph(len(idx), [(idx[u], idx[v]) for u, v in H.edges])


def floyd_warshall(G: Graph) -> list[list[float]]:
    d = [[0 if i == j else INF for j in range(G.n)] for i in range(G.n)]
    for u, v in G.edges:
        d[u][v] = d[v][u] = 1
    for k in range(G.n):
        for i in range(G.n):
            for j in range(G.n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def power_oracle(G: Graph, r: int) -> set[tuple[int, int]]:
    d = floyd_warshall(G)
    return {(i, j) for i in range(G.n) for j in range(i + 1, G.n) if d[i][j] <= r}


def random_graph(rng: random.Random, n: int, prob: float) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < prob])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


# --- tree-depth -------------------------------------------------------------

def treedepth_oracle(G: Graph) -> int:
    """Recursive definition: 1 + min over removed vertex, max over components."""
    H = to_nx(G)

    @lru_cache(maxsize=None)
    def td(vs: frozenset) -> int:
        if not vs:
            return 0
        if len(vs) == 1:
            return 1
        sub = H.subgraph(vs)
        comps = [frozenset(c) for c in nx.connected_components(sub)]
        if len(comps) > 1:
            return max(td(c) for c in comps)
        return 1 + min(td(vs - {v}) for v in vs)

    return td(frozenset(range(G.n)))


def treedepth_by_orders(G: Graph) -> int:
    """Least height over the elimination forests of all vertex orders."""
    H = to_nx(G)

    def height(vs: frozenset, order) -> int:
        if not vs:
            return 0
        best = 0
        for comp in nx.connected_components(H.subgraph(vs)):
            root = min(comp, key=order.index)
            best = max(best, 1 + height(frozenset(comp) - {root}, order))
        return best

    return min(height(frozenset(range(G.n)), p) for p in permutations(range(G.n))) if G.n else 0


def forest_height(parent: list) -> int:
    best = 0
    for v in range(len(parent)):
        h, u = 1, v
        while parent[u] is not None:
            u = parent[u]
            h += 1
        best = max(best, h)
    return best


def is_ancestor_or_self(parent: list, a: int, b: int) -> bool:
    u = b
    while u is not None:
        if u == a:
            return True
        u = parent[u]
    return False


def in_closure(G: Graph, parent: list) -> bool:
    return all(is_ancestor_or_self(parent, u, v) or is_ancestor_or_self(parent, v, u)
               for u, v in G.edges)


# --- weak reachability ------------------------------------------------------

def wreach_oracle(G: Graph, order: list[int], r: int) -> list[set[int]]:
    """u is in WReach[v] iff some path v..u of length <= r avoids vertices before u."""
    pos = {v: i for i, v in enumerate(order)}
    adj = [set() for _ in range(G.n)]
    for a, b in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    out = [set() for _ in range(G.n)]
    for u in range(G.n):
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist and pos[y] > pos[u]:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        for v, k in dist.items():
            if k <= r:
                out[v].add(u)
    return out


def wcol_oracle(G: Graph, r: int) -> int:
    if G.n == 0:
        return 0
    return min(max(len(s) for s in wreach_oracle(G, list(p), r))
               for p in permutations(range(G.n)))


# --- matching ---------------------------------------------------------------

def max_matching_oracle(lefts, rights, edges) -> int:
    adj = {l: [r for (a, r) in edges if a == l] for l in lefts}
    lefts = list(lefts)

    def go(i, used):
        if i == len(lefts):
            return 0
        best = go(i + 1, used)
        for r in adj[lefts[i]]:
            if r not in used:
                best = max(best, 1 + go(i + 1, used | {r}))
        return best

    return go(0, frozenset())


# --- rainbow ----------------------------------------------------------------

def rainbow_exists_oracle(G: Graph, sets, n: int) -> bool:
    """Try every ordered choice of n distinct set indices and one vertex from each."""
    for idx in permutations(range(len(sets)), n):
        for verts in product(*(sorted(sets[i]) for i in idx)):
            if len(set(verts)) == n and not any(G.has_edge(a, b) for a, b in combinations(verts, 2)):
                return True
    return False


def is_co_nK2(G: Graph, n: int) -> bool:
    """Brute-force isomorphism with the complement of a perfect matching on 2n vertices."""
    if G.n != 2 * n:
        return False
    target = {(2 * i, 2 * i + 1) for i in range(n)}
    for perm in permutations(range(G.n)):
        non = {tuple(sorted((perm[u], perm[v])))
               for u, v in combinations(range(G.n), 2) if not G.has_edge(u, v)}
        if non == target:
            return True
    return False


# --- recurrence -------------------------------------------------------------

def m_recurrence(d: int, n: int, p: int, r: int) -> int:
    """Plain transcription of the recurrence, no caching or guards."""
    if n == 1:
        return 1
    if p == 0:
        return d * (n - 1) + 1
    q = d - p
    m2 = max(m_recurrence(d, n - 1, p, r) + n, m_recurrence(d, n, p - 1, r))
    m1 = m2 * (pow(n + 1, (n - 1) * pow(r + 2, 2 * q)) - 1) + (n - 1) * pow(r + 2, q) + 1
    return pow(2, pow(r + 2, q)) * (m1 - 1) + 1


# --- random instances -------------------------------------------------------

def random_tree_parents(rng: random.Random, k: int, max_height: int | None = None) -> list:
    """Random rooted tree on 0..k-1 with root 0 and parent[v] < v."""
    parent: list = [None]
    depth = [1]
    for v in range(1, k):
        options = [u for u in range(v) if max_height is None or depth[u] < max_height]
        u = rng.choice(options)
        parent.append(u)
        depth.append(depth[u] + 1)
    return parent


def random_closure_subgraph(rng: random.Random, parent: list, prob: float) -> Graph:
    edges = []
    for v in range(len(parent)):
        u = parent[v]
        while u is not None:
            if rng.random() < prob:
                edges.append((u, v))
            u = parent[u]
    return Graph(len(parent), edges)


def independent_n_sets(G: Graph, n: int, within=None) -> list[frozenset]:
    pool = sorted(range(G.n) if within is None else within)
    return [frozenset(c) for c in combinations(pool, n)
            if not any(G.has_edge(a, b) for a, b in combinations(c, 2))]
