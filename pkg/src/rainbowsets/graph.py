"""Simple undirected graphs on dense integer vertex ids.

Vertices of a :class:`Graph` are ``0 .. n-1``.  Graphs are immutable, so
every operation here is a pure function of its inputs.
"""
from __future__ import annotations

import json
import math
import random
from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

from .exceptions import CapExceeded

INF = math.inf
"""Distance reported for unreachable vertices."""

CHROMATIC_CAP = 16


class Graph:
    """Immutable simple graph.

    Parameters
    ----------
    n : int
        Number of vertices; vertices are ``0 .. n-1``.
    edges : iterable of pairs
        Unordered pairs of distinct vertices.  Repeated pairs collapse.
    """

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        n = int(n)
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            es.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(es)
        self._adj = tuple(frozenset(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_masks(self) -> list[int]:
        """Neighborhoods as int bitmasks (bit ``u`` set iff ``u`` is a neighbor)."""
        masks = []
        for nb in self._adj:
            m = 0
            for u in nb:
                m |= 1 << u
            masks.append(m)
        return masks

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return ``G[S]`` relabelled to ``0 .. |S|-1`` and the list of original ids.

        New vertex ``i`` is the ``i``-th smallest member of ``S``.
        """
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        sub_edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), sub_edges), keep

    def complement(self) -> Graph:
        return Graph(self.n, [(u, v) for u, v in combinations(range(self.n), 2)
                              if v not in self._adj[u]])

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for {self.n} vertices")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def distances_from(G: Graph, v: int, cutoff: int | None = None) -> dict[int, float]:
    """BFS distances from ``v``; unreachable vertices map to :data:`INF`.

    With ``cutoff`` set, vertices farther than ``cutoff`` are also reported
    as :data:`INF`.
    """
    G._check_vertex(v)
    dist: dict[int, float] = {u: INF for u in G.vertices()}
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if cutoff is not None and dx >= cutoff:
            continue
        for y in G.neighbors(x):
            if dist[y] == INF:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def power(G: Graph, r: int) -> Graph:
    """The r-th power: ``uv`` is an edge iff ``1 <= dist_G(u, v) <= r``."""
    if r < 1:
        raise ValueError(f"power exponent must be >= 1, got {r}")
    if r == 1:
        return G
    edges = []
    for u in G.vertices():
        for w, d in distances_from(G, u, cutoff=r).items():
            if w > u and d <= r:
                edges.append((u, w))
    return Graph(G.n, edges)


def subdivide_once(G: Graph) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Replace every edge ``uv`` by a path ``u - x_uv - v``.

    Subdivision vertices are numbered ``n, n+1, ...`` following the sorted
    edge list.  The returned map sends each original edge ``(u, v)`` with
    ``u < v`` to its subdivision vertex.
    """
    emap = {}
    new_edges = []
    for i, (u, v) in enumerate(G.sorted_edges()):
        x = G.n + i
        emap[(u, v)] = x
        new_edges.append((u, x))
        new_edges.append((x, v))
    return Graph(G.n + G.m, new_edges), emap


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    members = list(S)
    for v in members:
        G._check_vertex(v)
    for u, v in combinations(members, 2):
        if G.has_edge(u, v):
            return False
    return True


# --- generators -------------------------------------------------------------

def path_graph(k: int) -> Graph:
    """Path ``0 - 1 - ... - k-1``."""
    if k < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    """Cycle ``0 - 1 - ... - k-1 - 0``."""
    if k < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(k, combinations(range(k), 2))


def empty_graph(k: int) -> Graph:
    if k < 0:
        raise ValueError("vertex count must be nonnegative")
    return Graph(k)


def star_graph(k: int) -> Graph:
    """``K_{1,k}`` with center 0 and leaves ``1 .. k``."""
    if k < 1:
        raise ValueError("star needs at least one leaf")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    """Parts are numbered consecutively: part 0 is ``0 .. s0-1``, and so on."""
    if not part_sizes or any(s < 1 for s in part_sizes):
        raise ValueError(f"invalid part sizes {list(part_sizes)}")
    part_of = []
    for i, s in enumerate(part_sizes):
        part_of.extend([i] * s)
    n = len(part_of)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if part_of[u] != part_of[v]])


def co_nK2(n: int) -> Graph:
    """Complement of ``n`` disjoint edges; ``{2i, 2i+1}`` is the i-th non-edge."""
    if n < 1:
        raise ValueError("co_nK2 needs n >= 1")
    return complete_multipartite([2] * n)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Vertices of ``graphs[i]`` are shifted by the sizes of the earlier graphs."""
    offset = 0
    edges = []
    for H in graphs:
        edges.extend((u + offset, v + offset) for u, v in H.edges)
        offset += H.n
    return Graph(offset, edges)


def petersen_graph() -> Graph:
    """Outer 5-cycle ``0..4``, inner pentagram ``5..9``, spokes ``i - i+5``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def gnp_graph(k: int, prob: float, seed: int | None = None) -> Graph:
    """Erdos-Renyi ``G(k, prob)`` drawn from ``random.Random(seed)``."""
    if k < 0 or not (0.0 <= prob <= 1.0):
        raise ValueError("need k >= 0 and 0 <= prob <= 1")
    rng = random.Random(seed)
    return Graph(k, [e for e in combinations(range(k), 2) if rng.random() < prob])


_GENERATORS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "complete_multipartite": complete_multipartite,
    "star": star_graph,
    "empty": empty_graph,
    "co_nK2": co_nK2,
    "disjoint_union": disjoint_union,
    "petersen": petersen_graph,
    "gnp": gnp_graph,
}

GENERATOR_KINDS = tuple(_GENERATORS)


def generate(kind: str, *params) -> Graph:
    """Dispatch to a named generator, e.g. ``generate("cycle", 6)``."""
    try:
        fn = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {GENERATOR_KINDS}") from None
    return fn(*params)


# --- small exact utilities --------------------------------------------------

def chromatic_number(G: Graph, cap: int = CHROMATIC_CAP) -> int:
    """Exact chromatic number by backtracking over colorings.

    Raises :class:`CapExceeded` above ``cap`` vertices.  No heuristic
    fallback exists on purpose.
    """
    if G.n > cap:
        raise CapExceeded(f"chromatic_number: {G.n} vertices exceeds cap {cap}")
    if G.n == 0:
        return 0
    if G.m == 0:
        return 1
    order = sorted(G.vertices(), key=lambda v: (-G.degree(v), v))
    for k in range(2, G.n + 1):
        if _colorable(G, order, k):
            return k
    return G.n  # unreachable: n colors always suffice


def _colorable(G: Graph, order: list[int], k: int) -> bool:
    color = [-1] * G.n

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        blocked = {color[u] for u in G.neighbors(v)}
        # colors beyond used+1 are symmetric to used
        for c in range(min(used + 1, k)):
            if c not in blocked:
                color[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
        color[v] = -1
        return False

    return place(0, 0)


def find_induced_co_nK2(G: Graph, n: int) -> frozenset[int] | None:
    """Lexicographically least 2n-set inducing the complement of ``n K_2``.

    Such a set is exactly one in which every member has exactly one
    non-neighbor inside the set.
    """
    if n < 1:
        raise ValueError("n must be positive")
    target = 2 * n
    chosen: list[int] = []
    missing: list[int] = []  # non-neighbor count of chosen[i] inside chosen

    def extend(start: int) -> bool:
        if len(chosen) == target:
            return all(c == 1 for c in missing)
        slots = target - len(chosen)
        if G.n - start < slots or sum(1 for c in missing if c == 0) > slots:
            return False
        for w in range(start, G.n):
            hits = [i for i, x in enumerate(chosen) if not G.has_edge(x, w)]
            if len(hits) > 1 or any(missing[i] for i in hits):
                continue
            for i in hits:
                missing[i] += 1
            chosen.append(w)
            missing.append(len(hits))
            if extend(w + 1):
                return True
            chosen.pop()
            missing.pop()
            for i in hits:
                missing[i] -= 1
        return False

    return frozenset(chosen) if extend(0) else None


# --- text and JSON formats --------------------------------------------------

def write_graph(G: Graph) -> str:
    """Serialize as ``p <n> <m>`` followed by ``e <u> <v>`` lines, 1-indexed."""
    lines = [f"p {G.n} {G.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    """Parse the text format, or the JSON form if ``text`` starts with ``{``.

    ``p edge <n> <m>`` (classic DIMACS) is accepted as well as ``p <n> <m>``.
    """
    if text.lstrip().startswith("{"):
        return graph_from_json(json.loads(text))
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        try:
            if tag == "p":
                nums = [p for p in parts[1:] if p.lstrip("-").isdigit()]
                n, m = int(nums[0]), int(nums[1])
            elif tag == "e":
                if n is None:
                    raise ValueError("edge before problem line")
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise ValueError(f"unknown line tag {tag!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing problem line 'p <n> <m>'")
    if len(edges) != m:
        raise ValueError(f"problem line declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def graph_to_json(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def graph_from_json(obj: dict) -> Graph:
    return Graph(obj["n"], [tuple(e) for e in obj["edges"]])
