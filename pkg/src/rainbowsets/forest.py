"""Rooted forests, closures and exact tree-depth."""
from __future__ import annotations

from typing import Iterable, Sequence

from .exceptions import CapExceeded
from .graph import Graph

TREEDEPTH_CAP = 18


class RootedForest:
    """Rooted forest on vertices ``0 .. n-1`` given by a parent array.

    ``parent[v]`` is ``None`` (or ``-1``) for roots.
    """

    __slots__ = ("parent", "roots", "children", "depth", "_tin", "_tout")

    def __init__(self, parent: Sequence[int | None]):
        n = len(parent)
        par: list[int | None] = []
        for v, p in enumerate(parent):
            if p is None or p == -1:
                par.append(None)
                continue
            p = int(p)
            if not (0 <= p < n) or p == v:
                raise ValueError(f"invalid parent {p} for vertex {v}")
            par.append(p)
        children: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(par):
            if p is not None:
                children[p].append(v)
        roots = [v for v in range(n) if par[v] is None]

        depth = [-1] * n
        tin = [0] * n
        tout = [0] * n
        clock = 0
        for root in roots:
            depth[root] = 0
            stack = [(root, iter(children[root]))]
            tin[root] = clock
            clock += 1
            while stack:
                v, it = stack[-1]
                c = next(it, None)
                if c is None:
                    tout[v] = clock
                    stack.pop()
                    continue
                depth[c] = depth[v] + 1
                tin[c] = clock
                clock += 1
                stack.append((c, iter(children[c])))
        if any(d < 0 for d in depth):
            raise ValueError("parent relation contains a cycle")

        self.parent = tuple(par)
        self.roots = tuple(roots)
        self.children = tuple(tuple(c) for c in children)
        self.depth = tuple(depth)
        self._tin = tin
        self._tout = tout

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_tree(self) -> bool:
        return len(self.roots) == 1

    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff ``a`` is a proper ancestor of ``v``."""
        return a != v and self._tin[a] <= self._tin[v] < self._tout[a]

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of ``v``, nearest first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def root_path(self, v: int) -> list[int]:
        """Vertices from the root down to ``v`` inclusive."""
        return list(reversed(self.ancestors(v))) + [v]

    def subtree(self, v: int) -> frozenset[int]:
        out = []
        stack = [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return frozenset(out)

    def height(self) -> int:
        return max(self.depth, default=-1) + 1

    def __eq__(self, other):
        if not isinstance(other, RootedForest):
            return NotImplemented
        return self.parent == other.parent

    def __hash__(self):
        return hash(self.parent)

    def __repr__(self):
        return f"RootedForest(parent={list(self.parent)})"


def chain_forest(d: int) -> RootedForest:
    """Chain ``0 -> 1 -> ... -> d-1`` rooted at 0."""
    return RootedForest([None] + list(range(d - 1)) if d else [])


def closure(F: RootedForest) -> Graph:
    """Forest plus an edge from every vertex to each of its ancestors."""
    return Graph(F.n, [(a, v) for v in range(F.n) for a in F.ancestors(v)])


def height(F: RootedForest) -> int:
    """Vertex count of a longest root-to-leaf path (0 for the empty forest)."""
    return F.height()


def embeds_in_closure(G: Graph, F: RootedForest) -> bool:
    if G.n != F.n:
        raise ValueError(f"vertex mismatch: graph has {G.n} vertices, forest {F.n}")
    return all(F.is_ancestor(u, v) or F.is_ancestor(v, u) for u, v in G.edges)


def attach_root(F: RootedForest) -> RootedForest:
    """Add vertex ``F.n`` as a new root above all old roots."""
    new = F.n
    return RootedForest([new if p is None else p for p in F.parent] + [None])


def elimination_forest(G: Graph, order: Iterable[int]) -> RootedForest:
    """Forest whose closure contains ``G``, built by recursive elimination.

    In each connected piece the vertex appearing first in ``order`` becomes
    the root and the remaining components hang below it.  Any order gives
    a valid decomposition; its height depends on the order.
    """
    rank = {v: i for i, v in enumerate(order)}
    if sorted(rank) != list(G.vertices()):
        raise ValueError("order must list every vertex exactly once")
    masks = G.adjacency_masks()
    parent: list[int | None] = [None] * G.n
    stack: list[tuple[int, int | None]] = [(c, None) for c in _components((1 << G.n) - 1, masks)]
    while stack:
        comp, above = stack.pop()
        root = min(_bits(comp), key=rank.__getitem__)
        parent[root] = above
        rest = comp & ~(1 << root)
        stack.extend((c, root) for c in _components(rest, masks))
    return RootedForest(parent)


def treedepth_exact(G: Graph, cap: int = TREEDEPTH_CAP) -> tuple[int, RootedForest]:
    """Exact tree-depth with a witness forest of that height.

    Connected pieces try every vertex as root (lowest id wins ties) and
    recurse on the components left behind, memoized on vertex bitmasks.
    The empty graph has tree-depth 0.
    """
    if G.n > cap:
        raise CapExceeded(f"treedepth_exact: {G.n} vertices exceeds cap {cap}")
    masks = G.adjacency_masks()
    memo: dict[int, tuple[int, int]] = {}

    def td_connected(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        if mask & (mask - 1) == 0:
            memo[mask] = (1, mask.bit_length() - 1)
            return 1
        best = mask.bit_count() + 1
        best_root = -1
        for v in _bits(mask):
            worst = 0
            for comp in _components(mask & ~(1 << v), masks):
                t = td_connected(comp)
                if t > worst:
                    worst = t
                    if worst >= best - 1:
                        break
            if worst + 1 < best:
                best, best_root = worst + 1, v
                if best == 2:  # a connected graph on >= 2 vertices has td >= 2
                    break
        memo[mask] = (best, best_root)
        return best

    parent: list[int | None] = [None] * G.n
    d = 0
    stack: list[tuple[int, int | None]] = [(c, None) for c in _components((1 << G.n) - 1, masks)]
    while stack:
        comp, above = stack.pop()
        depth_here = td_connected(comp)
        if above is None:
            d = max(d, depth_here)
        root = memo[comp][1]
        parent[root] = above
        stack.extend((c, root) for c in _components(comp & ~(1 << root), masks))
    return d, RootedForest(parent)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(mask: int, adj: list[int]) -> list[int]:
    comps = []
    while mask:
        comp = frontier = mask & -mask
        while frontier:
            reach = 0
            while frontier:
                low = frontier & -frontier
                reach |= adj[low.bit_length() - 1]
                frontier ^= low
            frontier = reach & mask & ~comp
            comp |= frontier
        comps.append(comp)
        mask &= ~comp
    return comps


# --- text and JSON formats --------------------------------------------------

def write_forest(F: RootedForest) -> str:
    """One line ``v <id> <parent-id|-1>`` per vertex, 0-indexed."""
    return "".join(f"v {v} {-1 if p is None else p}\n" for v, p in enumerate(F.parent))


def read_forest(text: str) -> RootedForest:
    entries: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] != "v" or len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'v <id> <parent-id|-1>'")
        v, p = int(parts[1]), int(parts[2])
        if v in entries:
            raise ValueError(f"line {lineno}: vertex {v} listed twice")
        entries[v] = p
    if sorted(entries) != list(range(len(entries))):
        raise ValueError("forest vertex ids must be exactly 0 .. n-1")
    return RootedForest([entries[v] for v in range(len(entries))])


def forest_to_json(F: RootedForest) -> dict:
    return {"parent": [-1 if p is None else p for p in F.parent]}


def forest_from_json(obj: dict) -> RootedForest:
    return RootedForest(obj["parent"])
