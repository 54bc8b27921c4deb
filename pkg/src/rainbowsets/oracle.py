"""Brute-force ground truth for rainbow independent sets on small instances."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exceptions import CapExceeded
from .family import IndependentFamily, RainbowSelection
from .graph import Graph, chromatic_number, complete_multipartite

SEARCH_NODE_CAP = 10_000_000
F_EXACT_NODE_CAP = 200_000


def rainbow_search(host: Graph, sets: Sequence[frozenset[int]], n: int,
                   node_cap: int = SEARCH_NODE_CAP) -> list[tuple[int, int]] | None:
    """Exhaustive search for ``n`` pairwise nonadjacent vertices with distinct sources.

    Vertices are added in increasing order while an injection into
    ``sets`` is maintained by augmenting paths; a partial choice without an
    injection is never extended, since supersets cannot have one either.
    Returns ``(vertex, set position)`` pairs or ``None``.
    """
    if n == 0:
        return []
    cands = sorted(frozenset().union(*sets)) if sets else []
    owners = {v: [i for i, s in enumerate(sets) if v in s] for v in cands}
    chosen: list[int] = []
    owner_of: dict[int, int] = {}   # vertex -> set position
    holder: dict[int, int] = {}     # set position -> vertex
    nodes = 0

    def augment(v: int, seen: set) -> bool:
        for i in owners[v]:
            if i not in holder:
                holder[i] = v
                owner_of[v] = i
                return True
        for i in owners[v]:
            if i in seen:
                continue
            seen.add(i)
            if i not in holder or augment(holder[i], seen):
                holder[i] = v
                owner_of[v] = i
                return True
        return False

    def extend(start: int) -> bool:
        nonlocal nodes
        if len(chosen) == n:
            return True
        for k in range(start, len(cands) - (n - len(chosen)) + 1):
            nodes += 1
            if nodes > node_cap:
                raise CapExceeded(f"rainbow search exceeded {node_cap} nodes")
            v = cands[k]
            if any(host.has_edge(v, u) for u in chosen):
                continue
            saved = dict(owner_of), dict(holder)
            if augment(v, set()):
                chosen.append(v)
                if extend(k + 1):
                    return True
                chosen.pop()
            owner_of.clear()
            owner_of.update(saved[0])
            holder.clear()
            holder.update(saved[1])
        return False

    if not extend(0):
        return None
    return [(v, owner_of[v]) for v in chosen]


def find_rainbow_bruteforce(family: IndependentFamily,
                            node_cap: int = SEARCH_NODE_CAP) -> RainbowSelection | None:
    """A rainbow independent set of size ``family.n`` in ``family.host``, or ``None``."""
    found = rainbow_search(family.host, family.sets, family.n, node_cap)
    return None if found is None else RainbowSelection(tuple(found))


def independent_sets(G: Graph, n: int) -> list[frozenset[int]]:
    """All independent ``n``-sets of ``G`` in lexicographic order."""
    out = []
    chosen: list[int] = []

    def extend(start: int) -> None:
        if len(chosen) == n:
            out.append(frozenset(chosen))
            return
        for v in range(start, G.n - (n - len(chosen)) + 1):
            if all(not G.has_edge(v, u) for u in chosen):
                chosen.append(v)
                extend(v + 1)
                chosen.pop()

    extend(0)
    return out


@dataclass
class FExactResult:
    value: int
    witness_bad_family: IndependentFamily

    def to_json(self) -> dict:
        return {"value": self.value, "witness_bad_family": self.witness_bad_family.to_json()}


def f_exact(G: Graph, n: int, node_cap: int = F_EXACT_NODE_CAP) -> FExactResult:
    """Smallest ``k`` such that every ``k`` independent ``n``-sets of ``G`` have a rainbow.

    Searches for a largest rainbow-free multiset of independent ``n``-sets.
    Each set may appear at most ``n - 1`` times: ``n`` copies of one set
    already contain a rainbow (its own vertices, one per copy), so no
    rainbow-free family repeats a set more often.  Rainbow-freeness is
    inherited by subfamilies, so the search only extends rainbow-free
    families.  Raises :class:`CapExceeded` with the best lower bound when
    ``node_cap`` runs out.
    """
    if n < 1:
        raise ValueError("n must be positive")
    isets = independent_sets(G, n)
    best: list[int] = []
    current: list[int] = []
    nodes = 0

    def extend(start: int) -> None:
        nonlocal best, nodes
        if len(current) > len(best):
            best = list(current)
        for j in range(start, len(isets)):
            if current.count(j) >= n - 1:
                continue
            nodes += 1
            if nodes > node_cap:
                raise CapExceeded(f"f_exact exceeded {node_cap} nodes", lower_bound=len(best) + 1)
            current.append(j)
            if rainbow_search(G, [isets[i] for i in current], n) is None:
                extend(j)
            current.pop()

    extend(0)
    witness = IndependentFamily(G, n, [isets[i] for i in best])
    return FExactResult(len(best) + 1, witness)


def worst_family_multipartite(k: int, part_size: int, n: int, multiplicity: int = 1) -> IndependentFamily:
    """Each part of ``K_{part_size, ..., part_size}`` (k parts) as an n-set, repeated.

    Independent sets of a complete multipartite graph live inside one part,
    so the family is rainbow-free while ``multiplicity < n``.
    """
    if part_size < n:
        raise ValueError(f"part_size {part_size} is smaller than n = {n}")
    if k < 1 or multiplicity < 1:
        raise ValueError("k and multiplicity must be positive")
    host = complete_multipartite([part_size] * k)
    sets = [range(i * part_size, i * part_size + n) for i in range(k) for _ in range(multiplicity)]
    return IndependentFamily(host, n, sets)


@dataclass
class ChromaticReport:
    bound: int
    trials: int
    passes: int
    seed: int
    counterexample: list[list[int]] | None = None
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        return self.counterexample is None and self.passes == self.trials

    def to_json(self) -> dict:
        return {"bound": self.bound, "trials": self.trials, "passes": self.passes,
                "seed": self.seed, "counterexample": self.counterexample, "vacuous": self.vacuous}


def check_chromatic_bound(G: Graph, n: int, trials: int, seed: int) -> ChromaticReport:
    """Draw ``trials`` random families of ``chi(G)(n-1)+1`` independent n-sets
    (with replacement) and confirm each has a rainbow independent set.
    """
    chi = chromatic_number(G)
    bound = chi * (n - 1) + 1
    isets = independent_sets(G, n)
    if not isets:
        return ChromaticReport(bound, 0, 0, seed, vacuous=True)
    rng = random.Random(seed)
    passes = 0
    for _ in range(trials):
        fam = [rng.choice(isets) for _ in range(bound)]
        if rainbow_search(G, fam, n) is None:
            return ChromaticReport(bound, trials, passes, seed, [sorted(s) for s in fam])
        passes += 1
    return ChromaticReport(bound, trials, passes, seed)
