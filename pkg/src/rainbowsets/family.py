"""Families of independent sets, rainbow selections and failure reports."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph


class IndependentFamily:
    """Ordered family of independent ``n``-sets in ``host`` (repetition allowed).

    Construction fails with ``ValueError`` naming the offending index when a
    set has the wrong size, leaves the host's vertex range, or is not
    independent.
    """

    __slots__ = ("host", "n", "sets")

    def __init__(self, host: Graph, n: int, sets: Iterable[Iterable[int]]):
        if n < 1:
            raise ValueError("set size n must be positive")
        frozen = tuple(frozenset(int(v) for v in s) for s in sets)
        for i, s in enumerate(frozen):
            if len(s) != n:
                raise ValueError(f"set {i} has size {len(s)}, expected {n}")
            if any(not (0 <= v < host.n) for v in s):
                raise ValueError(f"set {i} has a vertex outside 0 .. {host.n - 1}")
            for u, v in combinations(s, 2):
                if host.has_edge(u, v):
                    raise ValueError(f"set {i} is not independent: edge ({min(u, v)}, {max(u, v)})")
        self.host = host
        self.n = n
        self.sets = frozen

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.sets[i]

    def __iter__(self):
        return iter(self.sets)

    def subfamily(self, indices: Sequence[int]) -> IndependentFamily:
        return IndependentFamily(self.host, self.n, [self.sets[i] for i in indices])

    def to_json(self) -> dict:
        return {"n": self.n, "sets": [sorted(s) for s in self.sets]}

    @classmethod
    def from_json(cls, obj: dict, host: Graph) -> IndependentFamily:
        return cls(host, obj["n"], obj["sets"])

    def __repr__(self):
        return f"IndependentFamily(n={self.n}, sets={[sorted(s) for s in self.sets]})"


@dataclass(frozen=True)
class RainbowSelection:
    """Chosen vertices, each paired with the index of the family member it came from."""

    picks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "picks", tuple(sorted((int(v), int(i)) for v, i in self.picks)))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.picks)

    def __len__(self) -> int:
        return len(self.picks)

    def problems(self, family: IndependentFamily) -> list[str]:
        """Reasons this is not a rainbow independent set of size ``family.n``."""
        out = []
        if len(self.picks) != family.n:
            out.append(f"size {len(self.picks)} != {family.n}")
        idx = [i for _, i in self.picks]
        if len(set(idx)) != len(idx):
            out.append("family indices repeat")
        verts = [v for v, _ in self.picks]
        if len(set(verts)) != len(verts):
            out.append("vertices repeat")
        for v, i in self.picks:
            if not (0 <= i < len(family)) or v not in family[i]:
                out.append(f"vertex {v} not in set {i}")
        for u, v in combinations(verts, 2):
            if u != v and family.host.has_edge(u, v):
                out.append(f"vertices {u} and {v} are adjacent")
        return out

    def to_json(self) -> dict:
        return {"picks": [{"vertex": v, "set_index": i} for v, i in self.picks]}

    @classmethod
    def from_json(cls, obj: dict) -> RainbowSelection:
        return cls(tuple((p["vertex"], p["set_index"]) for p in obj["picks"]))


@dataclass(frozen=True)
class FailureReport:
    stage: str
    depth: int
    family_size: int
    detail: str

    def to_json(self) -> dict:
        return {"stage": self.stage, "depth": self.depth,
                "family_size": self.family_size, "detail": self.detail}
