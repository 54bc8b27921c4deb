"""Maximum bipartite matching with a König minimum vertex cover."""
from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Sequence


def bipartite_matching_and_cover(lefts: Sequence[Hashable], rights: Sequence[Hashable],
                                 edges: Iterable[tuple[Hashable, Hashable]]
                                 ) -> tuple[list[tuple[Hashable, Hashable]], set]:
    """Maximum matching by augmenting paths, plus a minimum vertex cover.

    Left vertices are tried in the given order and each left vertex scans
    its neighbors in ``rights`` order, so the output is deterministic.
    Edges may be given in either orientation; an edge inside one side is
    rejected.

    Returns
    -------
    matching : list of (left, right)
        Sorted by the position of the left endpoint in ``lefts``.
    cover : set
        Minimum vertex cover, ``|cover| == len(matching)``.
    """
    left_pos = {x: i for i, x in enumerate(lefts)}
    right_pos = {y: i for i, y in enumerate(rights)}
    if len(left_pos) != len(lefts) or len(right_pos) != len(rights):
        raise ValueError("duplicate vertex within one side")
    if left_pos.keys() & right_pos.keys():
        raise ValueError("the two sides must be disjoint")
    adj: dict[Hashable, set] = {x: set() for x in lefts}
    for a, b in edges:
        if a in left_pos and b in right_pos:
            adj[a].add(b)
        elif b in left_pos and a in right_pos:
            adj[b].add(a)
        else:
            raise ValueError(f"edge ({a!r}, {b!r}) does not cross the bipartition")
    nbrs = {x: sorted(adj[x], key=right_pos.__getitem__) for x in lefts}

    match_l: dict[Hashable, Hashable] = {}
    match_r: dict[Hashable, Hashable] = {}

    def augment(x, seen: set) -> bool:
        for y in nbrs[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in match_r or augment(match_r[y], seen):
                match_l[x] = y
                match_r[y] = x
                return True
        return False

    for x in lefts:
        augment(x, set())

    # König: alternating reachability from the unmatched left vertices
    reached_l = {x for x in lefts if x not in match_l}
    reached_r: set = set()
    queue = deque(reached_l)
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y in reached_r or match_l.get(x) == y:
                continue
            reached_r.add(y)
            z = match_r.get(y)
            if z is not None and z not in reached_l:
                reached_l.add(z)
                queue.append(z)
    cover = {x for x in lefts if x not in reached_l} | reached_r
    matching = [(x, match_l[x]) for x in lefts if x in match_l]
    return matching, cover
