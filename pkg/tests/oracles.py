"""Independent brute-force oracles for the test suite.

Deliberately naive and structurally different from the package code: strong
connectivity runs a Warshall closure over an adjacency matrix, cuts come from
explicit subset enumeration, and minimum covers come from itertools over
distinct deletable sets.  Nothing here imports solver internals.
"""

import itertools
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

Edge = Tuple[int, int, int]  # (edge id, u, v)


def closure_strongly_connected(n: int, arcs: Iterable[Tuple[int, int]]) -> bool:
    """Warshall closure over vertex indices 0..n-1."""
    if n <= 1:
        return True
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    for t, h in arcs:
        reach[t][h] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return all(all(row) for row in reach)


def brute_deletable_set(n: int, arcs: Sequence[Tuple[int, int, int]], f: Set[int]) -> bool:
    """arcs: (edge id, tail idx, head idx); loops must be pre-filtered by caller."""
    base = [(t, h) for _, t, h in arcs]
    if not closure_strongly_connected(n, base):
        return False
    for e, t, h in arcs:
        if e in f:
            rest = [(t2, h2) for e2, t2, h2 in arcs if e2 != e]
            if not closure_strongly_connected(n, rest):
                return False
    return True


def brute_min_cut(vertices: Sequence[int], edges: Sequence[Edge],
                  must_have: Optional[int] = None, must_not: Optional[int] = None) -> int:
    """Minimum |cut(X)| over nonempty proper X, optionally pinning two vertices."""
    verts = list(vertices)
    n = len(verts)
    best = None
    for mask in range(1, (1 << n) - 1):
        xs = {verts[i] for i in range(n) if (mask >> i) & 1}
        if must_have is not None and must_have not in xs:
            continue
        if must_not is not None and must_not in xs:
            continue
        size = sum(1 for _, u, v in edges if u != v and (u in xs) != (v in xs))
        if best is None or size < best:
            best = size
    return best


def brute_3cuts(vertices: Sequence[int], edges: Sequence[Edge]) -> List[FrozenSet[int]]:
    """All vertex sets X (up to nothing) with |cut(X)| == 3."""
    verts = list(vertices)
    n = len(verts)
    out = []
    for mask in range(1, (1 << n) - 1):
        xs = frozenset(verts[i] for i in range(n) if (mask >> i) & 1)
        size = sum(1 for _, u, v in edges if u != v and (u in xs) != (v in xs))
        if size == 3:
            out.append(xs)
    return out


def brute_has_nontrivial_3cut(vertices: Sequence[int], edges: Sequence[Edge]) -> bool:
    return any(2 <= len(xs) <= len(vertices) - 2 for xs in brute_3cuts(vertices, edges))


def all_orientations(edges: Sequence[Edge]):
    """Yield lists of (edge id, tail, head) over every direction choice."""
    nonloop = [(e, u, v) for e, u, v in edges if u != v]
    loops = [(e, u, v) for e, u, v in edges if u == v]
    for bits in itertools.product((0, 1), repeat=len(nonloop)):
        arcs = [(e, (v if b else u), (u if b else v))
                for (e, u, v), b in zip(nonloop, bits)]
        yield arcs, loops


def brute_deletable_arcs(vertices: Sequence[int], arcs: Sequence[Tuple[int, int, int]],
                         loop_ids: Iterable[int]) -> Optional[FrozenSet[int]]:
    """Deletable edge ids of one orientation, or None if not strongly connected."""
    index = {v: i for i, v in enumerate(vertices)}
    idx_arcs = [(e, index[t], index[h]) for e, t, h in arcs]
    base = [(t, h) for _, t, h in idx_arcs]
    n = len(vertices)
    if not closure_strongly_connected(n, base):
        return None
    good = set(loop_ids)
    for e, t, h in idx_arcs:
        rest = [(t2, h2) for e2, t2, h2 in idx_arcs if e2 != e]
        if closure_strongly_connected(n, rest):
            good.add(e)
    return frozenset(good)


def brute_frank_number(vertices: Sequence[int], edges: Sequence[Edge]) -> int:
    """Exact Frank number by full enumeration and cover search over set sizes."""
    universe = frozenset(e for e, _, _ in edges)
    loop_ids = [e for e, u, v in edges if u == v]
    distinct: Set[FrozenSet[int]] = set()
    for arcs, _ in all_orientations(edges):
        ds = brute_deletable_arcs(vertices, arcs, loop_ids)
        if ds is not None:
            distinct.add(ds)
    sets = sorted(distinct, key=lambda s: (-len(s), sorted(s)))
    for k in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, k):
            covered = frozenset().union(*combo)
            if covered == universe:
                return k
    raise AssertionError("no cover exists; graph is not 3-edge-connected?")


def brute_deletability(vertices: Sequence[int], edges: Sequence[Edge],
                       s: Set[int]) -> Optional[List[Tuple[int, int, int]]]:
    """First orientation making s deletable, or None."""
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    s_nonloop = {e for e in s if any(e2 == e and u != v for e2, u, v in edges)}
    for arcs, loops in all_orientations(edges):
        idx_arcs = [(e, index[t], index[h]) for e, t, h in arcs]
        if brute_deletable_set(n, idx_arcs, s_nonloop):
            return arcs + loops
    return None
