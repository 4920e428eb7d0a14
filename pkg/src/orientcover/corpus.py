"""Named test-corpus graphs with fixed labelings.

Every builder returns the same labeled instance on every call so that
certificates and goldens are reproducible byte for byte.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Tuple

from .errors import FormatError
from .multigraph import Multigraph


def _petersen() -> Multigraph:
    # outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
    pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (7, 9), (6, 9), (6, 8), (5, 8)]
    return Multigraph.from_pairs(pairs)


def _complete(n: int) -> Multigraph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Multigraph.from_pairs(pairs)


def _k33() -> Multigraph:
    pairs = [(i, 3 + j) for i in range(3) for j in range(3)]
    return Multigraph.from_pairs(pairs)


def _prism3() -> Multigraph:
    # two triangles 0,1,2 and 3,4,5 joined by a perfect matching
    pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return Multigraph.from_pairs(pairs)


def _cube() -> Multigraph:
    pairs = []
    for x in range(8):
        for bit in (1, 2, 4):
            y = x ^ bit
            if x < y:
                pairs.append((x, y))
    return Multigraph.from_pairs(pairs)


def _moebius_kantor() -> Multigraph:
    # generalized Petersen (8, 3)
    pairs = []
    for i in range(8):
        pairs.append((i, (i + 1) % 8))
    for i in range(8):
        pairs.append((i, 8 + i))
    for i in range(8):
        a, b = 8 + i, 8 + ((i + 3) % 8)
        if a < b:
            pairs.append((a, b))
        else:
            pairs.append((b, a))
    return Multigraph.from_pairs(pairs)


def _wheel(k: int) -> Multigraph:
    # hub 0, rim 1..k
    pairs = [(0, i) for i in range(1, k + 1)]
    pairs += [(i, i + 1) for i in range(1, k)]
    pairs.append((1, k))
    return Multigraph.from_pairs(pairs)


def _theta() -> Multigraph:
    # two vertices joined by three parallel edges; smallest cubic 3ec multigraph
    return Multigraph.from_pairs([(0, 1), (0, 1), (0, 1)])


def _double_k4() -> Multigraph:
    # two K4 blocks sharing vertex 0; the shared vertex is a cut vertex
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
             (0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6)]
    return Multigraph.from_pairs(pairs)


def _hub_triangles() -> Multigraph:
    # hub 0 joined to two triangles, which are tied by the single edge 1-4;
    # removing the hub leaves a bridge, so the graph exercises the
    # bridge-splitting wrapper while staying essentially 4-edge-connected
    pairs = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6),
             (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 4)]
    return Multigraph.from_pairs(pairs)


def _bipetersen() -> Multigraph:
    """Two Petersen-minus-a-vertex blocks joined by a 3-edge matching."""
    base = _petersen()
    cut_vertex = 0
    keep = [v for v in base.vertices if v != cut_vertex]
    stubs = sorted(base.other_end(e, cut_vertex) for e in base.incident_edges(cut_vertex))
    pairs: List[Tuple[int, int]] = []
    for u, v in (base.ends(e) for e in base.edge_ids):
        if cut_vertex in (u, v):
            continue
        pairs.append((keep.index(u), keep.index(v)))
    offset = len(keep)
    block1 = list(pairs)
    for u, v in block1:
        pairs.append((u + offset, v + offset))
    for s in stubs:
        i = keep.index(s)
        pairs.append((i, i + offset))
    return Multigraph.from_pairs(pairs)


_BUILDERS: Dict[str, Callable[[], Multigraph]] = {
    "petersen": _petersen,
    "k4": lambda: _complete(4),
    "k5": lambda: _complete(5),
    "k33": _k33,
    "prism3": _prism3,
    "cube": _cube,
    "moebius_kantor": _moebius_kantor,
    "wheel4": lambda: _wheel(4),
    "wheel5": lambda: _wheel(5),
    "theta": _theta,
    "double_k4": _double_k4,
    "hub_triangles": _hub_triangles,
    "bipetersen": _bipetersen,
}


def corpus_names() -> Tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def named_graph(name: str) -> Multigraph:
    """Canonical labeled instance of a corpus graph."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise FormatError(f"unknown graph name {name!r}; known: {', '.join(corpus_names())}") from None
    return builder()
