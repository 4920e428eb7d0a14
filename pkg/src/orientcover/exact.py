"""Exact solvers: deletability decisions, exact Frank numbers, certificates.

The enumeration kernel walks all orientations up to global reversal with the
first edge's direction pinned, since deletable sets are reversal-invariant.
Every answer ships a witness that is re-verified by direct deletion checks;
budget exhaustion is a distinct outcome, never conflated with "no".
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (
    CertificateMismatchError,
    GraphTooLargeError,
    PreconditionError,
)
from .multigraph import Multigraph
from .orientation import Orientation, is_deletable_set, is_strongly_connected


class Status(Enum):
    FOUND = "found"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SolveLimits:
    """Budgets for the exact solvers."""

    max_enumerable_edges: int = 22
    node_budget: int = 2_000_000
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.max_enumerable_edges < 1 or self.node_budget < 1:
            raise PreconditionError("solver limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise PreconditionError("time budget must be positive")


DEFAULT_LIMITS = SolveLimits()


@dataclass(frozen=True)
class DecideResult:
    status: Status
    orientation: Optional[Orientation] = None
    nodes: int = 0


@dataclass(frozen=True)
class FrankCertificate:
    """Orientations plus, per edge, the index where its arc is deletable."""

    orientations: Tuple[Orientation, ...]
    cover: Dict[int, int]

    def to_json(self) -> Dict:
        from .graphio import graph_to_json

        graph = self.orientations[0].graph if self.orientations else None
        return {
            "graph": graph_to_json(graph) if graph is not None else None,
            "orientations": [d.to_json(inline_graph=False) for d in self.orientations],
            "cover": {str(e): idx for e, idx in sorted(self.cover.items())},
        }


def certificate_from_json(obj: Dict, graph: Optional[Multigraph] = None) -> FrankCertificate:
    from .errors import FormatError
    from .graphio import graph_from_json
    from .orientation import orientation_from_json

    if graph is None:
        if obj.get("graph") is None:
            raise FormatError("certificate JSON carries no graph and none was supplied")
        graph = graph_from_json(obj["graph"], cap=None)
    try:
        orientations = tuple(
            orientation_from_json(rec, graph) for rec in obj["orientations"])
        cover = {int(e): int(i) for e, i in obj["cover"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate JSON: {exc}") from None
    return FrankCertificate(orientations, cover)


# -- enumeration kernel -----------------------------------------------------------


class _Kernel:
    """Flat arrays for fast orientation scans of one graph."""

    def __init__(self, g: Multigraph):
        self.graph = g
        self.vertices = list(g.vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.edges = [e for e in g.edge_ids if not g.is_loop(e)]
        self.eindex = {e: i for i, e in enumerate(self.edges)}
        self.u = [self.vindex[g.ends(e)[0]] for e in self.edges]
        self.v = [self.vindex[g.ends(e)[1]] for e in self.edges]
        self.n = len(self.vertices)
        self.m = len(self.edges)

    def arcs_of(self, mask: int) -> List[Tuple[int, int]]:
        out = []
        for i in range(self.m):
            if (mask >> i) & 1:
                out.append((self.v[i], self.u[i]))
            else:
                out.append((self.u[i], self.v[i]))
        return out

    def orientation_of(self, mask: int) -> Orientation:
        tails = {}
        for i, e in enumerate(self.edges):
            u, v = self.graph.ends(e)
            tails[e] = v if (mask >> i) & 1 else u
        return Orientation(self.graph, tails)

    def strongly_connected(self, arcs: Sequence[Tuple[int, int]]) -> bool:
        n = self.n
        if n <= 1:
            return True
        fwd = [[] for _ in range(n)]
        bwd = [[] for _ in range(n)]
        for t, h in arcs:
            fwd[t].append(h)
            bwd[h].append(t)
        for adj in (fwd, bwd):
            seen = bytearray(n)
            seen[0] = 1
            stack = [0]
            count = 1
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = 1
                        count += 1
                        stack.append(y)
            if count != n:
                return False
        return True

    def deletable_mask(self, arcs: Sequence[Tuple[int, int]], candidates: Optional[Iterable[int]] = None) -> int:
        """Bitmask over edge indices whose arc deletion keeps strong connectivity.

        Assumes the orientation itself is strongly connected, so the test per
        arc is a single reachability query tail -> head without that arc.
        """
        n = self.n
        fwd: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for i, (t, h) in enumerate(arcs):
            fwd[t].append((h, i))
        result = 0
        idxs = range(self.m) if candidates is None else candidates
        for i in idxs:
            t, h = arcs[i]
            seen = bytearray(n)
            seen[t] = 1
            stack = [t]
            ok = False
            while stack and not ok:
                x = stack.pop()
                for y, j in fwd[x]:
                    if j != i and not seen[y]:
                        if y == h:
                            ok = True
                            break
                        seen[y] = 1
                        stack.append(y)
            if ok:
                result |= 1 << i
        return result


def _scan_deletable_profiles(g: Multigraph, limits: SolveLimits) -> Tuple[_Kernel, Dict[int, int]]:
    """All distinct deletable-arc masks with their smallest orientation mask."""
    kern = _Kernel(g)
    if kern.m > limits.max_enumerable_edges:
        raise GraphTooLargeError(
            f"{kern.m} edges exceeds the enumeration limit {limits.max_enumerable_edges}")
    profiles: Dict[int, int] = {}
    half = 1 << max(kern.m - 1, 0)
    for low in range(half):
        mask = low << 1  # the lowest-id edge keeps its natural direction
        arcs = kern.arcs_of(mask)
        if not kern.strongly_connected(arcs):
            continue
        dmask = kern.deletable_mask(arcs)
        if dmask not in profiles:
            profiles[dmask] = mask
    return kern, profiles


# -- minimum set cover -------------------------------------------------------------


def _min_cover(universe: int, sets_masks: List[int]) -> List[int]:
    """Indices of a minimum subfamily covering the universe bitmask.

    Branch and bound seeded with the greedy cover; branches on the uncovered
    element with the fewest candidate sets, in a fixed order, so the optimum
    returned is deterministic.
    """
    if universe == 0:
        return []
    order = sorted(range(len(sets_masks)), key=lambda i: (-bin(sets_masks[i]).count("1"), sets_masks[i]))
    masks = [sets_masks[i] for i in order]

    greedy: List[int] = []
    left = universe
    while left:
        best = max(range(len(masks)), key=lambda i: (bin(masks[i] & left).count("1"), -i))
        if masks[best] & left == 0:
            raise PreconditionError("sets do not cover the universe")
        greedy.append(best)
        left &= ~masks[best]
    best_sol = greedy
    max_size = max(bin(m).count("1") for m in masks)

    covers_of: Dict[int, List[int]] = {}
    bit = 1
    pos = 0
    while bit <= universe:
        if universe & bit:
            covers_of[pos] = [i for i, m in enumerate(masks) if m & bit]
        bit <<= 1
        pos += 1

    chosen: List[int] = []

    def dfs(left: int) -> None:
        nonlocal best_sol
        if left == 0:
            if len(chosen) < len(best_sol):
                best_sol = list(chosen)
            return
        lower = len(chosen) + -(-bin(left).count("1") // max_size)
        if lower >= len(best_sol):
            return
        pos = 0
        probe = left
        target = None
        fewest = None
        while probe:
            if probe & 1:
                k = len(covers_of[pos])
                if fewest is None or k < fewest:
                    fewest = k
                    target = pos
            probe >>= 1
            pos += 1
        for i in covers_of[target]:
            chosen.append(i)
            dfs(left & ~masks[i])
            chosen.pop()

    dfs(universe)
    return [order[i] for i in best_sol]


# -- public operations ----------------------------------------------------------------


def frank_lower_bound(g: Multigraph) -> int:
    """2 when a 3-edge-cut exists, else 1; input must be 3-edge-connected."""
    lam = g.edge_connectivity()
    if lam < 3:
        raise PreconditionError("Frank numbers are defined for 3-edge-connected graphs")
    return 2 if lam == 3 else 1


def frank_number_exact(
    g: Multigraph, limits: SolveLimits = DEFAULT_LIMITS
) -> Tuple[int, FrankCertificate]:
    """Exact Frank number by full orientation enumeration plus exact set cover."""
    if g.num_vertices < 2 or g.edge_connectivity() < 3:
        raise PreconditionError("Frank numbers are defined for 3-edge-connected graphs")
    kern, profiles = _scan_deletable_profiles(g, limits)
    universe = (1 << kern.m) - 1
    # prune dominated deletable sets, keeping the lexicographically least mask per set
    items = sorted(profiles.items(), key=lambda kv: (-bin(kv[0]).count("1"), kv[1]))
    maximal: List[Tuple[int, int]] = []
    for dmask, omask in items:
        if any(dmask | other == other for other, _ in maximal):
            continue
        maximal.append((dmask, omask))
    cover_idx = _min_cover(universe, [dm for dm, _ in maximal])
    chosen = [maximal[i] for i in cover_idx]
    orientations = tuple(kern.orientation_of(omask) for _, omask in chosen)
    cover: Dict[int, int] = {}
    for e in g.edge_ids:
        if g.is_loop(e):
            cover[e] = 0
            continue
        i = kern.eindex[e]
        for k, (dmask, _) in enumerate(chosen):
            if (dmask >> i) & 1:
                cover[e] = k
                break
    cert = FrankCertificate(orientations, cover)
    ok, bad = verify_certificate(g, cert)
    if not ok:  # pragma: no cover - enumeration output is verified by construction
        raise PreconditionError(f"internal certificate failed verification on {sorted(bad)}")
    return len(orientations), cert


def deletability_decide(
    g: Multigraph, s: Iterable[int], limits: SolveLimits = DEFAULT_LIMITS
) -> DecideResult:
    """Search for an orientation in which every edge of s is deletable.

    Full enumeration under the edge limit; otherwise backtracking over edge
    directions with local cut pruning.  A budget exhaustion is reported as
    INDETERMINATE.  Any FOUND answer carries a verified witness.
    """
    sset = frozenset(s)
    for e in sset:
        if not g.has_edge(e):
            raise PreconditionError(f"unknown edge {e} in the requested set")
    if not g.is_connected():
        raise PreconditionError("deletability needs a connected graph")
    kern = _Kernel(g)
    s_idx = [kern.eindex[e] for e in sset if not g.is_loop(e)]
    if kern.m <= limits.max_enumerable_edges:
        return _decide_by_enumeration(kern, s_idx)
    return _decide_by_backtracking(g, kern, s_idx, limits)


def _decide_by_enumeration(kern: _Kernel, s_idx: List[int]) -> DecideResult:
    half = 1 << max(kern.m - 1, 0)
    nodes = 0
    for low in range(half):
        mask = low << 1
        nodes += 1
        arcs = kern.arcs_of(mask)
        if not kern.strongly_connected(arcs):
            continue
        dmask = kern.deletable_mask(arcs, candidates=s_idx)
        if all((dmask >> i) & 1 for i in s_idx):
            return DecideResult(Status.FOUND, kern.orientation_of(mask), nodes)
    return DecideResult(Status.NO, None, nodes)


def _decide_by_backtracking(
    g: Multigraph, kern: _Kernel, s_idx: List[int], limits: SolveLimits
) -> DecideResult:
    sbit = 0
    for i in s_idx:
        sbit |= 1 << i
    # edges on small cuts first: they carry the tightest constraints
    lam_key = {}
    for i, e in enumerate(kern.edges):
        u, v = g.ends(e)
        lam_key[i] = g.local_edge_connectivity(u, v)
    order = sorted(range(kern.m), key=lambda i: (lam_key[i], kern.edges[i]))

    n = kern.n
    incident: List[List[int]] = [[] for _ in range(n)]
    for i in range(kern.m):
        incident[kern.u[i]].append(i)
        incident[kern.v[i]].append(i)
    undecided = [len(incident[x]) for x in range(n)]
    in_count = [0] * n
    out_count = [0] * n
    in_free = [0] * n  # arcs entering that are not in s
    out_free = [0] * n
    direction = [0] * kern.m

    deadline = None if limits.time_budget is None else time.monotonic() + limits.time_budget
    nodes = 0
    exhausted = False

    def vertex_ok(x: int) -> bool:
        if in_count[x] == 0 or out_count[x] == 0:
            return False
        if in_free[x] == 0 and in_count[x] < 2:
            return False
        if out_free[x] == 0 and out_count[x] < 2:
            return False
        return True

    def place(i: int, bit: int) -> Tuple[int, int]:
        direction[i] = bit
        t, h = (kern.v[i], kern.u[i]) if bit else (kern.u[i], kern.v[i])
        out_count[t] += 1
        in_count[h] += 1
        if not (sbit >> i) & 1:
            out_free[t] += 1
            in_free[h] += 1
        undecided[t] -= 1
        undecided[h] -= 1
        return t, h

    def unplace(i: int, t: int, h: int) -> None:
        out_count[t] -= 1
        in_count[h] -= 1
        if not (sbit >> i) & 1:
            out_free[t] -= 1
            in_free[h] -= 1
        undecided[t] += 1
        undecided[h] += 1

    result: Optional[Orientation] = None

    def rec(pos: int) -> bool:
        nonlocal nodes, exhausted, result
        nodes += 1
        if nodes > limits.node_budget or (deadline is not None and time.monotonic() > deadline):
            exhausted = True
            return False
        if pos == kern.m:
            mask = 0
            for i in range(kern.m):
                mask |= direction[i] << i
            arcs = kern.arcs_of(mask)
            if not kern.strongly_connected(arcs):
                return False
            dmask = kern.deletable_mask(arcs, candidates=s_idx)
            if all((dmask >> j) & 1 for j in s_idx):
                result = kern.orientation_of(mask)
                return True
            return False
        i = order[pos]
        bits = (0,) if pos == 0 else (0, 1)
        for bit in bits:
            t, h = place(i, bit)
            good = (undecided[t] > 0 or vertex_ok(t)) and (undecided[h] > 0 or vertex_ok(h))
            if good and rec(pos + 1):
                return True
            unplace(i, t, h)
            if exhausted:
                return False
        return False

    if rec(0):
        return DecideResult(Status.FOUND, result, nodes)
    if exhausted:
        return DecideResult(Status.INDETERMINATE, None, nodes)
    return DecideResult(Status.NO, None, nodes)


def verify_certificate(g: Multigraph, cert: FrankCertificate) -> Tuple[bool, FrozenSet[int]]:
    """Re-check a certificate by direct deletion tests.

    Returns (ok, offending edges): edges missing from the cover, pointing at
    invalid indices, or not actually deletable where claimed.
    """
    for d in cert.orientations:
        if d.graph != g:
            raise CertificateMismatchError("certificate orientations reference a different graph")
    strong = [is_strongly_connected(d) for d in cert.orientations]
    bad: Set[int] = set()
    for e in g.edge_ids:
        idx = cert.cover.get(e)
        if idx is None or not 0 <= idx < len(cert.orientations):
            bad.add(e)
            continue
        if not strong[idx]:
            bad.add(e)
            continue
        if not is_deletable_set(cert.orientations[idx], [e]):
            bad.add(e)
    return (not bad, frozenset(bad))
