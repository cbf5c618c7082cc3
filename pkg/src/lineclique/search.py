"""Exact desk-scale deciders for clique immersions, clique minors and chromatic index.

Every search is budgeted. Running out of budget yields ``Answer.UNKNOWN``,
never a guessed ``NO``. Every ``YES`` carries a certificate that has been
re-checked by the independent validators in :mod:`lineclique.paths` or
:func:`validate_minor` before it is returned.
"""

from __future__ import annotations

import enum
import itertools
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Optional

from .graph import MultiGraph, edge_degree
from .paths import (
    CertificateCheck,
    ImmersionCertificate,
    SedSystem,
    Trail,
    pair_key,
    verify_certificate,
    verify_immersion,
)

log = logging.getLogger(__name__)

BUDGET_ENV = "LINECLIQUE_BUDGET_NODES"
DEFAULT_NODES = 5_000_000


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    nodes: int = DEFAULT_NODES
    seconds: Optional[float] = None

    def __post_init__(self):
        if self.nodes <= 0:
            raise ValueError("node budget must be positive")
        if self.seconds is not None and self.seconds <= 0:
            raise ValueError("time budget must be positive")

    @classmethod
    def default(cls) -> "SearchBudget":
        raw = os.environ.get(BUDGET_ENV)
        return cls(int(raw)) if raw else cls()


class BudgetExhausted(Exception):
    pass


class _Meter:
    def __init__(self, budget: Optional[SearchBudget]):
        self.budget = budget or SearchBudget.default()
        self.count = 0
        self.deadline = None if self.budget.seconds is None else time.monotonic() + self.budget.seconds

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.count > self.budget.nodes:
            raise BudgetExhausted
        if self.deadline is not None and (self.count & 0x3FF) == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted


@dataclass
class Decision:
    answer: Answer
    certificate: object = None
    nodes: int = 0

    def to_json_obj(self) -> dict:
        cert = self.certificate.to_json_obj() if self.certificate is not None else None
        return {"answer": self.answer.value, "certificate": cert, "nodes": self.nodes}


def degree_condition(g: MultiGraph, t: int) -> bool:
    """At least ``t`` vertices of degree ``>= t-1``; necessary for a K_t immersion."""
    if t < 1:
        raise ValueError("t must be at least 1")
    return sum(1 for d in g.degrees() if d >= t - 1) >= t


# ---------------------------------------------------------------- immersions


def _simple_paths(g: MultiGraph, a: int, b: int, used: int, meter: _Meter) -> list[tuple[int, tuple, tuple]]:
    """All vertex-simple a-b paths avoiding ``used`` edges, shortest first."""
    out = []
    verts = [a]
    edges: list[int] = []
    on_path = {a}

    def dfs(v: int, mask: int) -> None:
        meter.tick()
        for e in g.incident(v):
            if (used >> e) & 1:
                continue
            w = g.other_end(e, v)
            if w in on_path:
                continue
            edges.append(e)
            verts.append(w)
            if w == b:
                out.append((mask | (1 << e), tuple(verts), tuple(edges)))
            else:
                on_path.add(w)
                dfs(w, mask | (1 << e))
                on_path.discard(w)
            edges.pop()
            verts.pop()

    dfs(a, 0)
    out.sort(key=lambda x: (len(x[2]), x[2]))
    return out


def _pack_paths(g: MultiGraph, terms: tuple[int, ...], meter: _Meter) -> Optional[dict]:
    pairs = list(itertools.combinations(terms, 2))

    def free_incident(v: int, used: int) -> int:
        return sum(1 for e in g.incident(v) if not (used >> e) & 1)

    def rec(remaining: list, used: int) -> Optional[dict]:
        if not remaining:
            return {}
        meter.tick()
        for v in terms:
            need = sum(1 for p in remaining if v in p)
            if need and free_incident(v, used) < need:
                return None
        best = None
        for pair in remaining:
            opts = _simple_paths(g, pair[0], pair[1], used, meter)
            if not opts:
                return None
            if best is None or len(opts) < len(best[1]):
                best = (pair, opts)
        pair, opts = best
        rest = [p for p in remaining if p != pair]
        for mask, verts, edges in opts:
            sub = rec(rest, used | mask)
            if sub is not None:
                sub[pair] = Trail(verts, edges, g)
                return sub
        return None

    return rec(pairs, 0)


def has_clique_immersion(g: MultiGraph, t: int, budget: Optional[SearchBudget] = None) -> Decision:
    """Decide whether ``g`` immerses K_t, by terminal choice plus edge-disjoint path packing."""
    if t < 0:
        raise ValueError("t must be non-negative")
    meter = _Meter(budget)
    if t == 0:
        return Decision(Answer.YES, ImmersionCertificate(g, (), {}), 0)
    if not degree_condition(g, t):
        return Decision(Answer.NO, None, 0)
    cands = [v for v in range(g.vertex_count) if g.degree(v) >= t - 1]
    try:
        for terms in itertools.combinations(cands, t):
            meter.tick()
            found = _pack_paths(g, terms, meter)
            if found is not None:
                cert = ImmersionCertificate(g, terms, {pair_key(*k): p for k, p in found.items()})
                _require(verify_immersion(cert))
                return Decision(Answer.YES, cert, meter.count)
    except BudgetExhausted:
        return Decision(Answer.UNKNOWN, None, meter.count)
    return Decision(Answer.NO, None, meter.count)


def _edge_trails(h: MultiGraph, s: int, f: int, meter: _Meter) -> list[Trail]:
    """All trails of ``h`` whose first edge is ``s`` and last edge is ``f``."""
    out = []
    for start in dict.fromkeys(h.endpoints(s)):
        verts = [start, h.other_end(s, start)]
        edges = [s]
        on = {s}

        def dfs() -> None:
            meter.tick()
            v = verts[-1]
            for e in h.incident(v):
                if e in on:
                    continue
                w = h.other_end(e, v)
                edges.append(e)
                verts.append(w)
                if e == f:
                    out.append(Trail(tuple(verts), tuple(edges), h))
                else:
                    on.add(e)
                    dfs()
                    on.discard(e)
                edges.pop()
                verts.pop()

        dfs()
    out.sort(key=lambda p: (len(p), p.edges, p.vertices))
    return out


def _token_pairs(p: Trail) -> frozenset:
    return frozenset(pair_key(p.edges[i], p.edges[i + 1]) for i in range(len(p.edges) - 1))


def _undominated(trails: list[Trail]) -> list[tuple[frozenset, Trail]]:
    """Drop trails whose adjacency set contains another trail's (never needed by a search)."""
    kept: list[tuple[frozenset, Trail]] = []
    for p in trails:
        toks = _token_pairs(p)
        if any(k <= toks for k, _ in kept):
            continue
        kept = [(k, q) for k, q in kept if not toks <= k]
        kept.append((toks, p))
    kept.sort(key=lambda x: (len(x[1]), x[1].edges))
    return kept


def find_sed_system(
    h: MultiGraph, t: int, budget: Optional[SearchBudget] = None, prune: bool = True
) -> Decision:
    """Search the root graph for ``t`` terminal edges joined by a semi-edge-disjoint system.

    With ``prune`` set, terminals are restricted to edges of edge-degree at
    least ``t-1``; without it every ``t``-set of edges is tried.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    meter = _Meter(budget)
    m = h.edge_count
    if t == 0:
        return Decision(Answer.YES, SedSystem(h, (), {}), 0)
    cands = [e for e in range(m) if not prune or edge_degree(h, e) >= t - 1]
    trail_cache: dict[tuple[int, int], list] = {}

    def options(s: int, f: int) -> list:
        key = (s, f)
        if key not in trail_cache:
            trail_cache[key] = _undominated(_edge_trails(h, s, f, meter))
        return trail_cache[key]

    def rec(remaining: list, used: frozenset) -> Optional[dict]:
        if not remaining:
            return {}
        meter.tick()
        best = None
        for pair in remaining:
            opts = [o for o in options(*pair) if not (o[0] & used)]
            if not opts:
                return None
            if best is None or len(opts) < len(best[1]):
                best = (pair, opts)
        pair, opts = best
        rest = [p for p in remaining if p != pair]
        for toks, trail in opts:
            sub = rec(rest, used | toks)
            if sub is not None:
                sub[pair] = trail
                return sub
        return None

    try:
        for terms in itertools.combinations(cands, t):
            meter.tick()
            found = rec(list(itertools.combinations(terms, 2)), frozenset())
            if found is not None:
                cert = SedSystem(h, terms, {pair_key(*k): p for k, p in found.items()})
                _require(verify_certificate(cert))
                return Decision(Answer.YES, cert, meter.count)
    except BudgetExhausted:
        return Decision(Answer.UNKNOWN, None, meter.count)
    return Decision(Answer.NO, None, meter.count)


# -------------------------------------------------------------------- minors


@dataclass(frozen=True)
class MinorCertificate:
    """Clique-minor model.

    ``kind == "branch-sets"``: parts are disjoint vertex sets of ``host``,
    each connected, pairwise joined by an edge.
    ``kind == "edge-systems"``: parts are edge sets of a root graph, each
    connected and nonempty, pairwise edge-disjoint and pairwise sharing a
    vertex; such a system is exactly a clique minor of the line graph.
    """

    host: MultiGraph
    kind: str
    parts: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.parts)

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "parts": [list(p) for p in self.parts]}


def _vertex_set_connected(g: MultiGraph, part: set[int]) -> bool:
    start = next(iter(part))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w in part and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == part


def _edge_set_connected(h: MultiGraph, part: set[int]) -> bool:
    start = next(iter(part))
    seen = {start}
    stack = [start]
    while stack:
        e = stack.pop()
        for v in h.endpoints(e):
            for f in h.incident(v):
                if f in part and f not in seen:
                    seen.add(f)
                    stack.append(f)
    return seen == part


def validate_minor(c: MinorCertificate) -> CertificateCheck:
    parts = [set(p) for p in c.parts]
    if any(not p for p in parts):
        return CertificateCheck(False, "nonempty", "empty part")
    for i, j in itertools.combinations(range(len(parts)), 2):
        if parts[i] & parts[j]:
            return CertificateCheck(False, "disjoint", f"parts {i} and {j} overlap")
    g = c.host
    if c.kind == "branch-sets":
        for i, p in enumerate(parts):
            if not all(0 <= v < g.vertex_count for v in p):
                return CertificateCheck(False, "valid-ids", f"part {i} has an unknown vertex")
            if not _vertex_set_connected(g, p):
                return CertificateCheck(False, "connected", f"branch set {i} is not connected")
        for i, j in itertools.combinations(range(len(parts)), 2):
            if not any(a in parts[j] for v in parts[i] for a in g.neighbors(v)):
                return CertificateCheck(False, "pairwise-adjacent", f"branch sets {i} and {j} are not joined")
    elif c.kind == "edge-systems":
        verts = []
        for i, p in enumerate(parts):
            if not all(0 <= e < g.edge_count for e in p):
                return CertificateCheck(False, "valid-ids", f"part {i} has an unknown edge")
            if not _edge_set_connected(g, p):
                return CertificateCheck(False, "connected", f"edge set {i} is not connected")
            verts.append({v for e in p for v in g.endpoints(e)})
        for i, j in itertools.combinations(range(len(parts)), 2):
            if not verts[i] & verts[j]:
                return CertificateCheck(False, "pairwise-meeting", f"edge sets {i} and {j} share no vertex")
    else:
        return CertificateCheck(False, "kind", f"unknown certificate kind {c.kind!r}")
    return CertificateCheck(True)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _connected_vertex_subsets(g: MultiGraph, meter: _Meter) -> dict[int, list[int]]:
    """Connected vertex subsets (bitmasks) grouped by their smallest vertex."""
    nbr = [sum(1 << w for w in g.neighbors(v)) for v in range(g.vertex_count)]
    groups: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        allowed = ~((1 << v) - 1)  # only vertices >= v
        found = {1 << v}
        frontier = [1 << v]
        while frontier:
            nxt = []
            for s in frontier:
                meter.tick()
                ext = 0
                for u in _bits(s):
                    ext |= nbr[u]
                ext &= allowed & ~s
                for u in _bits(ext):
                    t = s | (1 << u)
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
            frontier = nxt
        groups[v] = sorted(found, key=lambda s: (bin(s).count("1"), s))
    return groups


def has_clique_minor(g: MultiGraph, t: int, budget: Optional[SearchBudget] = None) -> Decision:
    """Branch-set search for a K_t minor; sets are chosen in increasing order of their smallest vertex."""
    if t < 0:
        raise ValueError("t must be non-negative")
    meter = _Meter(budget)
    n = g.vertex_count
    if t == 0:
        return Decision(Answer.YES, MinorCertificate(g, "branch-sets", ()), 0)
    simple_edges = {frozenset(p) for p in g.edges}
    if n < t or len(simple_edges) < t * (t - 1) // 2:
        return Decision(Answer.NO, None, 0)
    nbr = [sum(1 << w for w in g.neighbors(v)) for v in range(n)]
    try:
        groups = _connected_vertex_subsets(g, meter)
        closed = {}
        for v, subs in groups.items():
            for s in subs:
                m = 0
                for u in _bits(s):
                    m |= nbr[u]
                closed[s] = m & ~s

        def rec(chosen: list[int], used: int, lo: int) -> Optional[list[int]]:
            k = len(chosen)
            if k == t:
                return chosen
            meter.tick()
            free = [v for v in range(lo, n) if not (used >> v) & 1]
            if len(free) < t - k:
                return None
            for v in free:
                for s in groups[v]:
                    if s & used:
                        continue
                    if bin(s).count("1") > n - bin(used).count("1") - (t - k - 1):
                        break
                    if all(closed[s] & c for c in chosen):
                        res = rec(chosen + [s], used | s, v + 1)
                        if res is not None:
                            return res
            return None

        found = rec([], 0, 0)
    except BudgetExhausted:
        return Decision(Answer.UNKNOWN, None, meter.count)
    if found is None:
        return Decision(Answer.NO, None, meter.count)
    cert = MinorCertificate(g, "branch-sets", tuple(_bits(s) for s in found))
    _require(validate_minor(cert))
    return Decision(Answer.YES, cert, meter.count)


def minor_via_subgraph_system(h: MultiGraph, t: int, budget: Optional[SearchBudget] = None) -> Decision:
    """Search the root graph for ``t`` connected, pairwise edge-disjoint, pairwise meeting edge sets."""
    if t < 0:
        raise ValueError("t must be non-negative")
    meter = _Meter(budget)
    m = h.edge_count
    if t == 0:
        return Decision(Answer.YES, MinorCertificate(h, "edge-systems", ()), 0)
    if m < t:
        return Decision(Answer.NO, None, 0)
    vmask = [(1 << a) | (1 << b) for a, b in h.edges]
    try:
        # connected edge sets, grown from their smallest edge
        groups: dict[int, list[tuple[int, int]]] = {}
        for e in range(m):
            start = (1 << e, vmask[e])
            seen = {start[0]: start[1]}
            frontier = [start]
            while frontier:
                nxt = []
                for emask, vm in frontier:
                    meter.tick()
                    for f in range(e + 1, m):
                        if (emask >> f) & 1 or not (vmask[f] & vm):
                            continue
                        s2 = emask | (1 << f)
                        if s2 not in seen:
                            seen[s2] = vm | vmask[f]
                            nxt.append((s2, seen[s2]))
                frontier = nxt
            groups[e] = sorted(seen.items(), key=lambda x: (bin(x[0]).count("1"), x[0]))

        def rec(chosen: list, used: int, lo: int) -> Optional[list]:
            k = len(chosen)
            if k == t:
                return chosen
            meter.tick()
            free = [e for e in range(lo, m) if not (used >> e) & 1]
            if len(free) < t - k:
                return None
            for e in free:
                for emask, vm in groups[e]:
                    if emask & used:
                        continue
                    if bin(emask).count("1") > m - bin(used).count("1") - (t - k - 1):
                        break
                    if all(vm & cvm for _, cvm in chosen):
                        res = rec(chosen + [(emask, vm)], used | emask, e + 1)
                        if res is not None:
                            return res
            return None

        found = rec([], 0, 0)
    except BudgetExhausted:
        return Decision(Answer.UNKNOWN, None, meter.count)
    if found is None:
        return Decision(Answer.NO, None, meter.count)
    cert = MinorCertificate(h, "edge-systems", tuple(_bits(em) for em, _ in found))
    _require(validate_minor(cert))
    return Decision(Answer.YES, cert, meter.count)


# ---------------------------------------------------------- chromatic index


def chromatic_index(h: MultiGraph, max_edges: int = 20) -> int:
    """Exact chromatic index by DSATUR-ordered backtracking, trying k = Δ, Δ+1, ..."""
    m = h.edge_count
    if m > max_edges:
        raise ValueError(f"{m} edges exceeds the exact-search guard of {max_edges}")
    if m == 0:
        return 0
    adj = [sorted((set(h.incident(a)) | set(h.incident(b))) - {e}) for e, (a, b) in enumerate(h.edges)]
    k = h.max_degree
    while not _edge_colorable(adj, k):
        k += 1
    return k


def edge_coloring(h: MultiGraph, k: int) -> Optional[list[int]]:
    """A proper edge colouring with colours ``0..k-1``, or None."""
    adj = [sorted((set(h.incident(a)) | set(h.incident(b))) - {e}) for e, (a, b) in enumerate(h.edges)]
    return _edge_colorable(adj, k, want=True)


def _edge_colorable(adj: list[list[int]], k: int, want: bool = False):
    m = len(adj)
    color = [-1] * m

    def rec(done: int, top: int) -> bool:
        if done == m:
            return True
        # most saturated uncoloured edge, ties by degree then id
        best, best_key = -1, None
        for e in range(m):
            if color[e] != -1:
                continue
            sat = len({color[f] for f in adj[e] if color[f] != -1})
            key = (sat, len(adj[e]), -e)
            if best_key is None or key > best_key:
                best, best_key = e, key
        banned = {color[f] for f in adj[best]}
        # a colour beyond the highest used so far is interchangeable with any other unused one
        for c in range(min(k, top + 2)):
            if c in banned:
                continue
            color[best] = c
            if rec(done + 1, max(top, c)):
                return True
        color[best] = -1
        return False

    ok = rec(0, -1)
    if want:
        return list(color) if ok else None
    return ok


# -------------------------------------------------------------------- audit


@dataclass
class AuditReport:
    chi_prime: int
    t: int
    status: str  # "pass" | "fail" | "unknown"
    certificate: Optional[SedSystem] = None
    nodes: int = 0
    notes: list[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "chi_prime": self.chi_prime,
            "t": self.t,
            "status": self.status,
            "certificate": self.certificate.to_json_obj() if self.certificate else None,
            "nodes": self.nodes,
            "notes": self.notes,
        }


def audit_conjecture(h: MultiGraph, budget: Optional[SearchBudget] = None) -> AuditReport:
    """Check that ``h`` has ``chi'(h)`` terminal edges with a semi-edge-disjoint system."""
    chi = chromatic_index(h)
    dec = find_sed_system(h, chi, budget)
    if dec.answer is Answer.YES:
        return AuditReport(chi, chi, "pass", dec.certificate, dec.nodes)
    if dec.answer is Answer.UNKNOWN:
        return AuditReport(chi, chi, "unknown", None, dec.nodes, ["search budget exhausted"])
    msg = f"COUNTEREXAMPLE: chi'={chi} but no K_{chi} immersion in the line graph of {h.to_json()}"
    log.error(msg)
    return AuditReport(chi, chi, "fail", None, dec.nodes, [msg])


def _require(check: CertificateCheck) -> None:
    if not check:
        raise AssertionError(f"search produced an invalid certificate: {check.clause}: {check.detail}")
