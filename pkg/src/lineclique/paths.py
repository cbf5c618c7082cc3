"""Trails, semi-edge-disjoint path systems and their line-graph images.

A path system on a root graph H certifies a clique immersion in L(H): the
terminals are edges of H, and each pair of terminals is joined by a trail
whose consecutive edge pairs ("adjacencies") are used by no other trail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .graph import GraphError, MultiGraph


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Trail:
    """Walk ``vertices[0] -edges[0]- vertices[1] ... `` with no repeated edge."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    host: Optional[MultiGraph] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.edges) < 1:
            raise CertificateError("a trail needs at least one edge")
        if len(self.vertices) != len(self.edges) + 1:
            raise CertificateError("trail needs exactly one more vertex than edges")
        if len(set(self.edges)) != len(self.edges):
            raise CertificateError(f"trail repeats an edge: {self.edges}")
        if self.host is not None:
            self.check(self.host)

    def check(self, host: MultiGraph) -> None:
        for i, e in enumerate(self.edges):
            try:
                ends = host.endpoints(e)
            except GraphError as exc:
                raise CertificateError(str(exc)) from exc
            if sorted(ends) != sorted((self.vertices[i], self.vertices[i + 1])):
                raise CertificateError(
                    f"edge {e} does not join vertices {self.vertices[i]} and {self.vertices[i + 1]}"
                )

    @classmethod
    def from_edges(cls, host: MultiGraph, edges: Sequence[int], start: Optional[int] = None) -> "Trail":
        """Recover the walk traversing ``edges`` in order.

        When the first edge is parallel to the second the walk is ambiguous;
        the orientation starting at ``start`` (default: the first edge's
        first endpoint) is tried first.
        """
        edges = tuple(edges)
        if not edges:
            raise CertificateError("a trail needs at least one edge")
        try:
            a, b = host.endpoints(edges[0])
        except GraphError as exc:
            raise CertificateError(str(exc)) from exc
        starts = (a, b) if start in (None, a) else (b, a)
        if start is not None and start not in (a, b):
            raise CertificateError(f"start {start} is not an endpoint of edge {edges[0]}")
        for s in starts:
            verts = [s]
            ok = True
            for e in edges:
                try:
                    verts.append(host.other_end(e, verts[-1]))
                except GraphError:
                    ok = False
                    break
            if ok:
                return cls(tuple(verts), edges, host)
        raise CertificateError(f"edges {list(edges)} do not form a walk")

    @property
    def first(self) -> int:
        return self.edges[0]

    @property
    def last(self) -> int:
        return self.edges[-1]

    def reversed(self) -> "Trail":
        return Trail(self.vertices[::-1], self.edges[::-1], self.host)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class AdjacencyToken:
    """Edges ``lo < hi`` used consecutively, meeting at ``vertex``.

    Tokens compare by the edge pair only: two parallel edges meeting at
    either end are the same adjacency, matching the single edge they induce
    in the line graph.
    """

    lo: int
    hi: int
    vertex: int = field(compare=False)

    @classmethod
    def of(cls, e: int, f: int, vertex: int) -> "AdjacencyToken":
        if e == f:
            raise CertificateError("an adjacency needs two distinct edges")
        return cls(min(e, f), max(e, f), vertex)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.lo, self.hi)


def adjacency_tokens(p: Trail) -> set[AdjacencyToken]:
    return {AdjacencyToken.of(p.edges[i], p.edges[i + 1], p.vertices[i + 1]) for i in range(len(p.edges) - 1)}


@dataclass(frozen=True)
class SedResult:
    ok: bool
    token: Optional[AdjacencyToken] = None
    trails: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_sed(paths: Iterable[Trail]) -> SedResult:
    """Check that no adjacency token is shared by two trails of the collection.

    On failure the result carries the first repeated token and the indices of
    the two trails using it.
    """
    paths = list(paths)
    hosts = {id(p.host): p.host for p in paths if p.host is not None}
    if len({h for h in hosts.values()}) > 1:
        raise CertificateError("trails come from different host graphs")
    owner: dict[AdjacencyToken, int] = {}
    for idx, p in enumerate(paths):
        for tok in sorted(adjacency_tokens(p), key=lambda t: t.pair):
            prev = owner.get(tok)
            if prev is not None:
                return SedResult(False, tok, (prev, idx))
            owner[tok] = idx
    return SedResult(True)


def pair_key(s: int, t: int) -> tuple[int, int]:
    return (s, t) if s <= t else (t, s)


@dataclass(frozen=True)
class SedSystem:
    """Terminal edges of ``host`` and one trail per unordered terminal pair."""

    host: MultiGraph
    terminals: tuple[int, ...]
    paths: Mapping[tuple[int, int], Trail]

    @property
    def t(self) -> int:
        return len(self.terminals)

    def trails(self) -> list[Trail]:
        return [self.paths[k] for k in sorted(self.paths)]

    def to_json_obj(self) -> dict:
        return {
            "host": self.host.to_json_obj(),
            "terminals": list(self.terminals),
            "paths": [
                {"pair": list(k), "edges": list(self.paths[k].edges), "vertices": list(self.paths[k].vertices)}
                for k in sorted(self.paths)
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict, host: Optional[MultiGraph] = None) -> "SedSystem":
        try:
            if host is None:
                host = MultiGraph.from_json_obj(obj["host"])
            terminals = tuple(int(x) for x in obj["terminals"])
            paths = {}
            for item in obj["paths"]:
                s, t = (int(x) for x in item["pair"])
                edges = [int(x) for x in item["edges"]]
                if "vertices" in item:
                    trail = Trail(tuple(int(x) for x in item["vertices"]), tuple(edges), host)
                else:
                    trail = Trail.from_edges(host, edges)
                paths[pair_key(s, t)] = trail
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed certificate JSON: {exc}") from exc
        return cls(host, terminals, paths)


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    clause: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(c: SedSystem) -> CertificateCheck:
    """Independent validation of an immersion certificate on the root graph."""
    terms = c.terminals
    if len(set(terms)) != len(terms):
        return CertificateCheck(False, "terminals-distinct", f"repeated terminal in {list(terms)}")
    for s in terms:
        if not (isinstance(s, int) and 0 <= s < c.host.edge_count):
            return CertificateCheck(False, "terminals-valid", f"terminal {s} is not an edge of the host")
    wanted = {pair_key(s, t) for s, t in itertools.combinations(terms, 2)}
    have = set(c.paths)
    if have != wanted:
        extra = sorted(have - wanted)
        missing = sorted(wanted - have)
        return CertificateCheck(False, "pair-coverage", f"missing pairs {missing}, unexpected pairs {extra}")
    for key in sorted(c.paths):
        p = c.paths[key]
        try:
            p.check(c.host)
        except CertificateError as exc:
            return CertificateCheck(False, "trail-invalid", f"pair {list(key)}: {exc}")
        if {p.first, p.last} != set(key):
            return CertificateCheck(
                False, "endpoint", f"trail for {list(key)} runs from edge {p.first} to edge {p.last}"
            )
    res = verify_sed(c.trails())
    if not res:
        keys = sorted(c.paths)
        a, b = (keys[i] for i in res.trails)
        tok = res.token
        return CertificateCheck(
            False,
            "semi-edge-disjoint",
            f"adjacency of edges {tok.lo},{tok.hi} (at vertex {tok.vertex}) used by pairs {list(a)} and {list(b)}",
        )
    return CertificateCheck(True)


def concatenate_systems(P: Sequence[Trail], Q: Sequence[Trail]) -> list[Trail]:
    """Join ``P[i]`` and ``Q[i]`` at their common pivot edge, for every ``i``.

    Preconditions are checked rather than assumed: equal lengths, matching
    pivots traversed in the same direction, both families semi-edge-disjoint,
    and ``|E(P[i]) & E(Q[j])| <= 1`` for all ``i, j``.
    """
    if len(P) != len(Q):
        raise CertificateError(f"families differ in size: {len(P)} vs {len(Q)}")
    for i, (p, q) in enumerate(zip(P, Q)):
        if p.last != q.first:
            raise CertificateError(f"pair ({i}, {i}): last edge of P is {p.last}, first edge of Q is {q.first}")
        if p.vertices[-2:] != q.vertices[:2]:
            raise CertificateError(f"pair ({i}, {i}): pivot edge {p.last} traversed in opposite directions")
    for name, fam in (("P", P), ("Q", Q)):
        res = verify_sed(fam)
        if not res:
            raise CertificateError(f"{name} is not semi-edge-disjoint: trails {res.trails} share {res.token.pair}")
    q_sets = [set(q.edges) for q in Q]
    for i, p in enumerate(P):
        ps = set(p.edges)
        for j, qs in enumerate(q_sets):
            if len(ps & qs) > 1:
                raise CertificateError(f"pair ({i}, {j}): P and Q share {len(ps & qs)} edges")
    out = [Trail(p.vertices + q.vertices[2:], p.edges + q.edges[1:], p.host or q.host) for p, q in zip(P, Q)]
    res = verify_sed(out)
    if not res:  # unreachable when the preconditions hold
        raise AssertionError(f"concatenation broke semi-edge-disjointness at {res.token}")
    return out


@dataclass(frozen=True)
class ImmersionCertificate:
    """Clique immersion in a graph: terminal vertices and pairwise edge-disjoint trails."""

    host: MultiGraph
    terminals: tuple[int, ...]
    paths: Mapping[tuple[int, int], Trail]

    @property
    def t(self) -> int:
        return len(self.terminals)

    def to_json_obj(self) -> dict:
        return {
            "terminals": list(self.terminals),
            "paths": [
                {"pair": list(k), "vertices": list(p.vertices), "edges": list(p.edges)}
                for k, p in sorted(self.paths.items())
            ],
        }


def verify_immersion(c: ImmersionCertificate) -> CertificateCheck:
    terms = c.terminals
    if len(set(terms)) != len(terms):
        return CertificateCheck(False, "terminals-distinct", f"repeated terminal in {list(terms)}")
    wanted = {pair_key(s, t) for s, t in itertools.combinations(terms, 2)}
    if set(c.paths) != wanted:
        return CertificateCheck(False, "pair-coverage", "paths do not cover exactly the terminal pairs")
    used: dict[int, tuple[int, int]] = {}
    for key in sorted(c.paths):
        p = c.paths[key]
        try:
            p.check(c.host)
        except CertificateError as exc:
            return CertificateCheck(False, "trail-invalid", f"pair {list(key)}: {exc}")
        if {p.vertices[0], p.vertices[-1]} != set(key):
            return CertificateCheck(False, "endpoint", f"path for {list(key)} joins {p.vertices[0]}, {p.vertices[-1]}")
        for e in p.edges:
            if e in used:
                return CertificateCheck(False, "edge-disjoint", f"edge {e} used by pairs {list(used[e])} and {list(key)}")
            used[e] = key
    return CertificateCheck(True)


def sed_to_edge_disjoint(c: SedSystem, L: MultiGraph, mapping: Sequence[int]) -> ImmersionCertificate:
    """Image of a root-graph certificate in the line graph ``L``."""
    if len(mapping) != c.host.edge_count or len(set(mapping)) != len(mapping) or L.vertex_count != len(mapping):
        raise CertificateError("mapping is not a bijection from host edges onto line-graph vertices")
    lookup: dict[frozenset, int] = {}
    for i, (a, b) in enumerate(L.edges):
        lookup[frozenset((a, b))] = i
    paths = {}
    for key, trail in c.paths.items():
        verts = tuple(mapping[e] for e in trail.edges)
        try:
            ledges = tuple(lookup[frozenset((verts[i], verts[i + 1]))] for i in range(len(verts) - 1))
        except KeyError as exc:
            raise CertificateError(f"consecutive trail edges are not adjacent in L: {exc}") from exc
        s, t = mapping[key[0]], mapping[key[1]]
        if verts[0] != s:
            verts, ledges = verts[::-1], ledges[::-1]
        paths[pair_key(s, t)] = _line_trail(verts, ledges, L)
    return ImmersionCertificate(L, tuple(mapping[s] for s in c.terminals), paths)


def _line_trail(verts: tuple[int, ...], ledges: tuple[int, ...], L: MultiGraph) -> Trail:
    if not ledges:
        raise CertificateError("terminal pair maps to a single vertex")
    return Trail(verts, ledges, L)


def pull_back(fam: ImmersionCertificate, h: MultiGraph, mapping: Sequence[int]) -> SedSystem:
    """Root-graph system whose image is ``fam``.

    Each line-graph path becomes the sequence of root edges it visits; that
    sequence must be a walk in ``h`` (a path that lingers at one root vertex
    for three consecutive edges has no walk preimage and is rejected).
    """
    inverse = {v: e for e, v in enumerate(mapping)}
    paths = {}
    for key, p in fam.paths.items():
        root_edges = [inverse[v] for v in p.vertices]
        s, t = inverse[key[0]], inverse[key[1]]
        if root_edges[0] != s:
            root_edges.reverse()
        paths[pair_key(s, t)] = Trail.from_edges(h, root_edges)
    return SedSystem(h, tuple(inverse[v] for v in fam.terminals), paths)
