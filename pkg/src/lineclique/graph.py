"""Loopless multigraphs with stable edge ids, line graphs and edge multiplication."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    """Immutable loopless multigraph.

    Vertices are ``0..vertex_count-1``; edge ``i`` is ``edges[i]``. Parallel
    edges are distinct entries. ``parent_edges`` is set on subgraph views and
    maps each local edge id back to the id it had in the graph it came from.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    vertex_labels: Optional[tuple[str, ...]] = None
    edge_labels: Optional[tuple[str, ...]] = None
    parent_edges: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        norm = []
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge {i} = ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise GraphError(f"edge {i} is a loop at vertex {u}")
            norm.append((int(u), int(v)))
        object.__setattr__(self, "edges", tuple(norm))
        if self.vertex_labels is not None and len(self.vertex_labels) != self.vertex_count:
            raise GraphError("vertex_labels length mismatch")
        if self.edge_labels is not None and len(self.edge_labels) != len(self.edges):
            raise GraphError("edge_labels length mismatch")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], **kw) -> "MultiGraph":
        return cls(n, tuple((u, v) for u, v in edges), **kw)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def _incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids incident to ``v``, ascending."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._incidence]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def endpoints(self, e: int) -> tuple[int, int]:
        self._check_edge(e)
        return self.edges[e]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def shared_vertices(self, e: int, f: int) -> set[int]:
        return set(self.endpoints(e)) & set(self.endpoints(f))

    def multiplicity(self, u: int, v: int) -> int:
        key = frozenset((u, v))
        return sum(1 for a, b in self.edges if frozenset((a, b)) == key)

    def neighbors(self, v: int) -> set[int]:
        return {self.other_end(e, v) for e in self._incidence[v]}

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._incidence[u] if self.other_end(e, u) == v]

    def _check_edge(self, e: int) -> None:
        if not (isinstance(e, int) and 0 <= e < len(self.edges)):
            raise GraphError(f"invalid edge id {e!r}")

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "MultiGraph":
        """View on the given edges (all vertices kept); ``parent_edges`` records ids."""
        ids = tuple(sorted(set(edge_ids)))
        for e in ids:
            self._check_edge(e)
        base = self.parent_edges
        parents = ids if base is None else tuple(base[e] for e in ids)
        return MultiGraph(
            self.vertex_count,
            tuple(self.edges[e] for e in ids),
            vertex_labels=self.vertex_labels,
            edge_labels=None if self.edge_labels is None else tuple(self.edge_labels[e] for e in ids),
            parent_edges=parents,
        )

    def vertex_name(self, v: int) -> str:
        return self.vertex_labels[v] if self.vertex_labels else str(v)

    def vertex_by_label(self, label: str) -> int:
        if not self.vertex_labels or label not in self.vertex_labels:
            raise GraphError(f"no vertex labelled {label!r}")
        return self.vertex_labels.index(label)

    def edge_by_labels(self, a: str, b: str, nth: int = 0) -> int:
        """Edge id joining the labelled vertices ``a`` and ``b`` (``nth`` parallel copy)."""
        es = self.edges_between(self.vertex_by_label(a), self.vertex_by_label(b))
        if nth >= len(es):
            raise GraphError(f"no edge {a}{b} (copy {nth})")
        return es[nth]

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components (isolated vertices included)."""
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_simple(self) -> bool:
        return len({frozenset(p) for p in self.edges}) == len(self.edges)

    def is_complete(self) -> bool:
        """True iff simple and every vertex pair is joined."""
        n = self.vertex_count
        return self.is_simple() and len(self.edges) == n * (n - 1) // 2

    # serialization

    def to_json_obj(self) -> dict:
        obj: dict = {"vertices": self.vertex_count, "edges": [list(p) for p in self.edges]}
        if self.vertex_labels is not None:
            obj["vertex_labels"] = list(self.vertex_labels)
        if self.edge_labels is not None:
            obj["edge_labels"] = list(self.edge_labels)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MultiGraph":
        try:
            n = int(obj["vertices"])
            edges = tuple((int(u), int(v)) for u, v in obj["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        vl = obj.get("vertex_labels")
        el = obj.get("edge_labels")
        return cls(
            n,
            edges,
            vertex_labels=tuple(vl) if vl is not None else None,
            edge_labels=tuple(el) if el is not None else None,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.vertex_count):
            lines.append(f'  {v} [label="{self.vertex_name(v)}"];')
        for i, (u, v) in enumerate(self.edges):
            label = self.edge_labels[i] if self.edge_labels else str(i)
            lines.append(f'  {u} -- {v} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def line_graph(h: MultiGraph) -> tuple[MultiGraph, tuple[int, ...]]:
    """Line graph of ``h`` and the map edge id of ``h`` -> vertex of L(h).

    L(h) is always simple; its edges are listed in lexicographic order of
    vertex pairs. The mapping is the identity but is returned explicitly so
    callers never rely on that.
    """
    m = h.edge_count
    pairs = set()
    for v in range(h.vertex_count):
        inc = h.incident(v)
        for i, a in enumerate(inc):
            for b in inc[i + 1 :]:
                pairs.add((min(a, b), max(a, b)))
    labels = None
    if h.edge_labels is not None:
        labels = h.edge_labels
    elif h.vertex_labels is not None:
        labels = tuple(h.vertex_name(u) + h.vertex_name(v) for u, v in h.edges)
    return MultiGraph(m, tuple(sorted(pairs)), vertex_labels=labels), tuple(range(m))


class EdgeCopyName(NamedTuple):
    """Copy ``level`` (1-based) of base edge ``base`` in a multiplied graph."""

    base: int
    level: int


def copy_id(base: int, level: int, m: int) -> int:
    if not 1 <= level <= m:
        raise GraphError(f"level {level} outside [1, {m}]")
    return m * base + level - 1


def copy_name(edge_id: int, m: int) -> EdgeCopyName:
    base, off = divmod(edge_id, m)
    return EdgeCopyName(base, off + 1)


def multiply_edges(h: MultiGraph, m: int) -> tuple[MultiGraph, dict[EdgeCopyName, int]]:
    """Replace each edge by ``m`` parallel copies; copies of edge j get ids m*j..m*j+m-1."""
    if not isinstance(m, int) or m < 1:
        raise GraphError(f"multiplicity must be a positive integer, got {m!r}")
    edges = []
    naming = {}
    labels = [] if h.edge_labels is not None else None
    for j, (u, v) in enumerate(h.edges):
        for level in range(1, m + 1):
            naming[EdgeCopyName(j, level)] = len(edges)
            edges.append((u, v))
            if labels is not None:
                labels.append(f"{h.edge_labels[j]}^{level}")
    return (
        MultiGraph(
            h.vertex_count,
            tuple(edges),
            vertex_labels=h.vertex_labels,
            edge_labels=tuple(labels) if labels is not None else None,
        ),
        naming,
    )


def edge_degree(h: MultiGraph, e: int) -> int:
    """Number of other edges sharing at least one endpoint with ``e``."""
    u, v = h.endpoints(e)
    return len((set(h.incident(u)) | set(h.incident(v))) - {e})


def cut_edges(h: MultiGraph) -> set[int]:
    """Bridges of ``h``. Parallel edges are never bridges."""
    n = h.vertex_count
    disc = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        # frames: (vertex, edge used to enter, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, via, pos = stack[-1]
            inc = h.incident(v)
            if pos < len(inc):
                stack[-1] = (v, via, pos + 1)
                e = inc[pos]
                if e == via:
                    continue
                w = h.other_end(e, v)
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.add(via)
    return bridges


@dataclass(frozen=True)
class WalkPath:
    """A walk given by its vertex sequence and the edge ids between them."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def reversed(self) -> "WalkPath":
        return WalkPath(self.vertices[::-1], self.edges[::-1])

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TwoCycles:
    """Cycles ``c1`` and ``c2`` whose common edges form exactly the path ``shared``.

    ``shared`` runs from x to y; ``c1_rest`` and ``c2_rest`` run from y back
    to x, so ``c1 = shared + c1_rest`` and ``c2 = shared + c2_rest``.
    """

    shared: WalkPath
    c1_rest: WalkPath
    c2_rest: WalkPath

    @property
    def c1(self) -> frozenset[int]:
        return frozenset(self.shared.edges) | frozenset(self.c1_rest.edges)

    @property
    def c2(self) -> frozenset[int]:
        return frozenset(self.shared.edges) | frozenset(self.c2_rest.edges)


def _biconnected_blocks(h: MultiGraph) -> list[list[int]]:
    """Edge sets of the blocks of ``h`` (Hopcroft-Tarjan with an edge stack)."""
    n = h.vertex_count
    disc = [-1] * n
    low = [0] * n
    blocks: list[list[int]] = []
    clock = 0
    for root in range(n):
        if disc[root] != -1 or h.degree(root) == 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        estack: list[int] = []
        stack = [(root, -1, 0)]
        while stack:
            v, via, pos = stack[-1]
            inc = h.incident(v)
            if pos < len(inc):
                stack[-1] = (v, via, pos + 1)
                e = inc[pos]
                if e == via:
                    continue
                w = h.other_end(e, v)
                if disc[w] == -1:
                    estack.append(e)
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, 0))
                elif disc[w] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        block = []
                        while True:
                            f = estack.pop()
                            block.append(f)
                            if f == via:
                                break
                        blocks.append(sorted(block))
    return blocks


def _shortest_walk(h: MultiGraph, allowed: set[int], src: int, dst: int, avoid_vertices: set[int]) -> Optional[WalkPath]:
    """BFS path from src to dst over ``allowed`` edges; smallest edge ids win ties."""
    prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
    queue = [src]
    for v in queue:
        if v == dst:
            break
        for e in h.incident(v):
            if e not in allowed:
                continue
            w = h.other_end(e, v)
            if w in prev or (w in avoid_vertices and w != dst):
                continue
            prev[w] = (v, e)
            queue.append(w)
    if dst not in prev:
        return None
    vs, es = [dst], []
    while vs[-1] != src:
        p, e = prev[vs[-1]]
        es.append(e)
        vs.append(p)
    return WalkPath(tuple(reversed(vs)), tuple(reversed(es)))


def _theta_in_block(h: MultiGraph, block: list[int]) -> Optional[tuple[WalkPath, WalkPath, WalkPath]]:
    """Three internally disjoint x-y paths inside a 2-connected block, if it is not a cycle."""
    bset = set(block)
    verts = {v for e in block for v in h.endpoints(e)}
    if len(block) <= len(verts):
        return None  # a cycle (or a single edge)
    # A cycle through the smallest edge: that edge plus a shortest path avoiding it.
    e0 = block[0]
    a, b = h.endpoints(e0)
    back = _shortest_walk(h, bset - {e0}, b, a, set())
    assert back is not None
    cycle_edges = {e0, *back.edges}
    cycle_verts = set(back.vertices)
    # Ear: smallest block edge off the cycle, extended to a path back to the cycle.
    for f in block:
        if f in cycle_edges:
            continue
        u, v = h.endpoints(f)
        if u in cycle_verts and v in cycle_verts:
            if len(cycle_edges) == 2:
                continue  # would give a bundle of three parallel edges
            ear = WalkPath((u, v), (f,))
        else:
            start = u if u in cycle_verts else v
            mid = v if start == u else u
            if start not in cycle_verts:
                continue
            rest = bset - cycle_edges - {f}
            tail = None
            # path from mid back to a cycle vertex other than start, avoiding the cycle interior
            for target in sorted(cycle_verts - {start}):
                cand = _shortest_walk(h, rest, mid, target, cycle_verts)
                if cand is not None and (tail is None or (len(cand), cand.edges) < (len(tail), tail.edges)):
                    tail = cand
            if tail is None:
                continue
            ear = WalkPath((start,) + tail.vertices, (f,) + tail.edges)
        x, y = ear.start, ear.end
        # split the cycle (e0 then back) into the two arcs between x and y
        cyc_v = (a,) + back.vertices  # closed walk a, b, ..., a
        cyc_e = (e0,) + back.edges
        ix = cyc_v.index(x)
        iy = cyc_v.index(y)
        lo, hi = min(ix, iy), max(ix, iy)
        arc1 = WalkPath(cyc_v[lo : hi + 1], cyc_e[lo:hi])
        arc2 = WalkPath(cyc_v[hi:] + cyc_v[1 : lo + 1], cyc_e[hi:] + cyc_e[:lo])
        # orient everything x -> y
        if arc1.start != x:
            arc1 = arc1.reversed()
        if arc2.start != x:
            arc2 = arc2.reversed()
        return ear, arc1, arc2
    return None


def find_two_cycles_sharing_edge(h: MultiGraph) -> Optional[TwoCycles]:
    """Two distinct cycles, not both of length two, whose common edges form one path.

    Such a pair exists iff some block of ``h`` is neither a cycle nor a bundle
    of parallel edges. The witness is built from a theta (three internally
    disjoint paths between x and y): the shortest path is shared and the two
    others close the cycles. Blocks and edges are scanned in id order, so the
    answer is deterministic.
    """
    for block in sorted(_biconnected_blocks(h)):
        verts = {v for e in block for v in h.endpoints(e)}
        if len(verts) == 2:
            continue  # parallel bundle: every cycle has length two
        theta = _theta_in_block(h, block)
        if theta is None:
            continue
        paths = sorted(theta, key=lambda p: (len(p), p.edges))
        shared, p1, p2 = paths
        return TwoCycles(shared, p1.reversed(), p2.reversed())
    return None
