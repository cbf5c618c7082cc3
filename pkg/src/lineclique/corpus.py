"""Exhaustive small multigraph corpora, deduplicated up to isomorphism."""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterator, Optional

from .graph import MultiGraph

Canon = tuple[int, tuple[tuple[int, int], ...]]


def _vertex_invariant(n: int, edges: list[tuple[int, int]]) -> list[tuple]:
    deg = [0] * n
    mult: Counter = Counter()
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        mult[(min(u, v), max(u, v))] += 1
    nb: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), k in mult.items():
        nb[u].append((k, deg[v]))
        nb[v].append((k, deg[u]))
    return [(deg[v], tuple(sorted(nb[v]))) for v in range(n)]


def canonical_form(g: MultiGraph) -> Canon:
    """Lexicographically least relabelled edge list over invariant-respecting permutations."""
    n = g.vertex_count
    edges = list(g.edges)
    inv = _vertex_invariant(n, edges)
    classes: dict[tuple, list[int]] = {}
    for v in range(n):
        classes.setdefault(inv[v], []).append(v)
    ordered = [classes[k] for k in sorted(classes)]
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in ordered)):
        label = {}
        nxt = 0
        for block in perms:
            for v in block:
                label[v] = nxt
                nxt += 1
        form = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in edges))
        if best is None or form < best:
            best = form
    return (n, best or ())


def is_isomorphic(a: MultiGraph, b: MultiGraph) -> bool:
    if a.vertex_count != b.vertex_count or a.edge_count != b.edge_count:
        return False
    return canonical_form(a) == canonical_form(b)


def connected_multigraphs(
    max_vertices: int, max_edges: int, max_multiplicity: Optional[int] = None, include_trivial: bool = True
) -> list[MultiGraph]:
    """All connected loopless multigraphs within the bounds, one per isomorphism class.

    Every connected graph with k >= 1 edges arises from a connected graph
    with k-1 edges by adding an edge between existing vertices or a pendant
    edge to a new vertex, so growing level by level reaches all of them.
    """
    out: list[MultiGraph] = []
    if include_trivial and max_vertices >= 1:
        out.append(MultiGraph(1, ()))
    if max_vertices < 2 or max_edges < 1:
        return out
    level = {canonical_form(MultiGraph(2, ((0, 1),))): MultiGraph(2, ((0, 1),))}
    for k in range(1, max_edges + 1):
        out.extend(level[c] for c in sorted(level))
        if k == max_edges:
            break
        nxt: dict[Canon, MultiGraph] = {}
        for g in level.values():
            n = g.vertex_count
            for u, v in itertools.combinations(range(n), 2):
                if max_multiplicity is not None and g.multiplicity(u, v) >= max_multiplicity:
                    continue
                _add(nxt, MultiGraph(n, g.edges + ((u, v),)))
            if n < max_vertices:
                for u in range(n):
                    _add(nxt, MultiGraph(n + 1, g.edges + ((u, n),)))
        level = nxt
    return out


def _add(table: dict, g: MultiGraph) -> None:
    c = canonical_form(g)
    if c not in table:
        table[c] = MultiGraph(c[0], c[1])


def iter_corpus(max_vertices: int = 5, max_edges: int = 6, max_multiplicity: int = 3) -> Iterator[MultiGraph]:
    yield from connected_multigraphs(max_vertices, max_edges, max_multiplicity)
