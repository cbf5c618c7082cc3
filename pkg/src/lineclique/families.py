"""Named example graphs and their explicit certificates."""

from __future__ import annotations

from .graph import MultiGraph
from .paths import SedSystem, Trail, pair_key


def _build(labels: list[str], edge_pairs: list[tuple[str, str]]) -> MultiGraph:
    idx = {name: i for i, name in enumerate(labels)}
    return MultiGraph(len(labels), tuple((idx[a], idx[b]) for a, b in edge_pairs), vertex_labels=tuple(labels))


def gen_figure2(t: int = 5) -> MultiGraph:
    """Root graph whose line graph has a K_t minor but no K_t immersion.

    ``t-3`` two-edge paths u-a_i-v, one two-edge path u-c-w, and a double
    edge vw. For t = 5 this has 6 vertices and 8 edges.
    """
    if t < 5:
        raise ValueError("the family starts at t = 5")
    mids = [f"a{i}" for i in range(1, t - 2)]
    labels = ["u", *mids, "c", "v", "w"]
    edges = [("u", a) for a in mids] + [("u", "c")]
    edges += [(a, "v") for a in mids] + [("c", "w"), ("v", "w"), ("v", "w")]
    return _build(labels, edges)


def gen_figure3() -> MultiGraph:
    """Six-vertex graph (not a line graph) that immerses K4 but has no K4 minor."""
    labels = ["x", "v", "z", "y", "u", "w"]
    edges = [("x", "v"), ("v", "z"), ("z", "y"), ("y", "x"), ("v", "y"), ("x", "u"), ("u", "v"), ("v", "w"), ("w", "z")]
    return _build(labels, edges)


def gen_figure4(t: int = 5) -> MultiGraph:
    """Triangle x1x2x3 joined completely to y_1..y_{t-4}.

    Its line graph immerses K_t but has no K_t minor.
    """
    if t < 5:
        raise ValueError("the family starts at t = 5")
    ys = [f"y{i}" for i in range(1, t - 3)]
    labels = ["x1", "x2", "x3", *ys]
    edges = [("x1", "x2"), ("x2", "x3"), ("x1", "x3")]
    for y in ys:
        edges += [("x1", y), ("x2", y), ("x3", y)]
    return _build(labels, edges)


def _walk(h: MultiGraph, names: list[str]) -> Trail:
    """Trail through the labelled vertices (the host is simple)."""
    vs = [h.vertex_by_label(n) for n in names]
    es = [h.edges_between(a, b)[0] for a, b in zip(vs, vs[1:])]
    return Trail(tuple(vs), tuple(es), h)


def figure4_immersion_certificate(t: int = 5) -> SedSystem:
    """Terminals: the triangle, every x1y_i, and x2y1.

    Non-adjacent terminal pairs use x1y_i-x3y_i-x2x3, x1y_j-x2y_j-x2y1
    (j >= 2) and x1x3-x3y1-x2y1; adjacent pairs use their 2-edge trail.
    """
    h = gen_figure4(t)
    e = h.edge_by_labels
    ys = [f"y{i}" for i in range(1, t - 3)]
    terminals = [e("x1", "x2"), e("x2", "x3"), e("x1", "x3")] + [e("x1", y) for y in ys] + [e("x2", "y1")]
    paths: dict[tuple[int, int], Trail] = {}
    for y in ys:
        paths[pair_key(e("x1", y), e("x2", "x3"))] = _walk(h, ["x1", y, "x3", "x2"])
    for y in ys[1:]:
        paths[pair_key(e("x1", y), e("x2", "y1"))] = _walk(h, ["x1", y, "x2", "y1"])
    paths[pair_key(e("x1", "x3"), e("x2", "y1"))] = _walk(h, ["x1", "x3", "y1", "x2"])
    for i, s in enumerate(terminals):
        for f in terminals[i + 1 :]:
            key = pair_key(s, f)
            if key in paths:
                continue
            (v,) = h.shared_vertices(s, f)
            paths[key] = Trail((h.other_end(s, v), v, h.other_end(f, v)), (s, f), h)
    return SedSystem(h, tuple(terminals), paths)


def figure2_star_certificate(t: int = 5) -> SedSystem:
    """The four edges at v as terminals, joined pairwise through v."""
    h = gen_figure2(t)
    return star_certificate(h, h.vertex_by_label("v"), 4)


def star_certificate(h: MultiGraph, v: int, k: int) -> SedSystem:
    """First ``k`` edges at ``v`` as terminals, each pair joined by its 2-edge trail through ``v``."""
    star = h.incident(v)[:k]
    if len(star) < k:
        raise ValueError(f"vertex {v} has degree {h.degree(v)} < {k}")
    paths = {}
    for i, s in enumerate(star):
        for f in star[i + 1 :]:
            paths[pair_key(s, f)] = Trail((h.other_end(s, v), v, h.other_end(f, v)), (s, f), h)
    return SedSystem(h, tuple(star), paths)
