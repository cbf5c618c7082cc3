"""Acceptance checks, one test per criterion.

The summary printed at the end of the run (section "acceptance criteria")
gives one PASS/FAIL line per criterion.
"""

import itertools
import random
import time

import pytest

from lineclique.corpus import connected_multigraphs, is_isomorphic
from lineclique.families import (
    figure2_star_certificate,
    figure4_immersion_certificate,
    gen_figure2,
    gen_figure3,
    gen_figure4,
    star_certificate,
)
from lineclique.graph import MultiGraph, line_graph, multiply_edges
from lineclique.k4 import decide_k4
from lineclique.lifting import lift_immersion, tightness_witness, triangle_certificate
from lineclique.paths import (
    SedSystem,
    Trail,
    concatenate_systems,
    pair_key,
    sed_to_edge_disjoint,
    verify_certificate,
    verify_immersion,
    verify_sed,
)
from lineclique.search import (
    Answer,
    SearchBudget,
    audit_conjecture,
    degree_condition,
    find_sed_system,
    has_clique_immersion,
    has_clique_minor,
    validate_minor,
)

from oracles import random_concat_instance
from test_families import has_induced_claw

UNLIMITED = SearchBudget(nodes=10**12)


def complete(n):
    return MultiGraph(n, tuple(itertools.combinations(range(n), 2)))


def criterion_corpus():
    return connected_multigraphs(5, 6, 3)


def _figure2_pair(t, seconds):
    lg, _ = line_graph(gen_figure2(t))
    budget = SearchBudget(nodes=10**12, seconds=seconds)
    start = time.perf_counter()
    minor = has_clique_minor(lg, t, budget)
    imm = has_clique_immersion(lg, t, budget)
    elapsed = time.perf_counter() - start
    return minor, imm, elapsed


@pytest.mark.criterion(1, "line graph of gen_figure2(5): K5 minor yes, K5 immersion no, < 30 s")
def test_figure2_t5():
    minor, imm, elapsed = _figure2_pair(5, 30)
    assert minor.answer is Answer.YES and validate_minor(minor.certificate)
    assert imm.answer is Answer.NO
    assert elapsed < 30


@pytest.mark.criterion(2, "line graph of gen_figure2(6): K6 minor yes, K6 immersion exactly no, < 5 min")
def test_figure2_t6():
    minor, imm, elapsed = _figure2_pair(6, 300)
    assert minor.answer is Answer.YES and validate_minor(minor.certificate)
    assert imm.answer is Answer.NO
    assert elapsed < 300


@pytest.mark.criterion(3, "gen_figure3(): K4 immersion yes, K4 minor no, induced claw, < 5 s")
def test_figure3():
    g = gen_figure3()
    start = time.perf_counter()
    imm = has_clique_immersion(g, 4, UNLIMITED)
    minor = has_clique_minor(g, 4, UNLIMITED)
    elapsed = time.perf_counter() - start
    assert imm.answer is Answer.YES and verify_immersion(imm.certificate)
    assert minor.answer is Answer.NO
    assert has_induced_claw(g)
    assert elapsed < 5


@pytest.mark.criterion(4, "gen_figure4(5): certificate verifies, image edge-disjoint, no K5 minor, < 60 s")
def test_figure4_t5():
    start = time.perf_counter()
    c = figure4_immersion_certificate(5)
    assert verify_certificate(c)
    lg, mapping = line_graph(gen_figure4(5))
    assert verify_immersion(sed_to_edge_disjoint(c, lg, mapping))
    assert has_clique_minor(lg, 5, UNLIMITED).answer is Answer.NO
    assert time.perf_counter() - start < 60


def _cycle_certificate(n, terms):
    """Terminal edges of the n-cycle, each pair joined along the arc that avoids the other terminals."""
    h = MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))
    paths = {}
    ring = list(terms) + [terms[0] + n]
    for a, b in zip(ring, ring[1:]):
        edges = [e % n for e in range(a, b + 1)]
        paths[pair_key(edges[0], edges[-1])] = Trail.from_edges(h, edges, start=a % n)
    return SedSystem(h, tuple(terms), paths)


def base_certificates():
    theta = MultiGraph(4, ((0, 1), (1, 3), (0, 2), (2, 3), (0, 3)))
    digon_triangle = MultiGraph(3, ((0, 1), (0, 1), (1, 2), (0, 2)))
    path5 = MultiGraph(6, tuple((i, i + 1) for i in range(5)))
    certs = {
        "triangle": triangle_certificate(),
        "claw": star_certificate(MultiGraph(4, ((0, 1), (0, 2), (0, 3))), 0, 3),
        "star5": star_certificate(MultiGraph(6, tuple((0, i) for i in range(1, 6))), 0, 5),
        "figure2-star-t5": figure2_star_certificate(5),
        "figure2-star-t6": figure2_star_certificate(6),
        "figure4-t5": figure4_immersion_certificate(5),
        "figure4-t6": figure4_immersion_certificate(6),
        "k4-two-cycles": decide_k4(complete(4)).immersion,
        "theta": decide_k4(theta).immersion,
        "digon-triangle": decide_k4(digon_triangle).immersion,
        "figure3-root-search": find_sed_system(gen_figure3(), 4).certificate,
        "cycle9-even-trails": _cycle_certificate(9, (0, 3, 6)),
        "path5-odd-trail": SedSystem(path5, (0, 4), {(0, 4): Trail.from_edges(path5, range(5))}),
        "double-triangle": lift_immersion(triangle_certificate(), 2),
    }
    return certs


@pytest.mark.criterion(5, "lifting: >= 10 base certificates, m in {2,3}, lifted systems verify with mt terminals")
def test_lifting_corpus():
    certs = base_certificates()
    assert len(certs) >= 10
    lengths = set()
    for name, c in certs.items():
        assert c is not None and verify_certificate(c), name
        lengths |= {len(p) for p in c.paths.values()}
        for m in (2, 3):
            out = lift_immersion(c, m)
            assert verify_certificate(out), (name, m)
            assert out.t == m * c.t, (name, m)
    # both parities of trail length are exercised
    assert any(x % 2 == 0 for x in lengths) and any(x % 2 == 1 and x >= 3 for x in lengths)


@pytest.mark.criterion(6, "tightness for m in {1,2,3}: L(mK3) is K_3m and K_(3m+1) is excluded")
def test_tightness():
    k3 = complete(3)
    for m in (1, 2, 3):
        rep = tightness_witness(m)
        assert rep.ok
        lg, _ = line_graph(multiply_edges(k3, m)[0])
        assert is_isomorphic(lg, complete(3 * m))
        assert not degree_condition(complete(3 * m), 3 * m + 1)


@pytest.mark.criterion(7, "K4 decision agrees with both line-graph searches on every small root graph, < 10 min")
def test_k4_equivalence():
    start = time.perf_counter()
    corpus = criterion_corpus()
    mismatches = []
    for h in corpus:
        lg, _ = line_graph(h)
        v = decide_k4(h).answer
        imm = has_clique_immersion(lg, 4, UNLIMITED).answer
        minor = has_clique_minor(lg, 4, UNLIMITED).answer
        assert Answer.UNKNOWN not in (imm, minor)
        if not (v == (imm is Answer.YES) == (minor is Answer.YES)):
            mismatches.append(h.edges)
    elapsed = time.perf_counter() - start
    print(f"corpus size {len(corpus)}, mismatches {len(mismatches)}, {elapsed:.1f}s")
    assert not mismatches
    assert elapsed < 600


@pytest.mark.criterion(8, "concatenation: >= 1000 random precondition-satisfying instances stay semi-edge-disjoint")
def test_concatenation_property():
    rng = random.Random(31)
    accepted = 0
    multi = 0
    while accepted < 1000:
        inst = random_concat_instance(rng)
        if inst is None:
            continue
        h, P, Q = inst
        assert h.edge_count <= 8
        out = concatenate_systems(P, Q)
        assert verify_sed(out)
        accepted += 1
        multi += len(P) > 1
    assert multi > 100  # plenty of instances with several trails per family


def _all_small_roots(max_edges):
    comps = [g for g in connected_multigraphs(2 * max_edges, max_edges) if g.edge_count > 0]
    out = []
    for k in range(1, max_edges + 1):
        for combo in itertools.combinations_with_replacement(range(len(comps)), k):
            parts = [comps[i] for i in combo]
            if sum(p.edge_count for p in parts) > max_edges:
                continue
            edges, offset = [], 0
            for p in parts:
                edges += [(u + offset, v + offset) for u, v in p.edges]
                offset += p.vertex_count
            out.append(MultiGraph(offset, tuple(edges)))
    return out


@pytest.mark.criterion(9, "root-side system exists iff the line graph immerses K_t, all roots <= 5 edges, t <= 4")
def test_root_line_equivalence():
    roots = _all_small_roots(5)
    checked = 0
    for h in roots:
        lg, _ = line_graph(h)
        for t in range(0, 5):
            a = find_sed_system(h, t, UNLIMITED, prune=False).answer
            b = has_clique_immersion(lg, t, UNLIMITED).answer
            assert a is not Answer.UNKNOWN and b is not Answer.UNKNOWN
            assert a is b, (h.edges, t)
            checked += 1
    assert any(not h.is_connected() for h in roots)
    print(f"{len(roots)} roots, {checked} comparisons")


@pytest.mark.criterion(10, "audit_conjecture: every graph in the criterion-7 corpus passes")
def test_audit_corpus():
    statuses = {}
    for h in criterion_corpus():
        if h.edge_count == 0:
            continue
        rep = audit_conjecture(h, UNLIMITED)
        statuses[h.edges] = rep.status
        if rep.status == "pass":
            assert verify_certificate(rep.certificate)
    assert set(statuses.values()) == {"pass"}
