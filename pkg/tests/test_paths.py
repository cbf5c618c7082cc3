import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lineclique.graph import MultiGraph, line_graph
from lineclique.paths import (
    AdjacencyToken,
    CertificateError,
    SedSystem,
    Trail,
    adjacency_tokens,
    concatenate_systems,
    pull_back,
    sed_to_edge_disjoint,
    verify_certificate,
    verify_immersion,
    verify_sed,
)
from lineclique.lifting import triangle_certificate

from oracles import all_valid_systems, random_concat_instance, random_trail, sed_brute

PATH3 = MultiGraph(4, ((0, 1), (1, 2), (2, 3)))


def test_trail_rejects_repeated_edges_and_bad_walks():
    with pytest.raises(CertificateError):
        Trail((0, 1, 0), (0, 0))
    with pytest.raises(CertificateError):
        Trail((0, 2), (0,), PATH3)


def test_from_edges_recovers_orientation():
    t = Trail.from_edges(PATH3, (2, 1, 0))
    assert t.vertices == (3, 2, 1, 0)
    with pytest.raises(CertificateError):
        Trail.from_edges(PATH3, (0, 2))


def test_from_edges_handles_parallel_start():
    g = MultiGraph(3, ((0, 1), (0, 1), (1, 2)))
    t = Trail.from_edges(g, (0, 1, 2))
    assert t.vertices == (1, 0, 1, 2)


def test_tokens_ignore_meeting_vertex():
    assert AdjacencyToken.of(3, 1, 0) == AdjacencyToken.of(1, 3, 7)
    with pytest.raises(CertificateError):
        AdjacencyToken.of(2, 2, 0)


def test_parallel_adjacency_used_twice_is_rejected():
    # edges 0 and 1 are parallel: meeting at vertex 0 or at vertex 1 is the same line-graph edge
    g = MultiGraph(3, ((0, 1), (0, 1), (1, 2)))
    a = Trail((1, 0, 1), (0, 1), g)
    b = Trail((2, 1, 0, 1), (2, 0, 1), g)
    res = verify_sed([a, b])
    assert not res and res.token.pair == (0, 1) and res.trails == (0, 1)


@st.composite
def host_and_trails(draw):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    h = MultiGraph(n, tuple(tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(1, 7))))
    k = draw(st.integers(1, 4))
    return h, [random_trail(rng, h, 5) for _ in range(k)]


@settings(max_examples=150, deadline=None)
@given(host_and_trails())
def test_tokens_invariant_under_reversal(case):
    _, trails = case
    for p in trails:
        assert adjacency_tokens(p) == adjacency_tokens(p.reversed())
        assert {t.pair for t in adjacency_tokens(p)} == {t.pair for t in adjacency_tokens(p.reversed())}


@settings(max_examples=150, deadline=None)
@given(host_and_trails())
def test_verify_sed_matches_oracle_and_is_monotone(case):
    _, trails = case
    ok = bool(verify_sed(trails))
    assert ok == sed_brute(trails)
    if ok:
        for r in range(len(trails)):
            for sub in itertools.combinations(trails, r):
                assert verify_sed(sub)


def test_verify_sed_refuses_mixed_hosts():
    g2 = MultiGraph(4, ((0, 1), (1, 3), (2, 3)))
    with pytest.raises(CertificateError):
        verify_sed([Trail((0, 1), (0,), PATH3), Trail((0, 1), (0,), g2)])


def _tamper(c, **kw):
    return SedSystem(kw.get("host", c.host), kw.get("terminals", c.terminals), kw.get("paths", c.paths))


def test_verify_certificate_reports_each_clause():
    c = triangle_certificate()
    assert verify_certificate(c)
    assert verify_certificate(_tamper(c, terminals=(0, 0, 1))).clause == "terminals-distinct"
    assert verify_certificate(_tamper(c, terminals=(0, 1, 9))).clause == "terminals-valid"
    paths = dict(c.paths)
    del paths[(0, 1)]
    assert verify_certificate(_tamper(c, paths=paths)).clause == "pair-coverage"
    paths = dict(c.paths)
    paths[(0, 1)] = Trail((0, 1), (0,))
    assert verify_certificate(_tamper(c, paths=paths)).clause == "endpoint"
    paths = dict(c.paths)
    paths[(0, 1)] = Trail((0, 2, 1), (0, 1))
    assert verify_certificate(_tamper(c, paths=paths)).clause == "trail-invalid"


def test_verify_certificate_detects_shared_adjacency():
    c = triangle_certificate()
    paths = dict(c.paths)
    paths[(1, 2)] = Trail((2, 1, 0, 2), (1, 0, 2), c.host)
    check = verify_certificate(_tamper(c, paths=paths))
    assert check.clause == "semi-edge-disjoint"
    assert "0,1" in check.detail


def test_certificate_json_round_trip():
    c = triangle_certificate()
    back = SedSystem.from_json_obj(c.to_json_obj())
    assert back.terminals == c.terminals
    assert {k: p.edges for k, p in back.paths.items()} == {k: p.edges for k, p in c.paths.items()}
    assert verify_certificate(back)


SMALL_HOSTS = [
    MultiGraph(2, ((0, 1),) * 3),
    MultiGraph(3, ((0, 1), (0, 1), (1, 2))),
    MultiGraph(3, ((0, 1), (1, 2), (0, 2))),
    MultiGraph(3, ((0, 1), (0, 1), (1, 2), (0, 2))),
    MultiGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2))),
    MultiGraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2))),
    MultiGraph(2, ((0, 1),) * 4),
]


@pytest.mark.parametrize("h", SMALL_HOSTS, ids=lambda h: f"{h.vertex_count}v{h.edge_count}e")
@pytest.mark.parametrize("t", [2, 3, 4])
def test_every_valid_system_maps_to_edge_disjoint_paths(h, t):
    lg, mapping = line_graph(h)
    for terms, paths in all_valid_systems(h, t, limit=300):
        c = SedSystem(h, terms, paths)
        assert verify_certificate(c)
        img = sed_to_edge_disjoint(c, lg, mapping)
        check = verify_immersion(img)
        assert check, check
        back = pull_back(img, h, mapping)
        assert {k: p.edges for k, p in back.paths.items()} == {k: p.edges for k, p in c.paths.items()}


def test_lingering_line_graph_path_has_no_root_preimage():
    # star with four leaves: L is K4; path 0-1-2-3 in L would stay at the centre
    h = MultiGraph(5, ((0, 1), (0, 2), (0, 3), (0, 4)))
    lg, mapping = line_graph(h)
    from lineclique.paths import ImmersionCertificate

    e01 = lg.edges_between(0, 1)[0]
    e12 = lg.edges_between(1, 2)[0]
    e23 = lg.edges_between(2, 3)[0]
    fam = ImmersionCertificate(lg, (0, 3), {(0, 3): Trail((0, 1, 2, 3), (e01, e12, e23), lg)})
    assert verify_immersion(fam)
    with pytest.raises(CertificateError):
        pull_back(fam, h, mapping)


def test_concatenation_joins_at_pivot():
    p = Trail((0, 1, 2), (0, 1), PATH3)
    q = Trail((1, 2, 3), (1, 2), PATH3)
    (r,) = concatenate_systems([p], [q])
    assert r.edges == (0, 1, 2) and r.vertices == (0, 1, 2, 3)


def test_concatenation_checks_preconditions():
    p = Trail((0, 1, 2), (0, 1), PATH3)
    q = Trail((1, 2, 3), (1, 2), PATH3)
    with pytest.raises(CertificateError, match="size"):
        concatenate_systems([p], [q, q])
    with pytest.raises(CertificateError, match="opposite"):
        concatenate_systems([p], [Trail((2, 1, 0), (1, 0), PATH3)])
    with pytest.raises(CertificateError, match="first edge"):
        concatenate_systems([p], [Trail((2, 3), (2,), PATH3)])
    path4 = MultiGraph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))
    P = [Trail((0, 1, 2), (0, 1), path4), Trail((1, 2, 3), (1, 2), path4)]
    Q = [Trail((1, 2, 3), (1, 2), path4), Trail((2, 3, 4), (2, 3), path4)]
    with pytest.raises(CertificateError, match=r"\(1, 0\)"):
        concatenate_systems(P, Q)


def test_concatenation_random_instances_stay_sed():
    rng = random.Random(20240601)
    accepted = 0
    while accepted < 300:
        inst = random_concat_instance(rng)
        if inst is None:
            continue
        _, P, Q = inst
        out = concatenate_systems(P, Q)
        assert sed_brute(out)
        accepted += 1
