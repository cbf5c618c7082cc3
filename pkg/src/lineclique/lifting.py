"""Lift clique-immersion and clique-minor certificates from H to mH.

A K_t certificate on H becomes a K_{mt} certificate on mH: every terminal
edge contributes all m of its copies, and each base trail is replayed with
alternating copy levels. Odd-length trails need a latin square to pick the
level of their second-to-last edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import MultiGraph, copy_id, line_graph, multiply_edges
from .paths import (
    CertificateError,
    SedSystem,
    Trail,
    concatenate_systems,
    pair_key,
    verify_certificate,
    verify_sed,
)
from .search import MinorCertificate, degree_condition, validate_minor


@dataclass(frozen=True)
class LatinSquare:
    """``rows[i-1][j-1]`` holds L(i, j) in ``1..order``."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.rows)

    def __call__(self, i: int, j: int) -> int:
        return self.rows[i - 1][j - 1]

    def is_latin(self) -> bool:
        m = self.order
        want = set(range(1, m + 1))
        if any(len(r) != m for r in self.rows):
            return False
        return all(set(r) == want for r in self.rows) and all(
            {self.rows[i][j] for i in range(m)} == want for j in range(m)
        )


def cyclic_latin_square(m: int) -> LatinSquare:
    if m < 1:
        raise ValueError("order must be positive")
    return LatinSquare(tuple(tuple((i + j) % m + 1 for j in range(m)) for i in range(m)))


def _levelled(trail: Trail, levels: Sequence[int], m: int, host: Optional[MultiGraph]) -> Trail:
    return Trail(trail.vertices, tuple(copy_id(e, lv, m) for e, lv in zip(trail.edges, levels)), host)


def _alternating_levels(length: int, i: int, j: int) -> list[int]:
    return [i if k % 2 == 0 else j for k in range(length)]


def _level_pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, m + 1) for j in range(1, m + 1)]


def odd_lift_halves(
    p: Trail, m: int, square: LatinSquare, host: Optional[MultiGraph] = None
) -> tuple[list[Trail], list[Trail], list[Trail]]:
    """Pieces of the odd-length lift, one trail per level pair (i, j) in row-major order.

    Heads alternate levels i, j, ..., i up to the third-to-last edge; mids
    step from level i to level L(i, j); tails step from L(i, j) to level j.
    """
    ell = len(p)
    if ell < 3 or ell % 2 == 0:
        raise CertificateError("odd_lift_halves needs a trail of odd length >= 3")
    keys = _level_pairs(m)
    head = Trail(p.vertices[: ell - 1], p.edges[: ell - 2], p.host)
    mid = Trail(p.vertices[ell - 3 : ell], p.edges[ell - 3 : ell - 1], p.host)
    tail = Trail(p.vertices[ell - 2 :], p.edges[ell - 2 :], p.host)
    heads = [_levelled(head, _alternating_levels(ell - 2, i, j), m, host) for i, j in keys]
    mids = [_levelled(mid, (i, square(i, j)), m, host) for i, j in keys]
    tails = [_levelled(tail, (square(i, j), j), m, host) for i, j in keys]
    return heads, mids, tails


def lift_pair_paths(
    p: Trail,
    m: int,
    square: Optional[LatinSquare] = None,
    host: Optional[MultiGraph] = None,
    check: bool = True,
) -> dict[tuple[int, int], Trail]:
    """The m*m trails joining copy i of ``p``'s first edge to copy j of its last edge.

    Even length: levels alternate i, j, i, j, ..., j. Odd length: levels
    alternate up to the third-to-last edge (level i), then L(i, j), then j.
    The odd family is assembled by two concatenations of half-families.
    ``host``, if given, must be ``multiply_edges(H, m)`` for the trail's H.
    """
    ell = len(p)
    if ell < 2:
        raise CertificateError("a trail between two distinct terminals has at least two edges")
    if m < 1:
        raise ValueError("m must be positive")
    if square is None:
        square = cyclic_latin_square(m)
    if square.order != m:
        raise CertificateError(f"latin square of order {square.order} used with m = {m}")
    keys = _level_pairs(m)
    if ell % 2 == 0:
        out = {(i, j): _levelled(p, _alternating_levels(ell, i, j), m, host) for i, j in keys}
    else:
        heads, mids, tails = odd_lift_halves(p, m, square, host)
        out = dict(zip(keys, concatenate_systems(concatenate_systems(heads, mids), tails)))
    if check:
        res = verify_sed(out.values())
        if not res:
            raise CertificateError(f"lifted trails are not semi-edge-disjoint at {res.token.pair}")
    return out


def lifted_terminals(terminals: Sequence[int], m: int) -> tuple[int, ...]:
    """All m copies of every terminal, grouped by base terminal."""
    return tuple(copy_id(s, lv, m) for s in terminals for lv in range(1, m + 1))


def lift_immersion(c: SedSystem, m: int, square: Optional[LatinSquare] = None) -> SedSystem:
    """K_{mt} certificate on mH from a K_t certificate on H; the result is re-verified."""
    chk = verify_certificate(c)
    if not chk:
        raise CertificateError(f"input certificate invalid ({chk.clause}: {chk.detail})")
    if m < 1:
        raise ValueError("m must be positive")
    mh, _ = multiply_edges(c.host, m)
    if square is None:
        square = cyclic_latin_square(m)
    paths: dict[tuple[int, int], Trail] = {}
    for s in c.terminals:
        a, b = c.host.endpoints(s)
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                si, sj = copy_id(s, i, m), copy_id(s, j, m)
                paths[pair_key(si, sj)] = Trail((b, a, b), (si, sj), mh)
    for (s, f), trail in sorted(c.paths.items()):
        if trail.first != s:
            trail = trail.reversed()
        for (i, j), lifted in lift_pair_paths(trail, m, square, mh, check=False).items():
            paths[pair_key(copy_id(s, i, m), copy_id(f, j, m))] = lifted
    out = SedSystem(mh, lifted_terminals(c.terminals, m), paths)
    chk = verify_certificate(out)
    if not chk:
        raise CertificateError(f"lifted certificate failed verification ({chk.clause}: {chk.detail})")
    return out


def lift_minor(sys: MinorCertificate, m: int) -> MinorCertificate:
    """Copy level l of every part A_i becomes its own part in mH."""
    if sys.kind != "edge-systems":
        raise CertificateError("only root-graph edge systems can be lifted")
    chk = validate_minor(sys)
    if not chk:
        raise CertificateError(f"input system invalid ({chk.clause}: {chk.detail})")
    if m == 1:
        return sys
    mh, _ = multiply_edges(sys.host, m)
    parts = tuple(
        tuple(copy_id(e, lv, m) for e in part) for part in sys.parts for lv in range(1, m + 1)
    )
    out = MinorCertificate(mh, "edge-systems", parts)
    chk = validate_minor(out)
    if not chk:
        raise CertificateError(f"lifted system invalid ({chk.clause}: {chk.detail})")
    return out


def triangle_certificate(h: Optional[MultiGraph] = None) -> SedSystem:
    """All three edges of K3 as terminals, each pair joined by its 2-edge trail."""
    if h is None:
        h = MultiGraph(3, ((0, 1), (1, 2), (0, 2)))
    paths = {}
    for s in range(3):
        for f in range(s + 1, 3):
            (v,) = h.shared_vertices(s, f)
            paths[(s, f)] = Trail((h.other_end(s, v), v, h.other_end(f, v)), (s, f), h)
    return SedSystem(h, (0, 1, 2), paths)


@dataclass
class TightnessReport:
    m: int
    line_graph_is_complete: bool
    clique_order: int
    lifted_terminals: int
    lifted_verifies: bool
    next_clique_excluded: bool

    @property
    def ok(self) -> bool:
        return (
            self.line_graph_is_complete
            and self.clique_order == 3 * self.m
            and self.lifted_terminals == 3 * self.m
            and self.lifted_verifies
            and self.next_clique_excluded
        )

    def to_json_obj(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def tightness_witness(m: int) -> TightnessReport:
    """L(mK3) is K_{3m}; the lift reaches K_{3m}; the degree bound rules out K_{3m+1}."""
    if m < 1:
        raise ValueError("m must be positive")
    k3 = MultiGraph(3, ((0, 1), (1, 2), (0, 2)))
    mk3, _ = multiply_edges(k3, m)
    lg, _ = line_graph(mk3)
    lifted = lift_immersion(triangle_certificate(k3), m)
    return TightnessReport(
        m=m,
        line_graph_is_complete=lg.is_complete(),
        clique_order=lg.vertex_count,
        lifted_terminals=lifted.t,
        lifted_verifies=bool(verify_certificate(lifted)),
        next_clique_excluded=not degree_condition(lg, 3 * m + 1),
    )
