"""Polynomial K4 decision for line graphs, from a root graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .families import star_certificate
from .graph import MultiGraph, TwoCycles, WalkPath, find_two_cycles_sharing_edge
from .paths import CertificateError, SedSystem, Trail, pair_key, verify_certificate
from .search import MinorCertificate, validate_minor

DELTA = "delta-ge-4"
TWO_CYCLES = "two-cycles"
NEGATIVE = "tree-like-negative"


@dataclass
class K4Verdict:
    answer: bool
    reason: str
    witness: object = None
    immersion: Optional[SedSystem] = None
    minor: Optional[MinorCertificate] = None

    def to_json_obj(self) -> dict:
        w = self.witness
        if isinstance(w, TwoCycles):
            w = {
                "shared": list(w.shared.edges),
                "c1": sorted(w.c1),
                "c2": sorted(w.c2),
            }
        elif w is not None:
            w = list(w)
        return {
            "answer": "yes" if self.answer else "no",
            "reason": self.reason,
            "witness": w,
            "immersion": self.immersion.to_json_obj() if self.immersion else None,
            "minor": self.minor.to_json_obj() if self.minor else None,
        }


def decide_k4(h: MultiGraph) -> K4Verdict:
    """L(h) has a K4 immersion (equivalently a K4 minor) iff Δ(h) >= 4 or two
    cycles, not both of length two, share an edge."""
    if h.max_degree >= 4:
        v = h.degrees().index(h.max_degree)
        imm = star_certificate(h, v, 4)
        minor = MinorCertificate(h, "edge-systems", tuple((e,) for e in imm.terminals))
        return K4Verdict(True, DELTA, imm.terminals, imm, minor)
    tc = find_two_cycles_sharing_edge(h)
    if tc is not None:
        imm, minor = k4_certificates_from_cycles(h, tc)
        return K4Verdict(True, TWO_CYCLES, tc, imm, minor)
    return K4Verdict(False, NEGATIVE)


def _normalize(tc: TwoCycles) -> tuple[WalkPath, WalkPath, WalkPath]:
    p, r1, r2 = tc.shared, tc.c1_rest, tc.c2_rest
    if len(r1) >= 2:
        return p, r1, r2
    if len(r2) >= 2:
        return p, r2, r1
    if len(p) >= 2:
        # r1, r2 are parallel x-y edges: share r1 instead, p closes a long cycle
        return r1.reversed(), p.reversed(), r2
    raise CertificateError("both cycles have length two")


def _check_two_cycles(h: MultiGraph, tc: TwoCycles) -> None:
    p, r1, r2 = tc.shared, tc.c1_rest, tc.c2_rest
    for w in (p, r1, r2):
        if len(w) < 1:
            raise CertificateError("empty path in two-cycle witness")
        Trail(w.vertices, w.edges, h)
    if not (r1.start == r2.start == p.end and r1.end == r2.end == p.start):
        raise CertificateError("two-cycle witness paths do not close up")
    if set(p.edges) & set(r1.edges) or set(p.edges) & set(r2.edges) or set(r1.edges) & set(r2.edges):
        raise CertificateError("cycles share edges outside the common path")
    for r in (r1, r2):
        cyc = p.vertices + r.vertices[1:-1]
        if len(set(cyc)) != len(cyc):
            raise CertificateError("witness is not a pair of cycles")


def k4_certificates_from_cycles(h: MultiGraph, tc: TwoCycles) -> tuple[SedSystem, MinorCertificate]:
    """K4 immersion and K4 minor certificates for L(h) from two cycles sharing a path.

    With the common path P running from x to y, e is P's first edge, e1 and
    e2 the edges of C1 and C2 entering x, and f1 the edge of C1 leaving y.
    """
    _check_two_cycles(h, tc)
    p, r1, r2 = _normalize(tc)
    x = p.start
    e, e1, e2, f1 = p.edges[0], r1.edges[-1], r2.edges[-1], r1.edges[0]
    a1, a2, w = r1.vertices[-2], r2.vertices[-2], p.vertices[1]
    f1_far = r1.vertices[1]
    r1f, r2f = r1.reversed(), r2.reversed()
    paths = {
        pair_key(e, e1): Trail((a1, x, w), (e1, e), h),
        pair_key(e, e2): Trail((a2, x, w), (e2, e), h),
        pair_key(e1, e2): Trail((a1, x, a2), (e1, e2), h),
        pair_key(e, f1): Trail(p.vertices + (f1_far,), p.edges + (f1,), h),
        pair_key(e1, f1): Trail(r1f.vertices, r1f.edges, h),
        pair_key(e2, f1): Trail(r2f.vertices + (f1_far,), r2f.edges + (f1,), h),
    }
    imm = SedSystem(h, (e, e1, e2, f1), paths)
    chk = verify_certificate(imm)
    if not chk:
        raise CertificateError(f"two-cycle immersion failed ({chk.clause}: {chk.detail})")

    # fourth part: the piece of E(h) - {e, e1, e2} that contains f1
    removed = {e, e1, e2}
    rest = {f1}
    stack = [f1]
    while stack:
        g = stack.pop()
        for v in h.endpoints(g):
            for k in h.incident(v):
                if k not in removed and k not in rest:
                    rest.add(k)
                    stack.append(k)
    minor = MinorCertificate(h, "edge-systems", ((e,), (e1,), (e2,), tuple(sorted(rest))))
    chk = validate_minor(minor)
    if not chk:
        raise CertificateError(f"two-cycle minor failed ({chk.clause}: {chk.detail})")
    return imm, minor
