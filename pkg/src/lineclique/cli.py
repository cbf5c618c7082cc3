"""Command-line front end.

Every command prints one JSON report on stdout (``export-dot`` prints DOT).
Exit status: 0 definitive answer, 1 input error or failed verification,
2 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .families import gen_figure2, gen_figure3, gen_figure4
from .graph import GraphError, MultiGraph, line_graph, multiply_edges
from .k4 import decide_k4
from .lifting import lift_immersion, tightness_witness
from .paths import CertificateError, SedSystem, verify_certificate
from .search import (
    BUDGET_ENV,
    Answer,
    SearchBudget,
    audit_conjecture,
    chromatic_index,
    find_sed_system,
    has_clique_immersion,
    has_clique_minor,
    minor_via_subgraph_system,
)

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    answer: Optional[str] = None
    certificate_path: Optional[str] = None
    budget: Optional[dict] = None
    nodes: Optional[int] = None
    wall_time: float = 0.0
    result: dict = field(default_factory=dict)

    def to_json(self) -> str:
        obj = {k: v for k, v in self.__dict__.items() if v is not None}
        return json.dumps(obj, sort_keys=True)


def _read_source(src: str, report: RunReport, name: str) -> tuple[object, Path]:
    try:
        data = sys.stdin.read() if src == "-" else Path(src).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc}") from exc
    report.inputs[name] = hashlib.sha256(data.encode()).hexdigest()
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {src}: {exc}") from exc
    base = Path.cwd() if src == "-" else Path(src).resolve().parent
    return obj, base


def _graph_from_obj(obj: object) -> MultiGraph:
    # accept a bare graph or any report that carries one under "graph"
    if isinstance(obj, dict) and "vertices" not in obj and isinstance(obj.get("result"), dict):
        obj = obj["result"].get("graph", obj)
    if isinstance(obj, dict) and "graph" in obj:
        obj = obj["graph"]
    if not isinstance(obj, dict):
        raise InputError("expected a graph JSON object")
    try:
        return MultiGraph.from_json_obj(obj)
    except GraphError as exc:
        raise InputError(str(exc)) from exc


def read_graph(src: str, report: RunReport) -> MultiGraph:
    obj, _ = _read_source(src, report, "graph")
    return _graph_from_obj(obj)


def read_certificate(src: str, report: RunReport) -> SedSystem:
    obj, base = _read_source(src, report, "certificate")
    if isinstance(obj, dict) and "host" not in obj and isinstance(obj.get("result"), dict):
        obj = obj["result"].get("certificate", obj)
    if not isinstance(obj, dict) or "host" not in obj:
        raise InputError("certificate JSON needs a 'host' entry")
    host_ref = obj["host"]
    if isinstance(host_ref, str):
        path = (base / host_ref) if not os.path.isabs(host_ref) else Path(host_ref)
        host_obj, _ = _read_source(str(path), report, "host")
        host = _graph_from_obj(host_obj)
    else:
        host = _graph_from_obj(host_ref)
    try:
        return SedSystem.from_json_obj(obj, host=host)
    except (CertificateError, GraphError, ValueError) as exc:
        raise InputError(f"invalid certificate: {exc}") from exc


def _budget(args) -> SearchBudget:
    nodes = args.budget_nodes
    if nodes is None:
        nodes = SearchBudget.default().nodes
    try:
        return SearchBudget(nodes, args.budget_seconds)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _write_certificate(obj: dict, args, report: RunReport) -> str:
    if args.cert_out:
        path = Path(args.cert_out)
    else:
        digest = hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:12]
        path = Path(args.out_dir) / f"{args.command}-{digest}.cert.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")
    report.certificate_path = str(path)
    return str(path)


def _exit_for(answer: Answer) -> int:
    return EXIT_UNKNOWN if answer is Answer.UNKNOWN else EXIT_OK


# ------------------------------------------------------------------ commands


def cmd_gen(args, report: RunReport) -> int:
    if args.family == "figure3":
        g = gen_figure3()
    else:
        t = args.t
        try:
            g = gen_figure2(t) if args.family == "figure2" else gen_figure4(t)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    report.result = {"graph": g.to_json_obj()}
    return EXIT_OK


def cmd_linegraph(args, report: RunReport) -> int:
    h = read_graph(args.graph, report)
    lg, mapping = line_graph(h)
    report.result = {"graph": lg.to_json_obj(), "mapping": list(mapping)}
    return EXIT_OK


def cmd_multiply(args, report: RunReport) -> int:
    h = read_graph(args.graph, report)
    try:
        mh, naming = multiply_edges(h, args.m)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    report.result = {
        "graph": mh.to_json_obj(),
        "copies": [[k.base, k.level, v] for k, v in sorted(naming.items(), key=lambda kv: kv[1])],
    }
    return EXIT_OK


def cmd_check(args, report: RunReport) -> int:
    g = read_graph(args.graph, report)
    budget = _budget(args)
    report.budget = {"nodes": budget.nodes, "seconds": budget.seconds}
    if args.t < 0:
        raise InputError("--t must be non-negative")
    if args.kind == "immersion":
        if args.via_root:
            dec = find_sed_system(g, args.t, budget)
        else:
            target = line_graph(g)[0] if args.on_line_graph else g
            dec = has_clique_immersion(target, args.t, budget)
    else:
        if args.via_root:
            dec = minor_via_subgraph_system(g, args.t, budget)
        else:
            target = line_graph(g)[0] if args.on_line_graph else g
            dec = has_clique_minor(target, args.t, budget)
    report.answer = dec.answer.value
    report.nodes = dec.nodes
    if dec.certificate is not None:
        _write_certificate(dec.certificate.to_json_obj(), args, report)
    return _exit_for(dec.answer)


def cmd_decide_k4(args, report: RunReport) -> int:
    h = read_graph(args.graph, report)
    verdict = decide_k4(h)
    report.answer = "yes" if verdict.answer else "no"
    out = verdict.to_json_obj()
    report.result = {"reason": verdict.reason, "witness": out["witness"]}
    if verdict.answer:
        _write_certificate({"immersion": out["immersion"], "minor": out["minor"]}, args, report)
    return EXIT_OK


def cmd_lift(args, report: RunReport) -> int:
    cert = read_certificate(args.certificate, report)
    try:
        lifted = lift_immersion(cert, args.m)
    except (CertificateError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    report.answer = "yes"
    report.result = {"terminals": lifted.t, "trails": len(lifted.paths)}
    _write_certificate(lifted.to_json_obj(), args, report)
    return EXIT_OK


def cmd_tightness(args, report: RunReport) -> int:
    if not 1 <= args.m <= 3:
        raise InputError("--m must be in 1..3")
    rep = tightness_witness(args.m)
    report.answer = "yes" if rep.ok else "no"
    report.result = rep.to_json_obj()
    return EXIT_OK if rep.ok else EXIT_INPUT


def cmd_verify(args, report: RunReport) -> int:
    cert = read_certificate(args.certificate, report)
    chk = verify_certificate(cert)
    report.answer = "yes" if chk else "no"
    report.result = {"ok": chk.ok, "clause": chk.clause, "detail": chk.detail}
    if not chk:
        print(f"verification failed: {chk.clause}: {chk.detail}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_chi_prime(args, report: RunReport) -> int:
    h = read_graph(args.graph, report)
    try:
        chi = chromatic_index(h, max_edges=args.max_edges)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report.answer = str(chi)
    report.result = {"chi_prime": chi, "max_degree": h.max_degree}
    return EXIT_OK


def cmd_audit(args, report: RunReport) -> int:
    h = read_graph(args.graph, report)
    budget = _budget(args)
    report.budget = {"nodes": budget.nodes, "seconds": budget.seconds}
    try:
        rep = audit_conjecture(h, budget)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report.answer = rep.status
    report.nodes = rep.nodes
    report.result = {"chi_prime": rep.chi_prime, "t": rep.t, "notes": rep.notes}
    if rep.certificate is not None:
        _write_certificate(rep.certificate.to_json_obj(), args, report)
    if rep.status == "fail":
        print("!!! " + "; ".join(rep.notes), file=sys.stderr)
    return EXIT_UNKNOWN if rep.status == "unknown" else EXIT_OK


def cmd_export_dot(args, report: RunReport) -> int:
    g = read_graph(args.graph, report)
    report.result = {"dot": g.to_dot()}
    return EXIT_OK


# -------------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=None, help=f"search node limit (env {BUDGET_ENV})")
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--cert-out", default=None, help="certificate output file")
    common.add_argument("--out-dir", default=".", help="directory for certificate files")

    p = _Parser(prog="lineclique", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common])
    g.add_argument("family", choices=["figure2", "figure3", "figure4"])
    g.add_argument("--t", type=int, default=5)
    g.set_defaults(func=cmd_gen)

    for name, func in (("linegraph", cmd_linegraph), ("export-dot", cmd_export_dot), ("decide-k4", cmd_decide_k4)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("graph", nargs="?", default="-")
        s.set_defaults(func=func)

    s = sub.add_parser("multiply", parents=[common])
    s.add_argument("graph", nargs="?", default="-")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_multiply)

    s = sub.add_parser("check", parents=[common])
    s.add_argument("kind", choices=["immersion", "minor"])
    s.add_argument("graph", nargs="?", default="-")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--on-line-graph", action="store_true", help="decide for L(graph)")
    s.add_argument("--via-root", action="store_true", help="search the root graph for L(graph)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("lift", parents=[common])
    s.add_argument("certificate", nargs="?", default="-")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("tightness", parents=[common])
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_tightness)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("certificate", nargs="?", default="-")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("chi-prime", parents=[common])
    s.add_argument("graph", nargs="?", default="-")
    s.add_argument("--max-edges", type=int, default=20)
    s.set_defaults(func=cmd_chi_prime)

    s = sub.add_parser("audit", parents=[common])
    s.add_argument("graph", nargs="?", default="-")
    s.set_defaults(func=cmd_audit)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = RunReport(command=argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "on_line_graph", False) and getattr(args, "via_root", False):
            raise InputError("--on-line-graph and --via-root are exclusive")
        code = args.func(args, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.result = {"error": str(exc)}
        code = EXIT_INPUT
    report.wall_time = round(time.perf_counter() - start, 6)
    if code == EXIT_OK and report.result.get("dot") is not None:
        sys.stdout.write(report.result["dot"])
    else:
        print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
