"""Command-line interface.

Exit codes: 0 success/verified, 1 verification failure, 2 usage or parse
error. --json switches reports to machine-readable JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import msgio
from .angles import angle_fan, check_degree11_hub_angles
from .assemble import Placement, merge
from .flex import FlexOptions, FlexState, Monitor, steer_to_event, trace_to_csv
from .geometry import Embedding, Graph, ToleranceProfile
from .ingest import ingest_tikz
from .refine import RefineOptions, refine
from .render import RenderStyle, render_svg
from .rigidity import analyze, criticality_scan, pebble_game_2_3
from .symmetry import detect_symmetries
from .verify import verify_matchstick, verify_patch


def _load(args) -> tuple[Graph, Embedding, dict[str, int]]:
    if getattr(args, "msg", None):
        g, emb, names = msgio.read_msg(Path(args.msg).read_text())
        return g, emb, names
    if getattr(args, "tikz", None):
        fig = ingest_tikz(Path(args.tikz).read_text(), _tol(args))
        return fig.graph, fig.embedding, fig.names
    raise SystemExit2("one of --msg or --tikz is required")


def _tol(args) -> ToleranceProfile:
    kwargs = {}
    if getattr(args, "snap", None) is not None:
        kwargs["snap_tol"] = args.snap
    return ToleranceProfile(**kwargs)


def _profile(text: str) -> tuple[int, int]:
    try:
        m, n = (int(p) for p in text.split(","))
    except ValueError:
        raise SystemExit2(f"bad profile {text!r}, expected m,n")
    return m, n


def _monitor(text: str) -> Monitor:
    parts = text.split(",")
    if len(parts) != 3:
        raise SystemExit2(f"bad monitor {text!r}, expected a,b,target")
    return Monitor(int(parts[0]), int(parts[1]), float(parts[2]))


class SystemExit2(SystemExit):
    def __init__(self, message: str):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def cmd_ingest(args) -> int:
    fig = ingest_tikz(Path(args.tikz).read_text(), _tol(args))
    names = dict(fig.names)
    if args.out:
        Path(args.out).write_text(msgio.write_msg(fig.graph, fig.embedding, names))
    r = fig.report
    payload = {
        "n_segments": r.n_segments, "n_vertices": r.n_vertices, "n_edges": r.n_edges,
        "scale": r.scale, "max_snap_displacement": r.max_snap_displacement,
        "duplicate_segments_dropped": r.duplicate_segments_dropped,
        "segments_split": r.segments_split, "markers": fig.marker_ids, "names": names,
    }
    _emit(args, payload,
          f"{r.n_segments} segments -> {r.n_vertices} vertices, {r.n_edges} edges "
          f"(scale {r.scale:.6f}, {r.duplicate_segments_dropped} duplicates dropped, "
          f"{r.segments_split} segments split)")
    return 0


def cmd_verify(args) -> int:
    g, emb, _ = _load(args)
    m, n = _profile(args.profile)
    tol = _tol(args)
    if args.patch:
        report = verify_patch(g, emb, m, n, tol, eps=args.eps)
        human = (f"patch: unit={report.unit_ok} crossing={report.crossing_ok} "
                 f"interior={report.interior_degree_counts} boundary={report.boundary_count} "
                 f"overall={report.overall}")
    else:
        report = verify_matchstick(g, emb, m, n, tol, eps=args.eps)
        human = (f"unit={report.unit_ok} (max dev {report.max_abs_length_deviation:.3e}) "
                 f"crossing={report.crossing_ok} degrees={report.degrees_ok} "
                 f"connected={report.connected} separation={report.separation_ok} "
                 f"overall={report.overall}")
        if not report.crossing_ok:
            human += f"\nviolations: {report.violating_edge_pairs[:10]}"
    _emit(args, report.to_dict(), human)
    return 0 if report.overall else 1


def cmd_refine(args) -> int:
    g, emb, names = _load(args)
    opts = RefineOptions()
    if args.pair:
        a, b, target = args.pair.split(",")
        opts = RefineOptions(pair_targets=((int(a), int(b), float(target)),))
    emb2, rep = refine(g, emb, opts)
    if args.out:
        Path(args.out).write_text(msgio.write_msg(g, emb2, names))
    payload = {
        "converged": rep.converged, "iterations": rep.iterations,
        "final_max_abs_residual": rep.final_max_abs_residual,
        "displacement_max": rep.displacement_max,
    }
    _emit(args, payload,
          f"converged={rep.converged} iterations={rep.iterations} "
          f"residual={rep.final_max_abs_residual:.3e} displacement={rep.displacement_max:.3e}")
    return 0 if rep.converged else 1


def cmd_rigidity(args) -> int:
    g, emb, _ = _load(args)
    report = analyze(g, emb, _tol(args).rank_tau)
    payload = report.to_dict()
    human = (f"rank={report.rank} dof={report.internal_dof} {report.classification} "
             f"(gap {report.gap_ratio:.2e})")
    if args.pebble:
        pg = pebble_game_2_3(g)
        payload["generic_dof"] = pg.generic_dof
        human += f" generic_dof={pg.generic_dof}"
    if args.scan:
        scan = criticality_scan(g, emb, _tol(args).rank_tau)
        payload["redundancy"] = scan.redundancy
        payload["critical_edges"] = [list(e) for e in scan.critical_edges]
        human += f"\nredundancy={scan.redundancy} critical_edges={len(scan.critical_edges)}"
    _emit(args, payload, human)
    return 0


def cmd_flex(args) -> int:
    g, emb, _ = _load(args)
    emb, _rep = refine(g, emb)
    monitor = _monitor(args.monitor)
    event, trace = steer_to_event(g, FlexState.at(emb), monitor, FlexOptions())
    if args.trace_out:
        Path(args.trace_out).write_text(trace_to_csv(trace))
    if args.out:
        Path(args.out).write_text(msgio.write_msg(g, event.embedding, {}))
    value = event.embedding.pair_distance(monitor.a, monitor.b)
    res = float(np.max(np.abs(event.embedding.edge_lengths(g) - 1.0)))
    payload = {
        "monitor": value, "target": monitor.target, "error": abs(value - monitor.target),
        "steps": len(trace) - 1, "arclength": event.arclength, "max_length_deviation": res,
    }
    _emit(args, payload,
          f"event: dist({monitor.a},{monitor.b})={value:.12f} "
          f"(target {monitor.target}, error {abs(value - monitor.target):.2e}) "
          f"after {len(trace) - 1} steps, max |len-1| = {res:.2e}")
    return 0


def cmd_symmetry(args) -> int:
    g, emb, _ = _load(args)
    group = detect_symmetries(g, emb, args.tol)
    _emit(args, group.to_dict(),
          f"{group.classification}: rotation order {group.rotation_order}, "
          f"{group.mirror_count} mirror(s)")
    return 0


def cmd_angles(args) -> int:
    if args.published:
        rep = check_degree11_hub_angles()
        payload = {
            "count": rep.count, "total": rep.total,
            "deviation_from_360": rep.deviation_from_360,
            "min_value": rep.min_value, "max_value": rep.max_value,
            "all_in_range": rep.all_in_range,
        }
        _emit(args, payload,
              f"{rep.count} angles, total {rep.total!r} deg "
              f"(deviation {rep.deviation_from_360:.2e}), min {rep.min_value}")
        return 0
    g, emb, _ = _load(args)
    fan = angle_fan(g, emb, args.vertex)
    payload = {"center": fan.center, "neighbors": fan.neighbor_order, "angles": fan.angles,
               "total": fan.total}
    _emit(args, payload,
          f"vertex {fan.center}: " + ", ".join(f"{a:.6f}" for a in fan.angles)
          + f" (sum {fan.total:.9f})")
    return 0


def cmd_assemble(args) -> int:
    placements = []
    names: dict[str, int] = {}
    for path in args.msg:
        g, emb, _ = msgio.read_msg(Path(path).read_text())
        placements.append(Placement(g, emb))
    g, emb, _maps = merge(placements, snap_tol=args.snap)
    rep = None
    if not args.no_refine:
        emb, rep = refine(g, emb)
    if args.out:
        Path(args.out).write_text(msgio.write_msg(g, emb, names))
    payload = {"n_vertices": g.n_vertices, "n_edges": g.n_edges,
               "refined": rep.converged if rep else False}
    _emit(args, payload,
          f"merged {len(placements)} blocks -> {g.n_vertices} vertices, {g.n_edges} edges"
          + (f", refined (residual {rep.final_max_abs_residual:.2e})" if rep else ""))
    return 0


def cmd_render(args) -> int:
    g, emb, names = _load(args)
    style = RenderStyle(vertex_radius=0.04 if args.vertices else 0.0)
    svg = render_svg(g, emb, style, highlight=sorted(names.values()))
    if args.out:
        Path(args.out).write_text(svg)
    else:
        print(svg)
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    serve(port=args.port, state_dir=args.state_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchsticks",
                                description="matchstick graph toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, msg=True, tikz=True):
        if msg:
            sp.add_argument("--msg", help="MSG file")
        if tikz:
            sp.add_argument("--tikz", help="TikZ figure file")
        sp.add_argument("--eps", type=float, help="unit-length slack override")
        sp.add_argument("--snap", type=float, help="snap tolerance override (figure units)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("ingest", help="parse a TikZ figure into MSG")
    sp.add_argument("--tikz", required=True)
    sp.add_argument("--out", help="write MSG here")
    sp.add_argument("--eps", type=float)
    sp.add_argument("--snap", type=float)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_ingest)

    sp = sub.add_parser("verify", help="check the matchstick predicates")
    common(sp)
    sp.add_argument("--profile", required=True, help="m,n degree profile")
    sp.add_argument("--patch", action="store_true", help="boundary-tolerant patch mode")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("refine", help="drive edge lengths to 1")
    common(sp)
    sp.add_argument("--out", help="write refined MSG here")
    sp.add_argument("--pair", help="extra pair constraint a,b,target")
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("rigidity", help="numerical rank / dof analysis")
    common(sp)
    sp.add_argument("--scan", action="store_true", help="per-edge criticality scan")
    sp.add_argument("--pebble", action="store_true", help="add generic pebble-game dof")
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("flex", help="steer a flexible graph to a pair-distance event")
    common(sp)
    sp.add_argument("--monitor", required=True, help="a,b,target")
    sp.add_argument("--out", help="write event MSG here")
    sp.add_argument("--trace-out", help="write trace CSV here")
    sp.set_defaults(func=cmd_flex)

    sp = sub.add_parser("symmetry", help="detect the isometry group")
    common(sp)
    sp.add_argument("--tol", type=float, default=1e-6, help="matching radius")
    sp.set_defaults(func=cmd_symmetry)

    sp = sub.add_parser("angles", help="angle fans and the reference angle list")
    common(sp)
    sp.add_argument("--vertex", type=int, help="fan center vertex id")
    sp.add_argument("--published", action="store_true",
                    help="report on the built-in degree-11 hub angle list")
    sp.set_defaults(func=cmd_angles)

    sp = sub.add_parser("assemble", help="merge placed blocks and refine")
    sp.add_argument("--msg", action="append", required=True, help="block MSG (repeatable)")
    sp.add_argument("--snap", type=float, default=1e-3)
    sp.add_argument("--no-refine", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_assemble)

    sp = sub.add_parser("render", help="render SVG")
    common(sp)
    sp.add_argument("--out")
    sp.add_argument("--vertices", action="store_true", help="draw vertex dots")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("serve", help="HTTP API for the flex studio")
    sp.add_argument("--port", type=int, default=8780)
    sp.add_argument("--state-dir", default="./sessions")
    sp.set_defaults(func=cmd_serve)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
