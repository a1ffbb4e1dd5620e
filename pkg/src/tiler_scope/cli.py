"""
Command-line entry point ``tiler-scope``.

    tiler-scope verify <mesh> [--budget N] [--seed S] [--eps-geom X]
                              [--eps-len X] [--eps-angle X]
                              [--format json|text] [--svg-out PATH]
    tiler-scope screen <mesh>
    tiler-scope section <mesh> --plane a,b,c,d

Exit codes: 0 certified (or screen pass / section computed), 1 not
universal (or screen failure), 2 unresolved, 64 input error.
"""

from __future__ import annotations

import argparse
import sys

from .combinatorics import combinatorial_screen, euler_counts
from .errors import TilerScopeError, ValidationError
from .geometry import Plane, SectionPolygon, ToleranceConfig, cross_section, is_proper, validate_polyhedron
from .meshio import parse_mesh
from .report import build_report, emit_report, screen_dict, to_plain
from .search import SearchParams, UniversalStatus
from .svg import render_witness_svg
from .tiling import polygon_metrics, tiler_verdict

EXIT_CERTIFIED = 0
EXIT_NOT_UNIVERSAL = 1
EXIT_UNRESOLVED = 2
EXIT_INPUT_ERROR = 64

_STATUS_EXIT = {
    UniversalStatus.CERTIFIED_UNIVERSAL: EXIT_CERTIFIED,
    UniversalStatus.NOT_UNIVERSAL: EXIT_NOT_UNIVERSAL,
    UniversalStatus.UNRESOLVED: EXIT_UNRESOLVED,
}


def _tolerance(args) -> ToleranceConfig:
    return ToleranceConfig(args.eps_geom, args.eps_len, args.eps_angle)


def _write(data: bytes, out) -> None:
    out = out or sys.stdout
    buffer = getattr(out, "buffer", None)
    if buffer is not None:
        buffer.write(data)
        buffer.flush()
    else:
        out.write(data.decode("utf-8"))


def _cmd_verify(args, out) -> int:
    vertices, facets = parse_mesh(args.mesh)
    params = SearchParams(budget=args.budget, seed=args.seed, tolerance=_tolerance(args))
    report, verdict = build_report(vertices, facets, params)
    _write(emit_report(report, args.format), out)
    if verdict is None:
        return EXIT_INPUT_ERROR
    if args.svg_out and verdict.witness is not None:
        with open(args.svg_out, "wb") as fh:
            fh.write(render_witness_svg(verdict.witness))
    return _STATUS_EXIT[verdict.status]


def _cmd_screen(args, out) -> int:
    vertices, facets = parse_mesh(args.mesh)
    P = validate_polyhedron(vertices, facets, _tolerance(args))
    screen = combinatorial_screen(P)
    profile = euler_counts(P)
    doc = {
        "screen": screen_dict(screen),
        "profile": {**vars(profile), "identities": profile.identities()},
    }
    _write(emit_report(to_plain(doc), args.format), out)
    return EXIT_CERTIFIED if screen.passed else EXIT_NOT_UNIVERSAL


def _parse_plane(text: str) -> Plane:
    try:
        a, b, c, d = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b,c,d for a*x+b*y+c*z=d, got {text!r}") from None
    try:
        return Plane.from_coefficients(a, b, c, d)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cmd_section(args, out) -> int:
    vertices, facets = parse_mesh(args.mesh)
    tol = _tolerance(args)
    P = validate_polyhedron(vertices, facets, tol)
    section = cross_section(P, args.plane)
    doc: dict = {"plane": {"normal": list(args.plane.normal), "offset": args.plane.offset}}
    if isinstance(section, SectionPolygon):
        m = polygon_metrics(section, tol)
        doc["section"] = {
            "kind": "polygon",
            "n_vertices": section.n_vertices,
            "vertices": section.vertices.tolist(),
            "proper": is_proper(section),
            "edge_lengths": list(m.edge_lengths),
            "angles": list(m.angles),
            "tiler_verdict": tiler_verdict(section, tol).label(),
        }
    else:
        doc["section"] = {"kind": type(section).__name__.lower()}
    _write(emit_report(to_plain(doc), args.format), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiler-scope",
                                     description="Check convex polyhedra for the universal-tiler property.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("mesh", help="OFF-style polyhedron file")
    common.add_argument("--eps-geom", type=float, default=1e-9)
    common.add_argument("--eps-len", type=float, default=1e-7)
    common.add_argument("--eps-angle", type=float, default=1e-7)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="full verdict with witness search")
    verify.add_argument("--budget", type=int, default=SearchParams.budget)
    verify.add_argument("--seed", type=int, default=SearchParams.seed)
    verify.add_argument("--svg-out", help="write the witness section as SVG")
    verify.set_defaults(run=_cmd_verify)

    screen = sub.add_parser("screen", parents=[common], help="combinatorial screen only")
    screen.set_defaults(run=_cmd_screen)

    section = sub.add_parser("section", parents=[common], help="one cross-section with metrics")
    section.add_argument("--plane", type=_parse_plane, required=True, metavar="a,b,c,d")
    section.set_defaults(run=_cmd_section)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else 0
    try:
        return args.run(args, out)
    except (TilerScopeError, ValidationError, OSError, ValueError, IndexError) as exc:
        print(f"tiler-scope: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
