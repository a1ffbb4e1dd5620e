"""Report assembly and deterministic serialization."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

from .combinatorics import ScreenVerdict, euler_counts
from .errors import TilerScopeError, ValidationError
from .geometry import OnEdge, Plane, SectionPolygon, validate_polyhedron
from .meshio import dump_mesh
from .search import SearchParams, UniversalVerdict, Witness, verify_universal
from .tiling import polygon_metrics

SIGNIFICANT_DIGITS = 12


def _round(x: float) -> float:
    if not math.isfinite(x):
        return x
    y = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if y == 0 else y


def to_plain(obj):
    """Round floats, turn tuples into lists and numpy scalars into Python numbers."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "tolist"):
        return to_plain(obj.tolist())
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return _round(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass(frozen=True)
class ReportDocument:
    input: dict
    validation: dict
    parameters: dict
    screen: dict | None = None
    verdict: dict | None = None
    witness: dict | None = None
    coverage: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = {
            "input": self.input,
            "validation": self.validation,
            "parameters": self.parameters,
            "screen": self.screen,
            "verdict": self.verdict,
            "witness": self.witness,
            "coverage": self.coverage,
        }
        doc.update(self.extra)
        return to_plain(doc)


def input_digest(vertices, facets) -> dict:
    text = dump_mesh(vertices, facets)
    return {
        "vertices": len(vertices),
        "facets": len(facets),
        "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }


def params_echo(params: SearchParams) -> dict:
    tol = params.tolerance
    return {
        "budget": params.budget,
        "seed": params.seed,
        "epsilon_steps": list(params.epsilon_steps),
        "eps_geom": tol.eps_geom,
        "eps_len": tol.eps_len,
        "eps_angle": tol.eps_angle,
    }


def plane_dict(plane: Plane) -> dict:
    return {"normal": list(plane.normal), "offset": plane.offset}


def section_dict(section: SectionPolygon, tol) -> dict:
    incidences = [
        f"edge:{inc.edge}" if isinstance(inc, OnEdge) else f"vertex:{inc.vertex}"
        for inc in section.incidences
    ]
    out = {
        "n_vertices": section.n_vertices,
        "vertices": section.vertices.tolist(),
        "incidences": incidences,
        "area": abs(section.area),
    }
    try:
        m = polygon_metrics(section, tol)
        out["edge_lengths"] = list(m.edge_lengths)
        out["angles"] = list(m.angles)
    except TilerScopeError as exc:
        out["metrics_error"] = str(exc)
    return out


def witness_dict(witness: Witness, tol) -> dict:
    return {
        "plane": plane_dict(witness.plane),
        "section": section_dict(witness.section, tol),
        "failure": witness.failure.value,
        "tiler_verdict": witness.verdict.label(),
        "sampler": witness.sampler,
        "detail": witness.detail,
    }


def screen_dict(screen: ScreenVerdict) -> dict:
    out = {
        "passed": screen.passed,
        "shape": screen.shape.value if screen.shape else None,
        "failure": screen.failure.value if screen.failure else None,
        "label": screen.label(),
    }
    if screen.facet is not None:
        out["facet"] = screen.facet
    if screen.valence_set is not None:
        out["valence_set"] = list(screen.valence_set)
    return out


def verdict_dict(verdict: UniversalVerdict) -> dict:
    out = {
        "status": verdict.status.value,
        "certificate": verdict.certificate.value if verdict.certificate else None,
        "combinatorial_reason": verdict.combinatorial_reason.value if verdict.combinatorial_reason else None,
    }
    if verdict.parallel_facets is not None:
        out["parallel_facets"] = list(verdict.parallel_facets)
    return out


def build_report(vertices, facets, params: SearchParams) -> tuple[ReportDocument, UniversalVerdict | None]:
    """Validate, screen and verify; validation failures end up in the report."""
    digest = input_digest(vertices, facets)
    echo = params_echo(params)
    try:
        P = validate_polyhedron(vertices, facets, params.tolerance)
    except (ValidationError, IndexError) as exc:
        validation = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
        return ReportDocument(digest, validation, echo), None

    profile = euler_counts(P)
    verdict = verify_universal(P, params)
    report = ReportDocument(
        input=digest,
        validation={"ok": True, "v": profile.v, "e": profile.e, "f": profile.f},
        parameters=echo,
        screen=screen_dict(verdict.screen),
        verdict=verdict_dict(verdict),
        witness=witness_dict(verdict.witness, params.tolerance) if verdict.witness else None,
        coverage=verdict.coverage.to_dict() if verdict.coverage else None,
    )
    return report, verdict


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for key in sorted(obj):
            _flatten(f"{prefix}.{key}" if prefix else key, obj[key], out)
    else:
        out.append(f"{prefix} = {json.dumps(obj, sort_keys=True)}")


def emit_report(report, fmt: str = "json") -> bytes:
    """Serialize deterministically: sorted keys, floats at 12 significant digits."""
    doc = report.to_dict() if isinstance(report, ReportDocument) else to_plain(report)
    if fmt == "json":
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        lines: list[str] = []
        _flatten("", doc, lines)
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def plane_from_report(doc: dict) -> Plane:
    """The witness plane stored in a parsed JSON report."""
    plane = doc["witness"]["plane"]
    a, b, c = plane["normal"]
    return Plane.from_coefficients(a, b, c, plane["offset"])
