"""
Reading and writing OFF-style polyhedron files.

    OFF
    v f e
    x y z          (v lines)
    k i1 ... ik    (f lines)

Blank lines and ``#`` comments are ignored. The edge count ``e`` is read
but not checked, since many writers leave it at 0.
"""

from __future__ import annotations

import io
import os
from typing import TextIO, Union

import numpy as np

from .errors import MeshIndexError, ParseError
from .geometry import orient_facets

PathOrStream = Union[str, os.PathLike, TextIO]


def _tokens(stream: TextIO):
    """Yield (line_number, [(column, token), ...]) for non-empty lines."""
    for number, raw in enumerate(stream, start=1):
        text = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in text.split():
            col = text.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield number, toks


def _number(kind, line, col, token):
    try:
        return kind(token)
    except ValueError:
        raise ParseError(f"expected {kind.__name__}, got {token!r}", line, col) from None


def parse_mesh(source: PathOrStream) -> tuple[np.ndarray, tuple[tuple[int, ...], ...]]:
    """
    Read vertices and facet cycles from an OFF-style file or stream.

    Facet cycles are reoriented so their normals point away from the
    vertex centroid. Nothing else is validated.

    Raises
    ------
    ParseError
      Bad header, malformed numbers or a count mismatch.
    MeshIndexError
      A facet refers to a vertex that does not exist.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_mesh(fh)

    lines = _tokens(source)
    try:
        line, toks = next(lines)
    except StopIteration:
        raise ParseError("empty file", 1) from None
    if toks[0][1] != "OFF":
        raise ParseError(f"expected header 'OFF', got {toks[0][1]!r}", line, toks[0][0])
    toks = toks[1:]
    if not toks:
        try:
            line, toks = next(lines)
        except StopIteration:
            raise ParseError("missing 'v f e' counts", line + 1) from None
    if len(toks) != 3:
        raise ParseError(f"expected 3 counts 'v f e', got {len(toks)} fields", line, toks[0][0])
    nv, nf, _ = (_number(int, line, c, t) for c, t in toks)
    if nv < 0 or nf < 0:
        raise ParseError("counts must be non-negative", line, toks[0][0])

    vertices = []
    facets = []
    for line, toks in lines:
        if len(vertices) < nv:
            if len(toks) != 3:
                raise ParseError(f"vertex line needs 3 coordinates, got {len(toks)}", line, toks[0][0])
            vertices.append([_number(float, line, c, t) for c, t in toks])
        elif len(facets) < nf:
            k = _number(int, line, *toks[0])
            if k != len(toks) - 1:
                raise ParseError(f"facet declares {k} indices but lists {len(toks) - 1}", line, toks[0][0])
            cycle = []
            for c, t in toks[1:]:
                i = _number(int, line, c, t)
                if not 0 <= i < nv:
                    raise MeshIndexError(f"vertex index {i} out of range 0..{nv - 1}", line, c)
                cycle.append(i)
            facets.append(tuple(cycle))
        else:
            raise ParseError(f"unexpected data after {nv} vertices and {nf} facets", line, toks[0][0])

    if len(vertices) < nv or len(facets) < nf:
        raise ParseError(
            f"header promises {nv} vertices and {nf} facets, file has {len(vertices)} and {len(facets)}",
            line + 1,
        )
    verts = np.array(vertices, dtype=float).reshape(-1, 3)
    return verts, orient_facets(verts, facets) if len(verts) else tuple(facets)


def dump_mesh(vertices, facets) -> str:
    """Canonical OFF text; floats use ``repr`` so parsing reproduces them exactly."""
    verts = np.asarray(vertices, dtype=float)
    edges = {(min(a, b), max(a, b)) for c in facets for a, b in zip(c, tuple(c[1:]) + tuple(c[:1]))}
    out = io.StringIO()
    out.write("OFF\n")
    out.write(f"{len(verts)} {len(facets)} {len(edges)}\n")
    for x, y, z in verts:
        out.write(f"{float(x)!r} {float(y)!r} {float(z)!r}\n")
    for cycle in facets:
        out.write(" ".join(str(int(i)) for i in (len(cycle), *cycle)) + "\n")
    return out.getvalue()
