"""Labeled rational simple polytopes.

A labeled polytope is a full-dimensional compact convex polytope cut out by
halfspaces <beta, y_i> >= eta_i with primitive integer inward normals y_i,
rational offsets eta_i, and a positive integer label m_i attached to each
facet.  "Simple" means exactly n facets meet at every vertex.

:func:`validate` is the only constructor that should be used: it checks all
of the above exactly (no floating point), enumerates the vertices, and builds
the face lattice.  Faces are identified by the sorted tuple of facet indices
that are tight on them; the facet order of the input is preserved as the
canonical indexing everywhere.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .lattice import (
    dot,
    format_rational,
    kernel_basis,
    parse_rational,
    rational_rank,
    solve_rational,
    vec_neg,
    vec_sub,
)


class ValidationError(ValueError):
    """The input fails to be a labeled rational simple polytope."""


class FormatError(ValueError):
    """The input file or object does not match the polytope JSON schema."""


@dataclass(frozen=True)
class HalfSpace:
    """One labeled facet inequality <beta, normal> >= offset."""

    normal: tuple
    offset: Fraction
    label: int


@dataclass(frozen=True)
class Face:
    """A face, recorded by the facets tight on it and the vertices in it.

    ``active`` is the sorted tuple of facet indices; its length is the
    codimension.  The empty tuple is the polytope itself.
    """

    active: tuple
    vertices: tuple

    @property
    def codim(self) -> int:
        return len(self.active)


@dataclass(frozen=True)
class LabeledPolytope:
    dim: int
    halfspaces: tuple
    vertices: tuple
    faces: tuple

    def vertex_active(self, vi: int) -> tuple:
        """Indices of the facets tight at vertex ``vi``."""
        v = self.vertices[vi]
        return tuple(i for i, h in enumerate(self.halfspaces)
                     if dot(v, h.normal) == h.offset)

    def face_by_active(self, active) -> Face:
        key = tuple(sorted(active))
        for f in self.faces:
            if f.active == key:
                return f
        raise KeyError(f"no face with active set {key}")

    def proper_faces(self) -> tuple:
        return tuple(f for f in self.faces if f.codim > 0)

    def vertex_faces(self) -> tuple:
        return tuple(f for f in self.faces if f.codim == self.dim)

    def contains(self, point) -> bool:
        return all(dot(point, h.normal) >= h.offset for h in self.halfspaces)

    def interior_point(self) -> tuple:
        """Barycenter of the vertices; interior since the polytope is full-dim."""
        n = len(self.vertices)
        return tuple(sum(v[j] for v in self.vertices) / Fraction(n)
                     for j in range(self.dim))

    def vertex_index(self, point) -> int:
        target = tuple(Fraction(x) for x in point)
        for i, v in enumerate(self.vertices):
            if v == target:
                return i
        raise KeyError(f"no vertex at {point}")


def format_point(point) -> str:
    return "(" + ", ".join(format_rational(x) for x in point) + ")"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(dim, halfspaces) -> LabeledPolytope:
    """Check the data and build a LabeledPolytope, or raise ValidationError.

    ``halfspaces`` is an iterable of HalfSpace or (normal, offset, label)
    triples.  Non-primitive normals are divided down (with the offset scaled
    to keep the same halfspace) and a warning is issued.  Checks, in order:
    labels >= 1, nonzero integer normals, no duplicate normals, boundedness,
    nonempty full-dimensional, simple at every vertex, no redundant facet.
    """
    dim = int(dim)
    if dim < 1:
        raise ValidationError("dimension must be a positive integer")

    hs = []
    for i, raw in enumerate(halfspaces):
        if isinstance(raw, HalfSpace):
            normal, offset, label = raw.normal, raw.offset, raw.label
        else:
            normal, offset, label = raw
        if not isinstance(label, int) or isinstance(label, bool):
            raise ValidationError(f"label must be an integer on facet {i}")
        if label < 1:
            raise ValidationError(f"label < 1 on facet {i}")
        normal = tuple(int(e) for e in normal)
        if len(normal) != dim:
            raise ValidationError(f"normal of facet {i} has length {len(normal)}, expected {dim}")
        if not any(normal):
            raise ValidationError(f"zero normal on facet {i}")
        offset = Fraction(offset)
        g = math.gcd(*normal)
        if g > 1:
            warnings.warn(f"facet {i}: normal {normal} is not primitive, dividing by {g}")
            offset = offset / g
            normal = tuple(e // g for e in normal)
        hs.append(HalfSpace(normal, offset, label))

    n_facets = len(hs)
    seen = {}
    for i, h in enumerate(hs):
        if h.normal in seen:
            raise ValidationError(
                f"redundant halfspace {i}: same normal as facet {seen[h.normal]}")
        seen[h.normal] = i

    normals = tuple(h.normal for h in hs)
    if n_facets < dim + 1 or rational_rank(normals) < dim:
        raise ValidationError("unbounded")
    ray = _recession_direction(normals, dim)
    if ray is not None:
        raise ValidationError(f"unbounded in direction {ray}")

    vertices = set()
    for subset in combinations(range(n_facets), dim):
        rows = tuple(hs[i].normal for i in subset)
        rhs = tuple(hs[i].offset for i in subset)
        point = solve_rational(rows, rhs)
        if point is None:
            continue
        if all(dot(point, h.normal) >= h.offset for h in hs):
            vertices.add(point)
    if not vertices:
        raise ValidationError("not full-dimensional: the polytope is empty")
    vertices = tuple(sorted(vertices))
    if len(vertices) > 1:
        diffs = tuple(vec_sub(v, vertices[0]) for v in vertices[1:])
        if rational_rank(diffs) < dim:
            raise ValidationError("not full-dimensional")
    elif dim > 0:
        raise ValidationError("not full-dimensional")

    active_sets = []
    for v in vertices:
        act = tuple(i for i, h in enumerate(hs) if dot(v, h.normal) == h.offset)
        if len(act) != dim:
            raise ValidationError(f"not simple at vertex {format_point(v)}")
        active_sets.append(act)

    tight_somewhere = set().union(*active_sets)
    for i in range(n_facets):
        if i not in tight_somewhere:
            raise ValidationError(f"redundant halfspace {i}")

    face_map = {}
    for vi, act in enumerate(active_sets):
        for r in range(dim + 1):
            for sub in combinations(act, r):
                face_map.setdefault(sub, []).append(vi)
    faces = tuple(Face(active=key, vertices=tuple(vs))
                  for key, vs in sorted(face_map.items(), key=lambda kv: (len(kv[0]), kv[0])))

    return LabeledPolytope(dim=dim, halfspaces=tuple(hs), vertices=vertices, faces=faces)


def _recession_direction(normals, dim):
    """A nonzero integer direction d with <y_i, d> >= 0 for all i, if one exists.

    The recession cone of a polyhedron with inward normals y_i is
    {d : <y_i, d> >= 0}; it is nontrivial exactly when some extreme ray
    survives, and every extreme ray lies on dim-1 of the hyperplanes
    <y_i, .> = 0, so scanning (dim-1)-subsets finds one.
    """
    for subset in combinations(range(len(normals)), dim - 1):
        rows = tuple(normals[i] for i in subset)
        if rational_rank(rows) != dim - 1:
            continue
        kb = kernel_basis(rows, dim)
        if len(kb) != 1:
            continue
        d = kb[0]
        for cand in (d, vec_neg(d)):
            if all(dot(y, cand) >= 0 for y in normals):
                return cand
    return None


# ---------------------------------------------------------------------------
# derived geometry
# ---------------------------------------------------------------------------

def enumerate_vertices(p: LabeledPolytope) -> tuple:
    """Vertices in canonical (lexicographic) order, as Fraction tuples.

    The enumeration happens during :func:`validate`; this accessor names the
    operation.
    """
    return p.vertices


def face_lattice(p: LabeledPolytope) -> tuple:
    """All faces sorted by (codimension, tight facet set)."""
    return p.faces


def edge_directions(p: LabeledPolytope, vi: int) -> tuple:
    """Primitive edge directions leaving vertex ``vi``.

    Returns one (dropped_facet, direction) pair per facet through the vertex:
    dropping facet j and staying tight on the rest moves along the unique edge
    whose primitive integer direction d satisfies <y_j, d> > 0 (inward).
    Pairs are ordered by dropped facet index.
    """
    act = p.vertex_active(vi)
    out = []
    for j in act:
        rows = tuple(p.halfspaces[i].normal for i in act if i != j)
        kb = kernel_basis(rows, p.dim)
        if len(kb) != 1:
            raise RuntimeError(f"degenerate edge at vertex {vi} dropping facet {j}")
        d = kb[0]
        s = dot(p.halfspaces[j].normal, d)
        if s == 0:
            raise RuntimeError(f"edge direction orthogonal to dropped facet {j}")
        if s < 0:
            d = vec_neg(d)
        out.append((j, d))
    return tuple(out)


def edge_direction_map(p: LabeledPolytope, vi: int) -> dict:
    return dict(edge_directions(p, vi))


# ---------------------------------------------------------------------------
# isomorphism (translation preserving normals, offsets pattern, labels)
# ---------------------------------------------------------------------------

def isomorphism_report(p: LabeledPolytope, q: LabeledPolytope):
    """(translation, reason) if q = p + c facet-wise with equal labels.

    The translation is the unique candidate solving the offset equations on
    one vertex's normal basis; returns (None, reason) when the polytopes are
    not isomorphic.  Facets are matched by their primitive normal vector,
    which is well-defined because duplicate normals are rejected upstream.
    """
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    pmap = {h.normal: i for i, h in enumerate(p.halfspaces)}
    qmap = {h.normal: i for i, h in enumerate(q.halfspaces)}
    if set(pmap) != set(qmap):
        return None, "facet normal sets differ"
    act = p.vertex_active(0)
    rows = tuple(p.halfspaces[i].normal for i in act)
    rhs = tuple(q.halfspaces[qmap[p.halfspaces[i].normal]].offset - p.halfspaces[i].offset
                for i in act)
    c = solve_rational(rows, rhs)
    if c is None:
        raise RuntimeError("vertex normals failed to determine a translation")
    for i, h in enumerate(p.halfspaces):
        j = qmap[h.normal]
        if q.halfspaces[j].offset != h.offset + dot(c, h.normal):
            return None, "offsets do not differ by a translation"
    for i, h in enumerate(p.halfspaces):
        j = qmap[h.normal]
        if q.halfspaces[j].label != h.label:
            return None, f"labels differ on the facet with normal {h.normal}"
    return tuple(c), "translation"


def is_isomorphic(p: LabeledPolytope, q: LabeledPolytope) -> Optional[tuple]:
    """The translation carrying p onto q with matching labels, or None."""
    return isomorphism_report(p, q)[0]


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def polytope_from_json(obj) -> LabeledPolytope:
    """Build and validate a polytope from the JSON object format.

    Expected shape::

        {"dim": n,
         "halfspaces": [{"normal": [..ints..], "offset": "p/q", "label": m}, ...]}

    Offsets may be JSON integers or rational strings.  Schema problems raise
    FormatError; geometric problems raise ValidationError.
    """
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    try:
        dim = obj["dim"]
        raw_list = obj["halfspaces"]
    except KeyError as exc:
        raise FormatError(f"missing key {exc}") from exc
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise FormatError('"dim" must be an integer')
    if not isinstance(raw_list, list):
        raise FormatError('"halfspaces" must be a list')
    triples = []
    for i, entry in enumerate(raw_list):
        if not isinstance(entry, dict):
            raise FormatError(f"halfspace {i} must be an object")
        try:
            normal = entry["normal"]
            offset = entry["offset"]
            label = entry["label"]
        except KeyError as exc:
            raise FormatError(f"halfspace {i}: missing key {exc}") from exc
        if not isinstance(normal, list) or not all(
                isinstance(e, int) and not isinstance(e, bool) for e in normal):
            raise FormatError(f"halfspace {i}: normal must be a list of integers")
        if not isinstance(label, int) or isinstance(label, bool):
            raise FormatError(f"halfspace {i}: label must be an integer")
        try:
            offset = parse_rational(offset)
        except ValueError as exc:
            raise FormatError(f"halfspace {i}: bad offset: {exc}") from exc
        triples.append((tuple(normal), offset, label))
    return validate(dim, triples)


def polytope_to_json(p: LabeledPolytope) -> dict:
    return {
        "dim": p.dim,
        "halfspaces": [
            {"normal": list(h.normal),
             "offset": format_rational(h.offset),
             "label": h.label}
            for h in p.halfspaces
        ],
    }


def load_polytope(path) -> LabeledPolytope:
    """Read and validate a polytope JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
    return polytope_from_json(obj)
