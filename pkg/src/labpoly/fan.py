"""Fans of labeled polytopes.

Each face contributes the cone spanned by the primitive inward normals of the
facets tight on it; the collection over all faces is the fan.  Labels and
offsets are forgotten, so distinct labeled polytopes can share a fan: fan
equality is exactly the complex-structure comparison used by the ``compare``
command.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import dot, rational_rank
from .polytope import Face, LabeledPolytope


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone recorded by its primitive generators.

    Generators are stored sorted so two descriptions of the same simplicial
    cone compare equal.  The zero cone has no generators.
    """

    generators: tuple

    @property
    def dim(self) -> int:
        return rational_rank(self.generators) if self.generators else 0


def make_cone(generators) -> Cone:
    return Cone(generators=tuple(sorted(set(tuple(g) for g in generators))))


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    cones: frozenset

    def sorted_cones(self) -> tuple:
        return tuple(sorted(self.cones, key=lambda c: (len(c.generators), c.generators)))

    def rays(self) -> tuple:
        return tuple(sorted({g for c in self.cones for g in c.generators}))


def dual_cone(p: LabeledPolytope, face: Face) -> Cone:
    """Cone of the face: nonnegative span of its tight facet normals.

    Equivalently (and this is what makes it the right dual object) it is the
    set of linear functionals minimized over the polytope exactly on the face;
    a debug assertion checks that characterization on the vertices.
    """
    gens = tuple(p.halfspaces[i].normal for i in face.active)
    cone = make_cone(gens)
    assert cone_vertex_duality_holds(p, face, cone), \
        f"cone of face {face.active} fails the minimization characterization"
    return cone


def cone_vertex_duality_holds(p: LabeledPolytope, face: Face, cone: Cone) -> bool:
    """Each generator attains its minimum over the vertices on the face.

    Inward normals satisfy <y, beta> >= eta with equality on the facet, so on
    every face vertex each generator must hit the minimum of <y, .> over all
    vertices, and for the face's own normals the minimum is attained only on
    the face's vertices.
    """
    on_face = set(face.vertices)
    for g in cone.generators:
        values = [dot(g, v) for v in p.vertices]
        lo = min(values)
        if any(dot(g, p.vertices[vi]) != lo for vi in on_face):
            return False
    # points strictly off the face must violate minimality for some generator
    for vi, v in enumerate(p.vertices):
        if vi in on_face:
            continue
        if cone.generators and all(dot(g, v) == min(dot(g, u) for u in p.vertices)
                                   for g in cone.generators):
            return False
    return True


def build_fan(p: LabeledPolytope) -> Fan:
    """The fan of all face cones (labels and offsets are dropped)."""
    return Fan(ambient_dim=p.dim,
               cones=frozenset(dual_cone(p, f) for f in p.faces))


def fans_equal(f1: Fan, f2: Fan) -> bool:
    """Set equality of cones; raises on ambient dimension mismatch."""
    if f1.ambient_dim != f2.ambient_dim:
        raise ValueError("dimension mismatch")
    return f1.cones == f2.cones


def fan_to_json(f: Fan) -> dict:
    return {
        "ambient_dim": f.ambient_dim,
        "cones": [[list(g) for g in c.generators] for c in f.sorted_cones()],
    }
