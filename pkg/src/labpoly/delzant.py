"""Reduction presentation of a labeled polytope.

The construction packages the combinatorics of Delzant's quotient recipe in
exact arithmetic.  With facets 1..N in R^n, the projection matrix has columns
e_i = m_i * y_i (label times primitive inward normal).  Its integer kernel
cuts out the subtorus one reduces by; the reduction happens at the level

    kappa = j*(s(beta_0))

where s(beta)_i = <beta, e_i> - c_i are the facet slacks (c_i = m_i * eta_i)
and j* pairs a vector with the kernel basis rows.  The level does not depend
on the chosen interior point beta_0 (this is re-verified symbolically on
every build), the slacks embed the polytope as the nonnegativity locus, and
each vertex hits zero slack exactly on its tight facets.

Two finite groups live here: the component group of the kernel subgroup
(Smith form of the projection), and the stabilizer attached to a face, read
from the Smith form of the projection columns of its tight facets.  The
latter is an independent route to the structure groups of
:mod:`labpoly.local_model`, and the two are cross-checked in the tests and
the ``stabilizers`` command.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    FiniteAbelianGroup,
    dot,
    kernel_basis,
    rational_rank,
    smith_normal_form,
    vec_scale,
)
from .polytope import Face, LabeledPolytope, format_point


@dataclass(frozen=True)
class DelzantData:
    """Exact data of the reduction presentation.

    ``projection`` is the n x N matrix with columns m_i * y_i,
    ``scaled_offsets`` the vector c with c_i = m_i * eta_i, ``kernel_rows``
    a Hermite-normalized basis of the integer kernel of the projection (one
    row per reduced circle factor), and ``level`` the value of j* shared by
    every point of the polytope.
    """

    projection: tuple
    scaled_offsets: tuple
    kernel_rows: tuple
    level: tuple

    @property
    def num_facets(self) -> int:
        return len(self.projection[0]) if self.projection else 0

    @property
    def ambient_dim(self) -> int:
        return len(self.projection)


@dataclass(frozen=True)
class KernelGroupInfo:
    """Identity component rank and component group of the reduced subgroup."""

    torus_dim: int
    component_group: FiniteAbelianGroup


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    max_stabilizer_order: int
    failure: str | None


@dataclass(frozen=True)
class ReductionReport:
    passed: bool
    samples_checked: int
    vertices_attained: bool
    failure: str | None


def build_construction(p: LabeledPolytope) -> DelzantData:
    """Assemble projection, kernel, and level for a labeled polytope.

    The level is computed by evaluating j* on the slacks of an interior
    point and double-checked against the closed form -B c (B the kernel
    basis), which must agree because the kernel rows annihilate the
    projection; disagreement would mean corrupted arithmetic and raises.
    """
    scaled_cols = [vec_scale(h.label, h.normal) for h in p.halfspaces]
    projection = tuple(tuple(col[i] for col in scaled_cols) for i in range(p.dim))
    offsets = tuple(Fraction(h.label) * h.offset for h in p.halfspaces)
    kernel = kernel_basis(projection, len(scaled_cols))
    beta0 = p.interior_point()
    slacks = _slacks(projection, offsets, beta0)
    level = tuple(dot(row, slacks) for row in kernel)
    symbolic = tuple(-dot(row, offsets) for row in kernel)
    if level != symbolic:
        raise RuntimeError("reduction level depends on the sample point")
    return DelzantData(projection=projection, scaled_offsets=offsets,
                       kernel_rows=kernel, level=level)


def _slacks(projection, offsets, beta):
    cols = len(projection[0]) if projection else 0
    return tuple(
        sum(projection[r][i] * beta[r] for r in range(len(projection))) - offsets[i]
        for i in range(cols))


def sample_point(d: DelzantData, p: LabeledPolytope, beta) -> tuple:
    """Facet slacks s(beta); raises if beta is outside the polytope.

    The error names the first violated facet.
    """
    beta = tuple(Fraction(x) for x in beta)
    s = _slacks(d.projection, d.scaled_offsets, beta)
    for i, si in enumerate(s):
        if si < 0:
            raise ValueError(
                f"point {format_point(beta)} is outside the polytope: "
                f"violates facet {i}")
    return s


def moment_level(d: DelzantData, slacks) -> tuple:
    """j* of a slack vector: pairing with each kernel basis row."""
    return tuple(dot(row, slacks) for row in d.kernel_rows)


def kernel_group(d: DelzantData) -> KernelGroupInfo:
    """Dimension and component group of the reduced subgroup.

    The identity component is a torus of dimension N - n; the component
    group is the cokernel of the projection on integer lattices, read from
    the Smith normal form diagonal.
    """
    torus_dim = d.num_facets - d.ambient_dim
    divisors = smith_normal_form(d.projection).diagonal
    if any(x == 0 for x in divisors):
        raise RuntimeError("projection is not surjective over the rationals")
    factors = tuple(x for x in divisors if x > 1)
    return KernelGroupInfo(torus_dim=torus_dim,
                           component_group=FiniteAbelianGroup(factors))


def face_stabilizer(d: DelzantData, face: Face) -> FiniteAbelianGroup:
    """Stabilizer group of the points above a proper face.

    Computed from the Smith normal form of the projection columns of the
    face's tight facets: the stabilizer is the quotient of the preimage of
    the integer lattice by the coordinate lattice of those facets, whose
    invariant factors are the elementary divisors of the column submatrix.
    This route never looks at the saturated normal span, so it is
    independent of :func:`labpoly.local_model.structure_group`.
    """
    if not face.active:
        raise ValueError("the improper face has no stabilizer attached")
    cols = face.active
    sub = tuple(tuple(row[i] for i in cols) for row in d.projection)
    diag = smith_normal_form(sub).diagonal
    if len([x for x in diag if x != 0]) != len(cols):
        raise RuntimeError(
            f"dependent facet normals over face {list(face.active)}")
    return FiniteAbelianGroup(tuple(x for x in diag if x > 1))


def verify_regular_level(d: DelzantData, p: LabeledPolytope) -> RegularityReport:
    """Check the level is regular: independent tight normals at every vertex.

    Also reports the largest stabilizer order over the proper faces, which
    bounds the local group orders of the reduced space.
    """
    failure = None
    for f in p.vertex_faces():
        sub = tuple(tuple(row[i] for i in f.active) for row in d.projection)
        if rational_rank(sub) != p.dim:
            failure = (f"dependent normals at vertex "
                       f"{format_point(p.vertices[f.vertices[0]])}")
            break
    max_order = 1
    if failure is None:
        for f in p.proper_faces():
            max_order = max(max_order, face_stabilizer(d, f).order)
    return RegularityReport(regular=failure is None,
                            max_stabilizer_order=max_order, failure=failure)


def verify_reduction_invariants(d: DelzantData, p: LabeledPolytope,
                                samples) -> ReductionReport:
    """Check the defining identities of the construction on sample points.

    For each sample beta in the polytope: s(beta) >= 0 (enforced by
    sample_point, which raises on outside points) and j*(s(beta)) equals the
    level.  Additionally every vertex must attain slack zero exactly on its
    tight facets.
    """
    count = 0
    for beta in samples:
        s = sample_point(d, p, beta)
        if moment_level(d, s) != d.level:
            return ReductionReport(
                passed=False, samples_checked=count, vertices_attained=False,
                failure=f"moment level mismatch at sample {format_point(beta)}")
        count += 1
    for f in p.vertex_faces():
        v = p.vertices[f.vertices[0]]
        s = sample_point(d, p, v)
        zero_set = tuple(i for i, si in enumerate(s) if si == 0)
        if zero_set != f.active:
            return ReductionReport(
                passed=False, samples_checked=count, vertices_attained=False,
                failure=f"vertex {format_point(v)} has zero slacks "
                        f"{list(zero_set)}, tight facets {list(f.active)}")
    return ReductionReport(passed=True, samples_checked=count,
                           vertices_attained=True, failure=None)


def convex_samples(p: LabeledPolytope, count: int, seed: int) -> list:
    """Deterministic rational points of the polytope: random convex
    combinations of the vertices (vertices themselves can occur)."""
    import random

    rng = random.Random(seed)
    out = []
    nv = len(p.vertices)
    for _ in range(count):
        weights = [rng.randint(0, 9) for _ in range(nv)]
        total = sum(weights)
        if total == 0:
            weights[rng.randrange(nv)] = 1
            total = 1
        point = tuple(
            sum(Fraction(w) * v[j] for w, v in zip(weights, p.vertices)) / total
            for j in range(p.dim))
        out.append(point)
    return out
