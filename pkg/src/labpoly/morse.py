"""Betti numbers of the space above a labeled polytope, Morse-style.

A generic direction xi (one pairing nonzero with every edge direction) turns
the vertex set into critical points; the index of a vertex is twice the
number of its edges on which xi decreases.  Counting vertices by index gives
the Poincare coefficients directly, in every case even degrees only.

``morse_inequality_check`` implements the classical comparison between a
Morse counting polynomial M and a Poincare polynomial P: the pair is
consistent exactly when M - P = (1 + x) Q with Q having nonnegative integer
coefficients, and the function returns Q or None.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lattice import dot
from .polytope import LabeledPolytope, edge_directions


@dataclass(frozen=True)
class MorseReport:
    xi: tuple
    vertex_indices: tuple  # index (an even integer) per vertex, vertex order
    poincare: tuple        # coefficient list, degree 0 .. 2*dim


def is_generic(p: LabeledPolytope, xi) -> bool:
    """Whether xi pairs nonzero with every edge direction at every vertex."""
    xi = tuple(xi)
    if not any(xi):
        raise ValueError("xi must be nonzero")
    for vi in range(len(p.vertices)):
        for _, d in edge_directions(p, vi):
            if dot(xi, d) == 0:
                return False
    return True


def vertex_index(p: LabeledPolytope, vi: int, xi) -> int:
    """Morse index of a vertex: 2 * #(edges on which xi decreases)."""
    if not is_generic(p, xi):
        raise ValueError(f"xi = {tuple(xi)} is not generic for this polytope")
    return _index_unchecked(p, vi, xi)


def _index_unchecked(p, vi, xi):
    return 2 * sum(1 for _, d in edge_directions(p, vi) if dot(xi, d) < 0)


def poincare_polynomial(p: LabeledPolytope, xi) -> tuple:
    """Even Betti numbers as a coefficient tuple of length 2*dim + 1.

    Entry k is the number of vertices of index k (odd entries are zero).
    The result is independent of the choice of generic xi.
    """
    if not is_generic(p, xi):
        raise ValueError(f"xi = {tuple(xi)} is not generic for this polytope")
    coeffs = [0] * (2 * p.dim + 1)
    for vi in range(len(p.vertices)):
        coeffs[_index_unchecked(p, vi, xi)] += 1
    return tuple(coeffs)


def morse_report(p: LabeledPolytope, xi) -> MorseReport:
    if not is_generic(p, xi):
        raise ValueError(f"xi = {tuple(xi)} is not generic for this polytope")
    indices = tuple(_index_unchecked(p, vi, xi) for vi in range(len(p.vertices)))
    coeffs = [0] * (2 * p.dim + 1)
    for k in indices:
        coeffs[k] += 1
    return MorseReport(xi=tuple(xi), vertex_indices=indices, poincare=tuple(coeffs))


def random_generic_direction(p: LabeledPolytope, rng: random.Random) -> tuple:
    """Draw a generic integer direction; widens the range until one is found."""
    bound = 9
    for attempt in range(10_000):
        xi = tuple(rng.randint(-bound, bound) for _ in range(p.dim))
        if any(xi) and is_generic(p, xi):
            return xi
        if attempt % 100 == 99:
            bound *= 2
    raise RuntimeError("could not find a generic direction")


def morse_inequality_check(m_coeffs, p_coeffs):
    """Quotient Q of (M - P) by (1 + x) if it exists with Q >= 0, else None.

    M dominates P in the Morse sense exactly when the difference is divisible
    by 1 + x with nonnegative coefficients.  Zero difference returns ().
    """
    m = list(m_coeffs)
    p = list(p_coeffs)
    size = max(len(m), len(p))
    m += [0] * (size - len(m))
    p += [0] * (size - len(p))
    r = [a - b for a, b in zip(m, p)]
    while r and r[-1] == 0:
        r.pop()
    if not r:
        return ()
    if len(r) == 1:
        return None  # nonzero constant is not divisible by 1 + x
    q = []
    carry = 0
    for i in range(len(r) - 1):
        coeff = r[i] - carry
        q.append(coeff)
        carry = coeff
    if carry != r[-1]:
        return None  # remainder: not divisible
    if any(c < 0 for c in q):
        return None
    while q and q[-1] == 0:
        q.pop()
    return tuple(q)
