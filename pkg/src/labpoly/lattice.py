"""Exact linear algebra over the integers and rationals.

Everything in this module works with arbitrary-precision Python ``int`` and
``fractions.Fraction``; floating point is never used.  Matrices are immutable
tuples of row tuples, vectors are plain tuples.  All functions are pure.

The integer-matrix normal forms (Smith and Hermite) return the unimodular
transforms alongside the reduced matrix and re-verify the defining identity by
exact multiplication before returning, so a silent arithmetic bug cannot leak
a wrong decomposition downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

Vec = tuple  # integer row vector
Mat = tuple  # tuple of integer row vectors


# ---------------------------------------------------------------------------
# rational text encoding
# ---------------------------------------------------------------------------

def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or an int) into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational number: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x) -> str:
    """Inverse of :func:`parse_rational`: ``p/q`` with q > 0, or ``p``."""
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# small vector/matrix helpers
# ---------------------------------------------------------------------------

def matrix(rows) -> Mat:
    """Coerce to an immutable integer matrix, checking shape and integrality."""
    out = []
    width = None
    for r in rows:
        row = tuple(_as_int(e) for e in r)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValueError("ragged matrix")
        out.append(row)
    return tuple(out)


def _as_int(e) -> int:
    if isinstance(e, bool):
        raise ValueError(f"not an integer entry: {e!r}")
    if isinstance(e, int):
        return e
    if isinstance(e, Fraction) and e.denominator == 1:
        return e.numerator
    raise ValueError(f"not an integer entry: {e!r}")


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a) -> Mat:
    return tuple(zip(*a)) if a else ()


def dot(u, v):
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum(x * y for x, y in zip(u, v))


def vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, u):
    return tuple(c * x for x in u)


def vec_neg(u):
    return tuple(-x for x in u)


def mat_vec(a, v):
    return tuple(dot(row, v) for row in a)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def det(a) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def primitive_vector(v) -> Vec:
    """Divide an integer vector by the gcd of its entries.

    The zero vector is returned unchanged.  Sign is preserved, so the result
    points the same way as the input.
    """
    v = tuple(_as_int(e) for e in v)
    g = 0
    for e in v:
        g = math.gcd(g, e)
    if g <= 1:
        return v
    return tuple(e // g for e in v)


# ---------------------------------------------------------------------------
# rational elimination
# ---------------------------------------------------------------------------

def rational_rank(rows) -> int:
    """Rank over the rationals of a matrix with int or Fraction entries."""
    work = [[Fraction(e) for e in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][c]
        for i in range(rank + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / pv
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def solve_rational(a_rows, b) -> Optional[tuple]:
    """Unique exact solution x of ``A x = b`` over the rationals, if any.

    Returns a tuple of Fractions when the system has exactly one solution,
    and None when it is inconsistent or underdetermined.  A may be any shape.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    if len(b) != m:
        raise ValueError("shape mismatch")
    aug = [[Fraction(e) for e in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    pivots = []  # (row, col)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    # inconsistent row: 0 = nonzero
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    if len(pivots) < n:
        return None  # underdetermined
    x = [Fraction(0)] * n
    for row, col in pivots:
        x[col] = aug[row][n]
    return tuple(x)


def invert_rational(rows):
    """Exact inverse of a square matrix with int or Fraction entries."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    aug = [[Fraction(e) for e in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

class SmithDecomposition(NamedTuple):
    """U * A * V = D with U, V unimodular and D in Smith normal form."""

    U: Mat
    D: Mat
    V: Mat

    @property
    def diagonal(self) -> tuple:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k))

    @property
    def nonzero_diagonal(self) -> tuple:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(a) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with transforms.

    The diagonal of D is nonnegative, each entry divides the next, and
    U * A * V == D exactly (verified before returning).  Pivots are chosen
    by smallest nonzero absolute value, ties broken by lowest (row, col),
    which makes the reduction deterministic.
    """
    a = matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(dst, src, q):  # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def col_add(dst, src, q):  # col dst += q * col src
        for r in range(m):
            d[r][dst] += q * d[r][src]
        for r in range(n):
            v[r][dst] += q * v[r][src]

    def col_swap(i, j):
        for r in range(m):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def select_pivot(k):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                e = d[i][j]
                if e != 0 and (best is None or abs(e) < best[0]):
                    best = (abs(e), i, j)
        return None if best is None else (best[1], best[2])

    k = 0
    while k < min(m, n):
        if select_pivot(k) is None:
            break
        while True:
            i0, j0 = select_pivot(k)
            if i0 != k:
                row_swap(k, i0)
            if j0 != k:
                col_swap(k, j0)
            if d[k][k] < 0:
                row_negate(k)
            p = d[k][k]
            clear = True
            for i in range(k + 1, m):
                if d[i][k] != 0:
                    q = d[i][k] // p
                    if q:
                        row_add(i, k, -q)
                    if d[i][k] != 0:
                        clear = False
            for j in range(k + 1, n):
                if d[k][j] != 0:
                    q = d[k][j] // p
                    if q:
                        col_add(j, k, -q)
                    if d[k][j] != 0:
                        clear = False
            if clear:
                break
        # pivot must divide every remaining entry; if not, fold the offending
        # row into row k and reduce again (the pivot strictly shrinks)
        p = d[k][k]
        offender = None
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if d[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is None:
            k += 1
        else:
            row_add(k, offender, 1)

    U = tuple(tuple(r) for r in u)
    D = tuple(tuple(r) for r in d)
    V = tuple(tuple(r) for r in v)
    if mat_mul(mat_mul(U, a), V) != D:
        raise RuntimeError("Smith reduction broke the identity U*A*V = D")
    return SmithDecomposition(U, D, V)


def elementary_divisors(a) -> tuple:
    """Nonzero diagonal of the Smith normal form."""
    return smith_normal_form(a).nonzero_diagonal


# ---------------------------------------------------------------------------
# Hermite normal form (row style)
# ---------------------------------------------------------------------------

class HermiteDecomposition(NamedTuple):
    """U * A = H with U unimodular and H in row Hermite normal form."""

    H: Mat
    U: Mat


def hermite_normal_form(a) -> HermiteDecomposition:
    """Row-style Hermite normal form: U * A = H.

    H is in row echelon form with positive pivots, and every entry above a
    pivot is reduced into [0, pivot).  U is unimodular.  The identity
    U * A == H is verified by exact multiplication before returning.
    """
    a = matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_add(dst, src, q):
        h[dst] = [x + q * y for x, y in zip(h[dst], h[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def row_swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def row_negate(i):
        h[i] = [-x for x in h[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(n):
        if r == m:
            break
        if all(h[i][c] == 0 for i in range(r, m)):
            continue
        while True:
            i0 = min((i for i in range(r, m) if h[i][c] != 0),
                     key=lambda i: (abs(h[i][c]), i))
            if i0 != r:
                row_swap(r, i0)
            if h[r][c] < 0:
                row_negate(r)
            p = h[r][c]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // p
                    if q:
                        row_add(i, r, -q)
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        p = h[r][c]
        for i in range(r):
            q = h[i][c] // p
            if q:
                row_add(i, r, -q)
        r += 1

    H = tuple(tuple(row) for row in h)
    U = tuple(tuple(row) for row in u)
    if mat_mul(U, a) != H:
        raise RuntimeError("Hermite reduction broke the identity U*A = H")
    return HermiteDecomposition(H, U)


def unimodular_inverse(m_rows) -> Mat:
    """Exact integer inverse of a unimodular matrix.

    Raises ValueError if the matrix is not square with determinant +-1.
    """
    m_rows = matrix(m_rows)
    n = len(m_rows)
    if any(len(r) != n for r in m_rows):
        raise ValueError("matrix is not square")
    hnf = hermite_normal_form(m_rows)
    if hnf.H != identity(n):
        raise ValueError("matrix is not unimodular")
    return hnf.U


def lattices_equal(a, b) -> bool:
    """Whether two row bases span the same sublattice (mutual HNF compare)."""
    ha = tuple(r for r in hermite_normal_form(a).H if any(r))
    hb = tuple(r for r in hermite_normal_form(b).H if any(r))
    return ha == hb


# ---------------------------------------------------------------------------
# kernels, saturation, quotients
# ---------------------------------------------------------------------------

def kernel_basis(a, ncols: int) -> Mat:
    """Basis rows of the integer kernel {x : A x = 0} of an m x ncols matrix.

    The result is saturated (it generates ker over the rationals intersected
    with the integer lattice) and is normalized to its Hermite form so that
    equal kernels get identical bases.  ``ncols`` must be passed explicitly so
    an empty list of rows still has a well-defined ambient dimension.
    """
    a = matrix(a)
    if a and len(a[0]) != ncols:
        raise ValueError("ncols disagrees with the rows")
    if not a:
        return identity(ncols)
    s = smith_normal_form(a)
    r = len(s.nonzero_diagonal)
    gens = [tuple(s.V[i][j] for i in range(ncols)) for j in range(r, ncols)]
    if not gens:
        return ()
    return tuple(row for row in hermite_normal_form(gens).H if any(row))


def saturate(b) -> Mat:
    """Basis of the saturation of the row lattice of ``b``.

    The saturation is (rational span of the rows) intersected with the integer
    lattice.  Rows must be linearly independent over the rationals.  The basis
    returned is Hermite-normalized, hence canonical for the lattice.
    """
    b = matrix(b)
    if not b:
        return ()
    k = len(b)
    n = len(b[0])
    if rational_rank(b) != k:
        raise ValueError("rows are linearly dependent")
    s = smith_normal_form(b)
    vinv = unimodular_inverse(s.V)
    gens = vinv[:k]
    return tuple(row for row in hermite_normal_form(gens).H if any(row))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form.

    ``invariant_factors`` is a tuple (d_1, ..., d_k) with each d_i >= 2 and
    d_i dividing d_{i+1}; the empty tuple is the trivial group.
    """

    invariant_factors: tuple

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for d in fs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for x, y in zip(fs, fs[1:]):
            if y % x != 0:
                raise ValueError(f"broken divisibility chain: {x} does not divide {y}")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


TRIVIAL_GROUP = FiniteAbelianGroup(())


def quotient_group(lattice_rows, sub_rows) -> FiniteAbelianGroup:
    """The finite quotient L / S of a lattice by a finite-index sublattice.

    ``lattice_rows`` is a basis of L (rows independent); ``sub_rows`` generate
    S, which must lie inside L and have the same rank.  The result is the
    invariant-factor decomposition read off the Smith normal form of the
    coordinate matrix of S in the basis of L.
    """
    L = matrix(lattice_rows)
    S = matrix(sub_rows)
    k = len(L)
    if k == 0 and len(S) == 0:
        return TRIVIAL_GROUP
    if S and L and len(S[0]) != len(L[0]):
        raise ValueError("ambient dimension mismatch")
    if rational_rank(L) != k:
        raise ValueError("lattice basis rows are linearly dependent")
    if len(S) != k:
        raise ValueError(f"rank mismatch: lattice has rank {k}, got {len(S)} generators")
    lt = transpose(L)
    coords = []
    for srow in S:
        x = solve_rational(lt, srow)
        if x is None:
            raise ValueError("not a sublattice: generator outside the rational span")
        if any(xi.denominator != 1 for xi in x):
            raise ValueError("not a sublattice: generator has fractional coordinates")
        coords.append(tuple(int(xi) for xi in x))
    diag = smith_normal_form(coords).diagonal
    if any(d == 0 for d in diag):
        raise ValueError("rank mismatch: sublattice has lower rank")
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))
