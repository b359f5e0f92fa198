"""Tests for the exact lattice linear algebra layer.

The expensive claims (saturation, quotient groups) are checked against slow
brute-force oracles that enumerate lattice points and cosets directly, so the
normal-form implementations never certify themselves.
"""

import math
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labpoly.lattice import (
    FiniteAbelianGroup,
    det,
    dot,
    elementary_divisors,
    format_rational,
    hermite_normal_form,
    identity,
    invert_rational,
    kernel_basis,
    lattices_equal,
    mat_mul,
    mat_vec,
    matrix,
    parse_rational,
    primitive_vector,
    quotient_group,
    rational_rank,
    saturate,
    smith_normal_form,
    solve_rational,
    transpose,
    unimodular_inverse,
)

# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def oracle_gcd(values):
    """Largest common divisor found by scanning every candidate."""
    vals = [abs(v) for v in values if v != 0]
    if not vals:
        return 0
    best = 1
    for d in range(1, max(vals) + 1):
        if all(v % d == 0 for v in vals):
            best = d
    return best


def oracle_saturation(rows):
    """Saturation by enumerating integer points in the fundamental cell.

    Integer points x in {sum t_i b_i : 0 <= t_i < 1} are coset representatives
    of the row lattice inside its saturation; adjoining them to the rows
    generates the saturation.  Only usable for small entries.
    """
    rows = matrix(rows)
    k = len(rows)
    n = len(rows[0])
    bound = sum(max(abs(e) for e in r) for r in rows) + 1
    found = list(rows)
    bt = transpose(rows)
    for point in product(range(-bound, bound + 1), repeat=n):
        t = solve_in_span(rows, point)
        if t is not None and all(0 <= ti < 1 for ti in t):
            found.append(point)
    # reduce the generating set to a basis via Hermite form
    h = hermite_normal_form(found).H
    return tuple(r for r in h if any(r))


def solve_in_span(rows, target):
    """Rational coordinates of target in the row span, or None."""
    return solve_rational(transpose(rows), target)


def oracle_quotient_order(lattice_rows, sub_rows):
    """Count cosets of S in L by breadth-first closure over L's generators."""
    def canonical(p):
        t = solve_in_span(sub_rows, p)
        assert t is not None
        frac = [ti - math.floor(ti) for ti in t]
        rep = tuple(sum(frac[i] * sub_rows[i][j] for i in range(len(sub_rows)))
                    for j in range(len(p)))
        return rep

    zero = tuple(0 for _ in lattice_rows[0])
    seen = {canonical(zero)}
    frontier = [zero]
    while frontier:
        p = frontier.pop()
        for g in lattice_rows:
            for s in (1, -1):
                q = tuple(pi + s * gi for pi, gi in zip(p, g))
                key = canonical(q)
                if key not in seen:
                    seen.add(key)
                    frontier.append(q)
    return len(seen)


def oracle_element_order(element, sub_rows, limit=10_000):
    """Smallest k >= 1 with k*element in the sublattice."""
    for k in range(1, limit + 1):
        scaled = tuple(k * e for e in element)
        t = solve_in_span(sub_rows, scaled)
        if t is not None and all(ti.denominator == 1 for ti in t):
            return k
    raise AssertionError("element order exceeds limit")


def is_snf_shape(d_mat):
    m = len(d_mat)
    n = len(d_mat[0]) if m else 0
    diag = [d_mat[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j and d_mat[i][j] != 0:
                return False
    if any(x < 0 for x in diag):
        return False
    nz = [x for x in diag if x != 0]
    if diag[:len(nz)] != nz:
        return False  # zeros must trail
    return all(y % x == 0 for x, y in zip(nz, nz[1:]))


# ---------------------------------------------------------------------------
# primitive vectors
# ---------------------------------------------------------------------------

def test_primitive_vector_frozen_example():
    assert primitive_vector((0, -8)) == (0, -1)


def test_primitive_vector_keeps_direction_and_zero():
    assert primitive_vector((4, -6)) == (2, -3)
    assert primitive_vector((0, 0, 0)) == (0, 0, 0)
    assert primitive_vector((-5,)) == (-1,)


@given(st.lists(st.integers(-40, 40), min_size=1, max_size=5))
def test_primitive_vector_against_gcd_scan(v):
    p = primitive_vector(tuple(v))
    g = oracle_gcd(v)
    if g == 0:
        assert p == tuple(v)
    else:
        assert p == tuple(e // g for e in v)
        assert oracle_gcd(p) == 1


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def test_smith_frozen_example():
    d = smith_normal_form(((2, 4), (6, 8))).D
    assert d == ((2, 0), (0, 4))


def test_smith_identity_and_unimodularity_by_hand():
    a = matrix(((2, 4), (6, 8)))
    s = smith_normal_form(a)
    assert mat_mul(mat_mul(s.U, a), s.V) == s.D
    assert abs(det(s.U)) == 1
    assert abs(det(s.V)) == 1


def test_smith_zero_and_empty():
    s = smith_normal_form(((0, 0), (0, 0)))
    assert s.D == ((0, 0), (0, 0))
    assert smith_normal_form(()).D == ()


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-30, 30), min_size=n, max_size=n),
            min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_properties_random(rows):
    a = matrix(rows)
    s = smith_normal_form(a)
    assert mat_mul(mat_mul(s.U, a), s.V) == s.D
    assert abs(det(s.U)) == 1
    assert abs(det(s.V)) == 1
    assert is_snf_shape(s.D)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_smith_diagonal_gcd_invariant(rows):
    # d_1 equals the gcd of all entries: an independent characterization
    a = matrix(rows)
    diag = smith_normal_form(a).diagonal
    g = oracle_gcd([e for row in a for e in row])
    if g == 0:
        assert all(d == 0 for d in diag)
    else:
        assert diag[0] == g


def test_smith_is_deterministic():
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        assert smith_normal_form(rows) == smith_normal_form(rows)


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def test_hermite_frozen_example():
    h = hermite_normal_form(((2, 4), (6, 8))).H
    assert h == ((2, 0), (0, 4))


def is_row_hnf(h):
    m = len(h)
    n = len(h[0]) if m else 0
    pivots = []
    last = -1
    for i in range(m):
        nz = [j for j in range(n) if h[i][j] != 0]
        if not nz:
            # all later rows must be zero too
            assert all(not any(h[k]) for k in range(i, m))
            break
        j = nz[0]
        if j <= last:
            return False
        if h[i][j] <= 0:
            return False
        for k in range(i):
            if not (0 <= h[k][j] < h[i][j]):
                return False
        last = j
        pivots.append(j)
    return True


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hermite_properties_random(rows):
    a = matrix(rows)
    h, u = hermite_normal_form(a)
    assert mat_mul(u, a) == h
    assert abs(det(u)) == 1
    assert is_row_hnf(h)


def test_unimodular_inverse_round_trip():
    m = ((2, 5), (1, 3))  # det 1
    inv = unimodular_inverse(m)
    assert mat_mul(inv, m) == identity(2)
    assert mat_mul(m, inv) == identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(((2, 0), (0, 1)))


# ---------------------------------------------------------------------------
# kernels and saturation
# ---------------------------------------------------------------------------

def test_kernel_basis_simple():
    kb = kernel_basis(((1, 0, -1), (0, 1, -1)), 3)
    assert kb == ((1, 1, 1),)


def test_kernel_basis_empty_and_full():
    assert kernel_basis((), 3) == identity(3)
    assert kernel_basis(((1, 0), (0, 1)), 2) == ()


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_vectors_annihilate(rows):
    a = matrix(rows)
    n = len(a[0])
    kb = kernel_basis(a, n)
    for v in kb:
        assert mat_vec(a, v) == tuple(0 for _ in a)
    assert len(kb) == n - rational_rank(a)


def test_kernel_is_saturated():
    # (2, -2) spans the kernel rationally but (1, -1) is the lattice generator
    kb = kernel_basis(((2, 2),), 2)
    assert kb == ((1, -1),)


def test_saturate_frozen_examples():
    assert saturate(((3, 6),)) == ((1, 2),)
    assert lattices_equal(saturate(((1, 1), (1, -1))), identity(2))


def test_saturate_rejects_dependent_rows():
    with pytest.raises(ValueError):
        saturate(((1, 2), (2, 4)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
                min_size=1, max_size=2))
def test_saturate_against_fundamental_cell(rows):
    rows = matrix(rows)
    if rational_rank(rows) != len(rows):
        return
    got = saturate(rows)
    want = oracle_saturation(rows)
    assert lattices_equal(got, want)


def test_saturate_idempotent():
    rng = random.Random(11)
    for _ in range(25):
        rows = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(2)]
        if rational_rank(rows) != 2:
            continue
        s1 = saturate(rows)
        assert saturate(s1) == s1


# ---------------------------------------------------------------------------
# quotient groups
# ---------------------------------------------------------------------------

def test_quotient_frozen_example():
    g = quotient_group(identity(2), ((1, 0), (-1, -2)))
    assert g.invariant_factors == (2,)
    assert str(g) == "Z/2"


def test_quotient_trivial_and_cyclic():
    assert quotient_group(identity(2), identity(2)).is_trivial
    g = quotient_group(((1, 0),), ((4, 0),))
    assert g.invariant_factors == (4,)


def test_quotient_errors():
    with pytest.raises(ValueError, match="not a sublattice"):
        quotient_group(((2, 0), (0, 1)), ((1, 0), (0, 1)))
    with pytest.raises(ValueError, match="rank mismatch"):
        quotient_group(identity(2), ((1, 0),))
    with pytest.raises(ValueError, match="rank mismatch"):
        quotient_group(identity(2), ((1, 0), (2, 0)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2),
                min_size=2, max_size=2))
def test_quotient_against_coset_count(c_rows):
    # sublattice of Z^2 given by integer combinations C of the standard basis
    c = matrix(c_rows)
    if det(c) == 0:
        return
    g = quotient_group(identity(2), c)
    assert g.order == oracle_quotient_order(identity(2), c) == abs(det(c))
    if g.invariant_factors:
        # the largest invariant factor is the group exponent
        exponent = g.invariant_factors[-1]
        orders = [oracle_element_order(e, c) for e in identity(2)]
        assert exponent == math.lcm(*orders)


def test_group_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1,))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((4, 2))
    g = FiniteAbelianGroup((2, 4))
    assert g.order == 8 and not g.is_cyclic
    assert str(g) == "Z/2 x Z/4"
    assert str(FiniteAbelianGroup(())) == "trivial"


# ---------------------------------------------------------------------------
# rational helpers
# ---------------------------------------------------------------------------

def test_rational_text_round_trip():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == -2
    assert parse_rational(5) == 5
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-3)) == "-3"
    with pytest.raises(ValueError):
        parse_rational("x")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_solve_rational_cases():
    assert solve_rational(((1, 0), (0, 2)), (3, 4)) == (Fraction(3), Fraction(2))
    assert solve_rational(((1, 1), (2, 2)), (1, 3)) is None  # inconsistent
    assert solve_rational(((1, 1),), (1,)) is None  # underdetermined
    # overdetermined but consistent
    assert solve_rational(((1, 0), (0, 1), (1, 1)), (2, 3, 5)) == (2, 3)


def test_invert_rational():
    inv = invert_rational(((1, 0), (-1, -2)))
    assert inv == ((Fraction(1), Fraction(0)), (Fraction(-1, 2), Fraction(-1, 2)))
    with pytest.raises(ValueError):
        invert_rational(((1, 2), (2, 4)))


def test_det_examples():
    assert det(((2, 4), (6, 8))) == -8
    assert det(()) == 1
    assert det(((0, 1), (1, 0))) == -1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_det_multiplicative(rows):
    a = matrix(rows)
    b = ((1, 2, 0), (0, 1, 0), (3, 0, 1))
    assert det(mat_mul(a, b)) == det(a) * det(b)


def test_elementary_divisors():
    assert elementary_divisors(((2, 0), (0, 3))) == (1, 6)
    assert elementary_divisors(((0, 0),)) == ()
