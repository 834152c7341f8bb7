import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from torquot.errors import NonPrimitiveSublattice, RankMismatch
from torquot.linalg import (column_hermite_normal_form, determinant, factor_through,
                            hermite_normal_form, identity, invariant_factors,
                            kernel_basis, matmul, matvec, preimage_lattice,
                            quotient_projection, rank, right_inverse, saturate,
                            smith_normal_form, sublattice)

entries = st.integers(-6, 6)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, min_rows=1):
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(1, max_cols))
    return tuple(tuple(draw(entries) for _ in range(n)) for _ in range(m))


def _sym(M):
    return sympy.Matrix([list(r) for r in M])


def _is_unimodular(U):
    return abs(determinant(U)) == 1


def _is_row_hnf(H):
    last = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in H[i:])
            return True
        p = nz[0]
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= H[k][p] < row[p]
        last = p
    return True


# ---------------------------------------------------------------------------
# worked examples


def test_hnf_single_row():
    H, V = column_hermite_normal_form([[4, 6]])
    assert H == ((2, 0),)
    assert matmul([[4, 6]], V) == H


def test_hnf_row_style():
    H, U = hermite_normal_form([[2, 4], [3, 5]])
    assert H == ((1, 1), (0, 2))
    assert matmul(U, [[2, 4], [3, 5]]) == H


def test_smith_example():
    S, U, V = smith_normal_form([[2, 4], [6, 8]])
    assert S == ((2, 0), (0, 4))


def test_kernel_and_projection_examples():
    assert kernel_basis([[1, 1]]).basis == ((1, -1),)
    assert quotient_projection(sublattice(2, [(1, -1)])) == ((1, 1),)
    assert quotient_projection(sublattice(2, [(1, -2)])) == ((2, 1),)
    assert quotient_projection(sublattice(2, [(1, 2)])) == ((2, -1),)
    assert quotient_projection(sublattice(3, [])) == identity(3)
    assert quotient_projection(sublattice(2, [(1, 0), (0, 1)])) == ()


def test_saturation():
    L = sublattice(2, [(2, 4)])
    assert not L.is_primitive
    assert saturate(L).basis == ((1, 2),)
    with pytest.raises(NonPrimitiveSublattice):
        quotient_projection(L)


def test_membership():
    L = sublattice(3, [(1, 1, 0), (0, 2, 2)])
    assert (1, 3, 2) in L
    assert (0, 1, 1) not in L
    assert (1, 0, 0) not in L
    with pytest.raises(RankMismatch):
        (1, 2) in L


def test_preimage():
    P = ((1, 1),)
    assert preimage_lattice(P, sublattice(1, []), 2).basis == ((1, -1),)
    assert preimage_lattice(P, sublattice(1, [(1,)]), 2).basis == ((1, 0), (0, 1))


def test_rank_zero_edge_cases():
    assert kernel_basis((), cols=3).basis == identity(3)
    assert right_inverse((), cols=2) == ((), ())
    assert factor_through((), (), cols=2) == ()


# ---------------------------------------------------------------------------
# properties checked against sympy


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_properties(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert _is_unimodular(U)
    assert _is_row_hnf(H)
    assert rank(H) == _sym(M).rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_is_canonical(M):
    # left multiplication by a unimodular matrix does not change the HNF
    m = len(M)
    T = [list(r) for r in identity(m)]
    if m > 1:
        T[0][1] = 3
    H1, _ = hermite_normal_form(M)
    H2, _ = hermite_normal_form(matmul(T, M))
    assert H1 == H2


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_properties(M):
    S, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == S
    assert _is_unimodular(U) and _is_unimodular(V)
    d = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i, j in itertools.product(range(len(S)), range(len(S[0]))):
        if i != j:
            assert S[i][j] == 0
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    expected = [abs(int(x)) for x in sympy_invariants(_sym(M), domain=sympy.ZZ) if x]
    assert invariant_factors(M) == expected


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_properties(M):
    n = len(M[0])
    K = kernel_basis(M)
    assert K.is_primitive
    assert K.rank == n - _sym(M).rank()
    for b in K.basis:
        assert not any(matvec(M, b))


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=3, max_cols=4))
def test_quotient_projection_properties(M):
    n = len(M[0])
    L = saturate(sublattice(n, M))
    P = quotient_projection(L)
    assert len(P) == n - L.rank
    for b in L.basis:
        assert not any(matvec(P, b))
    if P:
        R = right_inverse(P, cols=n)
        assert matmul(P, R) == identity(len(P))
    assert kernel_basis(P, cols=n) == L


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_determinant_matches_sympy(M):
    k = min(len(M), len(M[0]))
    sq = tuple(r[:k] for r in M[:k])
    assert determinant(sq) == int(_sym(sq).det())


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=3, max_cols=4), st.lists(st.tuples(entries, entries, entries), max_size=3))
def test_factor_through(M, coeffs):
    n = len(M[0])
    L = saturate(sublattice(n, M))
    P = quotient_projection(L)
    if not P:
        return
    # anything of the form A @ P factors; anything else does not
    A = tuple(tuple(c[i % 3] for i in range(len(P))) for c in coeffs) or ((1,) * len(P),)
    F = matmul(A, P, cols=n)
    assert factor_through(F, P, cols=n) == A
    if L.rank:
        bad = (tuple(int(j == 0) for j in range(n)),)
        g = L.basis[0]
        if g[0] != 0:
            assert factor_through(bad, P, cols=n) is None
