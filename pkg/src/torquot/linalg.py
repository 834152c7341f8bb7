"""Exact integer linear algebra over lattices.

Matrices are tuples of row tuples of Python ints; vectors are tuples of
ints.  Everything here is exact; nothing touches floating point.

Normalization conventions (fixed, relied on by every downstream module):

* Row-style Hermite normal form: nonzero rows first, pivots strictly
  increasing in column, pivots positive, entries above a pivot reduced
  into ``[0, pivot)``, zero rows last.
* Sublattice bases are the nonzero rows of the Hermite normal form of any
  generating set.
* The quotient projection of a primitive sublattice ``L`` has as rows the
  canonical basis of the lattice of integer linear forms vanishing on ``L``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonPrimitiveSublattice, RankMismatch

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


# ---------------------------------------------------------------------------
# small helpers


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(M: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not M:
        return zeros(cols or 0, 0)
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
           cols: int | None = None) -> Matrix:
    """Product of integer matrices.

    ``cols`` gives the column count of ``B`` when ``B`` has no rows.
    """
    p = len(B[0]) if B else cols
    if not A:
        return ()
    if p is None:
        raise ValueError("column count of an empty right factor is ambiguous")
    if not B:
        return zeros(len(A), p)
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt)
                 for row in A)


def matvec(M: Sequence[Sequence[int]], v: Sequence) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in M)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g in (0, 1):
        return tuple(v)
    return tuple(x // g for x in v)


def primitive_rational(v: Sequence[Fraction | int]) -> Vector:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    return len(row_echelon(M))


def row_echelon(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q, zero rows dropped."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return A[:r]


def in_rational_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if not rows:
        return all(x == 0 for x in v)
    return rank(list(rows) + [list(v)]) == rank(rows)


def orthogonal_complement_projection(v: Sequence, basis: Sequence[Sequence]
                                     ) -> tuple[Fraction, ...]:
    """Project ``v`` onto the orthogonal complement of ``span(basis)``."""
    if not basis:
        return tuple(Fraction(x) for x in v)
    # Orthogonalize once (Gram-Schmidt over Q); bases here are tiny.
    ortho: list[list[Fraction]] = []
    for b in basis:
        w = [Fraction(x) for x in b]
        for o in ortho:
            c = dot(w, o) / dot(o, o)
            w = [x - c * y for x, y in zip(w, o)]
        if any(w):
            ortho.append(w)
    w = [Fraction(x) for x in v]
    for o in ortho:
        c = dot(w, o) / dot(o, o)
        w = [x - c * y for x, y in zip(w, o)]
    return tuple(w)


# ---------------------------------------------------------------------------
# normal forms


def hermite_normal_form(M: Sequence[Sequence[int]], cols: int | None = None
                        ) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ M`` and ``U`` unimodular.  ``cols`` is
    only consulted for matrices without rows.
    """
    m = len(M)
    n = len(M[0]) if m else (cols or 0)
    H = [list(row) for row in M]
    U = [list(row) for row in identity(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            p = H[r][c]
            for i in range(r):
                q = H[i][c] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return as_matrix(H), as_matrix(U)


def column_hermite_normal_form(M: Sequence[Sequence[int]], cols: int | None = None
                               ) -> tuple[Matrix, Matrix]:
    """Column-style companion: ``(H, V)`` with ``H == M @ V``, ``V`` unimodular.

    ``H`` is the transpose of the row-style form of ``M.T``; for a single row
    this puts the gcd of the entries in the first column.
    """
    n = len(M[0]) if M else (cols or 0)
    Ht, Vt = hermite_normal_form(transpose(M, n), cols=len(M))
    return transpose(Ht, len(M)), transpose(Vt, n)


def smith_normal_form(M: Sequence[Sequence[int]], cols: int | None = None
                      ) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(S, U, V)`` with ``S == U @ M @ V``.

    ``S`` is diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    m = len(M)
    n = len(M[0]) if m else (cols or 0)
    S = [list(row) for row in M]
    U = [list(row) for row in identity(m)]
    V = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n)
              if S[i][j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, q)
                    if S[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, q)
                    if S[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % S[t][t]), None)
            if bad is None:
                break
            S[t] = [a + b for a, b in zip(S[t], S[bad[0]])]
            U[t] = [a + b for a, b in zip(U[t], U[bad[0]])]
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return as_matrix(S), as_matrix(U), as_matrix(V)


def invariant_factors(M: Sequence[Sequence[int]], cols: int | None = None) -> list[int]:
    S, _, _ = smith_normal_form(M, cols)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


# ---------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class SublatticeBasis:
    """A sublattice of ``Z^n`` given by a canonical (HNF) basis.

    Build instances with :func:`sublattice`; the constructor trusts its
    arguments.
    """

    ambient_rank: int
    basis: Matrix
    is_primitive: bool

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            raise RankMismatch(f"vector of rank {len(v)} in lattice of rank {self.ambient_rank}")
        if not in_rational_span(v, self.basis):
            return False
        H, _ = hermite_normal_form(self.basis + (tuple(v),), cols=self.ambient_rank)
        return H[:self.rank] == self.basis


def sublattice(ambient_rank: int, generators: Iterable[Sequence[int]] = ()) -> SublatticeBasis:
    """Sublattice generated by ``generators`` (dependent generators are fine)."""
    gens = [tuple(int(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise RankMismatch(f"generator {g} does not have rank {ambient_rank}")
    H, _ = hermite_normal_form(gens, cols=ambient_rank)
    basis = tuple(row for row in H if any(row))
    prim = all(d == 1 for d in invariant_factors(basis, cols=ambient_rank))
    return SublatticeBasis(ambient_rank, basis, prim)


def kernel_basis(M: Sequence[Sequence[int]], cols: int | None = None) -> SublatticeBasis:
    """Saturated integer kernel ``{v : M v = 0}`` in canonical form."""
    n = len(M[0]) if M else (cols if cols is not None else 0)
    H, V = column_hermite_normal_form(M, cols=n)
    # Columns of V whose image column in H vanishes span the kernel.
    Vt = transpose(V, n)
    Ht = transpose(H, n) if M else zeros(n, 0)
    gens = [Vt[j] for j in range(n) if not any(Ht[j])]
    K = sublattice(n, gens)
    assert K.is_primitive
    return K


def saturate(L: SublatticeBasis) -> SublatticeBasis:
    """The saturation ``(L ⊗ Q) ∩ Z^n``."""
    if L.is_primitive:
        return L
    forms = kernel_basis(L.basis, cols=L.ambient_rank)
    return kernel_basis(forms.basis, cols=L.ambient_rank)


def quotient_projection(L: SublatticeBasis) -> Matrix:
    """Canonical surjection ``Z^n -> Z^(n-k)`` whose kernel is exactly ``L``."""
    if not L.is_primitive:
        raise NonPrimitiveSublattice(f"sublattice {list(map(list, L.basis))} is not primitive")
    return kernel_basis(L.basis, cols=L.ambient_rank).basis


def right_inverse(P: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """Integer ``R`` with ``P @ R == identity`` for a surjective integer ``P``."""
    m = len(P)
    n = len(P[0]) if m else (cols or 0)
    H, V = column_hermite_normal_form(P, cols=n)
    # P surjective => column HNF is [I | 0]
    if any(H[i][j] != int(i == j) for i in range(m) for j in range(n)):
        raise ValueError("matrix is not surjective over the integers")
    return tuple(tuple(V[i][j] for j in range(m)) for i in range(n))


def factor_through(F: Sequence[Sequence[int]], P: Sequence[Sequence[int]],
                   cols: int) -> Matrix | None:
    """Integer ``Ft`` with ``F == Ft @ P`` for a surjective ``P``, or None.

    ``cols`` is the common column count of ``F`` and ``P``.
    """
    R = right_inverse(P, cols=cols)
    Ft = matmul(F, R, cols=len(P))
    if matmul(Ft, P, cols=cols) != as_matrix(F):
        return None
    return Ft


def image_lattice(M: Sequence[Sequence[int]], L: SublatticeBasis, target_rank: int
                  ) -> SublatticeBasis:
    return sublattice(target_rank, [matvec(M, b) for b in L.basis])


def preimage_lattice(P: Sequence[Sequence[int]], L1: SublatticeBasis, source_rank: int
                     ) -> SublatticeBasis:
    """``P^{-1}(L1)`` for a surjective ``P``."""
    K = kernel_basis(P, cols=source_rank)
    R = right_inverse(P, cols=source_rank)
    lifts = [matvec(R, b) for b in L1.basis]
    return sublattice(source_rank, list(K.basis) + lifts)
