"""Exact linear algebra over Q and Z on plain lists of lists.

Only what the package needs: determinants, solving, inverses, ranks and
kernels over Q; row Hermite normal form and saturated integer kernels
over Z (used for order intersections and minus-lattices).
"""

from __future__ import annotations

import math
from fractions import Fraction


def mat_fraction(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                row = out[i]
                for j in range(m):
                    row[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum((c * x for c, x in zip(row, v)), Fraction(0)) for row in a]


def det(rows) -> Fraction:
    """Exact determinant via integer Bareiss after clearing denominators."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in rows:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in row] for row in rows]
    from .poly import _bareiss_det
    return Fraction(_bareiss_det(ints), den**n)


def solve(a, b) -> list[Fraction] | None:
    """Solve a x = b over Q (a square, nonsingular); None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bv)]
         for row, bv in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def inverse(a) -> list[list[Fraction]] | None:
    n = len(a)
    m = [[Fraction(x) for x in row] + idr
         for row, idr in zip(a, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rank(a) -> int:
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def kernel(a) -> list[list[Fraction]]:
    """Basis of the right kernel {x : a x = 0} over Q (reduced echelon)."""
    if not a:
        return []
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


# ----------------------------------------------------------------------
# Integer lattices
# ----------------------------------------------------------------------

def hnf_rows(mat: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (non-zero rows, pivots positive,
    entries above pivots reduced)."""
    m = [row[:] for row in mat]
    if not m:
        return []
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        # gcd-reduce column below r
        piv = None
        for i in range(r, rows):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            while m[i][col] != 0:
                q = m[r][col] // m[i][col]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][col] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][col] // m[r][col]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return [row for row in m[:r] if any(row)]


def integer_kernel(a: list[list[Fraction]]) -> list[list[int]]:
    """Basis of {x in Z^n : a x = 0} (saturated) for a rational matrix a.

    Standard trick: row-HNF of [a^T * den | I_n]; rows whose left block is
    zero carry a basis of the kernel in the right block.
    """
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    den = 1
    for row in a:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    at = [[int(Fraction(a[i][j]) * den) for i in range(rows)]
          for j in range(cols)]
    big = [at[j] + [1 if j == t else 0 for t in range(cols)]
           for j in range(cols)]
    h = _hnf_full(big, keep_zero_rows=True)
    out = []
    for row in h:
        if all(v == 0 for v in row[:rows]):
            vec = row[rows:]
            if any(vec):
                out.append(vec)
    return out


def _hnf_full(mat: list[list[int]], keep_zero_rows: bool = False):
    """Row HNF keeping all rows (zero rows sink to the bottom)."""
    m = [row[:] for row in mat]
    if not m:
        return m
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            while m[i][col] != 0:
                q = m[r][col] // m[i][col]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][col] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][col] // m[r][col]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return m if keep_zero_rows else [row for row in m if any(row)]


def lattice_intersection(basis_a: list[list[Fraction]],
                         basis_b: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the intersection of two full-rank-or-not lattices in Q^n.

    Lattices are given by generator rows.  Solves u·A = v·B by taking the
    integer kernel of [A^T | -B^T] and mapping back through A.
    """
    if not basis_a or not basis_b:
        return []
    n = len(basis_a[0])
    ra, rb = len(basis_a), len(basis_b)
    stacked = [[Fraction(basis_a[i][j]) for i in range(ra)] +
               [-Fraction(basis_b[i][j]) for i in range(rb)]
               for j in range(n)]
    ker = integer_kernel(stacked)
    out = []
    for vec in ker:
        coeffs = vec[:ra]
        elem = [sum(Fraction(c) * basis_a[i][j] for i, c in enumerate(coeffs))
                for j in range(n)]
        if any(elem):
            out.append(elem)
    return out


def sublattice_in_subspace(basis: list[list[Fraction]],
                           subspace: list[list[Fraction]]) -> list[list[int]]:
    """Coefficient vectors u in Z^r such that sum u_i basis_i lies in the
    span of ``subspace``; saturated basis.
    """
    if not basis:
        return []
    n = len(basis[0])
    # rows spanning the orthogonal complement of the subspace (kernel of
    # the matrix whose rows are the subspace vectors)
    comp = kernel(subspace)
    if not comp:
        return [[1 if i == j else 0 for j in range(len(basis))]
                for i in range(len(basis))]
    # condition: comp_k . (u . basis) = 0 for all k
    cond = [[sum(ck[j] * Fraction(basis[i][j]) for j in range(n))
             for i in range(len(basis))] for ck in comp]
    return integer_kernel(cond)
