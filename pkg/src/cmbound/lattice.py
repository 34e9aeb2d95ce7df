"""Exact short-vector enumeration (Fincke-Pohst) on rational Gram matrices.

The Gram matrix is decomposed as Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
by rational Cholesky (LDL); enumeration bounds use exact floor/ceil of
quadratic surds, so no vector is ever missed or misclassified near the
radius.  Deterministic: vectors come out in lexicographic order of the
recursion, and only one of each +-v pair is emitted (first nonzero
coordinate positive) unless ``both_signs`` is set.
"""

from __future__ import annotations

from fractions import Fraction

from .rat import ceil_minus_sqrt, floor_plus_sqrt


def ldl(gram: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(x) = sum d[i] (x_i + sum_{j>i} u[i][j] x_j)^2; requires positive
    definiteness (raises ValueError otherwise)."""
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for r in range(i + 1, n):
            for s in range(r, n):
                a[r][s] -= a[r][i] * a[i][s] / d[i]
                a[s][r] = a[r][s]
    return d, u


def enumerate_short_vectors(gram, bound: Fraction,
                            both_signs: bool = False) -> list[tuple[tuple[int, ...], Fraction]]:
    """All nonzero integer vectors with Q(x) <= bound, with their values.

    Canonical half (first nonzero coordinate positive) unless both_signs.
    """
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        return []
    d, u = ldl(gram)
    out: list[tuple[tuple[int, ...], Fraction]] = []
    x = [0] * n

    def recurse(i: int, remaining: Fraction):
        if i < 0:
            if any(x):
                vec = tuple(x)
                q = bound - remaining  # filled in by caller bookkeeping
                out.append((vec, q))
            return
        # c = sum_{j>i} u[i][j] x_j ; d[i] (x_i + c)^2 <= remaining
        c = sum((u[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = remaining / d[i]
        lo = ceil_minus_sqrt(-c, t)
        hi = floor_plus_sqrt(-c, t)
        for xi in range(lo, hi + 1):
            x[i] = xi
            term = d[i] * (xi + c) ** 2
            recurse(i - 1, remaining - term)
        x[i] = 0

    recurse(n - 1, bound)
    if not both_signs:
        canon = []
        for vec, q in out:
            lead = next(v for v in vec if v)
            if lead > 0:
                canon.append((vec, q))
        out = canon
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def gram_of_vectors(vectors, bilinear) -> list[list[Fraction]]:
    """Gram matrix [bilinear(v_i, v_j)] as Fractions."""
    n = len(vectors)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = Fraction(bilinear(vectors[i], vectors[j]))
            g[i][j] = v
            g[j][i] = v
    return g
