"""Exact univariate polynomials over Q.

Coefficients are Fractions stored low degree to high with no trailing
zeros.  Resultants go through a fraction-free Bareiss determinant of the
Sylvester matrix (formal degrees supported, which the binary-form code
needs), discriminants through the classical convention

    disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).

Irreducibility over Q uses a rational-root screen, then factorization
degree patterns modulo several small primes, and falls back to exact
factorization (sympy) only when the modular patterns are inconclusive.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DegenerateInputError
from .rat import parse_rational


class Poly:
    """Univariate polynomial over Q, low-to-high coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "Poly":
        return Poly([])

    @staticmethod
    def x_power(k: int, c=1) -> "Poly":
        return Poly([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.degree else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * Fraction(other) for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return Poly.zero()
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d, lc = other.degree, other.lc
        while len(r) - 1 >= d and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            c = r[-1] / lc
            q[k] = c
            for i in range(d + 1):
                r[k + i] -= c * other.coeffs[i]
        return Poly(q), Poly(r)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        c = self.lc
        return Poly([a / c for a in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, t):
        """Horner evaluation; works for Fractions and anything with * and +."""
        if self.is_zero:
            return Fraction(0) if isinstance(t, (int, Fraction)) else t * 0
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * t + c
        return acc

    def eval_fraction(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def shift(self, c) -> "Poly":
        """f(x + c)."""
        c = Fraction(c)
        out = Poly.zero()
        for a in reversed(self.coeffs):
            out = out * Poly([c, 1]) + Poly([a])
        return out

    def compose(self, inner: "Poly") -> "Poly":
        out = Poly.zero()
        for a in reversed(self.coeffs):
            out = out * inner + Poly([a])
        return out

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_monic(self) -> bool:
        return not self.is_zero and self.lc == 1

    def primitive_scale(self) -> tuple["Poly", Fraction]:
        """(g, c) with self = c*g, g integer primitive with positive lc."""
        if self.is_zero:
            return self, Fraction(1)
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(i, g) for i in ints]), Fraction(g, den)

    def to_json(self) -> list[str]:
        from .rat import format_rational
        return [format_rational(c) for c in self.coeffs]

    @staticmethod
    def from_json(data) -> "Poly":
        return Poly([parse_rational(c) for c in data])


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q."""
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def resultant(f: Poly, g: Poly, deg_f: int | None = None,
              deg_g: int | None = None) -> Fraction:
    """Res(f, g), optionally with formal degrees >= the actual ones.

    Computed as the Sylvester determinant via fraction-free Bareiss on an
    integer-scaled matrix.
    """
    m = f.degree if deg_f is None else deg_f
    n = g.degree if deg_g is None else deg_g
    if m < f.degree or n < g.degree:
        raise ValueError("formal degree below actual degree")
    if f.is_zero or g.is_zero:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    den = math.lcm(*[c.denominator for c in f.coeffs + g.coeffs])
    fs = [int(f[i] * den) for i in range(m, -1, -1)]  # high -> low
    gs = [int(g[i] * den) for i in range(n, -1, -1)]
    rows = []
    for i in range(n):
        rows.append([0] * i + fs + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gs + [0] * (size - n - 1 - i))
    det = _bareiss_det(rows)
    return Fraction(det, den**size)


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss, with pivoting)."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def discriminant(f: Poly) -> Fraction:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f')/lc(f); exact."""
    d = f.degree
    if d < 1:
        raise DegenerateInputError("discriminant of a constant polynomial")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero:
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_changes(vals) -> int:
    signs = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(f: Poly, lo: Fraction | None = None,
                     hi: Fraction | None = None) -> int:
    """Number of distinct real roots in (lo, hi] (whole line by default)."""
    if f.degree < 1:
        return 0
    f = _squarefree_part(f)
    seq = sturm_sequence(f)
    if lo is None or hi is None:
        bound = root_bound(f)
        lo = -bound - 1 if lo is None else lo
        hi = bound + 1 if hi is None else hi
    at_lo = _sign_changes([p.eval_fraction(Fraction(lo)) for p in seq])
    at_hi = _sign_changes([p.eval_fraction(Fraction(hi)) for p in seq])
    return at_lo - at_hi


def _squarefree_part(f: Poly) -> Poly:
    g = gcd(f, f.derivative())
    return (f // g).monic() if g.degree > 0 else f.monic()


def root_bound(f: Poly) -> Fraction:
    """Cauchy bound: all complex roots have |z| <= bound."""
    lc = abs(f.lc)
    m = max((abs(c) for c in f.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lc


def isolate_real_roots(f: Poly, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi], one per real root, hi-lo <= width.

    Sturm-based bisection; exact.
    """
    f = _squarefree_part(f)
    seq = sturm_sequence(f)

    def changes(t: Fraction) -> int:
        return _sign_changes([p.eval_fraction(t) for p in seq])

    b = root_bound(f) + 1
    out = []
    stack = [(-b, changes(-b), b, changes(b))]
    while stack:
        lo, clo, hi, chi = stack.pop()
        k = clo - chi
        if k == 0:
            continue
        if k == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if f.eval_fraction(mid) == 0:
            # nudge the cut so roots stay interior to half-open intervals
            mid = mid + min(hi - mid, width) / 3
        cm = changes(mid)
        stack.append((lo, clo, mid, cm))
        stack.append((mid, cm, hi, chi))
    return sorted(out)


# ----------------------------------------------------------------------
# Irreducibility over Q
# ----------------------------------------------------------------------

def _ptrim(a: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out, p)


def _pmod(a, m, p):
    """a mod m over F_p; m must be trimmed and nonzero."""
    a = _ptrim(a, p)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv) % p
        k = len(a) - 1 - dm
        if c:
            for i in range(dm + 1):
                a[k + i] = (a[k + i] - c * m[i]) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _pgcd(a, b, p):
    a, b = _ptrim(a, p), _ptrim(b, p)
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _pdiv(a, b, p):
    """Exact quotient a // b over F_p (b | a)."""
    a = _ptrim(a, p)
    b = _ptrim(b, p)
    q = [0] * max(1, len(a) - len(b) + 1)
    dm = len(b) - 1
    invb = pow(b[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * invb) % p
        k = len(a) - 1 - dm
        q[k] = c
        for i in range(dm + 1):
            a[k + i] = (a[k + i] - c * b[i]) % p
        while a and a[-1] == 0:
            a.pop()
    return _ptrim(q, p)


def _factor_degrees_mod_p(f: Poly, p: int) -> list[int] | None:
    """Degrees of the irreducible factors of f mod p, or None when f loses
    degree or is not squarefree mod p (those primes teach nothing)."""
    if any(c.denominator % p == 0 for c in f.coeffs):
        return None
    fp = _ptrim([int(c.numerator * pow(c.denominator, -1, p)) for c in f.coeffs], p)
    if len(fp) - 1 != f.degree:
        return None
    inv = pow(fp[-1], -1, p)
    fp = [(c * inv) % p for c in fp]
    dfp = _ptrim([(i * c) % p for i, c in enumerate(fp)][1:], p)
    if not dfp or len(_pgcd(fp, dfp, p)) > 1:
        return None  # not squarefree mod p

    # distinct-degree factorization; only the degree pattern is needed
    degrees: list[int] = []
    h = [0, 1]  # x
    rest = fp[:]
    k = 0
    while len(rest) - 1 > 0:
        k += 1
        if 2 * k > len(rest) - 1:
            degrees.append(len(rest) - 1)
            break
        # h <- h^p mod rest
        hp = [1]
        base = _pmod(h, rest, p)
        e = p
        while e:
            if e & 1:
                hp = _pmod(_pmul(hp, base, p), rest, p)
            e >>= 1
            if e:
                base = _pmod(_pmul(base, base, p), rest, p)
        h = hp
        diff = h[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(rest, diff, p)
        if len(g) - 1 > 0:
            degrees.extend([k] * ((len(g) - 1) // k))
            rest = _pdiv(rest, g, p)
    return degrees


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


_SCREEN_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over Q.

    Rational-root screen, then intersection of mod-p factor degree
    patterns over several small primes; exact factorization fallback
    (sympy) when patterns stay inconclusive.
    """
    g, _ = f.primitive_scale()
    d = g.degree
    if d < 1:
        return False
    if d == 1:
        return True
    # rational-root screen (skipped for huge constant terms; the modular
    # patterns and the exact fallback cover those)
    a0, an = g.coeffs[0], g.coeffs[-1]
    if a0 == 0:
        return False
    if abs(a0) <= 10**9 and abs(an) <= 10**9:
        for p in _divisors(abs(int(a0))):
            for q in _divisors(abs(int(an))):
                for s in (1, -1):
                    if g.eval_fraction(Fraction(s * p, q)) == 0:
                        return False
    possible = set(range(0, d + 1))
    used = 0
    for p in _SCREEN_PRIMES:
        degs = _factor_degrees_mod_p(g, p)
        if degs is None:
            continue
        used += 1
        possible &= _subset_sums(degs)
        if possible <= {0, d}:
            return True
        if used >= 5:
            break
    # exact fallback
    import sympy

    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(g.coeffs))
    _, factors = sympy.factor_list(expr, x)
    return len(factors) == 1 and factors[0][1] == 1


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)
