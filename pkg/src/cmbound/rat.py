"""Exact rational helpers: parsing, integer-sqrt based bounds, decimals.

Everything here is exact; no floating point.  Square/cube roots of
rationals are returned as certified Fraction bounds obtained from
``math.isqrt`` (resp. integer cube root) on scaled integers.
"""

from __future__ import annotations

import math
from fractions import Fraction


def parse_rational(s) -> Fraction:
    """Parse "p/q" / "p" strings (or ints) into a Fraction."""
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not a rational: {s!r}")


def format_rational(q: Fraction) -> str:
    """Render a Fraction as "p/q" ("p" when integral)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def floor_sqrt(q: Fraction) -> int:
    """floor(sqrt(q)) for q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    return math.isqrt(q.numerator * q.denominator) // q.denominator


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo <= sqrt(q) <= hi and hi - lo <= 2^-bits * max(1, hi)."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    n = q.numerator * q.denominator * scale * scale
    r = math.isqrt(n)
    den = q.denominator * scale
    return Fraction(r, den), Fraction(r + 1, den)


def icbrt(n: int) -> int:
    """floor(n^(1/3)) for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def cbrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """(lo, hi) enclosing q^(1/3), q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    n = q.numerator * q.denominator**2 * scale**3
    r = icbrt(n)
    den = q.denominator * scale
    return Fraction(r, den), Fraction(r + 1, den)


def floor_plus_sqrt(c: Fraction, q: Fraction) -> int:
    """floor(c + sqrt(q)) exactly, q >= 0."""
    k = math.floor(c) + floor_sqrt(q)
    # k is within 1 of the answer; fix up by exact comparison.
    while _le_sqrt(Fraction(k + 1) - c, q):
        k += 1
    while not _le_sqrt(Fraction(k) - c, q):
        k -= 1
    return k


def ceil_minus_sqrt(c: Fraction, q: Fraction) -> int:
    """ceil(c - sqrt(q)) exactly, q >= 0."""
    return -floor_plus_sqrt(-c, q)


def _le_sqrt(t: Fraction, q: Fraction) -> bool:
    """t <= sqrt(q) for q >= 0."""
    if t <= 0:
        return True
    return t * t <= q


def best_rational_in_window(center: Fraction, radius: Fraction,
                            den_bound: int) -> Fraction | None:
    """The unique p/q with q <= den_bound and |p/q - center| <= radius, or None.

    Requires radius < 1/(2*den_bound^2), which makes the candidate unique
    and guarantees (classical continued-fraction theorem) that it appears
    among the convergents of ``center``.
    """
    if den_bound < 1:
        raise ValueError("denominator bound must be >= 1")
    if radius >= Fraction(1, 2 * den_bound * den_bound):
        raise ValueError("window too wide for a unique answer")
    best = None
    for p, q in convergents(center):
        if q > den_bound:
            break
        if abs(Fraction(p, q) - center) <= radius:
            best = Fraction(p, q)
    return best


def convergents(x: Fraction):
    """Yield (p, q) continued-fraction convergents of x, final one exact."""
    p_prev, q_prev = 1, 0
    p, q = math.floor(x), 1
    yield p, q
    rem = x - p
    while rem != 0:
        x = 1 / rem
        a = math.floor(x)
        rem = x - a
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        yield p, q


def parse_decimal(s: str) -> tuple[Fraction, Fraction]:
    """Parse a plain decimal string, returning (value, half_ulp).

    "0.142857" -> (142857/10^6, 1/(2*10^6)).  Supports signs and an
    optional exponent ("1.5e-3").  half_ulp is the implied rounding
    error of the final written digit.
    """
    s = s.strip()
    body = s
    exp = 0
    for marker in ("e", "E"):
        if marker in body:
            body, e = body.split(marker, 1)
            exp = int(e)
            break
    neg = body.startswith("-")
    body = body.lstrip("+-")
    if "." in body:
        ipart, fpart = body.split(".", 1)
    else:
        ipart, fpart = body, ""
    if not (ipart + fpart).isdigit() or (ipart + fpart) == "":
        raise ValueError(f"not a decimal literal: {s!r}")
    digits = int(ipart + fpart or "0")
    k = len(fpart) - exp
    value = Fraction(digits, 10**k) if k >= 0 else Fraction(digits * 10**-k)
    if neg:
        value = -value
    half_ulp = Fraction(1, 2) * (Fraction(1, 10**k) if k >= 0 else Fraction(10**-k))
    return value, half_ulp
