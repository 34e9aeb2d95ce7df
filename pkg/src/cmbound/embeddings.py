"""Certified complex embeddings of number fields.

Roots are seeded with mpmath at working precision and polished by Newton
iteration; certification is then *exact*: midpoints become dyadic
rationals, and the containment radius n*|f(z)/f'(z)| (at least one root
lies that close to z, since f'/f = sum 1/(z - root)) is bounded from
above in pure Fraction arithmetic.  Pairwise disjointness of the disks
is decided exactly, which pins exactly one root per disk.

The Ball class is a tiny complex ball arithmetic over Fractions: centers
are exact, radii only ever grow through upper bounds (L1 >= L2 tricks
and isqrt-based square-root bounds), so every enclosure it produces is
rigorous with no directed-rounding analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import PrecisionExhaustedError
from .poly import Poly
from .rat import sqrt_bounds


@dataclass(frozen=True)
class Ball:
    """Closed complex disk {z : |z - (re + i*im)| <= rad}, all exact."""

    re: Fraction
    im: Fraction
    rad: Fraction

    @staticmethod
    def exact(re, im=0) -> "Ball":
        return Ball(Fraction(re), Fraction(im), Fraction(0))

    @staticmethod
    def real_interval(lo: Fraction, hi: Fraction) -> "Ball":
        lo, hi = Fraction(lo), Fraction(hi)
        return Ball((lo + hi) / 2, Fraction(0), (hi - lo) / 2)

    def __add__(self, o: "Ball") -> "Ball":
        return Ball(self.re + o.re, self.im + o.im, self.rad + o.rad)

    def __sub__(self, o: "Ball") -> "Ball":
        return Ball(self.re - o.re, self.im - o.im, self.rad + o.rad)

    def __neg__(self) -> "Ball":
        return Ball(-self.re, -self.im, self.rad)

    def conj(self) -> "Ball":
        return Ball(self.re, -self.im, self.rad)

    def abs_upper(self) -> Fraction:
        """Upper bound for |z| over the ball."""
        _, hi = sqrt_bounds(self.re * self.re + self.im * self.im, 16)
        return hi + self.rad

    def abs_lower(self) -> Fraction:
        """Lower bound for |z| over the ball (>= 0)."""
        lo, _ = sqrt_bounds(self.re * self.re + self.im * self.im, 16)
        v = lo - self.rad
        return v if v > 0 else Fraction(0)

    def __mul__(self, o) -> "Ball":
        if not isinstance(o, Ball):
            q = Fraction(o)
            return Ball(self.re * q, self.im * q, self.rad * abs(q))
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        # L1 bound |z| <= |re| + |im| keeps radius propagation cheap
        rad = ((abs(self.re) + abs(self.im)) * o.rad
               + (abs(o.re) + abs(o.im)) * self.rad
               + self.rad * o.rad)
        return Ball(re, im, rad)

    def compress(self, bits: int) -> "Ball":
        """Snap the center to the 2^-bits grid, absorbing the shift into the
        radius.  Keeps Fraction sizes bounded through long computations."""
        scale = 1 << bits
        re = Fraction(round(self.re * scale), scale)
        im = Fraction(round(self.im * scale), scale)
        return Ball(re, im, self.rad + Fraction(2, scale))

    __rmul__ = __mul__

    def inverse(self) -> "Ball":
        lb = self.abs_lower()
        if lb <= self.rad or lb == 0:
            raise ZeroDivisionError("ball contains zero")
        n2 = self.re * self.re + self.im * self.im
        # exact inverse of the center, radius r/(lb*(lb-r)) covers the rest
        return Ball(self.re / n2, -self.im / n2,
                    self.rad / (lb * (lb - self.rad)))

    def __truediv__(self, o: "Ball") -> "Ball":
        return self * o.inverse()

    def contains_zero(self) -> bool:
        return self.abs_lower() == 0 or \
            self.re * self.re + self.im * self.im <= self.rad * self.rad

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        return ((self.re - re) ** 2 + (self.im - im) ** 2
                <= self.rad * self.rad)

    def disjoint(self, o: "Ball") -> bool:
        d2 = (self.re - o.re) ** 2 + (self.im - o.im) ** 2
        s = self.rad + o.rad
        return d2 > s * s

    def intersects(self, o: "Ball") -> bool:
        return not self.disjoint(o)

    def sign_of_imag(self) -> int | None:
        """+1 / -1 if the ball lies strictly off the real axis, else None."""
        if self.im - self.rad > 0:
            return 1
        if self.im + self.rad < 0:
            return -1
        return None

    def real_bounds(self) -> tuple[Fraction, Fraction]:
        return self.re - self.rad, self.re + self.rad

    def sqrt_nonnegative(self) -> "Ball":
        """Ball containing sqrt of a ball around a nonnegative real."""
        lo = self.re - self.rad
        hi = self.re + self.rad
        if lo < 0:
            lo = Fraction(0)
        slo, _ = sqrt_bounds(lo, 24)
        _, shi = sqrt_bounds(hi, 24)
        return Ball.real_interval(slo, shi)

    def midpoint_complex(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"Ball({float(self.re):.6g}{float(self.im):+.6g}j, r<{float(self.rad):.3g})"


def eval_poly_ball(coeffs, z: Ball) -> Ball:
    """Horner evaluation of a polynomial (Fraction coefficients) on a ball."""
    acc = Ball.exact(0)
    for c in reversed(list(coeffs)):
        acc = acc * z + Ball.exact(Fraction(c))
    return acc


@dataclass(frozen=True)
class EmbeddingSet:
    """Certified pairwise-disjoint root disks of a defining polynomial.

    Sorted by (re, im) of the exact midpoints; each disk is proven to
    contain exactly one root.  ``precision_bits`` is the guaranteed
    radius bound: rad <= 2^-precision_bits.
    """

    field: object
    balls: tuple[Ball, ...]
    precision_bits: int

    def evaluate(self, a, i: int) -> Ball:
        """Certified enclosure of phi_i(a) for a FieldElement a."""
        return eval_poly_ball(a.coords, self.balls[i])

    def evaluate_all(self, a) -> list[Ball]:
        return [eval_poly_ball(a.coords, b) for b in self.balls]

    def conjugate_index(self, i: int) -> int:
        """Index j with root_j = conj(root_i); exact decision."""
        bi = self.balls[i].conj()
        hits = [j for j, bj in enumerate(self.balls) if bi.intersects(bj)]
        if len(hits) != 1:
            raise PrecisionExhaustedError(
                "conjugate matching ambiguous; refine the embeddings")
        return hits[0]

    def locate(self, b: Ball) -> int | None:
        """Index of the unique disk intersecting b, or None/ambiguous."""
        hits = [j for j, bj in enumerate(self.balls) if b.intersects(bj)]
        return hits[0] if len(hits) == 1 else None


def compute_embeddings(field, precision_bits: int = 64,
                       _separation_factor: int = 8) -> EmbeddingSet:
    """Certified disjoint disks around the roots of the defining polynomial.

    precision_bits >= 53 required; escalates working precision until all
    radii are below 2^-precision_bits and midpoint separation exceeds
    ``_separation_factor`` times the largest radius (which makes
    conjugate matching unambiguous).
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    f = field.defining_poly
    n = f.degree
    coeffs = list(f.coeffs)
    target = Fraction(1, 2**precision_bits)
    work = precision_bits + 64
    for _ in range(24):
        balls = _certified_roots(coeffs, n, work)
        if balls is not None and all(b.rad <= target for b in balls):
            maxr = max(b.rad for b in balls)
            ok = True
            for i in range(n):
                for j in range(i + 1, n):
                    d2 = ((balls[i].re - balls[j].re) ** 2
                          + (balls[i].im - balls[j].im) ** 2)
                    s = _separation_factor * maxr + balls[i].rad + balls[j].rad
                    if d2 <= s * s:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                balls.sort(key=lambda b: (b.re, b.im))
                return EmbeddingSet(field, tuple(balls), precision_bits)
        work *= 2
    raise PrecisionExhaustedError(
        f"could not certify disjoint roots of {f!r} at {precision_bits} bits")


def _certified_roots(coeffs, n, work_prec) -> list[Ball] | None:
    with mpmath.workprec(work_prec):
        cs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
              for c in coeffs]
        try:
            seeds = mpmath.polyroots(list(reversed(cs)), maxsteps=200,
                                     extraprec=work_prec // 2)
        except Exception:
            return None
        # Newton polish
        der = [i * c for i, c in enumerate(cs)][1:]
        polished = []
        for z in seeds:
            z = mpmath.mpc(z)
            for _ in range(4):
                fv = _horner_mp(cs, z)
                dv = _horner_mp(der, z)
                if dv == 0:
                    break
                z = z - fv / dv
            polished.append(z)
    balls = []
    for z in polished:
        re = _mpf_to_fraction(z.real)
        im = _mpf_to_fraction(z.imag)
        val_re, val_im = _eval_exact(coeffs, re, im)
        dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
        der_re, der_im = _eval_exact(dcoeffs, re, im)
        der_n2 = der_re * der_re + der_im * der_im
        if der_n2 == 0:
            return None
        val_n2 = val_re * val_re + val_im * val_im
        # radius >= n * |f(z)| / |f'(z)|
        _, hi = sqrt_bounds(Fraction(n * n) * val_n2 / der_n2, 16)
        balls.append(Ball(re, im, hi * Fraction(1025, 1024)))
    return balls


def _horner_mp(cs, z):
    acc = mpmath.mpc(0)
    for c in reversed(cs):
        acc = acc * z + c
    return acc


def _mpf_to_fraction(x) -> Fraction:
    """Exact conversion of a (finite) mpf to a Fraction.

    Reads the mantissa/exponent pair directly; re-wrapping through
    mpmath.mpf() would re-round to the *current* context precision.
    """
    if x == 0:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    man = int(man)  # may be a gmpy2 mpz; keep Fractions on python ints
    exp = int(exp)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << (-exp))


def _eval_exact(coeffs, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact complex Horner evaluation at re + i*im."""
    are, aim = Fraction(0), Fraction(0)
    for c in reversed(list(coeffs)):
        are, aim = are * re - aim * im + Fraction(c), are * im + aim * re
    return are, aim


def real_embeddings(field, precision_bits: int = 64) -> list[tuple[Fraction, Fraction]]:
    """Exact isolating intervals for all real roots (totally real fields).

    Sturm bisection; purely rational, no floating point.
    """
    from .poly import isolate_real_roots
    width = Fraction(1, 2**precision_bits)
    return isolate_real_roots(field.defining_poly, width)
