"""Prime bounds from B and the discriminant inequality checks.

The headline threshold is exact: p is certified not to be a prime of
geometric bad reduction (for primitive CM types) once p >= B^10 / 8.
The auxiliary quantity B^7.5 / 4 is returned as a certified rational
enclosure, and the 0.019 B^15 bound is handled internally as the exact
rational 2^18 3^-15 B^15 that it rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DomainError, InvalidBError, NotAGeneratorError
from .musearch import MuCertificate, find_mu
from .numberfield import OrderBasis
from .poly import Poly, discriminant
from .rat import format_rational, sqrt_bounds


@dataclass(frozen=True)
class BoundReport:
    """Explicit prime bound attached to a B value."""

    B: int
    threshold: Fraction                     # B^10 / 8, exact
    delta_threshold: tuple[Fraction, Fraction]  # encloses B^7.5 / 4
    largest_possible_bad_prime: int | None  # largest prime < threshold
    intrinsic: Fraction | None = None       # Prop-1.3-style bound on B

    def certified_good(self, p: int) -> bool:
        """True when p cannot be a prime of geometric bad reduction
        (primitive CM type assumed by the caller)."""
        return Fraction(p) >= self.threshold

    def to_json(self):
        lo, hi = self.delta_threshold
        return {
            "B": self.B,
            "threshold": format_rational(self.threshold),
            "threshold_decimal": f"{float(self.threshold):.6g}",
            "delta_threshold": [format_rational(lo), format_rational(hi)],
            "largest_possible_bad_prime": self.largest_possible_bad_prime,
            "intrinsic": None if self.intrinsic is None
            else format_rational(self.intrinsic),
        }


def bound_from_B(B: int, intrinsic: Fraction | None = None) -> BoundReport:
    """Exact threshold B^10/8 with its derived data.

    The largest prime below the threshold is only materialized when the
    threshold fits in 64 bits; beyond that the field stays None.
    """
    if B != int(B) or B < 2:
        raise InvalidBError(
            f"B must be an integer >= 2 (got {B}); "
            "B = -Tr(mu^2)/2 of a totally imaginary generator is never 1")
    B = int(B)
    threshold = Fraction(B**10, 8)
    largest = None
    if threshold < 2**64:
        below = -(-threshold.numerator // threshold.denominator) - 1
        # largest integer strictly below the threshold
        if Fraction(below + 1) < threshold:
            below += 1
        if below >= 2:
            largest = int(sympy.prevprime(below + 1))
    return BoundReport(B=B, threshold=threshold,
                       delta_threshold=delta_bound(B),
                       largest_possible_bad_prime=largest,
                       intrinsic=intrinsic)


def delta_bound(B: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure of B^7.5 / 4, width below 2^-32."""
    if B < 2:
        raise InvalidBError(f"B must be an integer >= 2 (got {B})")
    # B^7.5/4 = B^7 sqrt(B) / 4; make sqrt tight enough for the target width
    bits = 36 + 7 * B.bit_length()
    lo, hi = sqrt_bounds(Fraction(B), bits)
    return Fraction(B**7) * lo / 4, Fraction(B**7) * hi / 4


def intrinsic_bound(order: OrderBasis, cm) -> BoundReport:
    """Prop-1.3-style bound: B bound from the applicable Minkowski case,
    then the threshold for that bound."""
    mode = "minkowski_case2" if cm.k1_discriminant is not None \
        else "minkowski_case1"
    cert = find_mu(order, cm, mode)
    bbound = cert.bound_used
    assert bbound is not None and bbound.denominator == 1
    return bound_from_B(int(bbound), intrinsic=bbound)


def disc_inequality_check(mu_cert: MuCertificate,
                          order: OrderBasis) -> dict:
    """|disc Z[mu]| computed two ways, plus the 2^18 3^-15 B^15 bound.

    lhs: |disc(minimal polynomial of mu)| via the resultant route;
    product_formula_value: 2^6 a^2 b^2 c^2 (a^2-b^2)^4 (a^2-c^2)^4 (b^2-c^2)^4
    where +-ai, +-bi, +-ci are the embeddings of mu, evaluated exactly in
    the symmetric functions of the cubic with roots a^2, b^2, c^2;
    rhs: the exact rational 2^18 3^-15 B^15 (conservatively rounded as
    0.019 B^15 in decimal reporting).
    """
    mu = mu_cert.mu
    f = mu.minimal_polynomial()
    if f.degree != mu.field.degree:
        raise NotAGeneratorError("mu does not generate the field")
    lhs = abs(discriminant(f))
    # minimal cubic of mu^2 has roots -a^2, -b^2, -c^2
    g = (mu * mu).minimal_polynomial()
    if g.degree != 3:
        raise NotAGeneratorError("mu^2 does not generate the cubic subfield")
    # h(x) = -g(-x): monic cubic with roots a^2, b^2, c^2
    h = Poly([-c if i % 2 == 0 else c for i, c in enumerate(g.coeffs)])
    e1 = -h.coeffs[2]
    e3 = -h.coeffs[0]
    disc_h = _cubic_disc(h)
    product = Fraction(64) * e3 * disc_h**2
    B = mu_cert.B
    assert e1 == B, "a^2 + b^2 + c^2 must equal B"
    rhs = Fraction(2**18, 3**15) * Fraction(B) ** 15
    holds = (lhs == product) and (lhs < rhs)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "product_formula_value": product,
        "holds": holds,
    }


def _cubic_disc(h: Poly) -> Fraction:
    """Discriminant of a cubic by the explicit formula (kept independent
    of the resultant route on purpose)."""
    d, c, b, a = h.coeffs[0], h.coeffs[1], h.coeffs[2], h.coeffs[3]
    return (18 * a * b * c * d - 4 * b**3 * d + b**2 * c**2
            - 4 * a * c**3 - 27 * a**2 * d**2)
