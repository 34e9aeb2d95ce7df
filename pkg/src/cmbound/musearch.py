"""Totally imaginary generators of CM sextic orders and B = -Tr(mu^2)/2.

Three search modes:

* exhaustive -- minimize B over all generators in the minus-lattice
  O^- = {mu in O : conj(mu) = -mu}, proved minimal by enumerating every
  lattice vector up to the found value;
* minkowski_case1 -- no imaginary quadratic subfield: mu = gamma - conj(gamma)
  for gamma an order element inside the convex body
  {|Re x_i| < 1, sum Im(x_i)^2 < R^2}, giving
  B <= floor((6/pi)^(2/3) |disc O|^(1/3));
* minkowski_case2 -- K1 exists: mu = sqrt(disc O1) * gamma with gamma in
  O+ = O intersect K+, giving B <= |disc O1| (1 + 2 sqrt(|disc O+|)),
  realized as the exact integer |d1| + isqrt(4 d1^2 |d+|).

The enumerations work on exact rational Gram matrices built from trace
pairings; the box memberships and all minimality claims are decided in
exact arithmetic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cmstructure import CMStructure
from .errors import DomainError, NotAnOrderError, NotCMError
from .lattice import enumerate_short_vectors, gram_of_vectors
from .numberfield import FieldElement, OrderBasis
from .rat import format_rational
from .intervals import floor_of_case1_bound


@dataclass(frozen=True)
class MinusLattice:
    """Rank-3 lattice O^- with the quadratic form Q(mu) = -Tr(mu^2)."""

    basis: tuple  # 3 FieldElements
    gram: tuple   # 3x3 integer matrix of -Tr(b_i b_j)

    def element(self, coeffs) -> FieldElement:
        out = None
        for c, b in zip(coeffs, self.basis):
            term = int(c) * b
            out = term if out is None else out + term
        return out


@dataclass(frozen=True)
class MuCertificate:
    """A totally imaginary generator with its trace invariant."""

    mu: FieldElement
    B: int
    method: str
    bound_used: Fraction | None

    def to_json(self):
        return {
            "mu": [format_rational(c) for c in self.mu.coords],
            "B": self.B,
            "method": self.method,
            "bound_used": None if self.bound_used is None
            else format_rational(self.bound_used),
        }


def conjugation_stable(order: OrderBasis, cm: CMStructure) -> bool:
    return all(order.contains(cm.conj(b)) for b in order.elements())


def stabilize_order(order: OrderBasis, cm: CMStructure) -> OrderBasis:
    """O itself when conjugation-stable, else O intersect conj(O) (warned)."""
    if conjugation_stable(order, cm):
        return order
    warnings.warn("order is not conjugation-stable; replacing it by the "
                  "intersection with its conjugate", stacklevel=3)
    rows_a = [[Fraction(x, order.den) for x in row] for row in order.basis]
    rows_b = [list(cm.conj(b).coords) for b in order.elements()]
    meet = linalg.lattice_intersection(rows_a, rows_b)
    den = 1
    for row in meet:
        for x in row:
            den = math.lcm(den, x.denominator)
    ints = linalg.hnf_rows([[int(x * den) for x in row] for row in meet])
    return OrderBasis(order.field, ints, den)


def minus_lattice(order: OrderBasis, cm: CMStructure,
                  allow_fix: bool = False) -> MinusLattice:
    """The rank-3 sublattice {mu in O : conj(mu) = -mu} with its Gram.

    Raises NotAnOrderError on conjugation-unstable input unless allow_fix,
    in which case the order is replaced by O intersect conj(O) first.
    """
    if cm.field != order.field:
        raise NotCMError("order and CM structure belong to different fields")
    if not conjugation_stable(order, cm):
        if not allow_fix:
            raise NotAnOrderError("order basis is not conjugation-stable")
        order = stabilize_order(order, cm)
    n = order.field.degree
    # condition (conj + id) (sum u_i b_i) = 0 on integer coefficient vectors
    cols = [list((cm.conj(b) + b).coords) for b in order.elements()]
    cond = [[cols[i][r] for i in range(n)] for r in range(n)]
    ker = linalg.integer_kernel(cond)
    if len(ker) != n // 2:
        raise NotCMError(f"minus-lattice rank {len(ker)} != {n // 2}")
    basis = tuple(order.from_coordinates(u) for u in ker)
    gram_q = gram_of_vectors(basis, lambda a, b: -(a * b).trace())
    gram = []
    for row in gram_q:
        r = []
        for x in row:
            if x.denominator != 1:
                raise NotAnOrderError("trace pairing is not integral on O^-")
            r.append(int(x))
        gram.append(tuple(r))
    return MinusLattice(basis=basis, gram=tuple(gram))


def _is_generator(mu: FieldElement) -> bool:
    return mu.minimal_polynomial().degree == mu.field.degree


def _imaginary_generates(mu: FieldElement) -> bool:
    """Generator test for nonzero purely imaginary mu in a sextic CM field.

    Such a mu has degree 2 or 6 (mu^2 lies in the cubic K+), and degree 2
    happens exactly when mu^2 is rational; this avoids a full minimal
    polynomial inside enumeration loops.  The final certificate is still
    validated with the exact minimal-polynomial degree.
    """
    return not mu.is_zero() and not (mu * mu).is_rational()


def _B_of(mu: FieldElement) -> int:
    q = -(mu * mu).trace()
    assert q.denominator == 1 and q > 0
    b2 = Fraction(q, 2)
    assert b2.denominator == 1, "B = -Tr(mu^2)/2 must be an integer"
    return int(b2)


def _validate_certificate(cm: CMStructure, mu: FieldElement, B: int):
    if cm.conj(mu) != -mu:
        raise DomainError("mu is not totally imaginary")
    if not _is_generator(mu):
        raise DomainError("mu does not generate the field")
    if B < 2:
        raise DomainError(f"B = {B} < 2 violates the integrality bound")


def find_mu(order: OrderBasis, cm: CMStructure, mode: str = "exhaustive",
            ) -> MuCertificate:
    """A MuCertificate for the given CM order; see the module docstring.

    Modes: "exhaustive", "minkowski_case1", "minkowski_case2",
    "minkowski" (dispatch on the presence of K1).
    """
    if cm.degree != 6:
        raise NotCMError("mu search requires a sextic CM order")
    order = stabilize_order(order, cm)
    if mode == "minkowski":
        mode = "minkowski_case2" if cm.k1_discriminant is not None \
            else "minkowski_case1"
    if mode == "exhaustive":
        return _find_mu_exhaustive(order, cm)
    if mode == "minkowski_case1":
        if cm.k1_discriminant is not None:
            raise DomainError(
                "case 1 applies only when K has no imaginary quadratic subfield")
        return _find_mu_case1(order, cm)
    if mode == "minkowski_case2":
        if cm.k1_discriminant is None:
            raise DomainError(
                "case 2 needs an imaginary quadratic subfield")
        return _find_mu_case2(order, cm)
    raise ValueError(f"unknown mode {mode!r}")


def _find_mu_exhaustive(order: OrderBasis, cm: CMStructure) -> MuCertificate:
    lat = minus_lattice(order, cm, allow_fix=True)
    gram = [list(r) for r in lat.gram]
    # grow the radius until a generator shows up; Q = 2B >= 4 always.
    # enumerate_short_vectors sorts by (Q, coords), so the first generator
    # in that order is the minimum with deterministic tie-breaking.
    radius = Fraction(4)
    mu_min = None
    for _ in range(64):
        for vec, q in enumerate_short_vectors(gram, radius):
            mu = lat.element(vec)
            if _imaginary_generates(mu):
                mu_min = mu
                break
        if mu_min is not None:
            break
        radius *= 2
    if mu_min is None:
        raise DomainError("no generator found in O^- (should not happen)")
    B = _B_of(mu_min)
    _validate_certificate(cm, mu_min, B)
    return MuCertificate(mu=mu_min, B=B, method="exhaustive", bound_used=None)


def _re_im_grams(order: OrderBasis, cm: CMStructure):
    """Rational Grams of sum_i Re(phi_i x)Re(phi_i y) and Im...Im on the
    order basis, from trace pairings:
      A = (Tr(x conj y) + Tr(x y))/4,   B = (Tr(x conj y) - Tr(x y))/4.
    """
    els = order.elements()
    n = len(els)
    g_re = [[Fraction(0)] * n for _ in range(n)]
    g_im = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            t_xy = (els[i] * els[j]).trace()
            t_xcy = (els[i] * cm.conj(els[j])).trace()
            a = (t_xcy + t_xy) / 4
            b = (t_xcy - t_xy) / 4
            g_re[i][j] = g_re[j][i] = a
            g_im[i][j] = g_im[j][i] = b
    return g_re, g_im


def _find_mu_case1(order: OrderBasis, cm: CMStructure) -> MuCertificate:
    disc = abs(order.discriminant())
    bmax = floor_of_case1_bound(disc)
    g_re, g_im = _re_im_grams(order, cm)
    # candidates live in the ellipsoid (1/3) sum Re^2 + (4/(bmax+1)) sum Im^2 <= 2,
    # a superset of the open box used by the convex-body argument.  The box
    # only promises existence, so search outward in shells and take the
    # first (deterministic) hit instead of sweeping the full ellipsoid.
    n = len(g_re)
    gram = [[g_re[i][j] / 3 + g_im[i][j] * Fraction(4, bmax + 1)
             for j in range(n)] for i in range(n)]

    def candidates(cap):
        for vec, _q in enumerate_short_vectors(gram, cap):
            gamma = order.from_coordinates(vec)
            mu = gamma - cm.conj(gamma)
            q = -(mu * mu).trace()
            if q > 2 * bmax:
                continue
            if not _imaginary_generates(mu):
                continue
            yield mu

    mu = _first_in_schedule(candidates, Fraction(2))
    if mu is None:
        raise DomainError(
            "Minkowski case-1 enumeration found no generator below the bound "
            "(violates the convex-body guarantee)")
    B = _B_of(mu)
    _validate_certificate(cm, mu, B)
    assert B <= bmax
    return MuCertificate(mu=mu, B=B, method="minkowski_case1",
                         bound_used=Fraction(bmax))


def _first_in_schedule(candidates, cap: Fraction):
    """First candidate (in the sorted enumeration order) at the smallest
    cap of a doubling schedule; falls back to the full cap."""
    t = cap / 64
    while True:
        t = min(t, cap)
        for mu in candidates(t):
            return mu
        if t == cap:
            return None
        t *= 2


def suborder_in_subfield(order: OrderBasis, cm: CMStructure,
                         which: str) -> tuple[list[FieldElement], list[list[Fraction]], int]:
    """(basis, gram, disc) of O intersect K1 ("k1") or K+ ("kplus").

    gram uses the trace form of the subfield: Tr_K = [K : subfield] * Tr_sub
    on the subfield.
    """
    if which == "k1":
        sub = cm.k1_subspace()
        quotient = 3
    elif which == "kplus":
        sub = cm.kplus_subspace()
        quotient = 2
    else:
        raise ValueError(which)
    rows = [[Fraction(x, order.den) for x in row] for row in order.basis]
    coeffs = linalg.sublattice_in_subspace(rows, sub)
    basis = [order.from_coordinates(u) for u in coeffs]
    if len(basis) != len(sub):
        raise DomainError(f"O cap {which} has rank {len(basis)}, expected {len(sub)}")
    gram = gram_of_vectors(basis,
                           lambda a, b: (a * b).trace() / quotient)
    d = linalg.det(gram)
    if d.denominator != 1:
        raise DomainError(f"suborder in {which} has non-integral discriminant")
    return basis, gram, int(d)


def _find_mu_case2(order: OrderBasis, cm: CMStructure) -> MuCertificate:
    _, _, d1 = suborder_in_subfield(order, cm, "k1")
    basis_p, gram_p, dp = suborder_in_subfield(order, cm, "kplus")
    assert d1 < 0 and dp > 0
    # B <= |d1| (1 + 2 sqrt dp); exact integer floor: |d1| + isqrt(4 d1^2 dp)
    bbound = abs(d1) + math.isqrt(4 * d1 * d1 * dp)
    # sqrt(d1) in the order: the quadratic order of discriminant d1 is
    # Z[(d1 + sqrt(d1))/2] and contains sqrt(d1); express it via k1_sqrt.
    s = cm.k1_sqrt * _sqrt_disc_scale(cm, d1)
    if not order.contains(s):
        raise DomainError("sqrt(disc O1) escaped the order (internal error)")
    # enumerate gamma in O+ with Tr_+(gamma^2) <= bbound/|d1|, in shells
    def candidates(cap):
        for vec, q in enumerate_short_vectors(gram_p, cap):
            gamma = _combine(basis_p, vec)
            if gamma.is_rational():
                continue
            mu = s * gamma
            if not _imaginary_generates(mu):
                continue
            if -(mu * mu).trace() > 2 * bbound:
                continue
            yield mu

    mu = _first_in_schedule(candidates, Fraction(bbound, abs(d1)))
    if mu is None:
        raise DomainError(
            "Minkowski case-2 enumeration found no generator below the bound "
            "(violates the convex-body guarantee)")
    B = _B_of(mu)
    _validate_certificate(cm, mu, B)
    assert B <= bbound
    return MuCertificate(mu=mu, B=B, method="minkowski_case2",
                         bound_used=Fraction(bbound))


def _sqrt_disc_scale(cm: CMStructure, d1: int) -> int:
    """Integer m with sqrt(d1) = m * sqrt(k1_discriminant): d1 = m^2 * d."""
    d = cm.k1_discriminant
    m2 = Fraction(d1, d)
    assert m2.denominator == 1
    m = math.isqrt(int(m2))
    assert m * m == int(m2), "disc of a suborder differs by a square"
    return m


def _combine(basis, vec) -> FieldElement:
    out = None
    for c, b in zip(vec, basis):
        term = int(c) * b
        out = term if out is None else out + term
    return out
