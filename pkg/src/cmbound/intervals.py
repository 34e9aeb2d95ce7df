"""Certified rational enclosures of the few irrational constants we need.

pi comes from mpmath at a chosen working precision with two units of
slack in the last place (mpmath's pi is correctly rounded; the slack
makes the enclosure safe without trusting that).  Everything downstream
is exact Fraction arithmetic on the enclosure endpoints.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .rat import cbrt_bounds


def pi_bounds(bits: int) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo < pi < hi, width about 2^(2-bits)."""
    with mpmath.workprec(bits):
        p = mpmath.pi()
        sign, man, exp, _ = p._mpf_
        man = int(man)
        exp = int(exp)
    val = Fraction(man * (1 << exp)) if exp >= 0 else Fraction(man, 1 << -exp)
    # 1 ulp = 2^exp at this precision; allow two each side
    step = Fraction(2, 1 << -exp) if exp < 0 else Fraction(2 * (1 << exp))
    return val - step, val + step


def case1_bound_interval(abs_disc: int, bits: int = 96) -> tuple[Fraction, Fraction]:
    """Enclosure of (6/pi)^(2/3) * d^(1/3) = (36 d)^(1/3) / pi^(2/3)."""
    nlo, nhi = cbrt_bounds(Fraction(36 * abs_disc), bits)
    plo, phi = pi_bounds(bits)
    dlo, _ = cbrt_bounds(plo * plo, bits)
    _, dhi = cbrt_bounds(phi * phi, bits)
    return nlo / dhi, nhi / dlo


def floor_of_case1_bound(abs_disc: int) -> int:
    """floor((6/pi)^(2/3) |disc|^(1/3)}, decided by refinement.

    The value is transcendental (a rational value would force pi to be
    algebraic), so the floor is eventually decided.
    """
    bits = 96
    for _ in range(20):
        lo, hi = case1_bound_interval(abs_disc, bits)
        flo = lo.__floor__()
        if flo == hi.__floor__():
            return int(flo)
        bits *= 2
    raise AssertionError("floor of the case-1 bound did not stabilize")
