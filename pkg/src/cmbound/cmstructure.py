"""CM structure of sextic fields.

Detection strategy for complex conjugation (the only automorphism a
non-Galois sextic CM field is guaranteed to have):

1. Sturm count proves there is no real embedding (else: not CM).
2. Certified root disks give the exact conjugation permutation c on
   embeddings (the disk containing the mirror image of disk i).
3. If conjugation exists as a field automorphism, it sends the generator
   theta to another root rho of the defining polynomial, and rho's
   power-basis coordinates are rationals with denominator dividing
   |disc(f)|  (algebraic integers lie in (1/disc) Z[theta]).  We
   interpolate rho from the permuted roots in exact ball arithmetic,
   reconstruct each coordinate by continued fractions inside the
   certified window, and then *prove* the candidate: f(rho) = 0 in the
   field and each phi_i(rho) lands in disk c(i).  Failure to reconstruct
   at a window below 1/(2 disc^2) is a proof that no such automorphism
   exists.

The imaginary quadratic subfield test follows the same pattern one
level down: K = K+(sqrt(D)) with D = (theta - conj(theta))^2, the unique
candidate is d = squarefree part of N_{K+/Q}(D), and d is accepted iff
d*D is a square in K+ (decided by sign-pattern interpolation over the
real embeddings of K+, with exact verification of the candidate root).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import linalg
from .embeddings import Ball, EmbeddingSet, compute_embeddings
from .errors import NotCMError, PrecisionExhaustedError, UnsupportedDegreeError
from .numberfield import FieldElement, NumberField
from .poly import Poly, count_real_roots, discriminant, isolate_real_roots
from .rat import best_rational_in_window


@dataclass
class CMType:
    """One embedding chosen from each conjugate pair, as a 3-bit mask."""

    selection: int  # bit k set = take the conjugate of pair k
    primitive: bool

    def to_json(self):
        return {"mask": self.selection, "primitive": self.primitive}


@dataclass
class CMStructure:
    """Complex conjugation and subfield data of a CM field."""

    field: NumberField
    conjugation: tuple  # degree x degree rational matrix, rows of columns
    kplus_poly: Poly
    k1_discriminant: int | None
    # internals
    conj_gen: FieldElement          # image of the generator under conjugation
    kplus_gen: FieldElement         # generator of K+ inside K
    kplus_field: NumberField
    k1_sqrt: FieldElement | None    # sqrt(k1_discriminant) inside K
    embeddings: EmbeddingSet

    @property
    def degree(self) -> int:
        return self.field.degree

    def conj(self, a: FieldElement) -> FieldElement:
        """Complex conjugation applied to a field element."""
        out = self.field.zero()
        for c in reversed(a.coords):
            out = out * self.conj_gen + c
        return out

    def kplus_to_field(self, p_in_t: Poly | FieldElement) -> FieldElement:
        """Image in K of an element of K+ given as a polynomial in the
        K+ generator (or as a K+ FieldElement)."""
        if isinstance(p_in_t, FieldElement):
            p_in_t = Poly(p_in_t.coords)
        out = self.field.zero()
        for c in reversed(p_in_t.coeffs):
            out = out * self.kplus_gen + c
        return out

    def kplus_subspace(self) -> list[list[Fraction]]:
        """Rows spanning the Q-subspace K+ of K (power-basis coordinates)."""
        t = self.kplus_gen
        rows = [list(self.field.one().coords)]
        cur = self.field.one()
        for _ in range((self.degree // 2) - 1):
            cur = cur * t
            rows.append(list(cur.coords))
        return rows

    def k1_subspace(self) -> list[list[Fraction]]:
        if self.k1_sqrt is None:
            raise NotCMError("field has no imaginary quadratic subfield")
        return [list(self.field.one().coords), list(self.k1_sqrt.coords)]

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "conjugation": [[str(x) for x in row] for row in self.conjugation],
            "kplus_poly": self.kplus_poly.to_json(),
            "k1_discriminant": self.k1_discriminant,
        }


def _interpolate_candidate(nodes: list[Ball], values: list[Ball],
                           den_bound: int) -> list[Fraction] | None | str:
    """Coefficients of the interpolant through (nodes[i], values[i]) if they
    are all rational with denominator <= den_bound.

    Returns the coefficient list, None when certified impossible, or
    "refine" when the enclosures are too wide to decide.
    """
    n = len(nodes)
    window = Fraction(1, 2 * den_bound * den_bound)
    comp = 2 * (window.denominator.bit_length() + 64)
    nodes = [b.compress(comp) for b in nodes]
    values = [b.compress(comp) for b in values]
    # Lagrange: sum_j values[j] * prod_{k!=j} (x - nodes[k]) / (nodes[j] - nodes[k])
    coeff_balls = [Ball.exact(0) for _ in range(n)]
    for j in range(n):
        num = [Ball.exact(1)]
        for k in range(n):
            if k == j:
                continue
            # multiply polynomial by (x - nodes[k])
            nxt = [Ball.exact(0)] * (len(num) + 1)
            for i, c in enumerate(num):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * nodes[k]
            num = [b.compress(comp) for b in nxt]
        den = Ball.exact(1)
        for k in range(n):
            if k != j:
                den = (den * (nodes[j] - nodes[k])).compress(comp)
        try:
            scale = (values[j] / den).compress(comp)
        except ZeroDivisionError:
            return "refine"
        for i in range(n):
            coeff_balls[i] = (coeff_balls[i] + num[i] * scale).compress(comp)
    out = []
    for b in coeff_balls:
        if b.rad >= window:
            return "refine"
        if abs(b.im) > b.rad:
            return None  # certified non-real coefficient
        cand = best_rational_in_window(b.re, b.rad + abs(b.im), den_bound)
        if cand is None:
            return None
        out.append(cand)
    return out


def _den_bound_from_disc(f: Poly) -> int:
    d = abs(discriminant(f))
    assert d.denominator == 1
    return max(1, int(d))


def detect_cm(field: NumberField, precision_bits: int = 80) -> CMStructure:
    """CM structure of a degree-6 field (degree 2 accepted for reuse).

    Raises NotCMError if the field has a real embedding or no automorphism
    acting as complex conjugation under every embedding.

    A floating-point solve proposes the conjugation candidate (cheap); the
    candidate is then *proved* by exact arithmetic.  Only when no proposal
    verifies do we fall back to certified ball interpolation, whose failure
    to find a rational vector below the denominator bound refutes CM-ness.
    """
    n = field.degree
    if n not in (2, 6):
        raise UnsupportedDegreeError(f"degree {n} not supported (need 2 or 6)")
    if count_real_roots(field.defining_poly) > 0:
        raise NotCMError("field has a real embedding")
    if n == 2:
        return _detect_cm_quadratic(field, precision_bits)

    den_bound = _den_bound_from_disc(field.defining_poly)
    prec = max(precision_bits, den_bound.bit_length() + 48)
    emb = compute_embeddings(field, prec)
    cperm = [emb.conjugate_index(i) for i in range(n)]

    # fast path: float proposal + exact proof
    for work in (2 * den_bound.bit_length() + 96,
                 4 * den_bound.bit_length() + 256):
        got = _float_conjugation_candidate(emb, cperm, den_bound, work)
        if got is not None:
            rho = field.element(got)
            if _verify_conjugation(field, rho, emb, cperm):
                return _build_structure(field, rho, emb)

    # certified path (reached only for genuinely non-CM fields or
    # pathological float failures)
    for _ in range(12):
        nodes = list(emb.balls)
        values = [emb.balls[cperm[i]] for i in range(n)]
        got = _interpolate_candidate(nodes, values, den_bound)
        if got == "refine":
            prec *= 2
            emb = compute_embeddings(field, prec)
            cperm = [emb.conjugate_index(i) for i in range(n)]
            continue
        if got is None:
            raise NotCMError("no complex-conjugation automorphism")
        rho = field.element(got)
        if not _verify_conjugation(field, rho, emb, cperm):
            raise NotCMError("no complex-conjugation automorphism")
        return _build_structure(field, rho, emb)
    raise PrecisionExhaustedError("conjugation detection did not stabilize")


def _float_conjugation_candidate(emb, cperm, den_bound: int,
                                 work: int) -> list[Fraction] | None:
    """Non-rigorous interpolation of the conjugation image; the caller must
    verify the result exactly."""
    import mpmath

    n = len(emb.balls)
    with mpmath.workprec(work):
        nodes = [mpmath.mpc(float("nan"), 0) for _ in range(n)]
        for i, b in enumerate(emb.balls):
            nodes[i] = mpmath.mpc(
                mpmath.mpf(b.re.numerator) / b.re.denominator,
                mpmath.mpf(b.im.numerator) / b.im.denominator)
        vand = mpmath.matrix(n, n)
        rhs = mpmath.matrix(n, 1)
        for i in range(n):
            acc = mpmath.mpc(1)
            for j in range(n):
                vand[i, j] = acc
                acc *= nodes[i]
            rhs[i] = nodes[cperm[i]]
        try:
            sol = mpmath.lu_solve(vand, rhs)
        except Exception:
            return None
        out = []
        for i in range(n):
            re = _mpf_to_fraction_local(sol[i].real)
            out.append(re.limit_denominator(den_bound))
    return out


def _mpf_to_fraction_local(x) -> Fraction:
    from .embeddings import _mpf_to_fraction
    return _mpf_to_fraction(x)


def _verify_conjugation(field: NumberField, rho: FieldElement,
                        emb: EmbeddingSet, cperm: list[int]) -> bool:
    # exact: rho is a root of f
    fr = field.zero()
    for c in reversed(field.defining_poly.coeffs):
        fr = fr * rho + c
    if not fr.is_zero():
        return False
    # exact: sigma has order 2 (sigma(rho) = theta)
    srho = field.zero()
    for c in reversed(rho.coords):
        srho = srho * rho + c
    if srho != field.gen():
        return False
    # certified: phi_i(rho) lies in disk c(i) for every i
    for i in range(field.degree):
        b = emb.evaluate(rho, i)
        if emb.locate(b) != cperm[i]:
            return False
    return True


def _detect_cm_quadratic(field: NumberField, precision_bits: int) -> CMStructure:
    a1 = field.defining_poly.coeffs[1]
    theta = field.gen()
    rho = -theta - a1  # the other root
    emb = compute_embeddings(field, max(53, precision_bits))
    tr = theta + rho   # rational
    kplus_poly = Poly([-tr.coords[0], 1])
    conj = _conjugation_matrix(field, rho)
    eta = theta - rho
    dsq = eta * eta  # rational, negative
    d0 = dsq.coords[0]
    dsf = _squarefree_part(d0)
    return CMStructure(
        field=field, conjugation=conj, kplus_poly=kplus_poly,
        k1_discriminant=int(dsf), conj_gen=rho,
        kplus_gen=field.one() * tr.coords[0], kplus_field=NumberField(kplus_poly, _trusted=True) if kplus_poly.degree == 1 else None,
        k1_sqrt=None, embeddings=emb)


def _conjugation_matrix(field: NumberField, rho: FieldElement):
    n = field.degree
    cols = []
    cur = field.one()
    cols.append(list(cur.coords))
    for _ in range(n - 1):
        cur = cur * rho
        cols.append(list(cur.coords))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _build_structure(field: NumberField, rho: FieldElement,
                     emb: EmbeddingSet) -> CMStructure:
    theta = field.gen()
    # K+ generator: theta + rho, or theta*rho when the trace degenerates
    t = theta + rho
    mp = t.minimal_polynomial()
    if mp.degree != 3:
        t = theta * rho
        mp = t.minimal_polynomial()
    if mp.degree != 3:
        raise NotCMError("fixed field of conjugation is not cubic")
    if count_real_roots(mp) != 3:
        raise NotCMError("fixed field of conjugation is not totally real")
    conj = _conjugation_matrix(field, rho)
    kplus_field = NumberField(mp, _trusted=True)
    cm = CMStructure(
        field=field, conjugation=conj, kplus_poly=mp,
        k1_discriminant=None, conj_gen=rho, kplus_gen=t,
        kplus_field=kplus_field, k1_sqrt=None, embeddings=emb)
    d, s = _find_imaginary_quadratic(cm)
    cm.k1_discriminant = d
    cm.k1_sqrt = s
    return cm


def _squarefree_part(q: Fraction) -> int:
    """Squarefree part of a nonzero rational, as a signed integer.

    q = d * (square of a rational) with d squarefree.
    """
    num, den = q.numerator, q.denominator
    n = num * den  # same square class
    sign = -1 if n < 0 else 1
    n = abs(n)
    d = 1
    for p, e in sympy.factorint(n).items():
        if e % 2:
            d *= p
    return sign * d


def _find_imaginary_quadratic(cm: CMStructure):
    """(d, sqrt(d) in K) for the imaginary quadratic subfield, or (None, None).

    Method: K = K+(sqrt(D)) with D = (theta - conj theta)^2 totally
    negative; the unique candidate is the squarefree part d of
    N_{K+/Q}(D) and it works iff d*D is a square in K+.
    """
    field = cm.field
    theta = field.gen()
    eta = theta - cm.conj_gen
    D = eta * eta
    D_plus = _express_in_kplus(cm, D)
    normD = D_plus.norm()
    if normD == 0:
        raise NotCMError("degenerate conjugation difference")
    d = _squarefree_part(normD)
    # d must be negative (D totally negative, odd-degree norm)
    assert d < 0
    target = D_plus * d  # totally positive element of K+
    z = _sqrt_in_totally_real(cm.kplus_field, target)
    if z is None:
        return None, None
    # sqrt(d) = eta * d / z  (z in K+ mapped into K)
    z_in_K = cm.kplus_to_field(z)
    s = eta * d / z_in_K
    assert (s * s).is_rational() and (s * s).coords[0] == d
    return d, s


def _express_in_kplus(cm: CMStructure, a: FieldElement) -> FieldElement:
    """Coordinates of a (which must lie in K+) over the K+ power basis."""
    n = cm.field.degree
    half = n // 2
    t_powers = [cm.field.one()]
    for _ in range(half - 1):
        t_powers.append(t_powers[-1] * cm.kplus_gen)
    a_mat = [[t_powers[j].coords[r] for j in range(half)] for r in range(n)]
    from .numberfield import _lsq_exact
    sol = _lsq_exact(a_mat, list(a.coords), half)
    if sol is None:
        raise NotCMError("element does not lie in the fixed field")
    return FieldElement(cm.kplus_field, sol)


def _sqrt_in_totally_real(kf: NumberField, u: FieldElement,
                          max_rounds: int = 12) -> FieldElement | None:
    """y in K+ with y^2 = u, or None (certified), for totally positive u.

    Callers pass integral u (= d * D), so any square root is integral and
    its coordinates have denominators dividing |disc| of the defining
    cubic.  A float proposal is tried per sign pattern first (verified
    exactly); the certified interval sweep below is the refutation path.
    """
    den_bound = _den_bound_from_disc(kf.defining_poly)
    cand = _float_sqrt_candidate(kf, u, den_bound)
    if cand is not None:
        return cand
    prec = max(96, 2 * den_bound.bit_length() + 32)
    deg = kf.degree
    for _ in range(max_rounds):
        width = Fraction(1, 2**prec)
        intervals = isolate_real_roots(kf.defining_poly, width)
        if len(intervals) != deg:
            prec *= 2
            continue
        nodes = [Ball.real_interval(lo, hi) for lo, hi in intervals]
        vals = [_eval_real(u, b) for b in nodes]
        if any(v.re - v.rad <= 0 for v in vals):
            prec *= 2
            continue
        sqrts = [v.sqrt_nonnegative() for v in vals]
        refine = False
        for mask in range(2 ** (deg - 1)):
            signed = [sqrts[0]] + [
                sqrts[i + 1] if not (mask >> i) & 1 else -sqrts[i + 1]
                for i in range(deg - 1)
            ]
            got = _interpolate_candidate(nodes, signed, den_bound)
            if got == "refine":
                refine = True
                continue
            if got is None:
                continue
            cand = kf.element(got)
            if cand * cand == u:
                return cand
            cand = -cand
            if cand * cand == u:
                return cand
        if not refine:
            return None
        prec *= 2
    raise PrecisionExhaustedError("square test in K+ did not stabilize")


def _eval_real(a: FieldElement, node: Ball) -> Ball:
    out = Ball.exact(0)
    for c in reversed(a.coords):
        out = out * node + Ball.exact(c)
    return out


def _float_sqrt_candidate(kf: NumberField, u: FieldElement,
                          den_bound: int) -> FieldElement | None:
    """Float proposal for a square root of u in a totally real field;
    exact verification gates the result (None = nothing verified)."""
    import itertools

    import mpmath

    from .embeddings import _mpf_to_fraction

    deg = kf.degree
    work = 2 * den_bound.bit_length() + 96
    with mpmath.workprec(work):
        try:
            roots = mpmath.polyroots(
                [mpmath.mpf(int(c)) for c in reversed(kf.defining_poly.coeffs)],
                maxsteps=200, extraprec=work // 2)
        except Exception:
            return None
        roots = sorted(r.real for r in roots)
        vals = []
        for r in roots:
            acc = mpmath.mpf(0)
            for c in reversed(u.coords):
                acc = acc * r + mpmath.mpf(c.numerator) / c.denominator
            if acc <= 0:
                return None
            vals.append(mpmath.sqrt(acc))
        vand = mpmath.matrix(deg, deg)
        for i in range(deg):
            acc = mpmath.mpf(1)
            for j in range(deg):
                vand[i, j] = acc
                acc *= roots[i]
        for signs in itertools.product((1, -1), repeat=deg - 1):
            rhs = mpmath.matrix([vals[0]] +
                                [s * v for s, v in zip(signs, vals[1:])])
            try:
                sol = mpmath.lu_solve(vand, rhs)
            except Exception:
                continue
            coords = [_mpf_to_fraction(sol[i]).limit_denominator(den_bound)
                      for i in range(deg)]
            cand = kf.element(coords)
            if cand * cand == u:
                return cand
    return None


def imaginary_quadratic_subfield(cm: CMStructure) -> int | None:
    """Squarefree d < 0 with Q(sqrt d) inside K, or None.

    Only defined for sextic CM structures.
    """
    if cm.degree != 6:
        raise UnsupportedDegreeError("imaginary quadratic subfield test needs degree 6")
    return cm.k1_discriminant


def conjugate_pairs(cm: CMStructure) -> list[tuple[int, int]]:
    """Embedding index pairs (i, conj(i)) with Im(root_i) > 0, sorted."""
    emb = cm.embeddings
    pairs = []
    for i, b in enumerate(emb.balls):
        s = b.sign_of_imag()
        if s is None:
            raise PrecisionExhaustedError("embedding touches the real axis")
        if s > 0:
            pairs.append((i, emb.conjugate_index(i)))
    return pairs


def enumerate_cm_types(cm: CMStructure) -> list[CMType]:
    """All 8 CM types of a sextic CM field with primitivity flags.

    A type is imprimitive exactly when K1 exists and the three chosen
    embeddings restrict to the same embedding of K1 (the only possible
    strict CM subfield of a sextic CM field is imaginary quadratic).
    """
    if cm.degree != 6:
        raise UnsupportedDegreeError("CM types are enumerated for sextic fields")
    pairs = conjugate_pairs(cm)
    assert len(pairs) == 3
    restriction = None
    if cm.k1_sqrt is not None:
        restriction = _k1_restriction_signs(cm, pairs)
    out = []
    for mask in range(8):
        if restriction is None:
            primitive = True
        else:
            signs = []
            for k in range(3):
                up, down = restriction[k]
                signs.append(down if (mask >> k) & 1 else up)
            primitive = not (signs[0] == signs[1] == signs[2])
        out.append(CMType(selection=mask, primitive=primitive))
    return out


def _k1_restriction_signs(cm: CMStructure, pairs):
    """For each conjugate pair, the sign of Im(phi(sqrt d)) at the two
    members (upper root first)."""
    s = cm.k1_sqrt
    emb = cm.embeddings
    out = []
    for up, down in pairs:
        su = emb.evaluate(s, up).sign_of_imag()
        sd = emb.evaluate(s, down).sign_of_imag()
        if su is None or sd is None:
            # refine; phi(sqrt d) never lies on the real axis
            cm.embeddings = compute_embeddings(cm.field, emb.precision_bits * 2)
            return _k1_restriction_signs(cm, conjugate_pairs(cm))
        out.append((su, sd))
    return out
