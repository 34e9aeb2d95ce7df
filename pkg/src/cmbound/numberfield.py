"""Number fields Q[x]/(f), their elements, and orders.

A NumberField is defined by a monic irreducible integer polynomial
(checked at construction).  Elements carry exact power-basis coordinates.
Orders are full-rank sublattices given by an integer basis matrix over a
common denominator; multiplicative closure and 1 being a member are
verified at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotAnOrderError, NotIrreducibleError
from .poly import Poly, discriminant, is_irreducible
from .rat import format_rational, parse_rational


class NumberField:
    """Q[x]/(defining_poly), defining_poly monic irreducible over Z."""

    def __init__(self, defining_poly: Poly, _trusted: bool = False):
        f = defining_poly
        if not f.is_integer() or not f.is_monic():
            raise NotIrreducibleError(
                "defining polynomial must be monic with integer coefficients")
        if f.degree < 1:
            raise NotIrreducibleError("defining polynomial must be nonconstant")
        if not _trusted and not is_irreducible(f):
            raise NotIrreducibleError(f"{f!r} is reducible over Q")
        self.defining_poly = f
        self.degree = f.degree
        self._power_table = self._make_power_table()
        self._trace_powers = self._make_trace_powers()

    def _make_power_table(self):
        """Coordinates of x^k mod f for k = 0 .. 2(n-1)."""
        n = self.degree
        f = self.defining_poly
        table = []
        cur = [Fraction(0)] * n
        cur[0] = Fraction(1)
        table.append(cur[:])
        for _ in range(2 * n - 2):
            nxt = [Fraction(0)] + cur[:n - 1]
            top = cur[n - 1]
            if top:
                for i in range(n):
                    nxt[i] -= top * f.coeffs[i]
            table.append(nxt[:])
            cur = nxt
        return table

    def _make_trace_powers(self):
        """Tr(x^k) for k = 0 .. n-1 via Newton's identities."""
        n = self.degree
        c = self.defining_poly.coeffs  # monic: c[n] == 1
        p = [Fraction(n)]
        for k in range(1, n):
            s = -k * c[n - k]
            for i in range(1, k):
                s -= c[n - i] * p[k - i]
            p.append(Fraction(s))
        return p

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.defining_poly == other.defining_poly)

    def __hash__(self):
        return hash(self.defining_poly)

    def __repr__(self):
        return f"NumberField({self.defining_poly!r})"

    def element(self, coords) -> "FieldElement":
        return FieldElement(self, coords)

    def zero(self) -> "FieldElement":
        return self.element([0] * self.degree)

    def one(self) -> "FieldElement":
        return self.element([1] + [0] * (self.degree - 1))

    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self.element([-self.defining_poly.coeffs[0]])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def from_poly(self, p: Poly) -> "FieldElement":
        """Image of p(x) in the field."""
        r = p % self.defining_poly
        return self.element([r[i] for i in range(self.degree)])

    def discriminant(self) -> Fraction:
        return discriminant(self.defining_poly)

    def to_json(self):
        return {"poly": [format_rational(c) for c in self.defining_poly.coeffs]}

    @staticmethod
    def from_json(data) -> "NumberField":
        return NumberField(Poly([parse_rational(c) for c in data["poly"]]))


@dataclass(frozen=True)
class FieldElement:
    """Element of a NumberField in exact power-basis coordinates."""

    field: NumberField
    coords: tuple

    def __init__(self, field: NumberField, coords):
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != field.degree:
            raise ValueError(
                f"need {field.degree} coordinates, got {len(cs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", cs)

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            self._check(other)
            return other
        q = Fraction(other)
        return FieldElement(self.field,
                            [q] + [Fraction(0)] * (self.field.degree - 1))

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            q = Fraction(other)
            return FieldElement(self.field, [q * a for a in self.coords])
        self._check(other)
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        table = self.field._power_table
        out = [Fraction(0)] * n
        for k, c in enumerate(prod):
            if c:
                tk = table[k]
                for i in range(n):
                    out[i] += c * tk[i]
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Inverse via extended Euclid against the defining polynomial."""
        a = Poly(self.coords)
        if a.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        f = self.field.defining_poly
        r0, r1 = f, a
        s0, s1 = Poly.zero(), Poly([1])
        while not r1.is_zero:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 = gcd = s * a + t * f; gcd is a nonzero constant
        c = r0.coeffs[0]
        inv = s0 * Fraction(1, 1) * (1 / c)
        return self.field.from_poly(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def trace(self) -> Fraction:
        """Trace of multiplication-by-self (companion-matrix trace)."""
        tp = self.field._trace_powers
        return sum((c * t for c, t in zip(self.coords, tp)), Fraction(0))

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix of y -> self*y on the power basis (columns are images)."""
        n = self.field.degree
        cols = []
        basis_vec = self
        gen = self.field.gen()
        cur = self
        cols.append(cur.coords)
        for _ in range(n - 1):
            cur = cur * gen
            cols.append(cur.coords)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self) -> Fraction:
        return linalg.det(self.multiplication_matrix())

    def minimal_polynomial(self) -> Poly:
        """Monic minimal polynomial over Q via linear algebra on powers."""
        n = self.field.degree
        powers = [self.field.one()]
        for _ in range(n):
            powers.append(powers[-1] * self)
        for d in range(1, n + 1):
            # solve: x^d = sum_{i<d} c_i x^i  (in the field)
            a = [[powers[i].coords[r] for i in range(d)] for r in range(n)]
            b = [powers[d].coords[r] for r in range(n)]
            if linalg.rank(a) == d:
                sol = _lsq_exact(a, b, d)
                if sol is not None:
                    return Poly([-c for c in sol] + [Fraction(1)])
        raise AssertionError("unreachable: element satisfies its field degree")

    def to_json(self):
        return [format_rational(c) for c in self.coords]

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"


def _lsq_exact(a, b, d):
    """Solve overdetermined a (n x d) sol = b exactly, or None."""
    rows = [row[:] + [bv] for row, bv in zip(a, b)]
    m = linalg.mat_fraction(rows)
    n = len(m)
    r = 0
    pivots = []
    for col in range(d):
        piv = next((i for i in range(r, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if m[i][d] != 0:
            return None
    return [m[i][d] for i in range(d)]


def nf_trace(a: FieldElement) -> Fraction:
    """Trace of the multiplication-by-a map; exact."""
    return a.trace()


class OrderBasis:
    """Rank-n lattice in a NumberField: integer basis rows over a common
    denominator, verified to be a ring containing 1."""

    def __init__(self, field: NumberField, basis: list[list[int]], den: int = 1,
                 check: bool = True):
        if den <= 0:
            raise NotAnOrderError("denominator must be positive")
        n = field.degree
        if len(basis) != n or any(len(r) != n for r in basis):
            raise NotAnOrderError(f"basis must be {n}x{n}")
        self.field = field
        self.basis = [[int(x) for x in row] for row in basis]
        self.den = int(den)
        self._elements = [
            FieldElement(field, [Fraction(x, self.den) for x in row])
            for row in self.basis
        ]
        bmat = [[Fraction(x, self.den) for x in row] for row in self.basis]
        if linalg.det(bmat) == 0:
            raise NotAnOrderError("basis is not full rank")
        self._to_coords = linalg.inverse(
            [[bmat[j][i] for j in range(n)] for i in range(n)])
        if check:
            self._verify_ring()
        self._disc = None

    def _verify_ring(self):
        if self.coordinates_of(self.field.one()) is None:
            raise NotAnOrderError("order does not contain 1")
        els = self._elements
        for i in range(len(els)):
            for j in range(i, len(els)):
                if self.coordinates_of(els[i] * els[j]) is None:
                    raise NotAnOrderError(
                        f"basis not multiplicatively closed at ({i},{j})")

    def elements(self) -> list[FieldElement]:
        return list(self._elements)

    def coordinates_of(self, a: FieldElement) -> list[int] | None:
        """Integer coordinates of a in this basis, or None if a is outside."""
        v = linalg.mat_vec(self._to_coords, list(a.coords))
        if any(x.denominator != 1 for x in v):
            return None
        return [int(x) for x in v]

    def contains(self, a: FieldElement) -> bool:
        return self.coordinates_of(a) is not None

    def from_coordinates(self, u) -> FieldElement:
        out = self.field.zero()
        for c, b in zip(u, self._elements):
            if c:
                out = out + int(c) * b
        return out

    def discriminant(self) -> int:
        """det of the trace-pairing Gram matrix; exact integer."""
        if self._disc is None:
            els = self._elements
            gram = [[(ei * ej).trace() for ej in els] for ei in els]
            d = linalg.det(gram)
            if d.denominator != 1:
                raise NotAnOrderError("trace Gram is not integral")
            self._disc = int(d)
        return self._disc

    def to_json(self):
        return {
            "poly": [format_rational(c) for c in self.field.defining_poly.coeffs],
            "basis": [[int(x) for x in row] for row in self.basis],
            "den": self.den,
        }

    @staticmethod
    def from_json(data) -> "OrderBasis":
        field = NumberField(Poly([parse_rational(c) for c in data["poly"]]))
        return OrderBasis(field, data["basis"], int(data.get("den", 1)))

    @staticmethod
    def equation_order(field: NumberField) -> "OrderBasis":
        """Z[x]/(f) with the power basis."""
        n = field.degree
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return OrderBasis(field, eye, 1)

    def __repr__(self):
        return f"OrderBasis(den={self.den}, basis={self.basis})"


def order_discriminant(basis: OrderBasis) -> int:
    """Trace-form discriminant of an order (Gram determinant); exact."""
    return basis.discriminant()


def order_from_generators(field: NumberField,
                          gens: list[FieldElement]) -> OrderBasis:
    """HNF order basis from a generating set (must span a ring with 1)."""
    n = field.degree
    den = 1
    for g in gens:
        for c in g.coords:
            den = math.lcm(den, c.denominator)
    rows = [[int(c * den) for c in g.coords] for g in gens]
    h = linalg.hnf_rows(rows)
    if len(h) != n:
        raise NotAnOrderError("generators do not span a full-rank lattice")
    return OrderBasis(field, h, den)
