"""Places and divisors of the projective line over F_q.

A place is either the point at infinity or a monic irreducible polynomial;
its degree is the residue field extension degree.  Divisors are finite
formal integer combinations of places.  On P^1 linear equivalence is
degree equality, and Riemann-Roch spaces have the closed-form monomial
bases built here.
"""

from __future__ import annotations

from .fq import Fq
from .poly import Poly, RatFunc, factor, gcd, is_irreducible, ord_at_poly, format_poly


class Place:
    """Infinity or Finite(monic irreducible polynomial)."""

    __slots__ = ("field", "poly")

    def __init__(self, field, poly=None):
        if poly is not None:
            if poly.field is not field:
                raise ValueError("place polynomial over the wrong field")
            if not poly.c or poly.degree < 1:
                raise ValueError("finite place needs a nonconstant polynomial")
            poly = poly.monic()
        self.field = field
        self.poly = poly

    @staticmethod
    def infinity(field):
        return Place(field)

    @staticmethod
    def finite(field, poly, check=True):
        if check and not is_irreducible(poly):
            raise ValueError(f"{poly!r} is not irreducible")
        return Place(field, poly)

    @staticmethod
    def of_point(field, lam):
        """The degree-1 place t - lam."""
        return Place(field, Poly(field, (field.neg(lam), 1)))

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        # finite places by (degree, coefficients); infinity last
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.degree, self.poly.c)

    def __eq__(self, other):
        return (isinstance(other, Place) and self.field is other.field
                and self.poly == other.poly)

    def __hash__(self):
        return hash(("Place", self.field.q, None if self.poly is None else self.poly.c))

    def __repr__(self):
        return "Place(inf)" if self.poly is None else f"Place({format_poly(self.poly)})"


class Divisor:
    """Finite formal sum of places with nonzero integer coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, items=()):
        if isinstance(items, dict):
            items = items.items()
        acc = {}
        for place, n in items:
            if n:
                acc[place] = acc.get(place, 0) + n
        self.field = field
        self.coeffs = {p: n for p, n in acc.items() if n}

    @staticmethod
    def zero(field):
        return Divisor(field)

    @staticmethod
    def of_place(place, n=1):
        return Divisor(place.field, [(place, n)])

    def support(self):
        return sorted(self.coeffs, key=Place.sort_key)

    def coeff(self, place):
        return self.coeffs.get(place, 0)

    @property
    def degree(self):
        return sum(n * p.degree for p, n in self.coeffs.items())

    def __add__(self, other):
        items = list(self.coeffs.items()) + list(other.coeffs.items())
        return Divisor(self.field, items)

    def __neg__(self):
        return Divisor(self.field, [(p, -n) for p, n in self.coeffs.items()])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return Divisor(self.field, [(p, k * n) for p, n in self.coeffs.items()])

    def abs(self):
        return Divisor(self.field, [(p, abs(n)) for p, n in self.coeffs.items()])

    def is_effective(self):
        return all(n >= 0 for n in self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def __le__(self, other):
        return (other - self).is_effective()

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((p, n) for p, n in self.coeffs.items()))

    def finite_part(self):
        return Divisor(self.field,
                       [(p, n) for p, n in self.coeffs.items() if not p.is_infinite])

    def infinite_coeff(self):
        return self.coeff(Place.infinity(self.field))

    def min_with(self, other):
        places = set(self.coeffs) | set(other.coeffs)
        return Divisor(self.field,
                       [(p, min(self.coeff(p), other.coeff(p))) for p in places])

    def max_with(self, other):
        places = set(self.coeffs) | set(other.coeffs)
        return Divisor(self.field,
                       [(p, max(self.coeff(p), other.coeff(p))) for p in places])

    def __repr__(self):
        if not self.coeffs:
            return "Divisor(0)"
        bits = []
        for p in self.support():
            name = "inf" if p.is_infinite else format_poly(p.poly)
            bits.append(f"{self.coeffs[p]}*({name})")
        return "Divisor(" + " + ".join(bits) + ")"


def lin_equiv(d1, d2):
    """Linear equivalence on P^1: Pic is Z via the degree."""
    return d1.degree == d2.degree


def factor_poly(f):
    """Monic irreducible factors with multiplicities; rejects zero."""
    if not f.c:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    return factor(f)


def ord_at(f, place):
    """Valuation of a nonzero rational function at a place."""
    if f.is_zero():
        raise ZeroDivisionError("valuation of the zero function")
    if place.is_infinite:
        return f.ord_inf()
    return ord_at_poly(f.num, place.poly) - ord_at_poly(f.den, place.poly)


def divisor_of(f):
    """The principal divisor of a nonzero rational function; degree 0."""
    if f.is_zero():
        raise ZeroDivisionError("divisor of the zero function")
    field = f.field
    items = []
    for p, mult in factor(f.num):
        items.append((Place(field, p), mult))
    for p, mult in factor(f.den):
        items.append((Place(field, p), -mult))
    items.append((Place.infinity(field), f.ord_inf()))
    return Divisor(field, items)


def rr_dim(b):
    """dim L(B) on P^1: deg B + 1 if deg B >= 0, else 0."""
    d = b.degree
    return d + 1 if d >= 0 else 0


def rr_basis(b):
    """Monomial-style basis of L(B) = {f : div f + B >= 0}, by pole order at inf.

    Every element is t^j * D_minus / D_plus where D_plus collects positive
    finite coefficients of B and D_minus the negative ones.
    """
    field = b.field
    d = b.degree
    if d < 0:
        return []
    num = Poly.one(field)
    den = Poly.one(field)
    for p, n in b.coeffs.items():
        if p.is_infinite:
            continue
        if n > 0:
            den = den * p.poly ** n
        else:
            num = num * p.poly ** (-n)
    return [RatFunc(num.shift(j), den) for j in range(d + 1)]
