"""Truncated local expansions of rational functions at places of P^1.

A LaurentJet at a finite place P collects digits of the P-adic expansion
f = sum c_i * P^i with digit polynomials deg c_i < deg P; at infinity the
uniformizer is 1/t and digits are constants.  Digits are stored as trimmed
little-endian coefficient tuples over F_q so jets are hashable, and only
exponents below the precision are kept.
"""

from __future__ import annotations

from .divisors import Place, ord_at
from .poly import Poly, RatFunc, invmod, ord_at_poly


class LaurentJet:
    """place, digits {exp: coeff tuple}, precision (exponents < prec stored)."""

    __slots__ = ("place", "items", "prec")

    def __init__(self, place, items, prec):
        clean = []
        for e, c in (items.items() if isinstance(items, dict) else items):
            c = tuple(c)
            while c and c[-1] == 0:
                c = c[:-1]
            if c:
                if e >= prec:
                    raise ValueError("jet digit at or above the precision exponent")
                clean.append((e, c))
        clean.sort()
        self.place = place
        self.items = tuple(clean)
        self.prec = prec

    @staticmethod
    def zero(place, prec=0):
        return LaurentJet(place, (), prec)

    def is_zero(self):
        return not self.items

    @property
    def lead_exp(self):
        """Leading exponent; None for the zero jet."""
        return self.items[0][0] if self.items else None

    def truncate(self, prec):
        """Drop digits at exponents >= prec."""
        return LaurentJet(self.place, [(e, c) for e, c in self.items if e < prec], prec)

    def digit(self, e):
        for ee, c in self.items:
            if ee == e:
                return c
        return ()

    def __eq__(self, other):
        return (isinstance(other, LaurentJet) and self.place == other.place
                and self.items == other.items and self.prec == other.prec)

    def __hash__(self):
        return hash((self.place, self.items, self.prec))

    def __repr__(self):
        return f"LaurentJet({self.place!r}, {dict(self.items)}, prec={self.prec})"


def digit_tuple(field, poly_or_int):
    if isinstance(poly_or_int, Poly):
        return poly_or_int.c
    return (poly_or_int,) if poly_or_int else ()


def jet_of(f, place, prec):
    """Expand a rational function into its jet with exponents < prec."""
    field = f.field
    if f.is_zero():
        return LaurentJet.zero(place, prec)
    v = ord_at(f, place)
    if v >= prec:
        return LaurentJet.zero(place, prec)
    k = prec - v
    if place.is_infinite:
        # f = s^v * nrev/drev with s = 1/t and nrev(0), drev(0) != 0
        num, den = f.num, f.den
        nrev = num.reverse()
        drev = den.reverse()
        sk = Poly.x_pow(field, k)
        series = (nrev * invmod(drev, sk)) % sk
        items = [(v + i, (series[i],)) for i in range(k) if series[i]]
        return LaurentJet(place, items, prec)
    p = place.poly
    num, den = f.num, f.den
    a = ord_at_poly(num, p)
    b = ord_at_poly(den, p)
    for _ in range(a):
        num = num // p
    for _ in range(b):
        den = den // p
    pk = p ** k
    series = (num * invmod(den, pk)) % pk
    items = []
    e = v
    while series.c:
        series, digit = divmod(series, p)
        if digit.c:
            items.append((e, digit.c))
        e += 1
    return LaurentJet(place, items, prec)


def jet_to_ratfunc(jet):
    """The exact rational function sum c_i * pi^i represented by the jet."""
    place = jet.place
    field = place.field
    out = RatFunc.zero(field)
    if place.is_infinite:
        t = RatFunc.t(field)
        for e, c in jet.items:
            out = out + RatFunc.const(field, c[0]) * t ** (-e)
        return out
    pi = RatFunc(place.poly)
    for e, c in jet.items:
        out = out + RatFunc(Poly(field, c)) * pi ** e
    return out


def jet_sub(a, b):
    """Difference of two jets at one place, at the joint precision."""
    if a.place != b.place:
        raise ValueError("jets at different places")
    prec = min(a.prec, b.prec)
    field = a.place.field
    acc = {}
    for e, c in a.items:
        if e < prec:
            acc[e] = list(c)
    for e, c in b.items:
        if e < prec:
            cur = acc.setdefault(e, [0] * len(c))
            if len(cur) < len(c):
                cur.extend([0] * (len(c) - len(cur)))
            for i, x in enumerate(c):
                cur[i] = field.sub(cur[i], x)
    items = [(e, tuple(c)) for e, c in acc.items() if any(c)]
    return LaurentJet(a.place, items, prec)
