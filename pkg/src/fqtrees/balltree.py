"""The Bruhat-Tits tree at a place of P^1 in the Ball-tree model.

A vertex (r, x) at a place P is the closed ball {y : v_P(y - x) >= r},
equivalently the homothety class of the local lattice spanned by (x, 1)
and (pi^r, 0).  The standard vertex c_n is (-n, 0), so c_0 is the class
of the standard maximal order.  Matrices act exactly over K = F_q(t):
a vertex is pushed through the column lattice reduction below, with only
valuations at the given place consulted.
"""

from __future__ import annotations

from .divisors import Place, ord_at
from .jets import LaurentJet, jet_of, jet_sub, jet_to_ratfunc
from .poly import Poly, RatFunc, gcd, format_ratfunc


class Vertex:
    __slots__ = ("place", "r", "jet")

    def __init__(self, place, r, jet):
        # not for direct use: go through canonical()
        self.place = place
        self.r = r
        self.jet = jet

    def center(self):
        """Exact rational representative of the center."""
        return jet_to_ratfunc(self.jet)

    def __eq__(self, other):
        return (isinstance(other, Vertex) and self.place == other.place
                and self.r == other.r and self.jet.items == other.jet.items)

    def __hash__(self):
        return hash((self.place, self.r, self.jet.items))

    def sort_key(self):
        return (self.r, self.jet.items)

    def __repr__(self):
        x = format_ratfunc(self.center())
        return f"Vertex(r={self.r}, x={x})"


def canonical(place, r, center, min_prec=None):
    """Canonical vertex from a raw center (RatFunc or LaurentJet).

    A jet center must carry precision >= r; rational centers are exact so
    any r is allowed.
    """
    if isinstance(center, LaurentJet):
        if center.place != place:
            raise ValueError("center jet at the wrong place")
        if center.prec < r and min_prec is None:
            raise ValueError(f"center precision {center.prec} below radius exponent {r}")
        jet = center.truncate(r)
    elif isinstance(center, RatFunc):
        jet = jet_of(center, place, r)
    else:
        raise TypeError("center must be a RatFunc or LaurentJet")
    return Vertex(place, r, jet)


def standard_vertex(place, n=0):
    """The ray vertex c_n = (-n, 0)."""
    return Vertex(place, -n, LaurentJet.zero(place, -n))


def residue_digits(place):
    """Canonical coefficient representatives of the residue field at the place."""
    field = place.field
    d = place.degree
    out = []
    for code in range(field.q ** d):
        coeffs = []
        n = code
        for _ in range(d):
            coeffs.append(n % field.q)
            n //= field.q
        out.append(Poly(field, coeffs))
    return out


def neighbors(v):
    """Parent (r-1) then the q^deg children (r+1), in digit order."""
    place, r = v.place, v.r
    out = [Vertex(place, r - 1, v.jet.truncate(r - 1))]
    base = list(v.jet.items)
    for digit in residue_digits(place):
        items = base + ([(r, digit.c)] if digit.c else [])
        out.append(Vertex(place, r + 1, LaurentJet(place, items, r + 1)))
    return out


def parent(v):
    return Vertex(v.place, v.r - 1, v.jet.truncate(v.r - 1))


def meet_exponent(v, w):
    """m = min(r_v, r_w, v_P(x_v - x_w)): branch level of the two center rays."""
    if v.place != w.place:
        raise ValueError("vertices at different places")
    m = min(v.r, w.r)
    diff = jet_sub(v.jet.truncate(m), w.jet.truncate(m))
    if diff.is_zero():
        return m
    return min(m, diff.lead_exp)


def distance(v, w):
    """Tree distance (r_v - m) + (r_w - m)."""
    m = meet_exponent(v, w)
    return (v.r - m) + (w.r - m)


def geodesic(v, w):
    """The unique injective path from v to w, inclusive."""
    if v.place != w.place:
        raise ValueError("vertices at different places")
    m = meet_exponent(v, w)
    up = [Vertex(v.place, r, v.jet.truncate(r)) for r in range(v.r, m - 1, -1)]
    down = [Vertex(w.place, r, w.jet.truncate(r)) for r in range(m + 1, w.r + 1)]
    return up + down


INFINITE_END = "inf"


class End:
    """An element of P^1(K): a rational function value or the symbol inf."""

    __slots__ = ("place", "value")

    def __init__(self, place, value=INFINITE_END):
        self.place = place
        self.value = value  # RatFunc or INFINITE_END

    @property
    def is_infinite(self):
        return self.value == INFINITE_END

    def __eq__(self, other):
        return (isinstance(other, End) and self.place == other.place
                and self.value == other.value)

    def __hash__(self):
        return hash((self.place, self.value))

    def __repr__(self):
        if self.is_infinite:
            return "End(inf)"
        return f"End({format_ratfunc(self.value)})"


def end_vertex(e, r):
    """The ball of radius exponent r on the ray to a finite end."""
    if e.is_infinite:
        return standard_vertex(e.place, n=-r)
    return canonical(e.place, r, e.value)


def geodesic_to_end(v, e, length):
    """The first `length` steps of the ray from v toward the end e."""
    if e.is_infinite:
        path = [v]
        for _ in range(length):
            path.append(parent(path[-1]))
        return path
    s = _branch_exp(v, e)
    on_ray = s >= v.r
    path = [v]
    r = v.r
    for _ in range(length):
        if on_ray:
            r += 1
            path.append(end_vertex(e, r))
        else:
            r -= 1
            path.append(Vertex(v.place, r, v.jet.truncate(r)))
            if r <= s:
                on_ray = True
    return path


def _branch_exp(v, e):
    """v_P(center(v) - e) computed at the precision of v."""
    ejet = jet_of(e.value, v.place, v.r)
    diff = jet_sub(v.jet, ejet)
    if diff.is_zero():
        return v.r
    return diff.lead_exp


def _pair_exp(a, b):
    """Branch exponent of two distinct ends (v_P of the difference)."""
    if a.is_infinite or b.is_infinite:
        raise ValueError("pair exponent needs two finite ends")
    return ord_at(a.value - b.value, a.place)


def proj_to_line(x, a, b):
    """Projection of a Vertex or End x onto the line between ends a != b."""
    place = a.place
    if a.is_infinite:
        a, b = b, a
    if a.is_infinite:
        raise ValueError("line needs two distinct ends")
    if b.is_infinite:
        # line(a, inf) = all balls centered at a
        if isinstance(x, Vertex):
            s = min(x.r, _branch_exp(x, a))
        elif x.is_infinite:
            raise ValueError("projection of an end onto a line through itself")
        else:
            s = _pair_exp(x, a)
        return end_vertex(a, s)
    m = _pair_exp(a, b)
    if isinstance(x, Vertex):
        sa = min(x.r, _branch_exp(x, a))
        sb = min(x.r, _branch_exp(x, b))
    elif x.is_infinite:
        sa = sb = m  # the line tops out at exponent m
    else:
        sa = _pair_exp(x, a)
        sb = _pair_exp(x, b)
    if sa > m:
        return end_vertex(a, sa)
    if sb > m:
        return end_vertex(b, sb)
    return end_vertex(a, m)


def median(x, y, z):
    """The branch vertex of three pairwise distinct ends/vertices."""
    if x == y or y == z or x == z:
        raise ValueError("median needs three pairwise distinct arguments")
    if isinstance(y, End) and isinstance(z, End):
        return proj_to_line(x, y, z)
    if isinstance(x, End) and isinstance(z, End):
        return proj_to_line(y, x, z)
    if isinstance(x, End) and isinstance(y, End):
        return proj_to_line(z, x, y)
    # three vertices: the point on geodesic(x, y) closest to z
    best = None
    for v in geodesic(x, y):
        d = distance(v, z)
        if best is None or d < best[0]:
            best = (d, v)
    return best[1]


# -- 2x2 exact matrices over K and the tree action --

def mat_mul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_adj(A):
    (a, b), (c, d) = A
    return ((d, -b), (-c, a))


def mat_det(A):
    (a, b), (c, d) = A
    return a * d - b * c


def mat_scale(A, s):
    (a, b), (c, d) = A
    return ((s * a, s * b), (s * c, s * d))


def mat_inv(A):
    det = mat_det(A)
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    inv = det.inverse()
    return mat_scale(mat_adj(A), inv)


def mat_identity(field):
    one, zero = RatFunc.one(field), RatFunc.zero(field)
    return ((one, zero), (zero, one))


def mat_from_polys(field, rows):
    def lift(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        return RatFunc.const(field, x)
    (a, b), (c, d) = rows
    return ((lift(a), lift(b)), (lift(c), lift(d)))


class ProjMat:
    """2x2 matrix over K up to scalar; canonical content-1 polynomial entries."""

    __slots__ = ("rows",)

    def __init__(self, rows, field=None):
        if field is not None:
            rows = mat_from_polys(field, rows)
        (a, b), (c, d) = rows
        fld = a.field
        den = a.den
        for x in (b, c, d):
            den = (den * x.den) // gcd(den, x.den)
        den = RatFunc(den)
        entries = [a * den, b * den, c * den, d * den]
        polys = [e.num for e in entries]  # denominators cleared exactly
        content = Poly.zero(fld)
        for p in polys:
            content = gcd(content, p) if content.c else p
        if not content.c:
            raise ZeroDivisionError("zero matrix")
        polys = [p // content for p in polys]
        lead = next(p for p in polys if p.c).lead()
        inv = fld.inv(lead)
        polys = [p.scale(inv) for p in polys]
        if (polys[0] * polys[3] - polys[1] * polys[2]).is_zero():
            raise ZeroDivisionError("singular matrix")
        self.rows = ((RatFunc(polys[0]), RatFunc(polys[1])),
                     (RatFunc(polys[2]), RatFunc(polys[3])))

    @property
    def field(self):
        return self.rows[0][0].field

    @staticmethod
    def identity(field):
        return ProjMat(mat_identity(field))

    def entry_polys(self):
        return (self.rows[0][0].num, self.rows[0][1].num,
                self.rows[1][0].num, self.rows[1][1].num)

    def det(self):
        return mat_det(self.rows)

    def __mul__(self, other):
        return ProjMat(mat_mul(self.rows, other.rows))

    def inverse(self):
        return ProjMat(mat_adj(self.rows))

    def __eq__(self, other):
        return isinstance(other, ProjMat) and self.entry_polys() == other.entry_polys()

    def __hash__(self):
        return hash(tuple(p.c for p in self.entry_polys()))

    def __repr__(self):
        a, b, c, d = (format_ratfunc(RatFunc(p)) for p in self.entry_polys())
        return f"[[{a}, {b}], [{c}, {d}]]"


def vertex_lattice_matrix(v):
    """h_v = [[x, pi^r], [1, 0]]: columns span the lattice of the vertex."""
    field = v.place.field
    x = v.center()
    if v.place.is_infinite:
        pi = RatFunc.t(field).inverse()
    else:
        pi = RatFunc(v.place.poly)
    return ((x, pi ** v.r), (RatFunc.one(field), RatFunc.zero(field)))


def vertex_of_lattice(place, cols):
    """Vertex of the lattice spanned by two K^2 columns at the given place.

    Column reduction over O_P: make one second coordinate zero using the
    column of minimal valuation there, normalize, read off (r, x).
    """
    (a1, a2), (b1, b2) = cols  # columns a = (a1, a2), b = (b1, b2)
    if a2.is_zero() and b2.is_zero():
        raise ZeroDivisionError("columns do not span a lattice")
    if a2.is_zero():
        lead1, lead2, w = b1, b2, a1
    elif b2.is_zero():
        lead1, lead2, w = a1, a2, b1
    elif ord_at(a2, place) <= ord_at(b2, place):
        lead1, lead2 = a1, a2
        w = b1 - (b2 / a2) * a1
    else:
        lead1, lead2 = b1, b2
        w = a1 - (a2 / b2) * b1
    if w.is_zero():
        raise ZeroDivisionError("columns do not span a lattice")
    r = ord_at(w, place) - ord_at(lead2, place)
    x = lead1 / lead2
    return canonical(place, r, x)


def act(g, v):
    """Image of the vertex under the projective matrix (exact over K)."""
    rows = g.rows if isinstance(g, ProjMat) else g
    if mat_det(rows).is_zero():
        raise ZeroDivisionError("singular matrix cannot act")
    h = vertex_lattice_matrix(v)
    m = mat_mul(rows, h)
    cols = ((m[0][0], m[1][0]), (m[0][1], m[1][1]))
    return vertex_of_lattice(v.place, cols)
