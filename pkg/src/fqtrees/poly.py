"""Polynomials and rational functions over F_q.

Poly wraps a little-endian coefficient tuple with no trailing zeros; the
zero polynomial has the empty tuple and degree -1.  RatFunc is always in
lowest terms with monic denominator, so equality is structural.

Factorization is squarefree decomposition + distinct-degree splitting +
equal-degree splitting, with splitter candidates drawn in a fixed
enumeration order so factor lists are reproducible.
"""

from __future__ import annotations

from .fq import Fq


class Poly:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        if isinstance(coeffs, Poly):
            coeffs = coeffs.c
        c = tuple(coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        self.c = c

    # -- constructors --

    @staticmethod
    def zero(field):
        return Poly(field, ())

    @staticmethod
    def one(field):
        return Poly(field, (1,))

    @staticmethod
    def const(field, a):
        return Poly(field, (a % field.q,) if a % field.q else ())

    @staticmethod
    def x(field):
        return Poly(field, (0, 1))

    @staticmethod
    def x_pow(field, n, coeff=1):
        if coeff == 0:
            return Poly(field, ())
        return Poly(field, (0,) * n + (coeff,))

    # -- basic queries --

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == (1,)

    def is_const(self):
        return len(self.c) <= 1

    def lead(self):
        return self.c[-1] if self.c else 0

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c and self.field is other.field

    def __hash__(self):
        return hash((self.field.q, self.c))

    def __bool__(self):
        return bool(self.c)

    def sort_key(self):
        return (len(self.c), self.c)

    # -- ring operations --

    def __add__(self, other):
        F = self.field
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, cb in enumerate(b):
            out[i] = F.add(out[i], cb)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(x) for x in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        a, b = self.c, other.c
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        mul, add = F.mul, F.add
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = add(out[i + j], mul(ca, cb))
        return Poly(F, out)

    def scale(self, a):
        F = self.field
        a %= F.q
        if a == 0:
            return Poly(F, ())
        return Poly(F, [F.mul(a, x) for x in self.c])

    def shift(self, n):
        """Multiply by t^n (n >= 0)."""
        if not self.c:
            return self
        return Poly(self.field, (0,) * n + self.c)

    def __divmod__(self, other):
        F = self.field
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.c)
        b = other.c
        db = len(b) - 1
        inv_lead = F.inv(b[-1])
        q = [0] * max(0, len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            coef = a[i]
            if coef:
                factor = F.mul(coef, inv_lead)
                q[i - db] = factor
                for j in range(db + 1):
                    a[i - db + j] = F.sub(a[i - db + j], F.mul(factor, b[j]))
        return Poly(F, q), Poly(F, a)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = Poly.one(self.field)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def powmod(self, n, modulus):
        r = Poly.one(self.field)
        b = self % modulus
        while n:
            if n & 1:
                r = (r * b) % modulus
            b = (b * b) % modulus
            n >>= 1
        return r

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.field.inv(self.c[-1]))

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.c)):
            # i * c_i with i reduced into the prime subfield
            out.append(F.mul(i % F.p, self.c[i]))
        return Poly(F, out)

    def evaluate(self, a):
        F = self.field
        r = 0
        for coef in reversed(self.c):
            r = F.add(F.mul(r, a), coef)
        return r

    def reverse(self, n=None):
        """Coefficient reversal t^n * f(1/t); n defaults to deg f."""
        if n is None:
            n = self.degree
        out = [0] * (n + 1)
        for i, coef in enumerate(self.c):
            if i <= n:
                out[n - i] = coef
        return Poly(self.field, out)

    def __repr__(self):
        return f"Poly({self.field.q}, {format_poly(self)})"


def gcd(a, b):
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def xgcd(a, b):
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 and not r0.is_zero():
        lc = F.inv(r0.lead())
        return r0.scale(lc), s0.scale(lc), t0.scale(lc)
    return r0, s0, t0


def invmod(a, modulus):
    g, u, _ = xgcd(a % modulus, modulus)
    if not g.is_one():
        raise ZeroDivisionError(f"{a!r} not invertible mod {modulus!r}")
    return u % modulus


def ord_at_poly(f, p):
    """Multiplicity of the irreducible p in f (f nonzero)."""
    if not f.c:
        raise ZeroDivisionError("valuation of the zero polynomial")
    n = 0
    while True:
        q, r = divmod(f, p)
        if r.c:
            return n
        f = q
        n += 1


# -- factorization --

def monic_polys(field, degree):
    """All monic polynomials of exact degree, in canonical order."""
    q = field.q
    for code in range(q ** degree):
        coeffs = []
        n = code
        for _ in range(degree):
            coeffs.append(n % q)
            n //= q
        yield Poly(field, coeffs + [1])


def _squarefree_decomposition(f):
    """Yield (g, multiplicity) with g squarefree, product g^mult = f (f monic)."""
    F = f.field
    p = F.p
    out = []

    def rec(f, mult):
        if f.is_one():
            return
        d = f.derivative()
        if d.is_zero():
            # f = h(t^p); take p-th root coefficientwise
            root = []
            for i in range(0, len(f.c), p):
                # c^(1/p) = c^(q/p) since Frobenius is x -> x^p
                root.append(F.pow(f.c[i], F.q // p))
            rec(Poly(F, root), mult * p)
            return
        g = gcd(f, d)
        w = f // g
        # w = product of squarefree part factors at multiplicity coprime to p
        k = 1
        while not w.is_one():
            y = gcd(w, g)
            z = w // y
            if not z.is_one():
                out.append((z, mult * k))
            w = y
            g = g // y
            k += 1
        # leftover g is a p-th power; the zero-derivative branch extracts it
        if not g.is_one():
            rec(g, mult)

    rec(f.monic(), 1)
    return out


def _distinct_degree(f):
    """Split squarefree monic f into products of irreducibles of equal degree."""
    F = f.field
    x = Poly.x(F)
    out = []
    h = x % f
    d = 0
    rest = f
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        h = h.powmod(F.q, rest)
        g = gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    return out


def _equal_degree_split(f, d):
    """Split monic squarefree f, all of whose irreducible factors have degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    n = f.degree
    # deterministic splitter search over all non-constant residues mod f,
    # in canonical order
    exponent = (F.q ** d - 1) // 2 if F.p != 2 else None
    q = F.q
    for code in range(q, q ** n):
        coeffs = []
        m = code
        for _ in range(n):
            coeffs.append(m % q)
            m //= q
        cand = Poly(F, coeffs)
        if cand.degree < 1:
            continue
        if F.p != 2:
            h = cand.powmod(exponent, f) - Poly.one(F)
        else:
            # trace map over the F_2-subfield: sum of cand^(2^i), i < d*m
            steps = d * F.m
            h = cand % f
            acc = h
            for _ in range(steps - 1):
                h = (h * h) % f
                acc = (acc + h) % f
            h = acc
        g = gcd(h, f)
        if 0 < g.degree < n:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)
    raise AssertionError("equal-degree splitting failed")  # unreachable for true inputs


def factor(f):
    """Factor nonzero f as [(monic irreducible, multiplicity)], canonical order."""
    if not f.c:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    out = []
    for g, mult in _squarefree_decomposition(f.monic()):
        for part, d in _distinct_degree(g):
            for irr in _equal_degree_split(part, d):
                out.append((irr, mult))
    out.sort(key=lambda pair: pair[0].sort_key())
    return out


def is_irreducible(f):
    if f.degree < 1:
        return False
    fac = factor(f)
    return len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree == f.degree


# -- rational functions --

class RatFunc:
    """num/den in lowest terms, den monic; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.field)
        if not den.c:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.c:
            den = Poly.one(num.field)
        else:
            g = gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = num.field.inv(den.lead())
            num, den = num.scale(lc), den.scale(lc)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @staticmethod
    def zero(field):
        return RatFunc(Poly.zero(field))

    @staticmethod
    def one(field):
        return RatFunc(Poly.one(field))

    @staticmethod
    def const(field, a):
        return RatFunc(Poly.const(field, a))

    @staticmethod
    def t(field):
        return RatFunc(Poly.x(field))

    def is_zero(self):
        return not self.num.c

    def is_const(self):
        return self.num.is_const() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    def __eq__(self, other):
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def ord_inf(self):
        """Valuation at the infinite place: deg den - deg num."""
        if self.is_zero():
            raise ZeroDivisionError("valuation of zero")
        return self.den.degree - self.num.degree

    def poly_part(self):
        """Polynomial part of the expansion at infinity (num // den)."""
        return self.num // self.den

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)})"


# -- text formatting (the CLI grammar lives in grammar.py; these are str forms) --

def format_coeff(field, a):
    if field.m == 1:
        return str(a)
    # digits over F_p in powers of g
    terms = []
    i = 0
    n = a
    while n:
        d = n % field.p
        if d:
            if i == 0:
                terms.append(str(d))
            else:
                head = "" if d == 1 else str(d) + "*"
                terms.append(f"{head}g" + (f"^{i}" if i > 1 else ""))
        n //= field.p
        i += 1
    return "+".join(reversed(terms)) if terms else "0"


def format_poly(f, var="t"):
    if not f.c:
        return "0"
    field = f.field
    terms = []
    for i in range(len(f.c) - 1, -1, -1):
        a = f.c[i]
        if not a:
            continue
        cs = format_coeff(field, a)
        if "+" in cs:
            cs = "(" + cs + ")"
        if i == 0:
            terms.append(cs)
        else:
            head = "" if cs == "1" else cs + "*"
            terms.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    return "+".join(terms)


def format_ratfunc(f):
    if f.den.is_one():
        return format_poly(f.num)
    num = format_poly(f.num)
    den = format_poly(f.den)
    if "+" in num:
        num = "(" + num + ")"
    if "+" in den:
        den = "(" + den + ")"
    return f"{num}/{den}"
