"""Arithmetic in small finite fields F_q, q = p^m <= 64.

Elements are plain ints in range(q) encoding polynomials over F_p in the
basis 1, g, g^2, ...: the int sum(c_i * p**i) stands for sum(c_i * g**i),
where g is the class of x modulo the pinned irreducible below.  For prime
q this is the usual residue representation.  Keeping elements as bare ints
lets polynomials over F_q be plain coefficient tuples.

One irreducible modulus is pinned per prime power so that results are
reproducible across runs and machines.
"""

from __future__ import annotations


# Pinned monic irreducible moduli, little-endian coefficient tuples over F_p.
MODULUS_TABLE = {
    4: (1, 1, 1),                # x^2 + x + 1        over F_2
    8: (1, 1, 0, 1),             # x^3 + x + 1        over F_2
    9: (1, 0, 1),                # x^2 + 1            over F_3
    16: (1, 1, 0, 0, 1),         # x^4 + x + 1        over F_2
    25: (1, 1, 1),               # x^2 + x + 1        over F_5
    27: (1, 2, 0, 1),            # x^3 + 2x + 1       over F_3
    32: (1, 0, 1, 0, 0, 1),      # x^5 + x^2 + 1      over F_2
    49: (3, 1, 1),               # x^2 + x + 3        over F_7
    64: (1, 1, 0, 0, 0, 0, 1),   # x^6 + x + 1        over F_2
}

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)

_cache: dict[int, "Fq"] = {}


def _factor_prime_power(q):
    for p in _PRIMES:
        if q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return p, m
    raise ValueError(f"q = {q} is not a supported prime power (need q <= 64)")


class Fq:
    """The field F_q with table-driven arithmetic on int elements."""

    __slots__ = ("q", "p", "m", "modulus", "_mul", "_inv", "_frob")

    def __new__(cls, q):
        if q in _cache:
            return _cache[q]
        if q < 2 or q > 64:
            raise ValueError(f"q = {q} out of supported range 2..64")
        p, m = _factor_prime_power(q)
        self = object.__new__(cls)
        self.q = q
        self.p = p
        self.m = m
        if m == 1:
            self.modulus = None
            self._mul = None
            self._inv = None
        else:
            if q not in MODULUS_TABLE:
                raise ValueError(f"no pinned modulus for q = {q}")
            self.modulus = MODULUS_TABLE[q]
            self._build_tables()
        _cache[q] = self
        return self

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        mod = self.modulus
        assert len(mod) == m + 1 and mod[-1] == 1

        def to_vec(n):
            v = []
            for _ in range(m):
                v.append(n % p)
                n //= p
            return v

        def from_vec(v):
            n = 0
            for c in reversed(v):
                n = n * p + c
            return n

        # reduction of g^k for k in [m, 2m-2]
        red = []
        cur = [-mod[i] % p for i in range(m)]  # g^m
        red.append(list(cur))
        for _ in range(m - 2):
            top = cur[-1]
            shifted = [0] + cur[:-1]
            cur = [(shifted[i] + top * red[0][i]) % p for i in range(m)]
            red.append(list(cur))

        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            va = to_vec(a)
            for b in range(a, q):
                vb = to_vec(b)
                prod = [0] * (2 * m - 1)
                for i, ca in enumerate(va):
                    if ca:
                        for j, cb in enumerate(vb):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                acc = prod[:m]
                for k in range(m, 2 * m - 1):
                    c = prod[k]
                    if c:
                        rk = red[k - m]
                        acc = [(acc[i] + c * rk[i]) % p for i in range(m)]
                mul[a][b] = mul[b][a] = from_vec(acc)
        self._mul = mul

        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
            else:
                raise AssertionError(f"modulus for q={q} is not irreducible")
        self._inv = inv

    # -- element operations (elements are ints in range(q)) --

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        p, m = self.p, self.m
        r, mult = 0, 1
        for _ in range(m):
            r += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return r

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        p, m = self.p, self.m
        r, mult = 0, 1
        for _ in range(m):
            r += ((-a) % p) * mult
            a //= p
            mult *= p
        return r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def elems(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    @property
    def generator(self):
        """The class of x for non-prime q (the grammar symbol `g`)."""
        if self.m == 1:
            raise ValueError("prime field has no pinned generator symbol")
        return self.p

    def __repr__(self):
        return f"Fq({self.q})"

    def __hash__(self):
        return hash(("Fq", self.q))

    def __eq__(self, other):
        return isinstance(other, Fq) and other.q == self.q
