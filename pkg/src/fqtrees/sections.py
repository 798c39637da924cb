"""Global section spaces of orders and bundles given by local lattice data.

Every local condition is reduced to integrality of a conjugated matrix:
g satisfies the vertex condition at v iff h_v^{-1} g h_v is integral at
the place, where h_v = [[x, pi^r], [1, 0]] spans the lattice of v.  After
clearing denominators this is a collection of F_q-linear constraints on
bounded polynomial coefficients, solved by exact elimination.

The same compiler handles hom conditions h_w^{-1} g h_v in pi^e M_2(O_P),
which is what group-equivalence searches need, and rank-1 conditions for
vector bundles.  sections() returns complete bases; splitting_type()
probes section dimensions of twists; find_idempotent() searches the
trace-1 slice of an order's section ring, where 2x2 Cayley-Hamilton makes
det = 0 equivalent to being a nontrivial idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .balltree import (
    Vertex, act, canonical, mat_adj, mat_det, mat_mul, standard_vertex,
    vertex_lattice_matrix,
)
from .divisors import Divisor, Place, ord_at
from .linalg import nullspace, solve_affine
from .poly import Poly, RatFunc


class IndeterminateError(RuntimeError):
    """A search exhausted its budget without a definite verdict."""


DEFAULT_BUDGET = 1 << 20


# ---- local conditions and specs ----

@dataclass(frozen=True)
class LatticeVertexCond:
    vertex: Vertex


@dataclass(frozen=True)
class EichlerPairCond:
    v1: Vertex
    v2: Vertex

    def __post_init__(self):
        if self.v1.place != self.v2.place:
            raise ValueError("Eichler pair vertices must share the place")


@dataclass(frozen=True)
class CongruenceModN:
    """Lower-left entry divisible by N; equivalently the Eichler chain
    E[(0,0), (-n,0)] at each prime power of N."""
    modulus: Poly


@dataclass(frozen=True)
class OrderSpec:
    """Local conditions at finitely many finite places plus one at infinity.

    rank is 'endo' (2x2 endomorphism sections) or 'vector' (K^2 sections).
    Unlisted places carry the standard condition.
    """
    field: object
    conds: tuple  # tuple of (Place, condition)
    infinity: object  # LatticeVertexCond or EichlerPairCond
    rank: str = "endo"

    def __post_init__(self):
        places = [p for p, _ in self.conds]
        if len(set(places)) != len(places):
            raise ValueError("at most one condition per place")
        if any(p.is_infinite for p in places):
            raise ValueError("the infinity condition is separate")

    @staticmethod
    def standard(field, rank="endo"):
        inf = Place.infinity(field)
        return OrderSpec(field, (), LatticeVertexCond(standard_vertex(inf)), rank)

    def with_infinity(self, cond):
        return OrderSpec(self.field, self.conds, cond, self.rank)

    def as_vector(self):
        return OrderSpec(self.field, self.conds, self.infinity, "vector")


def congruence_pairs(field, modulus):
    """(place, EichlerPairCond) list expressing c = 0 mod N."""
    from .poly import factor
    out = []
    for p, mult in factor(modulus):
        place = Place(field, p)
        # End(c_0) cap End(c_mult) = [[O, O], [pi^mult O, O]] locally
        out.append((place, EichlerPairCond(standard_vertex(place, 0),
                                           standard_vertex(place, mult))))
    return out


def _vertices_of(cond):
    if isinstance(cond, LatticeVertexCond):
        return (cond.vertex,)
    if isinstance(cond, EichlerPairCond):
        return (cond.v1, cond.v2)
    raise TypeError(f"unsupported condition {cond!r}")


@dataclass(frozen=True)
class HomCond:
    """Require h_target^{-1} g h_source to lie in pi^shift M_2(O_P)."""
    place: Place
    target: Vertex
    source: Vertex
    shift: int = 0


def spec_hom_conditions(spec, twist=0):
    """Order/bundle conditions as HomConds (target = source), twisted at inf."""
    conds = []
    for place, cond in spec.conds:
        for v in _vertices_of(cond):
            if v.place != place:
                raise ValueError("condition vertex at the wrong place")
            conds.append(HomCond(place, v, v, 0))
    for v in _vertices_of(spec.infinity):
        if not v.place.is_infinite:
            raise ValueError("infinity condition must live at the infinite place")
        conds.append(HomCond(v.place, v, v, -twist))
    return conds


# ---- the constraint compiler ----

def _min_ord(v):
    """Minimal valuation among entries of h_v."""
    lead = v.jet.lead_exp
    m = min(0, v.r)
    if lead is not None:
        m = min(m, lead)
    return m


def _cleared_lattice_matrix(v):
    """(h_v scaled to polynomial entries, clearing exponent c).

    At a finite place scale by P^c with c = max(0, -min entry valuation);
    at infinity the non-polynomial entries are those of positive valuation
    (powers of 1/t), and jet exponents sit below r, so c = max(0, r) works.
    """
    h = vertex_lattice_matrix(v)
    field = v.place.field
    if v.place.is_infinite:
        c = max(0, v.r)
        s = RatFunc(Poly.x_pow(field, c))
    else:
        c = max(0, -_min_ord(v))
        s = RatFunc(v.place.poly ** c)
    return tuple(tuple(s * e for e in row) for row in h), c


def _as_poly(r):
    if not r.den.is_one():
        raise AssertionError("expected a cleared polynomial entry")
    return r.num


class SectionProblem:
    """Compiled linear system for matrix/vector unknowns under HomConds."""

    def __init__(self, field, conditions, rank="endo"):
        self.field = field
        self.rank = rank
        self.nentries = 4 if rank == "endo" else 2
        self.conditions = tuple(conditions)

        inf_bound = None
        den_pow = {}
        for cond in self.conditions:
            mv = _min_ord(cond.source)
            mw = _min_ord(cond.target)
            low = cond.shift + mw + mv - cond.source.r
            if cond.place.is_infinite:
                b = -low
                inf_bound = b if inf_bound is None else max(inf_bound, b)
            else:
                need = max(0, -low)
                den_pow[cond.place] = max(den_pow.get(cond.place, 0), need)
        if inf_bound is None:
            raise ValueError("a section problem needs a condition at infinity")
        self.den_pow = den_pow
        den = Poly.one(field)
        for place, s in sorted(den_pow.items(), key=lambda kv: kv[0].sort_key()):
            den = den * place.poly ** s
        self.den = den
        self.deg_bound = max(-1, inf_bound + den.degree)
        self.ncoeffs = self.deg_bound + 1
        self.nunknowns = self.nentries * self.ncoeffs

    def _rows_for_condition(self, cond):
        """F_q-linear rows expressing the condition on the unknowns."""
        field = self.field
        rows = []
        hw, cw = _cleared_lattice_matrix(cond.target)
        hv, cv = _cleared_lattice_matrix(cond.source)
        adj = mat_adj(hw)
        sP = 0 if cond.place.is_infinite else self.den_pow.get(cond.place, 0)
        # vector sections conjugate on one side only: adj(hw~) * V
        clear = cw + cv if self.rank == "endo" else cw
        if cond.place.is_infinite:
            # entries of the cleared product must have degree <= B
            B = clear + self.den.degree - cond.target.r - cond.shift
        else:
            K = cond.shift + cond.target.r + clear + sP
            if K <= 0:
                return rows
            mod = cond.place.poly ** K
        if self.rank == "endo":
            # W[i][k][l][j] = adj_ik * hv_lj
            idx = {(k, l): k * 2 + l for k in range(2) for l in range(2)}
            for i in range(2):
                for j in range(2):
                    polys = {}
                    for k in range(2):
                        a = _as_poly(adj[i][k])
                        if a.is_zero():
                            continue
                        for l in range(2):
                            b = _as_poly(hv[l][j])
                            if b.is_zero():
                                continue
                            polys[idx[(k, l)]] = a * b
                    rows.extend(self._entry_rows(polys, B if cond.place.is_infinite else None,
                                                 None if cond.place.is_infinite else (mod, K)))
        else:
            for i in range(2):
                polys = {}
                for k in range(2):
                    a = _as_poly(adj[i][k])
                    if not a.is_zero():
                        polys[k] = a
                rows.extend(self._entry_rows(polys, B if cond.place.is_infinite else None,
                                             None if cond.place.is_infinite else (mod, K)))
        return rows

    def _entry_rows(self, polys, deg_cap, modulus):
        """Rows for sum_e polys[e] * G_e, either deg-capped or mod P^K.

        polys maps entry index -> known polynomial multiplier.
        """
        field = self.field
        rows = []
        if modulus is None:
            # coefficient at degrees > deg_cap must vanish
            maxdeg = max((p.degree for p in polys.values()), default=-1) + self.deg_bound
            if maxdeg <= deg_cap:
                return rows
            for d in range(max(0, deg_cap + 1), maxdeg + 1):
                row = [0] * self.nunknowns
                nz = False
                for e, p in polys.items():
                    for c in range(self.ncoeffs):
                        coef = p[d - c] if 0 <= d - c <= p.degree else 0
                        if coef:
                            row[e * self.ncoeffs + c] = coef
                            nz = True
                if nz:
                    rows.append(row)
            return rows
        mod, K = modulus
        # one row per remainder coefficient position of sum (t^c p_e) mod P^K
        acc = {}
        for e, p in polys.items():
            cur = p % mod
            for c in range(self.ncoeffs):
                if c:
                    cur = cur.shift(1) % mod
                for d in range(len(cur.c)):
                    coef = cur.c[d]
                    if coef:
                        acc.setdefault(d, [0] * self.nunknowns)
                        acc[d][e * self.ncoeffs + c] = field.add(
                            acc[d][e * self.ncoeffs + c], coef)
        for d in sorted(acc):
            rows.append(acc[d])
        return rows

    def solve(self):
        """Nullspace basis as matrices (or column pairs) of RatFuncs."""
        rows = []
        for cond in self.conditions:
            rows.extend(self._rows_for_condition(cond))
        if self.nunknowns == 0:
            return []
        basis = nullspace(self.field, rows, self.nunknowns)
        return [self._vector_to_matrix(v) for v in basis]

    def _vector_to_matrix(self, vec):
        field = self.field
        entries = []
        for e in range(self.nentries):
            coeffs = vec[e * self.ncoeffs:(e + 1) * self.ncoeffs]
            entries.append(RatFunc(Poly(field, coeffs), self.den))
        if self.rank == "endo":
            return ((entries[0], entries[1]), (entries[2], entries[3]))
        return (entries[0], entries[1])


# ---- public operations ----

@dataclass(frozen=True)
class SectionSpace:
    spec: OrderSpec
    twist: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def field(self):
        return self.spec.field


def sections(spec, twist=0):
    """Complete F_q-basis of global sections of the spec, twisted at infinity."""
    prob = SectionProblem(spec.field, spec_hom_conditions(spec, twist), spec.rank)
    return SectionSpace(spec, twist, tuple(prob.solve()))


def dim_sections(spec, twist=0):
    return sections(spec, twist).dim


def check_section(spec, g, twist=0):
    """Independent containment re-check of one section (exact valuations)."""
    for cond in spec_hom_conditions(spec, twist):
        hv = vertex_lattice_matrix(cond.source)
        hw = vertex_lattice_matrix(cond.target)
        from .balltree import mat_inv
        if spec.rank == "endo":
            conj = mat_mul(mat_mul(mat_inv(hw), g), hv)
            entries = [e for row in conj for e in row]
        else:
            inv = mat_inv(hw)
            entries = [inv[0][0] * g[0] + inv[0][1] * g[1],
                       inv[1][0] * g[0] + inv[1][1] * g[1]]
        for e in entries:
            if not e.is_zero() and ord_at(e, cond.place) < cond.shift:
                return False
    return True


def spec_det_degree(spec):
    """Degree of the determinant line bundle of a rank-2 vector spec."""
    total = 0
    for place, cond in spec.conds:
        if not isinstance(cond, LatticeVertexCond):
            raise ValueError("vector bundles carry single-vertex conditions")
        total -= cond.vertex.r * place.degree
    if not isinstance(spec.infinity, LatticeVertexCond):
        raise ValueError("vector bundles carry single-vertex conditions")
    total -= spec.infinity.vertex.r
    return total


def splitting_type(spec):
    """n >= 0 with the bundle isomorphic to O(a) + O(b), n = a - b.

    Probes h(k) = dim sections(spec, k) for increasing k; the first twist
    with nonzero sections pins a, and the determinant degree pins b.
    """
    vspec = spec.as_vector() if spec.rank != "vector" else spec
    degdet = spec_det_degree(vspec)
    # |a| is at most the total local displacement
    span = sum(abs(c.vertex.r) * p.degree for p, c in vspec.conds)
    span += abs(vspec.infinity.vertex.r)
    k = -(span + abs(degdet) + 1)
    while True:
        if dim_sections(vspec, k) > 0:
            a = -k
            break
        k += 1
    b = degdet - a
    n = a - b
    if n < 0:
        raise AssertionError("splitting probe returned a < b")
    return n


def _det_quadratic_data(basis):
    """Coefficient vectors over a common denominator for det of combinations."""
    dets = {}
    n = len(basis)
    for i in range(n):
        dets[(i, i)] = mat_det(basis[i])
    for i in range(n):
        for j in range(i + 1, n):
            s = tuple(tuple(basis[i][r][c] + basis[j][r][c] for c in range(2))
                      for r in range(2))
            dets[(i, j)] = mat_det(s) - dets[(i, i)] - dets[(j, j)]
    return dets


def _combo_matrix(field, basis, coeffs):
    acc = None
    for x, g in zip(coeffs, basis):
        if not x:
            continue
        s = RatFunc.const(field, x)
        term = tuple(tuple(s * e for e in row) for row in g)
        if acc is None:
            acc = term
        else:
            acc = tuple(tuple(acc[r][c] + term[r][c] for c in range(2)) for r in range(2))
    if acc is None:
        zero = RatFunc.zero(field)
        acc = ((zero, zero), (zero, zero))
    return acc


def find_idempotent(space, budget=DEFAULT_BUDGET):
    """A nontrivial idempotent in the F_q-span, or None (search exhaustive).

    Any nontrivial 2x2 idempotent has trace 1 and determinant 0, and by
    Cayley-Hamilton that suffices; so the search walks the affine trace-1
    slice and tests the determinant.
    """
    field = space.field
    basis = space.basis
    if not basis:
        return None
    # trace of each basis matrix, over a common denominator
    traces = [g[0][0] + g[1][1] for g in basis]
    den = Poly.one(field)
    from .poly import gcd as pgcd
    for tr in traces:
        den = (den * tr.den) // pgcd(den, tr.den)
    tr_polys = [(tr * RatFunc(den)).num for tr in traces]
    target = den  # trace == 1 means numerator equals the common denominator
    maxdeg = max([p.degree for p in tr_polys] + [target.degree])
    rows = []
    rhs = []
    for d in range(maxdeg + 1):
        rows.append([p[d] for p in tr_polys])
        rhs.append(target[d])
    sol = solve_affine(field, rows, rhs, len(basis))
    if sol is None:
        return None
    part, null = sol
    dim = len(null)
    if field.q ** dim > budget:
        raise IndeterminateError(
            f"idempotent search needs {field.q}^{dim} candidates, over budget")
    dets = _det_quadratic_data(basis)
    n = len(basis)
    for free in iproduct(range(field.q), repeat=dim):
        coeffs = list(part)
        for x, vec in zip(free, null):
            if x:
                for k in range(n):
                    coeffs[k] = field.add(coeffs[k], field.mul(x, vec[k]))
        det = _det_value(field, dets, coeffs, n)
        if det.is_zero():
            rho = _combo_matrix(field, basis, coeffs)
            tr = rho[0][0] + rho[1][1]
            prod = mat_mul(rho, rho)
            assert all(prod[r][c] == rho[r][c] for r in range(2) for c in range(2))
            return rho
    return None


def _det_value(field, dets, coeffs, n):
    acc = None
    for i in range(n):
        xi = coeffs[i]
        if not xi:
            continue
        term = dets[(i, i)] * RatFunc.const(field, field.mul(xi, xi))
        acc = term if acc is None else acc + term
        for j in range(i + 1, n):
            xj = coeffs[j]
            if xj:
                term = dets[(i, j)] * RatFunc.const(field, field.mul(xi, xj))
                acc = acc + term
    if acc is None:
        return RatFunc.zero(field)
    return acc
