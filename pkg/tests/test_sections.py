"""Section spaces, splitting types, and idempotent search."""

import random

import pytest

from fqtrees.fq import Fq
from fqtrees.poly import Poly, RatFunc
from fqtrees.divisors import Divisor, Place, divisor_of, rr_dim
from fqtrees.balltree import canonical, mat_mul, standard_vertex
from fqtrees.sections import (
    EichlerPairCond, LatticeVertexCond, OrderSpec, SectionSpace, check_section,
    congruence_pairs, dim_sections, find_idempotent, sections, splitting_type,
)


def eichler_pair_spec(field, items, inf_vertex=None):
    """OrderSpec for the divisorial E[B, B'] given as {place: (beta, beta_prime)}.

    Locally E[b, b'] is the Eichler chain between the diagonal vertices
    (r = b', 0) and (r = -b, 0).
    """
    conds = []
    for place, (b, bp) in items:
        conds.append((place, EichlerPairCond(standard_vertex(place, -bp),
                                             standard_vertex(place, b))))
    inf = Place.infinity(field)
    infc = LatticeVertexCond(inf_vertex or standard_vertex(inf))
    return OrderSpec(field, tuple(conds), infc)


def test_standard_order_sections():
    for q in (2, 3):
        F = Fq(q)
        space = sections(OrderSpec.standard(F))
        assert space.dim == 4  # constant matrices
        for g in space.basis:
            assert check_section(OrderSpec.standard(F), g)
            for row in g:
                for e in row:
                    assert e.is_zero() or e.is_const()


def test_eichler_pp_sections_dim2():
    # E[P, P] with deg P = 1: both off-diagonal blocks vanish
    F = Fq(3)
    P = Place.of_point(F, 0)
    spec = eichler_pair_spec(F, [(P, (1, 1))])
    space = sections(spec)
    assert space.dim == 2
    for g in space.basis:
        assert check_section(spec, g)


def test_eichler_2p_minus_p_sections_dim4():
    # E[2P, -P]: dim = 2 + rr(-B) + rr(-B') = 2 + 0 + 2
    F = Fq(3)
    P = Place.of_point(F, 0)
    spec = eichler_pair_spec(F, [(P, (2, -1))])
    assert dim_sections(spec) == 4


@pytest.mark.parametrize("q", [2, 3])
def test_eichler_dim_formula_random(q):
    """dim E[B,B'](X) = 2 + rr_dim(-B) + rr_dim(-B') for divisorial orders."""
    F = Fq(q)
    rng = random.Random(q * 5)
    pts = [Place.of_point(F, 0), Place.of_point(F, 1)]
    for _ in range(12):
        data = []
        bdiv = Divisor.zero(F)
        bpdiv = Divisor.zero(F)
        for pl in pts:
            b = rng.randrange(-1, 3)
            bp = rng.randrange(-b, 3)  # keep b + bp >= 0
            if b or bp:
                data.append((pl, (b, bp)))
                bdiv = bdiv + Divisor.of_place(pl, b)
                bpdiv = bpdiv + Divisor.of_place(pl, bp)
        spec = eichler_pair_spec(F, data)
        expect = 2 + rr_dim(-bdiv) + rr_dim(-bpdiv)
        assert dim_sections(spec) == expect


def test_h_probe_monotone_and_increments():
    F = Fq(2)
    P = Place.of_point(F, 1)
    spec = eichler_pair_spec(F, [(P, (1, 0))]).as_vector()
    dims = [dim_sections(spec, k) for k in range(-4, 5)]
    assert all(b >= a for a, b in zip(dims, dims[1:]))
    tail = [b - a for a, b in zip(dims, dims[1:])][-3:]
    assert tail == [2, 2, 2]


def test_splitting_type_standard_and_ray():
    F = Fq(2)
    inf = Place.infinity(F)
    spec = OrderSpec.standard(F, rank="vector")
    assert splitting_type(spec) == 0
    for n in (1, 2, 3):
        s = OrderSpec(F, (), LatticeVertexCond(standard_vertex(inf, n)), "vector")
        assert splitting_type(s) == n


def test_splitting_type_twist_invariant():
    F = Fq(3)
    inf = Place.infinity(F)
    P0 = Place.of_point(F, 0)
    rng = random.Random(9)
    for n in (0, 1, 2):
        base = OrderSpec(F, (), LatticeVertexCond(standard_vertex(inf, n)), "vector")
        tn = splitting_type(base)
        # rescaling one coordinate by t (div t = P_0 - P_inf) moves the local
        # lattices to (r=1, 0) at P_0 and c_{n+1} at infinity, same bundle type
        spec = OrderSpec(F, ((P0, LatticeVertexCond(standard_vertex(P0, -1))),),
                         LatticeVertexCond(standard_vertex(inf, n + 1)), "vector")
        assert splitting_type(spec) == tn


def test_splitting_type_deg2_neighbor():
    """Vertices at distance 1 from standard at a degree-2 place have type 0 or 2."""
    F = Fq(2)
    p2 = Place.finite(F, Poly(F, (1, 1, 1)))
    from fqtrees.balltree import neighbors
    seen = set()
    for u in neighbors(standard_vertex(p2)):
        spec = OrderSpec(F, ((p2, LatticeVertexCond(u)),),
                         LatticeVertexCond(standard_vertex(Place.infinity(F))),
                         "vector")
        seen.add(splitting_type(spec))
    assert seen == {0, 2}


def test_congruence_pairs_give_gamma0_sections():
    """Sections of the Gamma_0(N) order are the upper triangular mod N matrices."""
    F = Fq(2)
    N = Poly(F, (0, 1)) * Poly(F, (1, 1))  # t(t+1)
    spec = OrderSpec(F, tuple(congruence_pairs(F, N)),
                     LatticeVertexCond(standard_vertex(Place.infinity(F))))
    space = sections(spec)
    # global sections: [[F, F], [0, F]] (lower-left killed by N of degree 2)
    assert space.dim == 3
    for g in space.basis:
        c = g[1][0]
        assert c.is_zero()


def test_find_idempotent_standard():
    F = Fq(2)
    space = sections(OrderSpec.standard(F))
    rho = find_idempotent(space)
    assert rho is not None
    prod = mat_mul(rho, rho)
    assert prod == rho
    tr = rho[0][0] + rho[1][1]
    assert tr.is_const() and not tr.is_zero()


def test_find_idempotent_eichler_p1p2():
    # E[P1, P2] contains the standard idempotent e11
    F = Fq(3)
    p1, p2 = Place.of_point(F, 0), Place.of_point(F, 1)
    spec = eichler_pair_spec(F, [(p1, (1, 0)), (p2, (0, 1))])
    space = sections(spec)
    rho = find_idempotent(space)
    assert rho is not None
    assert mat_mul(rho, rho) == rho
    det = rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]
    assert det.is_zero()


def test_find_idempotent_none_for_pp():
    # E[P, P] has sections [[F,0],[0,F]]... which contains e11! sanity check
    F = Fq(2)
    P = Place.of_point(F, 0)
    spec = eichler_pair_spec(F, [(P, (1, 1))])
    space = sections(spec)
    rho = find_idempotent(space)
    assert rho is not None  # diag(1, 0) is a section

    # exhaustive cross-check: enumerate the whole F_q-span
    field = space.field
    count = 0
    from itertools import product
    for coeffs in product(range(field.q), repeat=space.dim):
        acc = None
        for x, g in zip(coeffs, space.basis):
            if x:
                s = RatFunc.const(field, x)
                term = tuple(tuple(s * e for e in row) for row in g)
                acc = term if acc is None else tuple(
                    tuple(acc[r][c] + term[r][c] for c in range(2)) for r in range(2))
        if acc is None:
            continue
        if mat_mul(acc, acc) == acc:
            tr = acc[0][0] + acc[1][1]
            if not tr.is_zero() and not (acc[0][1].is_zero() and acc[1][0].is_zero()
                                         and acc[0][0] == acc[1][1]):
                count += 1
    assert count >= 1
