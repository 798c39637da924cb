"""Divisorial order calculus: levels, intersections, conjugations, grids."""

import random

import pytest

from fqtrees.fq import Fq
from fqtrees.poly import Poly, RatFunc
from fqtrees.divisors import Divisor, Place, divisor_of, rr_dim
from fqtrees.divorders import (
    EichlerDiv, MaxOrderDiv, conj_antidiag, conj_diag, eichler_order_spec,
    grid_corners, intersect_maximal, level, maximal_orders_containing,
    split_degree_filter,
)
from fqtrees.sections import dim_sections


def places3():
    F = Fq(3)
    return F, Place.of_point(F, 0), Place.of_point(F, 1), Place.of_point(F, 2)


def test_level_examples():
    F, p1, p2, _ = places3()
    assert level(EichlerDiv(Divisor.zero(F), Divisor.zero(F))).is_zero()
    e = EichlerDiv(Divisor.of_place(p1), Divisor.of_place(p2))
    assert e.b + e.bprime == level(e)
    e = EichlerDiv(Divisor.of_place(p1, 2), Divisor.of_place(p1, -1))
    assert level(e) == Divisor.of_place(p1, 1)
    with pytest.raises(ValueError):
        EichlerDiv(Divisor.of_place(p1, -2), Divisor.of_place(p1, 1))


def test_intersect_maximal():
    F, p1, p2, _ = places3()
    e = intersect_maximal(Divisor.of_place(p1, 2), Divisor.zero(F))
    assert e.b == Divisor.of_place(p1, 2) and e.bprime.is_zero()

    b = Divisor(F, [(p1, 1), (p2, -1)])
    e = intersect_maximal(b, b)
    assert e.b == b and e.bprime == -b and level(e).is_zero()

    e = intersect_maximal(Divisor(F, [(p1, 1), (p2, -1)]), Divisor.zero(F))
    assert e.b == Divisor.of_place(p1) and e.bprime == Divisor.of_place(p2)
    # level is |B - B'| in general
    rng = random.Random(2)
    for _ in range(40):
        d1 = Divisor(F, [(p1, rng.randrange(-2, 3)), (p2, rng.randrange(-2, 3))])
        d2 = Divisor(F, [(p1, rng.randrange(-2, 3)), (p2, rng.randrange(-2, 3))])
        assert level(intersect_maximal(d1, d2)) == (d1 - d2).abs()


def test_conjugations():
    F, p1, p2, _ = places3()
    one = RatFunc.one(F)
    e = EichlerDiv(Divisor.of_place(p1), Divisor.of_place(p2))
    assert conj_antidiag(e, one) == EichlerDiv(e.bprime, e.b)
    assert conj_diag(e, one) == e

    # Lemma-4.1 move: div f = n(P2 - P1) sends E[P1 + nP2, -nP2] to
    # E[(n+1)P1, -nP1]
    t = RatFunc.t(F)
    for n in (1, 2):
        f = ((t - one) / t) ** n  # div f = n(P_1 - P_0) with P_0 = t, P_1 = t-1
        e = EichlerDiv(Divisor(F, [(p1, 1), (p2, n)]), Divisor.of_place(p2, -n))
        # here p1 = t, p2 = t-1; take div f = n(p2 - p1): f = ((t-1)/t)^n
        moved = conj_diag(e, f.inverse())  # B - div(1/f) = B + div f
        # choose the sign that cancels the p2 part
        cand = [conj_diag(e, f), conj_diag(e, f.inverse())]
        assert any(c.b == Divisor.of_place(p1, n + 1) and
                   c.bprime == Divisor.of_place(p1, -n) for c in cand)

    # level preserved by both conjugations for random data
    rng = random.Random(5)
    for _ in range(30):
        b = Divisor(F, [(p1, rng.randrange(-2, 3)), (p2, rng.randrange(0, 3))])
        bp = Divisor(F, [(p1, rng.randrange(-b.coeff(p1), -b.coeff(p1) + 3)),
                         (p2, rng.randrange(-b.coeff(p2), -b.coeff(p2) + 3))])
        e = EichlerDiv(b, bp)
        f = (t ** rng.randrange(0, 3)) * ((t - one) ** rng.randrange(0, 2))
        if f.is_zero():
            continue
        assert level(conj_antidiag(e, f)) == level(e)
        assert level(conj_diag(e, f)) == level(e)
        # antidiag twice with the same f multiplies to the scalar f: identity
        assert conj_antidiag(conj_antidiag(e, f), f) == e


def test_maximal_orders_containing():
    F, p1, p2, _ = places3()
    e = EichlerDiv(Divisor.of_place(p1), Divisor.of_place(p2))
    got = {m.b for m in maximal_orders_containing(e)}
    expect = {Divisor.zero(F), Divisor.of_place(p1), -Divisor.of_place(p2),
              Divisor.of_place(p1) - Divisor.of_place(p2)}
    assert got == expect

    e0 = EichlerDiv(Divisor.zero(F), Divisor.zero(F))
    assert [m.b for m in maximal_orders_containing(e0)] == [Divisor.zero(F)]

    e2 = EichlerDiv(Divisor.of_place(p1, 2), Divisor.zero(F))
    got = {m.b for m in maximal_orders_containing(e2)}
    assert got == {Divisor.zero(F), Divisor.of_place(p1), Divisor.of_place(p1, 2)}
    # counts match the grid size prod(alpha_P + alpha'_P + 1)
    rng = random.Random(8)
    for _ in range(20):
        b = Divisor(F, [(p1, rng.randrange(0, 3)), (p2, rng.randrange(-1, 2))])
        bp = Divisor(F, [(p1, rng.randrange(-b.coeff(p1), 2)),
                         (p2, rng.randrange(-b.coeff(p2), 3))])
        e = EichlerDiv(b, bp)
        lv = level(e)
        expect = 1
        for p in lv.support():
            expect *= lv.coeff(p) + 1
        assert len(maximal_orders_containing(e)) == expect


def test_grid_corners_count():
    F, p1, p2, p3 = places3()
    e = EichlerDiv(Divisor(F, [(p1, 1), (p2, 1), (p3, 1)]), Divisor.zero(F))
    assert len(grid_corners(e)) == 8
    e = EichlerDiv(Divisor.of_place(p1, 2), Divisor.zero(F))
    assert len(grid_corners(e)) == 2


def test_split_degree_filter():
    F = Fq(3)
    # level = one degree-2 place
    pq = Place.finite(F, Poly(F, (1, 0, 1)))
    d = Divisor.of_place(pq)
    assert split_degree_filter((0, 0), d) is False  # certified non-split
    assert split_degree_filter((1, 1), d) is True
    # three degree-1 places pass even for the non-split Figure-3 order
    _, p1, p2, p3 = places3()
    d3 = Divisor(F, [(p1, 1), (p2, 1), (p3, 1)])
    assert split_degree_filter((0, 1), d3) is True


def test_section_dims_of_divisorial_orders():
    """dim E[B,B'](X) = 2 + rr(-B) + rr(-B'), via the generated OrderSpec."""
    F, p1, p2, _ = places3()
    rng = random.Random(11)
    for _ in range(10):
        b = Divisor(F, [(p1, rng.randrange(0, 2)), (p2, rng.randrange(-1, 2))])
        bp = Divisor(F, [(p1, rng.randrange(-b.coeff(p1), 2)),
                         (p2, rng.randrange(-b.coeff(p2), 2))])
        e = EichlerDiv(b, bp)
        spec = eichler_order_spec(e)
        assert dim_sections(spec) == 2 + rr_dim(-b) + rr_dim(-bp)


def test_conjugation_preserves_section_dims():
    """Eq-2/3 conjugations preserve section dimensions (oracle cross-check)."""
    F, p1, p2, _ = places3()
    t = RatFunc.t(F)
    e = EichlerDiv(Divisor(F, [(p1, 1), (p2, 1)]), Divisor.zero(F))
    for f in (t, t * t, (t - RatFunc.one(F))):
        for moved in (conj_antidiag(e, f), conj_diag(e, f)):
            # the conjugated order has an infinity component in general;
            # compare dims through the spec builder
            d1 = dim_sections(eichler_order_spec(e))
            d2 = dim_sections(eichler_order_spec(moved))
            assert d1 == d2
