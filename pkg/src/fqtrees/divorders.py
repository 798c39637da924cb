"""Divisorial maximal and Eichler orders on P^1.

D_B is the maximal order [[O, L^B], [L^{-B}, O]] and E[B, B'] the Eichler
order [[O, L^{-B'}], [L^{-B}, O]]; both are stored by their divisor data,
which on P^1 is lossless.  Levels, intersections, the antidiagonal and
diagonal conjugations, containment grids, and the degree obstruction used
to certify non-splitness all reduce to divisor combinatorics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .divisors import Divisor, divisor_of
from .sections import EichlerPairCond, LatticeVertexCond, OrderSpec
from .balltree import standard_vertex
from .divisors import Place


@dataclass(frozen=True)
class MaxOrderDiv:
    b: Divisor

    def as_eichler(self):
        return EichlerDiv(self.b, -self.b)


@dataclass(frozen=True)
class EichlerDiv:
    b: Divisor
    bprime: Divisor

    def __post_init__(self):
        if not (self.b + self.bprime).is_effective():
            raise ValueError("E[B, B'] needs B + B' effective")


def level(e):
    return e.b + e.bprime


def intersect_maximal(b, bprime):
    """D_B cap D_B' = E[M, -G] with G the min and M the max coefficientwise."""
    g = b.min_with(bprime)
    m = b.max_with(bprime)
    return EichlerDiv(m, -g)


def conj_antidiag(e, f):
    """[[0, 1], [f, 0]]-conjugation: E[B, D] -> E[D + div f, B - div f]."""
    if f.is_zero():
        raise ZeroDivisionError("conjugation by the zero function")
    d = divisor_of(f)
    return EichlerDiv(e.bprime + d, e.b - d)


def conj_diag(e, f):
    """[[f, 0], [0, 1]]-conjugation: E[B, D] -> E[B - div f, D + div f]."""
    if f.is_zero():
        raise ZeroDivisionError("conjugation by the zero function")
    d = divisor_of(f)
    return EichlerDiv(e.b - d, e.bprime + d)


def maximal_orders_containing(e):
    """All D_C with -B' <= C <= B: the vertices of the containment grid."""
    places = sorted(set(e.b.coeffs) | set(e.bprime.coeffs), key=Place.sort_key)
    ranges = []
    for p in places:
        lo = -e.bprime.coeff(p)
        hi = e.b.coeff(p)
        ranges.append([(p, c) for c in range(lo, hi + 1)])
    out = []
    for combo in iproduct(*ranges):
        out.append(MaxOrderDiv(Divisor(e.b.field, list(combo))))
    return out


def grid_corners(e):
    """The 2^n extreme divisors C with C_P in {B_P, -B'_P}, pinned order."""
    places = [p for p in level(e).support()]
    choices = []
    for p in places:
        lo = -e.bprime.coeff(p)
        hi = e.b.coeff(p)
        choices.append([(p, lo), (p, hi)] if lo != hi else [(p, lo)])
    out = []
    for combo in iproduct(*choices):
        out.append(Divisor(e.b.field, list(combo)))
    return out


def split_degree_filter(corner_degrees, d):
    """Necessary condition for splitness from Lemma-3.3-style degrees.

    pass (True) iff signs exist with e1*n - e2*m = sum sigma_P alpha_P deg P;
    False certifies the order is non-split.  Passing is not sufficient.
    """
    n, m = corner_degrees
    parts = [(coeff * p.degree) for p, coeff in d.coeffs.items()]
    targets = set()
    for signs in iproduct((1, -1), repeat=len(parts)):
        targets.add(sum(s * x for s, x in zip(signs, parts)))
    for e1 in (1, -1):
        for e2 in (1, -1):
            if e1 * n - e2 * m in targets:
                return True
    return False


def eichler_order_spec(e, inf_vertex=None):
    """OrderSpec of E[B, B']: locally End(c at r=B'_P) cap End(c at r=-B_P).

    An infinity component of the level becomes an Eichler pair at infinity;
    otherwise the (optional) inf_vertex pins the lattice there.
    """
    field = e.b.field
    inf = Place.infinity(field)
    conds = []
    inf_cond = None
    for p in sorted(set(e.b.coeffs) | set(e.bprime.coeffs), key=Place.sort_key):
        beta = e.b.coeff(p)
        betap = e.bprime.coeff(p)
        v1 = standard_vertex(p, -betap)  # r = beta'
        v2 = standard_vertex(p, beta)    # r = -beta
        cond = LatticeVertexCond(v1) if v1 == v2 else EichlerPairCond(v1, v2)
        if p.is_infinite:
            inf_cond = cond
        else:
            conds.append((p, cond))
    if inf_cond is None:
        inf_cond = LatticeVertexCond(inf_vertex or standard_vertex(inf))
    elif inf_vertex is not None:
        raise ValueError("infinity is already constrained by the level data")
    return OrderSpec(field, tuple(conds), inf_cond)
