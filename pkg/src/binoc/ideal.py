"""Ideals with cached reduced Groebner bases, and the standard ideal toolkit.

Everything here is exact.  The default order is degrevlex with
``x_1 > ... > x_n``; certificates always recompute under that order.
"""

from __future__ import annotations

import threading
from functools import reduce
from typing import Iterable, Sequence

from .groebner import groebner_basis, reduce_poly
from .poly import DEGREVLEX, Poly, PolyRing, TermOrder


class Ideal:
    """A finitely generated ideal of ``ring``.

    Generators are stored as given (zeros dropped); reduced Groebner bases
    are computed lazily per term order and cached.
    """

    def __init__(self, gens: Iterable[Poly], ring: PolyRing | None = None):
        gens = [g for g in gens]
        if ring is None:
            if not gens:
                raise ValueError("ring required for the zero ideal")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb: dict = {}
        self._lock = threading.Lock()

    @property
    def is_binomial(self) -> bool:
        return all(g.is_binomial for g in self.gens)

    def groebner(self, order: TermOrder = DEGREVLEX) -> list:
        with self._lock:
            gb = self._gb.get(order)
            if gb is None:
                gb = groebner_basis(self.gens, order)
                self._gb[order] = gb
            return gb

    def normal_form(self, f: Poly, order: TermOrder = DEGREVLEX) -> Poly:
        return reduce_poly(f, self.groebner(order), order)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f: Poly) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_whole_ring(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(tuple(self.groebner()))

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.gens + other.gens, self.ring)
        return Ideal(self.gens + tuple(other), self.ring)

    def canonical_gens(self) -> list:
        """Reduced degrevlex basis, the canonical presentation."""
        return self.groebner(DEGREVLEX)

    def to_strs(self) -> list:
        return [g.to_str() for g in self.canonical_gens()]

    def __repr__(self):
        return "<" + ", ".join(g.to_str() for g in self.gens) + ">"


def normal_form(f: Poly, I: Ideal, order: TermOrder = DEGREVLEX) -> Poly:
    return I.normal_form(f, order)


def groebner(I: Ideal, order: TermOrder = DEGREVLEX) -> list:
    return I.groebner(order)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        return False
    return [g.terms for g in I.groebner()] == [g.terms for g in J.groebner()]


def eliminate(I: Ideal, first: Sequence[int]) -> list:
    """Generators of ``I`` intersected with the subring missing ``first``.

    Returned polynomials still live in ``I.ring``.
    """
    rest = [i for i in range(I.ring.n) if i not in set(first)]
    order = TermOrder.elimination(first, rest)
    fs = set(first)
    return [g for g in I.groebner(order) if not any(i in fs for i in g.variables_used())]


def saturate(I: Ideal, m: Poly | Sequence[int]) -> Ideal:
    """``(I : m^oo)`` for a monomial ``m`` (or a list of variable indices).

    Done one variable at a time: ``(I : x^oo)`` is ``I + <1 - y*x>``
    intersected with the original ring.
    """
    if isinstance(m, Poly):
        if not m.is_monomial:
            raise ValueError("saturate expects a monomial")
        (e,) = m.terms
        idx = [i for i, v in enumerate(e) if v]
    else:
        idx = list(m)
    ring = I.ring
    J = I
    for i in idx:
        J = _saturate_variable(J, i)
    return J if J is not I else Ideal(I.gens, ring)


def _saturate_variable(I: Ideal, i: int) -> Ideal:
    ring = I.ring
    if I.is_zero():
        return I
    big = ring.extend(["_sat"], front=True)
    pos = list(range(1, ring.n + 1))
    gens = [g.embed(big, pos) for g in I.gens]
    y = big.var(0)
    gens.append(big.one - y * big.var(i + 1))
    J = Ideal(gens, big)
    kept = eliminate(J, [0])
    return Ideal([g.restrict(ring, pos) for g in kept], ring)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` intersected with ``J`` via one auxiliary variable and elimination."""
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    if I.is_whole_ring():
        return Ideal(J.gens, ring)
    if J.is_whole_ring():
        return Ideal(I.gens, ring)
    big = ring.extend(["_t"], front=True)
    pos = list(range(1, ring.n + 1))
    t = big.var(0)
    gens = [t * g.embed(big, pos) for g in I.gens]
    gens += [(big.one - t) * g.embed(big, pos) for g in J.gens]
    kept = eliminate(Ideal(gens, big), [0])
    return Ideal([g.restrict(ring, pos) for g in kept], ring)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise ValueError("empty intersection")
    return reduce(intersect, ideals)


def exact_divide(g: Poly, f: Poly) -> Poly:
    """Quotient ``g / f``; raises ``ValueError`` if ``f`` does not divide ``g``."""
    F = g.ring.field
    order = DEGREVLEX
    flm = f.lm(order)
    flc = f.terms[flm]
    q = g.ring.zero
    r = g
    while not r.is_zero():
        rlm = r.lm(order)
        if not all(a >= b for a, b in zip(rlm, flm)):
            raise ValueError("not an exact division")
        e = tuple(a - b for a, b in zip(rlm, flm))
        c = F.div(r.terms[rlm], flc)
        term = g.ring.monomial(e, c)
        q = q + term
        r = r - term * f
    return q


def colon(I: Ideal, f: Poly) -> Ideal:
    """``(I : f)`` for a nonzero polynomial ``f``."""
    if f.is_zero():
        raise ValueError("colon by zero")
    ring = I.ring
    if f.is_constant():
        return Ideal(I.gens, ring)
    inter = intersect(I, Ideal([f], ring))
    return Ideal([exact_divide(g, f) for g in inter.gens], ring)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    return intersect_all([colon(I, g) for g in J.gens])


def monomial_ideal(ring: PolyRing, exps) -> Ideal:
    return Ideal([ring.monomial(e) for e in exps], ring)
