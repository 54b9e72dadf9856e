"""Socles, binoccular collapse and closure, binoccular decomposition.

The collapse adjoins every binomial ``t^a - lam t^b`` (both monomials
outside the cogenerator orbit) that the maximal ideal ``m_P`` kills.  It is
computed on orbits: for orbits ``a`` and ``b`` the unit shift ``d`` and the
scalar ``lam`` are forced by the steps ``a + e_i`` and ``b + e_i``, and must
agree for every ``i`` in P.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config
from .congruence import LocalView, _add, _sub, localize
from .errors import CrossCheckMismatch, NotCoprincipal
from .fiber import FiberAlgebra
from .ideal import Ideal, ideal_equal, saturate
from .lattice import solve_in_lattice
from .mesoprimary import (
    Component,
    Decomposition,
    _map,
    coprincipal_component,
    stabilizer_character,
    witness_sites,
)


@dataclass
class SocleSpace:
    P: tuple
    fiber: FiberAlgebra = field(repr=False)
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def strs(self) -> list:
        return [self.fiber.vector_str(v) for v in self.basis]

    def polys(self) -> list:
        return [self.fiber.lift(v) for v in self.basis]


def socle(I: Ideal, P, view: LocalView | None = None) -> SocleSpace:
    view = view or localize(I, P)
    fib = FiberAlgebra(view)
    return SocleSpace(view.P, fib, fib.socle())


def _rho(view: LocalView, node, k):
    """Scalar of the stabilizer element ``k`` at ``node``."""
    F = view.ring.field
    if not any(k):
        return F.one
    K, rho = view.stabilizer_with_character(node)
    c = solve_in_lattice(list(k), [list(b) for b in K.basis])
    if c is None:
        raise CrossCheckMismatch("shift is not in the stabilizer")
    out = F.one
    for coef, b in zip(c, K.basis):
        out = F.mul(out, F.pow(rho[b], coef))
    return out


def _cogenerator(view: LocalView, w=None):
    if w is not None:
        loc = view.locate(tuple(w))
        if loc is None:
            raise NotCoprincipal("the requested cogenerator is nil")
        return loc[0]
    cogs = view.cogenerator_nodes()
    if len(cogs) != 1:
        raise NotCoprincipal(f"expected one cogenerator orbit, found {len(cogs)}")
    return cogs[0]


def collapse_binomials(view: LocalView, w=None) -> list:
    """``(a, b, lam)`` with ``t^a - lam t^b`` killed by ``m_P``; exponents in Z^n."""
    F = view.ring.field
    wn = _cogenerator(view, w)
    nodes = [u for u in view.candidate_nodes() if u != wn]
    out = []
    for x, a in enumerate(nodes):
        for b in nodes[x + 1 :]:
            hit = _pair(view, a, b)
            if hit is not None:
                d, lam = hit
                out.append((a, view.join(b, d), lam))
    return out


def _pair(view, a, b):
    F = view.ring.field
    steps = []
    for i in view.P:
        la = view.locate(_add(a, _unit(view.n, i)))
        lb = view.locate(_add(b, _unit(view.n, i)))
        if la is None and lb is None:
            continue
        if la is None or lb is None or la[0] != lb[0]:
            return None
        steps.append((la, lb))
    if not steps:
        return None
    r0 = steps[0][0][0]
    K = view.stabilizer(r0)
    d = K.reduce(_sub(steps[0][0][1], steps[0][1][1]))
    lam = None
    for (r, sa, ca), (_, sb, cb) in steps:
        k = _sub(_add(sb, d), sa)
        Kr = view.stabilizer(r)
        if not Kr.contains(k):
            return None
        val = F.div(ca, F.mul(cb, _rho(view, r, k)))
        if lam is None:
            lam = val
        elif lam != val:
            return None
    return d, lam


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def _laurent_binomial(ring, a, b, lam):
    shift = [max(0, -a[j], -b[j]) for j in range(ring.n)]
    ea = tuple(x + s for x, s in zip(a, shift))
    eb = tuple(x + s for x, s in zip(b, shift))
    return ring.binomial(ea, eb, lam)


def binoccular_collapse(W: Ideal, P, w=None, view: LocalView | None = None) -> Ideal:
    """``W`` plus all binomials outside the cogenerator orbit that ``m_P`` kills."""
    view = view or localize(W, P)
    ring = W.ring
    found = collapse_binomials(view, w)
    if not found:
        return W
    new = [_laurent_binomial(ring, a, b, lam) for a, b, lam in found]
    if config.CROSS_CHECK:
        for f in new:
            for i in view.P:
                if not view.isat.contains(ring.var(i) * f):
                    raise CrossCheckMismatch(f"x_{i} * ({f.to_str()}) is not in the ideal")
    J = Ideal(list(W.gens) + new, ring)
    if view.U:
        J = saturate(J, list(view.U))
    return Ideal(J.groebner(), ring)


def binoccular_closure(W: Ideal, P, w=None) -> Ideal:
    """Iterate the collapse until nothing new is added."""
    cur = W
    view = localize(W, P)
    while True:
        nxt = binoccular_collapse(cur, P, w, view)
        if nxt is cur or ideal_equal(nxt, cur):
            return cur
        cur = nxt
        view = localize(cur, P)


def binoccular_component(I: Ideal, P, w, view: LocalView | None = None) -> Component:
    comp = coprincipal_component(I, P, w, view)
    J = binoccular_closure(comp.ideal, comp.P, w)
    return Component("binoccular", comp.P, comp.w, J, comp.character)


def is_binoccular(I: Ideal, P) -> bool:
    from .congruence import congruence_predicates

    view = localize(I, P)
    if view.is_whole or not congruence_predicates(view).is_coprincipal:
        raise NotCoprincipal("binoccularity is defined for coprincipal ideals")
    return not collapse_binomials(view)


def binoccular_decomposition(I: Ideal, jobs: int | None = None, prune: bool = False) -> Decomposition:
    """Binoccular components at the essential witnesses, with certificates."""
    from .verify import check_intersection, check_mesoprimary_decomposition, irredundancy_prune, socle_dimension
    from .errors import NotPCofinite, UnsupportedUnitRank

    sites = witness_sites(I)

    def build(site):
        view, rec = site
        comp = binoccular_component(I, view.P, rec.w, view)
        comp.witness = rec
        try:
            comp.socle_dim = socle_dimension(comp.ideal, comp.P)
        except (UnsupportedUnitRank, NotPCofinite):
            comp.socle_dim = None
        return comp

    comps = _map(build, sites, jobs)
    cert = check_intersection(I, comps, 1)
    meso = check_mesoprimary_decomposition(I, comps)
    dec = Decomposition(comps, cert.verdict, "binoccular")
    dec.certificates = {"intersection": cert, "mesoprimary": meso}
    if prune and cert.verdict:
        dec.components = irredundancy_prune(I, comps)
    return dec
