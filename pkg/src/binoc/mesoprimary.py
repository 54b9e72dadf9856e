"""Stabilizer characters, mesoprimes, coprincipal components and
coprincipal decomposition of binomial ideals.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import config
from .congruence import LocalView, WitnessRecord, all_monoid_primes, localize
from .errors import (
    BadCharacteristic,
    BoundExceeded,
    FieldExtensionRequired,
    NilClass,
    NotPCofinite,
    UnsupportedUnitRank,
)
from .fiber import FiberAlgebra
from .ideal import Ideal, ideal_equal, intersect_all, saturate
from .lattice import Lattice, saturation_basis, solve_in_lattice
from .linalg import nullspace, span_basis
from .poly import PolyRing


@dataclass(frozen=True)
class StabilizerCharacter:
    """The lattice ``K`` of unit shifts fixing a class, with its character ``rho``.

    ``rho`` lists the scalar of each HNF basis vector of ``K``.
    """

    ring: PolyRing
    P: tuple
    q: tuple
    K: Lattice
    rho: tuple

    @property
    def U(self) -> tuple:
        return tuple(i for i in range(self.ring.n) if i not in set(self.P))

    def value(self, g):
        F = self.ring.field
        c = solve_in_lattice(list(g), [list(b) for b in self.K.basis])
        if c is None:
            raise ValueError(f"{g} is not in the stabilizer lattice")
        out = F.one
        for coef, val in zip(c, self.rho):
            out = F.mul(out, F.pow(val, coef))
        return out

    def same_mesoprime(self, other: "StabilizerCharacter") -> bool:
        return self.P == other.P and self.K == other.K and self.rho == other.rho

    def binomials(self) -> list:
        """``t^{g+} - rho(g) t^{g-}`` for the basis vectors ``g`` of ``K``."""
        ring = self.ring
        out = []
        for g, val in zip(self.K.basis, self.rho):
            plus = [0] * ring.n
            minus = [0] * ring.n
            for k, j in enumerate(self.U):
                if g[k] > 0:
                    plus[j] = g[k]
                else:
                    minus[j] = -g[k]
            out.append(ring.binomial(tuple(plus), tuple(minus), val))
        return out

    def describe(self) -> dict:
        F = self.ring.field
        return {
            "P": [self.ring.names[i] for i in self.P],
            "lattice": [list(b) for b in self.K.basis],
            "rho": [F.to_str(v) for v in self.rho],
        }


def stabilizer_character(I: Ideal, P, q, view: LocalView | None = None) -> StabilizerCharacter:
    view = view or localize(I, P)
    loc = view.locate(tuple(q))
    if loc is None:
        raise NilClass(f"t^{tuple(q)} lies in the localization")
    K, rho = view.stabilizer_with_character(loc[0])
    return StabilizerCharacter(view.ring, view.P, tuple(q), K, tuple(rho[b] for b in K.basis))


def mesoprime(sc: StabilizerCharacter) -> Ideal:
    """Preimage of ``I_rho + m_P``: lattice binomials plus P variables, saturated at the units."""
    ring = sc.ring
    gens = [ring.var(i) for i in sc.P] + sc.binomials()
    if not gens:
        return Ideal([], ring)
    J = Ideal(gens, ring)
    return saturate(J, list(sc.U)) if sc.U and sc.K.basis else J


@dataclass
class Component:
    """One component of a decomposition."""

    kind: str
    P: tuple
    w: tuple
    ideal: Ideal
    character: StabilizerCharacter | None = None
    witness: WitnessRecord | None = None
    flags: dict = field(default_factory=dict)
    socle_dim: int | None = None

    def prime_names(self) -> list:
        return [self.ideal.ring.names[i] for i in self.P]

    def witness_str(self) -> str:
        from .congruence import _laurent_str

        return _laurent_str(self.w, self.ideal.ring.names)


def monomial_part(view: LocalView, w) -> list:
    """Generators of ``M_w``: monomials ``t^u`` whose class cannot reach ``w``."""
    loc = view.locate(tuple(w))
    if loc is None:
        raise NilClass(f"{w} is nil")
    wn = loc[0]
    n = view.n
    zero = tuple([0] * n)

    def reaches(e):
        l = view.locate(e)
        return l is not None and view.leq(l[0], wn)

    if not reaches(zero):
        return [zero]
    seen = {zero}
    queue = deque([zero])
    outside = set()
    while queue:
        e = queue.popleft()
        for i in view.P:
            f = tuple(v + (1 if k == i else 0) for k, v in enumerate(e))
            if f in seen or f in outside:
                continue
            if reaches(f):
                seen.add(f)
                queue.append(f)
                if len(seen) > config.MAX_BASIS_SIZE:
                    raise BoundExceeded("monomial part of the component is not finitely generated within the cap")
            else:
                outside.add(f)
    gens = [e for e in outside if not any(o != e and all(a <= b for a, b in zip(o, e)) for o in outside)]
    return sorted(gens, key=lambda e: (sum(e), tuple(-x for x in e)))


def coprincipal_component(I: Ideal, P, w, view: LocalView | None = None) -> Component:
    """``W_w^P(I)``: preimage of ``I_P + I_rho + M_w``."""
    view = view or localize(I, P)
    ring = I.ring
    sc = stabilizer_character(I, view.P, w, view)
    M = [ring.monomial(e) for e in monomial_part(view, w)]
    gens = list(view.isat.gens) + sc.binomials() + M
    J = Ideal(gens, ring)
    if view.U and sc.K.basis:
        J = saturate(J, list(view.U))
    J = Ideal(J.groebner(), ring)
    return Component("coprincipal", view.P, tuple(w), J, sc)


def essential_witnesses(I: Ideal, P, view: LocalView | None = None) -> list:
    """Key witnesses plus Green-minimal monomials of socle elements.

    If the localized quotient is infinite dimensional the socle test is
    skipped and every witness is returned (a superset, which is safe for
    decompositions).
    """
    view = view or localize(I, P)
    if view.is_whole:
        return []
    records = view.witness_records("witness")
    by_node = {view.split(r.w)[0]: r for r in records}
    out = {}
    for r in records:
        if r.is_key:
            r.kinds.add("essential")
            out[view.split(r.w)[0]] = r
    try:
        fib = FiberAlgebra(view)
    except (UnsupportedUnitRank, NotPCofinite):
        for r in records:
            r.kinds.add("essential")
            r.kinds.add("unchecked")
            out.setdefault(view.split(r.w)[0], r)
        return _sorted_records(view, out.values())
    socle = fib.socle()
    for u in _orbits(fib):
        if u in out:
            continue
        if socle_minimal(fib, socle, u):
            r = by_node.get(u) or WitnessRecord(u, view.P, set())
            r.kinds.add("essential")
            out[u] = r
    return _sorted_records(view, out.values())


def _orbits(fib: FiberAlgebra) -> list:
    seen = []
    for o in fib.orbit:
        if o not in seen:
            seen.append(o)
    return seen


def socle_minimal(fib: FiberAlgebra, socle: list, u) -> bool:
    """Is there a socle element with a nonzero monomial in orbit ``u`` and no
    nonzero monomial strictly Green-below ``u``?"""
    if not socle:
        return False
    F = fib.F
    view = fib.view
    below = [k for k, o in enumerate(fib.orbit) if o != u and view.strictly_below(o, u)]
    # combinations of socle vectors vanishing on the strictly-lower coordinates
    rows = [[vec[k] for vec in socle] for k in below]
    sols = nullspace(rows, len(socle), F)
    mine = fib.coords_of_orbit(u)
    for s in sols:
        for k in mine:
            val = F.zero
            for coef, vec in zip(s, socle):
                if coef != F.zero and vec[k] != F.zero:
                    val = F.add(val, F.mul(coef, vec[k]))
            if val != F.zero:
                return True
    return False


def _sorted_records(view, recs) -> list:
    return sorted(recs, key=lambda r: (sum(r.w), tuple(-x for x in r.w)))


@dataclass
class Decomposition:
    components: list
    certified: bool
    mode: str
    notes: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)

    def ideals(self) -> list:
        return [c.ideal for c in self.components]


def witness_sites(I: Ideal, essential: bool = True) -> list:
    """``(view, record)`` for every (essential) witness over every monoid prime."""
    out = []
    for P in all_monoid_primes(I.ring.n):
        view = LocalView(I, P)
        if view.is_whole:
            continue
        recs = essential_witnesses(I, P, view) if essential else view.witness_records("witness")
        for r in recs:
            out.append((view, r))
    return out


def coprincipal_decomposition(I: Ideal, jobs: int | None = None, prune: bool = False) -> Decomposition:
    """Intersection of the coprincipal components at the essential witnesses."""
    from .verify import check_intersection, irredundancy_prune

    sites = witness_sites(I)

    def build(site):
        view, rec = site
        comp = coprincipal_component(I, view.P, rec.w, view)
        comp.witness = rec
        return comp

    comps = _map(build, sites, jobs)
    cert = check_intersection(I, [c.ideal for c in comps], criterion=1)
    dec = Decomposition(comps, cert.verdict, "coprincipal", certificates={"intersection": cert})
    if prune and cert.verdict:
        dec.components = irredundancy_prune(I, comps)
    return dec


def _map(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def mesoprime_minimal_primes(sc: StabilizerCharacter) -> list:
    """Minimal primes of the mesoprime: one per extension of ``rho`` to the saturation of ``K``.

    Returns a list of ``(chi_values, Ideal)``.
    """
    F = sc.ring.field
    ring = sc.ring
    b, d, T = saturation_basis(sc.K)
    m = 1
    for x in d:
        m *= x
    if m > 1 and F.characteristic and m % F.characteristic == 0:
        raise BadCharacteristic(f"characteristic {F.characteristic} divides the lattice index {m}")
    choices = []
    for bk, dk, tk in zip(b, d, T):
        val = F.one
        for coef, r in zip(tk, sc.rho):
            val = F.mul(val, F.pow(r, coef))
        if dk == 1:
            roots = [val]
        else:
            roots = F.nth_roots(val, dk)
            if len(roots) < dk:
                raise FieldExtensionRequired(m)
        choices.append(roots)
    out = []
    U = sc.U
    for chi in product(*choices):
        gens = [ring.var(i) for i in sc.P]
        for bk, c in zip(b, chi):
            plus = [0] * ring.n
            minus = [0] * ring.n
            for k, j in enumerate(U):
                if bk[k] > 0:
                    plus[j] = bk[k]
                else:
                    minus[j] = -bk[k]
            gens.append(ring.binomial(tuple(plus), tuple(minus), c))
        J = Ideal(gens, ring)
        if U and b:
            J = saturate(J, list(U))
        out.append((tuple(chi), Ideal(J.groebner(), ring)))
    return out
