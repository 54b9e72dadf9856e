"""Irreducible closures and irreducible decompositions.

For a coprincipal ideal with cogenerator ``w`` the localized quotient
``R_P`` splits as the span of the orbit of ``t^w`` plus the span of all
other standard monomials (``w^perp``).  The irreducible closure kills the
largest submodule of ``R_P`` inside ``w^perp``, found as a descending
fixpoint.  Only finite-dimensional ``R_P`` are supported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binoccular import _cogenerator
from .congruence import LocalView, localize
from .errors import (
    BadCharacteristic,
    BinocError,
    CrossCheckMismatch,
    FieldExtensionRequired,
    NotPCofinite,
    UnsupportedUnitRank,
)
from .fiber import FiberAlgebra
from .ideal import Ideal, ideal_equal, saturate
from .linalg import in_span, nullspace, preimage_subspace, span_basis
from .mesoprimary import (
    Component,
    Decomposition,
    _map,
    coprincipal_component,
    mesoprime_minimal_primes,
    witness_sites,
)


def fiber_algebra(I: Ideal, P, w=None) -> FiberAlgebra:
    """The fiber of ``I`` at ``P`` with its cogenerator orbit marked.

    Non-binomial ideals (such as closures) are accepted when ``w`` is given.
    """
    if w is None and not I.is_binomial:
        raise ValueError("a non-binomial ideal needs an explicit cogenerator")
    view = localize(I, P)
    fib = FiberAlgebra(view)
    fib.w_node = _cogenerator(view, w) if not view.is_whole else None
    return fib


def perp_subspace(fib: FiberAlgebra) -> list:
    """Coordinates outside the orbit of the cogenerator."""
    F = fib.F
    out = []
    for k, o in enumerate(fib.orbit):
        if o != fib.w_node:
            v = [F.zero] * fib.dim
            v[k] = F.one
            out.append(v)
    return out


def _operators(fib: FiberAlgebra) -> list:
    return list(fib.P) + fib.unit_variables()


def largest_submodule_in(V: list, fib: FiberAlgebra) -> list:
    """Descending fixpoint ``U_{k+1} = {f in U_k : x f in U_k for every variable x}``."""
    F = fib.F
    U = span_basis(V, F)
    mats = [fib.matrix(k) for k in _operators(fib)]
    while U:
        nxt = U
        for M in mats:
            nxt = preimage_subspace(M, U, nxt, F)
            if not nxt:
                break
        nxt = span_basis(nxt, F)
        if len(nxt) == len(U):
            return U
        U = nxt
    return U


def fixpoint_stages(V: list, fib: FiberAlgebra) -> list:
    """All ``U_k`` of the fixpoint, for display."""
    F = fib.F
    U = span_basis(V, F)
    mats = [fib.matrix(k) for k in _operators(fib)]
    stages = [U]
    while U:
        nxt = U
        for M in mats:
            nxt = preimage_subspace(M, U, nxt, F)
        nxt = span_basis(nxt, F)
        if len(nxt) == len(U):
            break
        U = nxt
        stages.append(U)
    return stages


def is_submodule(U: list, fib: FiberAlgebra) -> bool:
    F = fib.F
    for k in _operators(fib):
        for u in U:
            if not in_span(fib.apply(k, u), U, F):
                return False
    return True


def irreducible_closure(I: Ideal, P, w=None) -> Ideal:
    """``I`` plus the preimage of the largest submodule inside ``w^perp``."""
    return irreducible_closure_data(I, P, w)[0]


def irreducible_closure_data(I: Ideal, P, w=None):
    """``(irr, fiber, U_inf)``."""
    fib = fiber_algebra(I, P, w)
    U = largest_submodule_in(perp_subspace(fib), fib)
    if not U:
        return I, fib, U
    ring = I.ring
    J = Ideal(list(I.gens) + [fib.lift(u) for u in U], ring)
    if fib.view.U:
        J = saturate(J, list(fib.view.U))
    J = Ideal(J.groebner(), ring)
    wn = fib.w_node
    if J.contains(ring.monomial(tuple(max(0, x) for x in wn))):
        raise CrossCheckMismatch("the irreducible closure contains the cogenerator")
    return J, fib, U


def essential_submodule_check(fib: FiberAlgebra, U: list) -> bool:
    """Is the image of ``k[G_P] t^w`` essential in ``R_P / U``?

    Every nonzero submodule of a nilpotent module meets the socle, so it is
    enough that the socle of ``R_P / U`` lies in the cogenerator orbit span
    modulo ``U``.
    """
    F = fib.F
    n = fib.dim
    if not n:
        return True
    # socle of R/U: {f : x_i f in U for i in P}
    S = [[F.one if j == k else F.zero for j in range(n)] for k in range(n)]
    for i in fib.P:
        S = preimage_subspace(fib.matrix(i), U, S, F) if U else _kernel_within(fib.matrix(i), S, F)
    orbit = [[F.one if j == k else F.zero for j in range(n)] for k in range(n) if fib.orbit[k] == fib.w_node]
    target = span_basis(list(U) + orbit, F)
    return all(in_span(s, target, F) for s in S)


def _kernel_within(M, basis, F):
    if not basis:
        return []
    # coefficients c with M (sum c_k b_k) = 0
    images = [[sum_row(M[r], b, F) for r in range(len(M))] for b in basis]
    rows = [[images[k][r] for k in range(len(basis))] for r in range(len(M))]
    out = []
    for c in nullspace(rows, len(basis), F):
        v = [F.zero] * len(basis[0])
        for coef, b in zip(c, basis):
            if coef != F.zero:
                v = [F.add(x, F.mul(coef, y)) for x, y in zip(v, b)]
        out.append(v)
    return out


def sum_row(row, v, F):
    acc = F.zero
    for a, b in zip(row, v):
        if a != F.zero and b != F.zero:
            acc = F.add(acc, F.mul(a, b))
    return acc


def irr_primary_components(irrI: Ideal, sc) -> list:
    """One component per minimal prime of the mesoprime of ``sc``."""
    primes = mesoprime_minimal_primes(sc)
    if len(primes) == 1:
        return [irrI]
    ring = irrI.ring
    U = sc.U
    out = []
    for _, Q in primes:
        # the lattice part of the prime picks one eigenspace of the unit action
        J = Ideal(list(irrI.gens) + [g for g in Q.groebner() if not _is_p_variable(g, sc.P)], ring)
        if U:
            J = saturate(J, list(U))
        out.append(Ideal(J.groebner(), ring))
    return out


def _is_p_variable(g, P) -> bool:
    if len(g.terms) != 1:
        return False
    (e,) = g.terms
    return sum(e) == 1 and any(e[i] == 1 for i in P)


def irreducible_decomposition(I: Ideal, jobs: int | None = None, prune: bool = False) -> Decomposition:
    """Primary parts of the irreducible closures of the coprincipal
    components at the essential witnesses."""
    from .verify import check_intersection, irredundancy_prune, socle_dimension

    sites = witness_sites(I)

    def build(site):
        view, rec = site
        comp = coprincipal_component(I, view.P, rec.w, view)
        try:
            irr = irreducible_closure(comp.ideal, comp.P, comp.w)
            parts = irr_primary_components(irr, comp.character)
        except (UnsupportedUnitRank, NotPCofinite, FieldExtensionRequired, BadCharacteristic) as exc:
            bad = Component("irreducible", comp.P, comp.w, comp.ideal, comp.character, rec)
            bad.flags["error"] = f"{type(exc).__name__}: {exc}"
            return [bad]
        out = []
        for J in parts:
            c = Component("irreducible", comp.P, comp.w, J, comp.character, rec)
            c.flags["closure"] = irr.to_strs()
            try:
                c.socle_dim = socle_dimension(J, comp.P)
            except BinocError:
                c.socle_dim = None
            out.append(c)
        return out

    comps = [c for group in _map(build, sites, jobs) for c in group]
    errors = [c for c in comps if "error" in c.flags]
    cert = check_intersection(I, comps, 1)
    dec = Decomposition(comps, cert.verdict and not errors, "irreducible", certificates={"intersection": cert})
    if errors:
        dec.notes.append(f"{len(errors)} component(s) fell outside the supported scope and were kept unclosed")
    if prune and cert.verdict:
        dec.components = irredundancy_prune(I, comps)
    return dec
