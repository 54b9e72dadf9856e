"""Fiber algebras, the largest-submodule fixpoint and irreducible closures."""

import random

import pytest

from binoc import (
    GF,
    Lattice,
    StabilizerCharacter,
    essential_submodule_check,
    fiber_algebra,
    ideal_equal,
    intersect_all,
    irr_primary_components,
    irreducible_closure,
    irreducible_decomposition,
    largest_submodule_in,
    localize,
    perp_subspace,
    socle_dimension,
)
from binoc.irreducible import fixpoint_stages, irreducible_closure_data, is_submodule
from binoc.linalg import in_span, span_basis

from conftest import R
from oracles import largest_submodule_brute_force, socle_brute_force

XY = (0, 1)
THREEVAR = "x^2*y - x*y^2, x^3, y^3, z^3"


def test_fiber_twosoc(twosoc):
    fib = fiber_algebra(twosoc, XY)
    assert fib.dim == 7
    assert sorted(fib.monomial_strs()) == sorted(["1", "x", "y", "x^2", "x*y", "y^2", "x*y^2"])
    n = fib.dim
    F = fib.F
    Mx, My = fib.matrix(0), fib.matrix(1)
    mul = lambda A, B: [[sum((A[i][k] * B[k][j] for k in range(n)), F.zero) for j in range(n)] for i in range(n)]
    assert mul(Mx, My) == mul(My, Mx)
    assert len(perp_subspace(fib)) == 6


def test_fiber_threevar_and_trivial():
    fib = fiber_algebra(R(THREEVAR, "x y z"), (0, 1, 2))
    assert fib.dim == 21 and len(perp_subspace(fib)) == 20
    assert fiber_algebra(R("x, y"), XY).dim == 1
    assert perp_subspace(fiber_algebra(R("x, y"), XY)) == []


def test_fixpoint_stages_twosoc(twosoc):
    fib = fiber_algebra(twosoc, XY)
    dims = [len(U) for U in fixpoint_stages(perp_subspace(fib), fib)]
    assert dims == [6, 4, 2, 1]
    (u,) = largest_submodule_in(perp_subspace(fib), fib)
    assert fib.vector_str(u) in ("x^2 - x*y + y^2", "-x^2 + x*y - y^2")
    assert largest_submodule_in([], fib) == []


def small_fibers():
    gens = [
        "x^2 - x*y, x*y - y^2, x^3",
        "x^2 - x*y, x*y + y^2",
        "x^2, x*y, y^2",
        "x^3, x*y, y^2",
        "x^2*y - x*y^2, x^3, y^3, x^2*y",
        "x^2 - y^2, x*y",
    ]
    out = [R(g, char=3) for g in gens]
    rng = random.Random(3)
    while len(out) < 14:
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        e1, e2 = (rng.randint(0, 2), rng.randint(0, 2)), (rng.randint(0, 2), rng.randint(0, 2))
        if e1 == e2:
            continue
        I = R(f"x^{a}, y^{b}, x^{e1[0]}*y^{e1[1]} - {rng.randint(1, 2)}*x^{e2[0]}*y^{e2[1]}", char=3)
        if I.is_whole_ring():
            continue
        if len(localize(I, XY).cogenerator_nodes()) == 1 and fiber_algebra(I, XY).dim <= 6:
            out.append(I)
    return out


@pytest.mark.parametrize("I", small_fibers(), ids=lambda I: ",".join(I.to_strs()))
def test_socle_and_submodule_match_brute_force(I):
    from binoc import FiberAlgebra

    view = localize(I, XY)
    fib = FiberAlgebra(view)
    assert fib.dim <= 6
    soc = fib.socle()
    brute = socle_brute_force(fib, [0, 1, 2])
    assert len(brute) == 3 ** len(soc)
    assert all(in_span(v, soc, fib.F) for v in brute)
    if len(view.cogenerator_nodes()) == 1:
        fib = fiber_algebra(I, XY)
        V = perp_subspace(fib)
        U = largest_submodule_in(V, fib)
        brute = largest_submodule_brute_force(fib, V, [0, 1, 2])
        assert len(brute) == 3 ** len(U)
        assert all(in_span(v, U, fib.F) for v in brute)


def module_span(fib, vecs):
    """Smallest submodule containing ``vecs``."""
    F = fib.F
    ops = list(fib.P) + fib.unit_variables()
    B = span_basis(vecs, F)
    while True:
        grown = span_basis(B + [fib.apply(k, b) for k in ops for b in B], F)
        if len(grown) == len(B):
            return B
        B = grown


def test_submodule_is_maximal(twosoc):
    fib = fiber_algebra(twosoc, XY)
    V = perp_subspace(fib)
    U = largest_submodule_in(V, fib)
    assert is_submodule(U, fib)
    assert all(in_span(u, V, fib.F) for u in U)
    for v in V:
        if in_span(v, U, fib.F):
            continue
        # adding any vector of w-perp outside U escapes w-perp
        assert not all(in_span(x, V, fib.F) for x in module_span(fib, U + [v]))


def test_closure_twosoc(twosoc):
    irr = irreducible_closure(twosoc, XY)
    assert ideal_equal(irr, R("x^2 + y^2 - x*y, x^3, y^3"))
    assert socle_dimension(irr, XY) == 1
    assert ideal_equal(irreducible_closure(irr, XY, (2, 1)), irr)
    with pytest.raises(ValueError):
        irreducible_closure(irr, XY)


def test_closure_threevar():
    I = R(THREEVAR, "x y z")
    irr = irreducible_closure(I, (0, 1, 2))
    assert ideal_equal(irr, I + R("x^2 + y^2 - x*y", "x y z"))


def test_closure_of_irreducible_is_identity():
    I = R("x^2 - x*y, x*y + y^2")
    assert ideal_equal(irreducible_closure(I, XY), I)


def test_essential_submodule(twosoc):
    _, fib, U = irreducible_closure_data(twosoc, XY)
    assert essential_submodule_check(fib, U)
    # without quotienting, the orbit of the cogenerator is not essential
    assert not essential_submodule_check(fib, [])
    one = fiber_algebra(R("x, y"), XY)
    assert essential_submodule_check(one, [])


def test_primary_split_over_f5():
    I = R("x, y^2 - 1", "x y", 5)
    ring = I.ring
    sc = StabilizerCharacter(ring, (0,), (0, 0), Lattice([[2]], 1), (ring.field.one,))
    parts = irr_primary_components(I, sc)
    assert len(parts) == 2
    assert ideal_equal(intersect_all(parts), I)
    for r in (1, 4):
        assert any(ideal_equal(P, R(f"x, y - {r}", "x y", 5)) for P in parts)


def test_decomposition_twosoc(twosoc):
    dec = irreducible_decomposition(twosoc, prune=True)
    assert dec.certified
    got = sorted(tuple(sorted(c.ideal.to_strs())) for c in dec.components)
    want = sorted(tuple(sorted(R(g).to_strs())) for g in ["x^2 + y^2 - x*y, x^3, y^3", "x^3, y"])
    assert got == want
    assert ideal_equal(intersect_all(dec.ideals()), twosoc)
    assert all(c.socle_dim == 1 for c in dec.components)


def test_decomposition_of_monomial_and_irreducible_inputs():
    dec = irreducible_decomposition(R("x^2, x*y, y^2"), prune=True)
    assert sorted(tuple(c.ideal.to_strs()) for c in dec.components) == sorted(
        [tuple(R("x^2, y").to_strs()), tuple(R("x, y^2").to_strs())]
    )
    I = R("x^2 - x*y, x*y + y^2")
    dec = irreducible_decomposition(I, prune=True)
    assert [ideal_equal(c.ideal, I) for c in dec.components] == [True]


def test_out_of_scope_components_are_flagged():
    dec = irreducible_decomposition(R("x*y - x, x^2"))
    flagged = [c for c in dec.components if "error" in c.flags]
    assert flagged and not dec.certified
    assert "UnsupportedUnitRank" in flagged[0].flags["error"]
