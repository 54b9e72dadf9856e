"""Socles, binoccular collapse and closure, binoccular decompositions."""

import pytest

from binoc import (
    NotCoprincipal,
    binoccular_closure,
    binoccular_collapse,
    binoccular_component,
    binoccular_decomposition,
    check_intersection,
    coprincipal_component,
    ideal_equal,
    is_binoccular,
    localize,
    soccular_closure,
    socle,
)
from binoc.verify import check_mesoprimary_decomposition

from conftest import R

XY = (0, 1)
STAIRCASE = "x^3 - x^2*y, x^2*y - x*y^2, x*y^3 - y^4, x^5"


def in_span(I, polys, target):
    """Is ``target`` a combination of ``polys`` modulo ``I``? (sympy oracle)"""
    import sympy

    syms = sympy.symbols(I.ring.names)
    G = sympy.groebner([sympy.sympify(g.to_str().replace("^", "**")) for g in I.gens], *syms, order="grevlex", domain="QQ")

    def nf(text):
        return G.reduce(sympy.sympify(text.replace("^", "**")))[1]

    exprs = [nf(p.to_str()) for p in polys]
    cs = sympy.symbols(f"c0:{len(exprs)}")
    eq = sympy.Poly(sum(c * e for c, e in zip(cs, exprs)) - nf(target), *syms)
    return bool(sympy.solve(eq.coeffs(), cs, dict=True)) or eq.is_zero


def test_socle_twosoc(twosoc):
    S = socle(twosoc, XY)
    assert S.dim == 2
    assert in_span(twosoc, S.polys(), "x^2 + y^2 - x*y")
    assert in_span(twosoc, S.polys(), "x^2*y")
    assert not in_span(twosoc, S.polys(), "x^2")
    for f in S.polys():
        for x in twosoc.ring.gens():
            assert twosoc.contains(x * f)


def test_socle_diag(diag):
    S = socle(diag, XY)
    assert in_span(diag, S.polys(), "x - y")


def test_socle_of_maximal_ideal():
    S = socle(R("x, y"), XY)
    assert S.dim == 1 and S.strs() == ["1"]


def test_collapse_examples(diag, twosoc):
    C = binoccular_collapse(diag, XY)
    assert C.contains(diag.ring.parse("x - y"))
    assert ideal_equal(binoccular_collapse(twosoc, XY), twosoc)
    I52 = R("x^2 - x*y, x*y + y^2")
    assert ideal_equal(binoccular_collapse(I52, XY), I52)


def test_closure_examples(diag, twosoc):
    cl = binoccular_closure(diag, XY)
    assert ideal_equal(cl, R("x - y, y^3"))
    assert ideal_equal(binoccular_closure(cl, XY), cl)
    assert ideal_equal(binoccular_closure(twosoc, XY), twosoc)


def test_closure_keeps_cogenerator():
    I = R(STAIRCASE)
    view = localize(I, XY)
    (u,) = view.cogenerator_nodes()
    w = view.join(u, ())
    cl = binoccular_closure(I, XY)
    t = I.ring.monomial(w)
    assert not cl.contains(t)
    assert all(cl.contains(x * t) for x in I.ring.gens())
    assert all(cl.contains(g) for g in I.gens)


def partition(I, cells):
    view = localize(I, XY)
    groups = {}
    for e in cells:
        k = view.class_of(e)
        if k is not None:
            groups.setdefault(k, set()).add(e)
    return list(groups.values())


@pytest.mark.parametrize("gens", [STAIRCASE, "x^2 - x*y, x*y - y^2, x^3", "x^2*y - x*y^2, x^3, y^3"])
def test_closure_sits_between_congruence_and_soccular_closure(gens):
    I = R(gens)
    cells = [(a, b) for a in range(7) for b in range(7)]
    cl = binoccular_closure(I, XY)
    fine, mid = partition(I, cells), partition(cl, cells)
    view = localize(I, XY)
    soc = soccular_closure(view.congruence())
    coarse = {}
    for e in cells:
        loc = view.locate(e)
        if loc is not None:
            coarse.setdefault(soc.classify(loc[0]), set()).add(e)
    coarse = list(coarse.values())
    assert all(any(g <= h for h in mid) for g in fine)
    # merged binoccular classes stay inside soccular classes (nil may grow)
    assert all(any(g <= h for h in coarse) for g in mid)


def test_is_binoccular(diag, twosoc):
    assert is_binoccular(twosoc, XY)
    assert not is_binoccular(diag, XY)
    assert is_binoccular(R("x^2 - x*y, x*y + y^2"), XY)
    with pytest.raises(NotCoprincipal):
        is_binoccular(R("x^2, x*y, y^2"), XY)


def test_component_is_closure_of_coprincipal_component(twosoc):
    for w in [(2, 0), (1, 1), (2, 1)]:
        a = binoccular_component(twosoc, XY, w).ideal
        b = binoccular_closure(coprincipal_component(twosoc, XY, w).ideal, XY, w)
        assert ideal_equal(a, b)


SEARCH_I = "x^2*y - x*y^2, x^4 - x^3*y, x*y^3 - y^4, x^5"
SEARCH_J = "x^4*y - x^3*y^2, x^2*y^3 - x*y^4, x^6 - x^5*y, x*y^5 - y^6, x^7"


@pytest.mark.parametrize("gens", [SEARCH_I, SEARCH_J, "x^2, x*y, y^2", "x^2*y - x*y^2, x^3, y^3"])
def test_decomposition_certified_both_ways(gens):
    I = R(gens)
    dec = binoccular_decomposition(I)
    assert dec.certified
    assert check_intersection(I, dec.components, 1).verdict
    assert check_intersection(I, dec.components, 3).verdict
    assert check_mesoprimary_decomposition(I, dec.components).verdict
