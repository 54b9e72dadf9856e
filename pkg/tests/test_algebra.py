"""Fields, dense linear algebra and integer lattices against brute force and sympy."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from binoc import GF, QQ, BadCharacteristic, Lattice, smith_normal_form
from binoc.lattice import hnf, saturation_basis
from binoc.linalg import nullspace, rank, span_basis


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 101])
def test_nth_roots_brute_force(p):
    F = GF(p)
    for n in range(1, 6):
        for c in range(p):
            want = sorted(r for r in range(p) if pow(r, n, p) == c) if c else [0]
            assert F.nth_roots(c, n) == want, (p, n, c)


def test_rational_roots():
    assert QQ.nth_roots(Fraction(4, 9), 2) == [Fraction(-2, 3), Fraction(2, 3)]
    assert QQ.nth_roots(-8, 3) == [-2]
    assert QQ.nth_roots(2, 2) == []


def test_prime_field_rejects_composites():
    with pytest.raises(BadCharacteristic):
        GF(91)
    assert GF(7).to_str(6) == "-1"


matrices = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.lists(st.integers(-4, 4), min_size=m, max_size=m), min_size=1, max_size=4)
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_matches_sympy(rows):
    m = len(rows[0])
    A = [[Fraction(x) for x in r] for r in rows]
    ours = nullspace(A, m, QQ)
    theirs = sympy.Matrix(rows).nullspace()
    assert len(ours) == len(theirs)
    M = sympy.Matrix(rows)
    for v in ours:
        assert M * sympy.Matrix(v) == sympy.zeros(len(rows), 1)
    assert rank(A, QQ) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_mod_p(rows):
    F = GF(7)
    m = len(rows[0])
    A = [[F.convert(x) for x in r] for r in rows]
    ker = nullspace(A, m, F)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) % 7 == 0 for r in A)
    # rank-nullity against a brute-force count of kernel vectors
    from itertools import product

    count = sum(1 for v in product(range(7), repeat=m) if all(sum(a * b for a, b in zip(r, v)) % 7 == 0 for r in A))
    assert count == 7 ** len(ker)
    assert len(span_basis(ker, F)) == len(ker)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_smith_invariants_match_sympy(rows):
    D, U, V = smith_normal_form(rows)
    M = sympy.Matrix(rows)
    assert sympy.Matrix(U) * M * sympy.Matrix(V) == sympy.Matrix(D)
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    ours = [D[i][i] for i in range(min(len(D), len(D[0])))]
    theirs = sympy_snf(M, domain=sympy.ZZ)
    theirs = [abs(theirs[i, i]) for i in range(min(theirs.shape))]
    assert ours == theirs


def test_lattice_membership_and_saturation():
    L = Lattice([[2, 0], [0, 3]], 2)
    assert L.contains((4, -3)) and not L.contains((1, 0))
    assert L.index_in_saturation() == 6
    assert Lattice([[2, 4]], 2).index_in_saturation() == 2
    assert hnf([[2, 4], [1, 2]]) == [[1, 2]]
    S = saturation_basis(Lattice([[2, 4]], 2))
    assert S is not None
    assert L.reduce((5, 7)) == L.reduce((1, 1))
