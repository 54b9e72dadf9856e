"""Acceptance criteria 1-8.

Each test prints one ``criterion N: PASS|FAIL`` line (also collected into
the pytest terminal summary) and pins the required tolerance and time
budget.  Run directly with ``python3 tests/test_acceptance.py`` for the
lines alone.
"""

import random
import sys
import time
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from binoc import (  # noqa: E402
    GF,
    FiberAlgebra,
    Ideal,
    PolyRing,
    binoccular_decomposition,
    binomial_irreducibility_report,
    check_intersection,
    congruence_predicates,
    coprincipal_decomposition,
    fiber_algebra,
    ideal_equal,
    intersect_all,
    irreducible_closure,
    irreducible_decomposition,
    is_binoccular,
    iterated_collapses,
    largest_submodule_in,
    localize,
    perp_subspace,
    soccular_closure,
    soccular_collapse,
    socle,
    socle_dimension,
    witnesses,
)
from binoc.congruence import LocalView, all_monoid_primes  # noqa: E402
from binoc.errors import NotPCofinite, UnsupportedUnitRank  # noqa: E402
from binoc.linalg import in_span  # noqa: E402
from binoc.soccular import _fingerprint_pairs  # noqa: E402

from conftest import R  # noqa: E402
from oracles import largest_submodule_brute_force, socle_brute_force  # noqa: E402

XY = (0, 1)

# time budgets in seconds
BUDGET = {1: 1.0, 2: 1.0, 3: 1.0, 4: 30.0, 5: 5.0, 6: 30.0, 7: 120.0, 8: 60.0}

RESULTS = {}


def report(n, ok, seconds, detail=""):
    ok = ok and seconds < BUDGET[n]
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s / {BUDGET[n]:.0f}s budget){' - ' + detail if detail else ''}"
    RESULTS[n] = line
    print(line)
    return ok


def classes(view, exps):
    return {view.class_of(e) for e in exps}


# ---------------------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    I = R("x^2 - x*y, x*y - y^2, x^3")
    view = localize(I, XY)
    coprincipal = congruence_predicates(view).is_coprincipal
    S = socle(I, XY)
    # exact membership of x - y in the socle span
    fib = S.fiber
    target = [fib.F.zero] * fib.dim
    for k, e in enumerate(fib.laurent):
        if e == (1, 0):
            target[k] = fib.F.one
        if e == (0, 1):
            target[k] = fib.F.neg(fib.F.one)
    has_xy = in_span(target, S.basis, fib.F)
    recs = {r.w: r for r in witnesses(view, "key")}
    aides = {w: [a.describe(view.label) for a in recs[w].key_aides] for w in [(1, 0), (0, 1)] if w in recs}
    mutual = aides == {(1, 0): ["y"], (0, 1): ["x"]}
    ok = coprincipal and has_xy and mutual
    return report(1, ok, time.perf_counter() - t, f"coprincipal={coprincipal} x-y in socle={has_xy} key aides={aides}")


STAIRCASE = "x^3 - x^2*y, x^2*y - x*y^2, x*y^3 - y^4, x^5"
STAIRCASE_MIRROR = "y^3 - x*y^2, x*y^2 - x^2*y, x^3*y - x^4, y^5"


def _pairs_as_sets(S):
    out = []
    for a, b, _ in S.key_pairs():
        ca = {m for m, _ in S.members[a]}
        cb = {m for m, _ in S.members[b]}
        out.append((ca, cb))
    return out


def _has_pair(S, e, f):
    return any((e in ca and f in cb) or (f in ca and e in cb) for ca, cb in _pairs_as_sets(S))


def _staircase_claims(gens):
    I = R(gens)
    view = localize(I, XY)
    C = view.congruence()
    # stage labels are standard monomials; map the named monomials to them
    node = lambda e: view.locate(e)[0]
    xy, y2, x2 = node((1, 1)), node((0, 2)), node((2, 0))
    stages = iterated_collapses(C)
    first = soccular_collapse(C)
    closure = soccular_closure(C, cross_check=False)
    by_fingerprint = C.merge(_fingerprint_pairs(C))
    return {
        "(xy, y^2) key pair of ~_I": _has_pair(C, xy, y2),
        "(xy, x^2) key pair after collapse": _has_pair(first, xy, x2),
        "closure = second collapse": len(stages) > 2 and closure.same_relation(stages[2]),
        "closure algorithms agree": closure.same_relation(stages[-1]) and by_fingerprint.same_relation(stages[-1]),
    }


def criterion_2():
    t = time.perf_counter()
    claims = _staircase_claims(STAIRCASE)
    ok = all(claims.values())
    failed = [k for k, v in claims.items() if not v]
    detail = "all literal claims hold" if ok else "false: " + "; ".join(failed)
    # the same claims with x and y exchanged in the ideal, for diagnosis
    mirrored = _staircase_claims(STAIRCASE_MIRROR)
    detail += " | x<->y mirror holds: " + "; ".join(k for k, v in mirrored.items() if v)
    return report(2, ok, time.perf_counter() - t, detail)


def criterion_3():
    t = time.perf_counter()
    I = R("x^2 - x*y, x*y + y^2")
    ring = I.ring
    cubic = all(I.contains(ring.monomial((a, 3 - a))) for a in range(4))
    binocc = is_binoccular(I, XY)
    dim = socle(I, XY).dim
    ok = cubic and binocc and dim == 1
    return report(3, ok, time.perf_counter() - t, f"degree-3 monomials in I={cubic} binoccular={binocc} socle dim={dim}")


TWOSOC = "x^2*y - x*y^2, x^3, y^3"


def criterion_4():
    t = time.perf_counter()
    I = R(TWOSOC)
    S = socle(I, XY)
    fib = S.fiber
    F = fib.F

    def vec(poly):
        f = I.normal_form(ring.parse(poly))
        v = [F.zero] * fib.dim
        for m, c in f.terms.items():
            v[fib.index[fib.view._to_ext(m)]] = c
        return v

    ring = I.ring
    alpha, beta = vec("x^2 + y^2 - x*y"), vec("x^2*y")
    span_ok = S.dim == 2 and in_span(alpha, S.basis, F) and in_span(beta, S.basis, F)
    view = localize(I, XY)
    (cog,) = view.cogenerator_nodes()
    cls = {e for e in product(range(4), repeat=2) if view.locate(e) and view.locate(e)[0] == cog}
    cog_ok = cls == {(2, 1), (1, 2)}
    dec = irreducible_decomposition(I, prune=True)
    comps = dec.ideals()
    dec_ok = (
        dec.certified
        and len(comps) == 2
        and ideal_equal(intersect_all(comps), I)
        and ideal_equal(intersect_all([R("x^2 + y^2 - x*y, x^3, y^3"), R("x^3, y")]), intersect_all(comps))
        and any(ideal_equal(c, R("x^3, y")) for c in comps)
    )
    # nonexistence regression over F_101: every line alpha + lam*beta
    J = R(TWOSOC, char=101)
    lam_ok = True
    for lam in range(101):
        K = J + Ideal([J.ring.parse(f"x^2 + y^2 - x*y + {lam}*x^2*y")], J.ring)
        if socle_dimension(K, XY) != 1 or all(len(g.terms) <= 2 for g in K.groebner()):
            lam_ok = False
            break
    ok = span_ok and cog_ok and dec_ok and lam_ok
    detail = f"socle span={span_ok} cogenerator class={cog_ok} pruned decomposition={dec_ok} 101 lines non-binomial irreducible={lam_ok}"
    return report(4, ok, time.perf_counter() - t, detail)


def criterion_5():
    t = time.perf_counter()
    I = R("x^2*y - x*y^2, x^3, y^3, z^3", "x y z")
    irr = irreducible_closure(I, (0, 1, 2))
    ok = ideal_equal(irr, I + R("x^2 + y^2 - x*y", "x y z"))
    return report(5, ok, time.perf_counter() - t, f"closure = I + <x^2+y^2-xy>: {ok}")


SEARCH_I = "x^2*y - x*y^2, x^4 - x^3*y, x*y^3 - y^4, x^5"
SEARCH_J = "x^4*y - x^3*y^2, x^2*y^3 - x*y^4, x^6 - x^5*y, x*y^5 - y^6, x^7"


def criterion_6():
    t = time.perf_counter()
    I, J = R(SEARCH_I), R(SEARCH_J)
    vi, vj = localize(I, XY), localize(J, XY)
    ki = [r for r in witnesses(vi, "key") if not r.is_cogenerator]
    kj = [r for r in witnesses(vj, "key") if not r.is_cogenerator]
    ri = binomial_irreducibility_report(I)
    rj = binomial_irreducibility_report(J)
    omitted_x2y = [vi.class_of(c.w) for c in ri.omitted] == [vi.class_of((2, 1))]
    ok = len(ki) == 3 and len(kj) == 4 and ri.status == "found" and omitted_x2y and rj.status != "found"
    detail = f"key witnesses I={len(ki)} J={len(kj)}; I report={ri.status} (omits x^2y: {omitted_x2y}); J report={rj.status}"
    return report(6, ok, time.perf_counter() - t, detail)


def random_binomial_ideal(rng, p=101):
    n = rng.choice([2, 2, 3])
    ring = PolyRing(list("xyz"[:n]), GF(p))
    gens = []
    drop = n - 1 if rng.random() < 0.3 else None
    for i in range(n):
        if i == drop:
            continue
        e = [0] * n
        e[i] = rng.randint(2, 4)
        gens.append(ring.monomial(tuple(e)))
    for _ in range(rng.randint(1, 3)):
        a = tuple(rng.randint(0, 4) for _ in range(n))
        b = tuple(rng.randint(0, 4) for _ in range(n))
        if a != b:
            gens.append(ring.binomial(a, b, rng.randint(1, p - 1)))
    return Ideal(gens, ring)


def finite_fibers(I):
    for P in all_monoid_primes(I.ring.n):
        view = LocalView(I, P)
        if view.is_whole:
            continue
        try:
            FiberAlgebra(view)
        except (NotPCofinite, UnsupportedUnitRank):
            return False
    return True


def criterion_7(count=100, seed=2024):
    t = time.perf_counter()
    rng = random.Random(seed)
    done, bad = 0, []
    while done < count:
        I = random_binomial_ideal(rng)
        if I.is_whole_ring() or not finite_fibers(I):
            continue
        for build in (coprincipal_decomposition, binoccular_decomposition, irreducible_decomposition):
            dec = build(I)
            one = check_intersection(I, dec.components, 1).verdict
            three = check_intersection(I, dec.components, 3).verdict
            exact = ideal_equal(intersect_all(dec.ideals()), I)
            if not (dec.certified and one and three and exact):
                bad.append((build.__name__, I.to_strs(), one, three))
        done += 1
    return report(7, not bad, time.perf_counter() - t, f"{done} ideals over F_101, {len(bad)} failures")


def criterion_8(seed=5):
    t = time.perf_counter()
    rng = random.Random(seed)
    fixed = ["x^2 - x*y, x*y - y^2, x^3", "x^2 - x*y, x*y + y^2", "x^2, x*y, y^2", "x^3, x*y, y^2", "x^2*y, x^3, y^2"]
    ideals = [R(g, char=3) for g in fixed]
    while len(ideals) < 25:
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        e1 = (rng.randint(0, 2), rng.randint(0, 2))
        e2 = (rng.randint(0, 2), rng.randint(0, 2))
        if e1 == e2:
            continue
        I = R(f"x^{a}, y^{b}, x^{e1[0]}*y^{e1[1]} - {rng.randint(1, 2)}*x^{e2[0]}*y^{e2[1]}", char=3)
        if not I.is_whole_ring() and FiberAlgebra(localize(I, XY)).dim <= 6:
            ideals.append(I)
    socles = submodules = 0
    ok = True
    for I in ideals:
        view = localize(I, XY)
        fib = FiberAlgebra(view)
        if fib.dim > 6:
            continue
        soc = fib.socle()
        brute = socle_brute_force(fib, [0, 1, 2])
        ok &= len(brute) == 3 ** len(soc) and all(in_span(v, soc, fib.F) for v in brute)
        socles += 1
        if len(view.cogenerator_nodes()) == 1:
            fib = fiber_algebra(I, XY)
            V = perp_subspace(fib)
            U = largest_submodule_in(V, fib)
            brute = largest_submodule_brute_force(fib, V, [0, 1, 2])
            ok &= len(brute) == 3 ** len(U) and all(in_span(v, U, fib.F) for v in brute)
            submodules += 1
    return report(8, ok, time.perf_counter() - t, f"{socles} socles and {submodules} submodules over F_3 match brute force")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 9)])
def test_acceptance(check):
    assert check(), RESULTS.get(CRITERIA.index(check) + 1)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
