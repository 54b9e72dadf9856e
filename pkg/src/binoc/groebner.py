"""Buchberger's algorithm and division with remainder.

Polynomials are handled internally as ``(lm, terms)`` pairs where ``terms``
is the coefficient dictionary of a ``Poly`` and ``lm`` its leading
exponent.  Pair selection uses the normal strategy and new pairs are
filtered with the Gebauer-Moeller criteria.
"""

from __future__ import annotations

import heapq

from . import config
from .errors import ResourceLimitExceeded
from .poly import DEGREVLEX, Poly, TermOrder, divides, lcm


def _divisor(m, basis):
    for g in basis:
        if divides(g[0], m):
            return g
    return None


def reduce_terms(terms: dict, basis: list, order: TermOrder, F) -> dict:
    """Fully reduce ``terms`` modulo the monic ``basis``; returns the remainder."""
    key = order.key
    f = dict(terms)
    heap = [(_neg(key(e)), e) for e in f]
    heapq.heapify(heap)
    r = {}
    zero = F.zero
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        g = _divisor(m, basis)
        if g is None:
            r[m] = c
            continue
        glm, gterms = g
        q = tuple(a - b for a, b in zip(m, glm))
        for e, v in gterms.items():
            if e == glm:
                continue
            ne = tuple(a + b for a, b in zip(e, q))
            old = f.get(ne)
            if old is None:
                f[ne] = F.neg(F.mul(c, v))
                heapq.heappush(heap, (_neg(key(ne)), ne))
            else:
                nv = F.sub(old, F.mul(c, v))
                if nv == zero:
                    del f[ne]
                else:
                    f[ne] = nv
    return r


def _neg(k):
    return tuple(-x for x in k)


def _monic(terms, lm, F):
    inv = F.inv(terms[lm])
    return {e: F.mul(c, inv) for e, c in terms.items()}


def _spoly(f, g, F):
    flm, ft = f
    glm, gt = g
    L = lcm(flm, glm)
    qf = tuple(a - b for a, b in zip(L, flm))
    qg = tuple(a - b for a, b in zip(L, glm))
    d = {}
    for e, c in ft.items():
        d[tuple(a + b for a, b in zip(e, qf))] = c
    for e, c in gt.items():
        ne = tuple(a + b for a, b in zip(e, qg))
        v = F.sub(d.get(ne, F.zero), c)
        if v == F.zero:
            d.pop(ne, None)
        else:
            d[ne] = v
    return d


def _update(G, pairs, f, key):
    """Gebauer-Moeller update when ``f`` joins the basis ``G``."""
    flm = f[0]
    k = len(G)
    pairs = {
        (i, j)
        for (i, j) in pairs
        if not divides(flm, lcm(G[i][0], G[j][0]))
        or lcm(G[i][0], G[j][0]) == lcm(G[i][0], flm)
        or lcm(G[i][0], G[j][0]) == lcm(G[j][0], flm)
    }
    by_lcm: dict = {}
    for i, g in enumerate(G):
        by_lcm.setdefault(lcm(g[0], flm), []).append(i)
    kept = []
    for L in sorted(by_lcm, key=key):
        if all(not divides(L2, L) for L2 in kept):
            kept.append(L)
    for L in kept:
        idx = by_lcm[L]
        # product criterion: coprime leading monomials never need a pair
        if any(L == tuple(a + b for a, b in zip(G[i][0], flm)) for i in idx):
            continue
        pairs.add((min(idx), k))
    G.append(f)
    return pairs


def buchberger(polys, order: TermOrder, F) -> list:
    """Reduced Groebner basis of the coefficient dicts ``polys``.

    Returns a list of ``(lm, terms)`` pairs sorted by increasing leading
    monomial.
    """
    key = order.key
    G: list = []
    pairs: set = set()
    max_size = config.MAX_BASIS_SIZE
    max_deg = config.MAX_DEGREE
    for t in polys:
        if not t:
            continue
        r = reduce_terms(t, G, order, F)
        if r:
            lm = max(r, key=key)
            pairs = _update(G, pairs, (lm, _monic(r, lm, F)), key)
    while pairs:
        pair = min(pairs, key=lambda p: (key(lcm(G[p[0]][0], G[p[1]][0])), p))
        pairs.discard(pair)
        s = _spoly(G[pair[0]], G[pair[1]], F)
        if not s:
            continue
        r = reduce_terms(s, G, order, F)
        if not r:
            continue
        lm = max(r, key=key)
        if sum(lm) > max_deg:
            raise ResourceLimitExceeded(f"basis element of degree {sum(lm)} exceeds cap {max_deg}")
        pairs = _update(G, pairs, (lm, _monic(r, lm, F)), key)
        if len(G) > max_size:
            raise ResourceLimitExceeded(f"basis size exceeds cap {max_size}")
    return _reduced(G, order, F)


def _reduced(G, order, F):
    key = order.key
    minimal = []
    for g in sorted(G, key=lambda g: key(g[0])):
        if all(not divides(h[0], g[0]) for h in minimal):
            minimal.append(g)
    out = []
    for i, (lm, t) in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = {e: c for e, c in t.items() if e != lm}
        r = reduce_terms(tail, others, order, F)
        r[lm] = F.one
        out.append((lm, r))
    out.sort(key=lambda g: key(g[0]))
    return out


def groebner_basis(polys, order: TermOrder = DEGREVLEX) -> list:
    """Reduced Groebner basis of a list of ``Poly`` (all in one ring)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    ring = polys[0].ring
    G = buchberger([p.terms for p in polys], order, ring.field)
    return [Poly(ring, t) for _, t in G]


def reduce_poly(f: Poly, basis, order: TermOrder = DEGREVLEX) -> Poly:
    """Remainder of ``f`` on division by a monic Groebner basis."""
    internal = [(g.lm(order), g.terms) for g in basis]
    return Poly(f.ring, reduce_terms(f.terms, internal, order, f.ring.field))
