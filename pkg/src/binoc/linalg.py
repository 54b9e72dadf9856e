"""Dense exact linear algebra over a ``Field``.

Vectors are lists of field elements and matrices are lists of rows.  Sizes
here are fiber dimensions (tens, occasionally a few hundred), so plain
Gaussian elimination is enough.
"""

from __future__ import annotations


def rref(rows, F):
    """Reduced row echelon form; returns ``(rows, pivots)`` with zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    zero = F.zero
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, F) -> int:
    return len(rref(rows, F)[1])


def nullspace(rows, ncols: int, F) -> list:
    """Basis of ``{v : A v = 0}`` for ``A`` given by ``rows`` (each of length ``ncols``)."""
    if not rows:
        return [[F.one if j == i else F.zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, p in zip(red, pivots):
            v[p] = F.neg(row[f])
        basis.append(v)
    return basis


def matvec(M, v, F):
    out = []
    for row in M:
        acc = F.zero
        for a, b in zip(row, v):
            if a != F.zero and b != F.zero:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def is_zero_vector(v, F) -> bool:
    return all(x == F.zero for x in v)


def span_basis(vectors, F) -> list:
    """Echelonized basis of the span (canonical for a fixed coordinate order)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    return rref(vectors, F)[0]


def in_span(v, basis, F) -> bool:
    """Membership of ``v`` in the row space of an rref ``basis``."""
    if not basis:
        return is_zero_vector(v, F)
    return rank(basis + [list(v)], F) == len(basis)


def intersect_spans(A, B, ncols: int, F) -> list:
    """Basis of span(A) intersected with span(B)."""
    if not A or not B:
        return []
    # solve sum a_i A_i = sum b_j B_j
    cols = [list(r) for r in A] + [[F.neg(x) for x in r] for r in B]
    system = [[cols[k][c] for k in range(len(cols))] for c in range(ncols)]
    sols = nullspace(system, len(cols), F)
    out = []
    for s in sols:
        v = [F.zero] * ncols
        for coef, row in zip(s[: len(A)], A):
            if coef != F.zero:
                v = [F.add(x, F.mul(coef, y)) for x, y in zip(v, row)]
        out.append(v)
    return span_basis(out, F)


def preimage_subspace(M, target_basis, domain_basis, F) -> list:
    """``{f in span(domain_basis) : M f in span(target_basis)}``.

    Works in coordinates: writes ``f = sum c_k d_k`` and asks that ``M f``
    be annihilated by every functional vanishing on the target.
    """
    if not domain_basis:
        return []
    n = len(domain_basis[0])
    # functionals vanishing on target: nullspace of target rows
    annihilators = nullspace(target_basis, n, F) if target_basis else [
        [F.one if j == i else F.zero for j in range(n)] for i in range(n)
    ]
    images = [matvec(M, d, F) for d in domain_basis]
    system = []
    for phi in annihilators:
        system.append([sum_products(phi, img, F) for img in images])
    sols = nullspace(system, len(domain_basis), F)
    out = []
    for s in sols:
        v = [F.zero] * n
        for coef, d in zip(s, domain_basis):
            if coef != F.zero:
                v = [F.add(x, F.mul(coef, y)) for x, y in zip(v, d)]
        out.append(v)
    return span_basis(out, F)


def sum_products(a, b, F):
    acc = F.zero
    for x, y in zip(a, b):
        if x != F.zero and y != F.zero:
            acc = F.add(acc, F.mul(x, y))
    return acc
