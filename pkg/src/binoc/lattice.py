"""Integer lattices in Z^m: Hermite and Smith normal forms, cosets.

A ``Lattice`` stores its basis as the nonzero rows of a row-style Hermite
normal form, which makes equality, membership and canonical coset
representatives cheap.  Stabilizer lattices of unit groups live here.
"""

from __future__ import annotations

from typing import Sequence


def _row_hnf(rows, extra=None):
    """Row-style HNF of ``rows`` with the same row operations applied to ``extra``.

    Returns ``(H, X)`` where ``H`` keeps all rows (zero rows at the bottom).
    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in rows]
    X = [list(r) for r in extra] if extra is not None else None
    if not A:
        return A, X
    m = len(A[0])
    r = 0
    for c in range(m):
        # Euclid down column c among rows r..end
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            if X is not None:
                X[r], X[piv] = X[piv], X[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if X is not None:
                        X[i] = [a - q * b for a, b in zip(X[i], X[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
                if X is not None:
                    X[r] = [-a for a in X[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if X is not None:
                        X[i] = [a - q * b for a, b in zip(X[i], X[r])]
            r += 1
            if r == len(A):
                break
    return A, X


def hnf(rows) -> list:
    """Nonzero rows of the Hermite normal form."""
    H, _ = _row_hnf(rows)
    return [h for h in H if any(h)]


def hnf_with_transform(rows):
    """``(H, T)`` with ``H = T * rows`` the nonzero HNF rows and ``T`` integral."""
    n = len(rows)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    H, X = _row_hnf(rows, ident)
    keep = [i for i, h in enumerate(H) if any(h)]
    return [H[i] for i in keep], [X[i] for i in keep]


class Lattice:
    """A subgroup of Z^dim given by generators, stored in canonical HNF."""

    __slots__ = ("dim", "basis", "_pivots")

    def __init__(self, gens: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        gens = [tuple(int(x) for x in g) for g in gens if any(g)]
        for g in gens:
            if len(g) != dim:
                raise ValueError("generator has the wrong length")
        self.basis = tuple(tuple(r) for r in hnf(gens)) if gens else ()
        self._pivots = tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    @classmethod
    def zero(cls, dim: int) -> "Lattice":
        return cls([], dim)

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)], dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    def reduce(self, v) -> tuple:
        """Canonical representative of the coset ``v + L``."""
        v = list(v)
        for row, p in zip(self.basis, self._pivots):
            q = v[p] // row[p]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __le__(self, other: "Lattice") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(list(self.basis) + list(other.basis), self.dim)

    def intersect(self, other: "Lattice") -> "Lattice":
        d = self.dim
        if not self.basis or not other.basis:
            return Lattice.zero(d)
        rows = [list(b) + list(b) for b in self.basis] + [list(b) + [0] * d for b in other.basis]
        H, _ = _row_hnf(rows)
        out = [h[d:] for h in H if not any(h[:d]) and any(h[d:])]
        return Lattice(out, d)

    def index_in_saturation(self) -> int:
        """Order of ``L_sat / L`` (product of the invariant factors)."""
        m = 1
        for d in smith_invariants(self.basis):
            m *= d
        return m

    def __repr__(self):
        return f"Lattice({[list(b) for b in self.basis]}, dim={self.dim})"


def solve_in_lattice(target, gens):
    """Integer ``c`` with ``sum c_k gens[k] == target``, or ``None``."""
    if not any(target):
        return [0] * len(gens)
    if not gens:
        return None
    H, T = hnf_with_transform(gens)
    v = list(target)
    coeffs = [0] * len(gens)
    for row, trow in zip(H, T):
        p = next(i for i, x in enumerate(row) if x)
        if v[p] % row[p]:
            return None
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
            coeffs = [a + q * b for a, b in zip(coeffs, trow)]
    if any(v):
        return None
    return coeffs


def coset_intersection(v1, L1: Lattice, v2, L2: Lattice):
    """``(v1 + L1) & (v2 + L2)`` as ``(rep, lattice)``, or ``None`` if empty."""
    d = L1.dim
    diff = [b - a for a, b in zip(v1, v2)]
    gens = [list(b) for b in L1.basis] + [list(b) for b in L2.basis]
    c = solve_in_lattice(diff, gens)
    if c is None:
        return None
    a = [0] * d
    for coef, b in zip(c[: len(L1.basis)], L1.basis):
        a = [x + coef * y for x, y in zip(a, b)]
    inter = L1.intersect(L2)
    rep = inter.reduce([x + y for x, y in zip(v1, a)])
    return rep, inter


def smith_normal_form(rows):
    """``(D, U, V)`` with ``U * A * V = D`` diagonal, ``U`` and ``V`` unimodular.

    ``A`` is ``r x m`` given by ``rows``; diagonal entries are nonnegative
    and each divides the next.
    """
    A = [list(r) for r in rows]
    r = len(A)
    m = len(A[0]) if r else 0
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(r, m):
        nz = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, m) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, m):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def smith_invariants(rows) -> list:
    if not rows:
        return []
    D, _, _ = smith_normal_form(rows)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def inverse_unimodular(M):
    """Inverse of a square unimodular integer matrix."""
    n = len(M)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    H, X = _row_hnf(M, ident)
    # H is the identity for a unimodular M
    if any(H[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return X


def saturation_basis(L: Lattice):
    """Aligned bases for ``L`` inside its saturation.

    Returns ``(b, d, T)``: rows ``b[k]`` form a basis of the saturation,
    ``d[k] * b[k]`` form a basis of ``L``, and ``T`` expresses those
    multiples in terms of ``L.basis`` (``d[k] * b[k] = sum_j T[k][j] * L.basis[j]``).
    """
    if not L.basis:
        return [], [], []
    A = [list(r) for r in L.basis]
    D, U, V = smith_normal_form(A)
    Vinv = inverse_unimodular(V)
    k = len(A)
    b = [Vinv[i] for i in range(k)]
    d = [D[i][i] for i in range(k)]
    # U A V = D  =>  U A = D Vinv, so row i of U A is d_i * Vinv[i]
    return b, d, [list(U[i]) for i in range(k)]
