"""The finite-dimensional algebra ``k[Q_P]/I_P`` and its socle.

Available when the localized quotient is finite dimensional over ``k``:
every orbit is finite, which means every stabilizer lattice has full rank.
The basis is the set of standard monomials of the extended Groebner basis.
For binomial ideals multiplication by a variable sends a basis monomial to
a scalar times another basis monomial, or to zero; general ideals (such as
irreducible closures) are handled too, with orbits then only bookkeeping.
"""

from __future__ import annotations

from collections import deque

from . import config
from .errors import NotPCofinite, UnsupportedUnitRank
from .groebner import reduce_terms
from .linalg import nullspace, span_basis
from .poly import Poly, divides


class FiberAlgebra:
    """Basis, multiplication tables and orbit bookkeeping of a localized quotient."""

    def __init__(self, view, w=None):
        self.view = view
        self.F = view.ring.field
        self.P = view.P
        self.U = view.U
        n, m = view.n, len(view.U)
        self.n_ext = n + m
        lms = view._lms
        if view.is_whole:
            self.basis_ext = []
        else:
            missing = [
                k
                for k in range(self.n_ext)
                if not any(e[k] > 0 and all(v == 0 for j, v in enumerate(e) if j != k) for e in lms)
            ]
            if any(k in view.P for k in missing):
                names = [view.ring.names[k] for k in missing if k in view.P]
                raise NotPCofinite(f"infinitely many orbits along P: unbounded in {', '.join(names)}", names)
            if missing:
                raise UnsupportedUnitRank(
                    "the localized quotient is infinite dimensional (a stabilizer lattice is not of full rank)"
                )
            self.basis_ext = self._standard_monomials(lms)
        self.basis_ext.sort(key=lambda e: (_sort_node(view.split(view._from_ext(e))[0]), view._from_ext(e)))
        self.dim = len(self.basis_ext)
        self.index = {e: k for k, e in enumerate(self.basis_ext)}
        self.laurent = [view._from_ext(e) for e in self.basis_ext]
        self.orbit = [view.split(e)[0] for e in self.laurent]
        self._mult = {}
        self.w_node = None
        if w is not None:
            loc = view.locate(tuple(w))
            self.w_node = None if loc is None else loc[0]

    def _standard_monomials(self, lms):
        zero = tuple([0] * self.n_ext)
        if any(divides(l, zero) for l in lms):
            return []
        seen = {zero}
        queue = deque([zero])
        while queue:
            e = queue.popleft()
            for k in range(self.n_ext):
                f = tuple(v + (1 if j == k else 0) for j, v in enumerate(e))
                if f in seen or any(divides(l, f) for l in lms):
                    continue
                seen.add(f)
                queue.append(f)
                if len(seen) > config.MAX_BASIS_SIZE:
                    raise UnsupportedUnitRank("fiber dimension exceeds the configured cap")
        return list(seen)

    # -- multiplication ------------------------------------------------------
    def mult_table(self, k: int) -> list:
        """For extended variable ``k``: per basis index, the image as ``{row: coeff}``.

        For binomial ideals every image has at most one entry.
        """
        tab = self._mult.get(k)
        if tab is None:
            tab = []
            F = self.F
            for e in self.basis_ext:
                f = tuple(v + (1 if j == k else 0) for j, v in enumerate(e))
                r = reduce_terms({f: F.one}, self.view._gb_internal, self.view.order, F)
                tab.append({self.index[m]: c for m, c in r.items()})
            self._mult[k] = tab
        return tab

    def unit_variables(self) -> list:
        """Extended variable indices of the units and their inverses."""
        return list(self.U) + list(range(self.view.n, self.n_ext))

    def apply(self, k: int, v: list) -> list:
        F = self.F
        out = [F.zero] * self.dim
        for j, col in enumerate(self.mult_table(k)):
            if v[j] == F.zero:
                continue
            for r, c in col.items():
                out[r] = F.add(out[r], F.mul(c, v[j]))
        return out

    def matrix(self, k: int) -> list:
        F = self.F
        M = [[F.zero] * self.dim for _ in range(self.dim)]
        for j, col in enumerate(self.mult_table(k)):
            for r, c in col.items():
                M[r][j] = c
        return M

    # -- socle -----------------------------------------------------------------
    def socle(self) -> list:
        """Echelonized basis of ``{f : x_i f = 0 for i in P}``."""
        F = self.F
        if not self.dim:
            return []
        rows = []
        for i in self.P:
            by_target = {}
            for j, col in enumerate(self.mult_table(i)):
                for r, c in col.items():
                    by_target.setdefault(r, []).append((j, c))
            for entries in by_target.values():
                row = [F.zero] * self.dim
                for j, c in entries:
                    row[j] = F.add(row[j], c)
                rows.append(row)
        return span_basis(nullspace(rows, self.dim, F), F)

    # -- conversions -------------------------------------------------------------
    def coords_of_orbit(self, node) -> list:
        return [k for k, o in enumerate(self.orbit) if o == node]

    def vector_poly_ext(self, v) -> Poly:
        ext = self.view.ext
        return Poly(ext, {self.basis_ext[k]: c for k, c in enumerate(v) if c != self.F.zero})

    def lift(self, v) -> Poly:
        """A polynomial of ``k[x]`` with the same class as ``v`` up to a unit monomial."""
        view = self.view
        ring = view.ring
        terms = {self.laurent[k]: c for k, c in enumerate(v) if c != self.F.zero}
        if not terms:
            return ring.zero
        shift = [0] * view.n
        for e in terms:
            for j in range(view.n):
                shift[j] = max(shift[j], -e[j])
        return Poly(ring, {tuple(a + s for a, s in zip(e, shift)): c for e, c in terms.items()})

    def vector_str(self, v) -> str:
        from .congruence import _laurent_str

        names = self.view.ring.names
        parts = []
        for k, c in enumerate(v):
            if c == self.F.zero:
                continue
            mono = _laurent_str(self.laurent[k], names)
            s = self.F.to_str(c)
            if mono == "1":
                parts.append(s)
            elif s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{s}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def monomial_strs(self) -> list:
        from .congruence import _laurent_str

        return [_laurent_str(e, self.view.ring.names) for e in self.laurent]


def _sort_node(u):
    return (sum(u), tuple(-x for x in u))


def fiber_algebra(I, P, w=None):
    from .congruence import localize

    return FiberAlgebra(localize(I, P), w)
