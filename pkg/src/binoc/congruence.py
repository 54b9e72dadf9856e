"""The congruence induced by a binomial ideal, localized along a monoid prime.

Elements of the localized monoid ``Q_P = N^P x Z^U`` (``U`` the variables
outside ``P``) are n-tuples whose ``U`` coordinates may be negative.  The
class of an element is read off from its normal form modulo

    E = I_P + <x_j y_j - 1 : j in U>

in an extended ring with one inverse variable ``y_j`` per unit, under a
block order whose first block holds the ``P`` variables.  With that order
the ``P``-part of the normal form of ``t^a`` depends only on the orbit of
``a`` under the unit group, so orbits are indexed by their ``P``-parts
("nodes"), and a class is a node together with a unit shift taken modulo
the node's stabilizer lattice.

Everything combinatorial (witnesses, Green's preorder, collapses) is
written against the small ``_Automaton`` interface: nodes, ``step(u, i)``
for ``i`` in ``P``, stabilizer lattices, and reachability.  ``LocalView``
implements it for ``~_I`` itself and ``FiniteCongruence`` for explicit
tables such as coprincipal components and soccular collapses.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import config
from .errors import BoundExceeded, NilClass, NotCoprincipal, NotPCofinite
from .ideal import Ideal, colon, eliminate, saturate
from .lattice import Lattice, coset_intersection
from .poly import PolyRing, TermOrder, divides

NIL = None


def monoid_prime(ring: PolyRing, spec) -> tuple:
    """Normalize a monoid prime given by variable names or indices."""
    out = set()
    for s in spec:
        if isinstance(s, str):
            if s not in ring.names:
                raise ValueError(f"unknown variable {s!r}")
            out.add(ring.names.index(s))
        else:
            if not 0 <= int(s) < ring.n:
                raise ValueError(f"variable index {s} out of range")
            out.add(int(s))
    return tuple(sorted(out))


def all_monoid_primes(n: int) -> list:
    """All 2^n subsets, largest first (associated primes are usually big)."""
    out = []
    for mask in range(2**n):
        out.append(tuple(i for i in range(n) if mask >> i & 1))
    out.sort(key=lambda P: (-len(P), P))
    return out


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


# ---------------------------------------------------------------------------
# records


@dataclass
class Aide:
    """An aide: a node (``None`` for nil) with a unit shift."""

    node: object
    shift: tuple = ()

    def describe(self, label) -> str:
        return "nil" if self.node is None else label(self.node, self.shift)


@dataclass
class WitnessRecord:
    w: tuple
    P: tuple
    kinds: set = field(default_factory=set)
    aides: dict = field(default_factory=dict)
    key_aides: list = field(default_factory=list)

    @property
    def is_key(self) -> bool:
        return "key" in self.kinds

    @property
    def is_cogenerator(self) -> bool:
        return "cogenerator" in self.kinds

    @property
    def key_aide(self):
        return self.key_aides[0] if self.key_aides else None


# ---------------------------------------------------------------------------
# generic witness machinery


class _Automaton:
    """Interface shared by ``LocalView`` and ``FiniteCongruence``.

    Subclasses provide ``P``, ``unit_dim``, ``candidate_nodes()``,
    ``step(u, i)``, ``stabilizer(u)`` and ``leq(a, b)`` (Green's preorder on
    nodes, with ``None`` meaning nil, the top element).
    """

    P: tuple = ()
    unit_dim: int = 0

    def candidate_nodes(self) -> list:
        raise NotImplementedError

    def step(self, u, i):
        raise NotImplementedError

    def stabilizer(self, u) -> Lattice:
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def node_label(self, u) -> tuple:
        return u

    # -- derived --------------------------------------------------------------
    def strictly_below(self, a, b) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    def greens_compare(self, a, b) -> str:
        ab, ba = self.leq(a, b), self.leq(b, a)
        if ab and ba:
            return "equivalent"
        if ab:
            return "below"
        if ba:
            return "above"
        return "incomparable"

    def _step_coset(self, u, a, i):
        """Shifts ``g`` with class((a, g) + e_i) == class((u, 0) + e_i).

        Returns ``(rep, lattice)``, or ``None`` when no shift works.
        """
        tw = self.step(u, i)
        tq = self.step(a, i)
        if tw is None and tq is None:
            return (tuple([0] * self.unit_dim), Lattice.full(self.unit_dim))
        if tw is None or tq is None or tw[0] != tq[0]:
            return None
        K = self.stabilizer(tw[0])
        return (K.reduce(_sub(tw[1], tq[1])), K)

    def _pick_outside(self, coset, u):
        """A shift in ``coset`` that is not in the stabilizer of ``u``, or None."""
        rep, L = coset
        Ku = self.stabilizer(u)
        if not Ku.contains(rep):
            return rep
        for b in L.basis:
            if not Ku.contains(b):
                return Ku.reduce(_add(rep, b))
        return None

    def _aide_ok(self, u, a) -> bool:
        # "maximal in {q, w}": the aide may not sit strictly below w
        return a is None or not self.strictly_below(a, u)

    def aides(self, u, i) -> list:
        """All aides of ``(u, 0)`` for generator ``i``: one record per node."""
        out = []
        if self.step(u, i) is None:
            out.append(Aide(None, ()))
        for a in self.candidate_nodes():
            if not self._aide_ok(u, a):
                continue
            c = self._step_coset(u, a, i)
            if c is None:
                continue
            g = self._pick_outside(c, u) if a == u else c[0]
            if g is not None:
                out.append(Aide(a, tuple(g)))
        return out

    def key_aide_cosets(self, u) -> list:
        """``(a, (rep, L))``: ``(a, g)`` is a key aide of ``(u, 0)`` for ``g`` in the coset.

        When ``a == u`` the shifts in the stabilizer of ``u`` are excluded
        by the caller (they name ``w`` itself).
        """
        P = self.P
        out = []
        for a in self.candidate_nodes():
            if not self._aide_ok(u, a):
                continue
            coset = (tuple([0] * self.unit_dim), Lattice.full(self.unit_dim))
            for i in P:
                c = self._step_coset(u, a, i)
                if c is None:
                    coset = None
                    break
                coset = coset_intersection(coset[0], coset[1], c[0], c[1])
                if coset is None:
                    break
            if coset is None:
                continue
            if a == u and self._pick_outside(coset, u) is None:
                continue
            out.append((a, coset))
        return out

    def key_aides(self, u) -> list:
        out = []
        if all(self.step(u, i) is None for i in self.P):
            out.append(Aide(None, ()))
        for a, coset in self.key_aide_cosets(u):
            g = self._pick_outside(coset, u) if a == u else coset[0]
            out.append(Aide(a, tuple(g)))
        return out

    def witness_record(self, u):
        """Witness data for node ``u``, or None if it is not a witness."""
        P = self.P
        if not P:
            return WitnessRecord(self.node_label(u), P, {"witness", "key", "cogenerator"}, {}, [])
        aides = {}
        for i in P:
            ai = self.aides(u, i)
            if not ai:
                return None
            aides[i] = ai
        rec = WitnessRecord(self.node_label(u), P, {"witness"}, aides, [])
        keys = self.key_aides(u)
        if keys:
            rec.kinds.add("key")
            rec.key_aides = keys
            if all(self.step(u, i) is None for i in P):
                rec.kinds.add("cogenerator")
        return rec

    def witness_records(self, kind: str = "witness") -> list:
        out = []
        for u in self.candidate_nodes():
            rec = self.witness_record(u)
            if rec is None:
                continue
            if kind == "witness" or kind in rec.kinds:
                out.append(rec)
        return out

    def cogenerator_nodes(self) -> list:
        if not self.P:
            return list(self.candidate_nodes())
        return [u for u in self.candidate_nodes() if all(self.step(u, i) is None for i in self.P)]

    def key_pairs(self) -> list:
        """Pairs ``(u, a, g)``: ``(u, 0)`` and ``(a, g)`` are distinct mutual key aides.

        Each unordered pair of orbits is reported once, with ``u`` first in
        candidate order.
        """
        nodes = self.candidate_nodes()
        pos = {v: k for k, v in enumerate(nodes)}
        cosets = {u: dict(self.key_aide_cosets(u)) for u in nodes}
        out = []
        for u in nodes:
            for a, (rep, L) in cosets[u].items():
                if pos[a] < pos[u]:
                    continue
                back = cosets[a].get(u)
                if back is None:
                    continue
                # need g in (rep + L) with -g in back
                both = coset_intersection(rep, L, _neg(back[0]), back[1])
                if both is None:
                    continue
                g = both[0]
                if a == u:
                    g = self._pick_outside(both, u)
                    if g is None:
                        continue
                out.append((u, a, tuple(g)))
        return out


# ---------------------------------------------------------------------------
# the localized congruence of an ideal


class LocalView(_Automaton):
    """``~_I`` on ``Q_P``, materialized lazily from a Groebner basis.

    ``box`` bounds the ``P`` exponents of the nodes used as witness and aide
    candidates when the set of orbits is infinite; when it is finite the
    box is ignored and every node is a candidate.
    """

    def __init__(self, I: Ideal, P: Sequence[int], box: Sequence[int] | None = None):
        ring = I.ring
        self.ideal = I
        self.ring = ring
        self.n = ring.n
        self.P = tuple(sorted(P))
        self.U = tuple(i for i in range(self.n) if i not in set(self.P))
        self.unit_dim = len(self.U)
        self.isat = saturate(I, list(self.U)) if self.U else Ideal(I.gens, ring)
        names = ring.names + tuple("_inv_" + ring.names[j] for j in self.U)
        self.ext = PolyRing(names, ring.field)
        m = len(self.U)
        gens = [g.embed(self.ext, list(range(self.n))) for g in self.isat.gens]
        for k, j in enumerate(self.U):
            gens.append(self.ext.var(j) * self.ext.var(self.n + k) - 1)
        self.order = TermOrder("block", blocks=(self.P, self.U + tuple(range(self.n, self.n + m))))
        self.E = Ideal(gens, self.ext)
        self.gb = self.E.groebner(self.order)
        self._gb_internal = [(g.lm(self.order), g.terms) for g in self.gb]
        self.is_whole = len(self.gb) == 1 and self.gb[0].is_constant()
        lms = [g.lm(self.order) for g in self.gb]
        self._lms = lms
        self.unbounded = []
        for i in self.P:
            if not any(e[i] > 0 and all(v == 0 for k, v in enumerate(e) if k != i) for e in lms):
                self.unbounded.append(i)
        self.cofinite = not self.unbounded
        if box is None:
            box = []
            for i in range(self.n):
                top = max((e[i] for e in lms), default=0)
                box.append(top + 1)
        self.box = tuple(box)
        self._nf_cache: dict = {}
        self._stab: dict = {}
        self._reach: dict = {}
        self._member_gb: dict = {}
        self._nodes = None
        self._lock = threading.Lock()

    # -- normal forms --------------------------------------------------------
    def _to_ext(self, e) -> tuple:
        out = list(e) + [0] * len(self.U)
        for k, j in enumerate(self.U):
            if e[j] < 0:
                out[j] = 0
                out[self.n + k] = -e[j]
        return tuple(out)

    def _from_ext(self, m) -> tuple:
        out = list(m[: self.n])
        for k, j in enumerate(self.U):
            out[j] -= m[self.n + k]
        return tuple(out)

    def nf(self, e):
        """``None`` if ``t^e`` is nil, else ``(lam, e')`` with ``t^e = lam t^e'``."""
        e = tuple(e)
        hit = self._nf_cache.get(e)
        if hit is not None:
            return hit[0]
        from .groebner import reduce_terms

        F = self.ring.field
        r = reduce_terms({self._to_ext(e): F.one}, self._gb_internal, self.order, F)
        if not r:
            out = None
        else:
            if len(r) != 1:
                raise AssertionError("normal form of a monomial has several terms")
            ((m, c),) = r.items()
            out = (c, self._from_ext(m))
        self._nf_cache[e] = (out,)
        return out

    def split(self, e) -> tuple:
        node = tuple(e[i] if i in self.P else 0 for i in range(self.n))
        shift = tuple(e[j] for j in self.U)
        return node, shift

    def join(self, node, shift) -> tuple:
        out = list(node)
        for k, j in enumerate(self.U):
            out[j] = shift[k]
        return tuple(out)

    def locate(self, e):
        """``None`` (nil) or ``(node, shift, lam)`` with ``t^e = lam t^(node+shift)``."""
        r = self.nf(e)
        if r is None:
            return None
        lam, e2 = r
        node, shift = self.split(e2)
        return node, shift, lam

    def class_of(self, e):
        """Canonical class key: ``None`` for nil, else ``(node, shift mod K)``."""
        loc = self.locate(e)
        if loc is None:
            return None
        node, shift, _ = loc
        return node, self.stabilizer(node).reduce(shift)

    def step(self, u, i):
        if u is None:
            return None
        loc = self.locate(tuple(u[k] + (1 if k == i else 0) for k in range(self.n)))
        if loc is None:
            return None
        return loc[0], loc[1]

    def walk(self, u, vec):
        """Class of ``(u, 0) + vec`` as ``(node, shift)`` or None."""
        loc = self.locate(_add(u, vec))
        return None if loc is None else (loc[0], loc[1])

    # -- nodes ---------------------------------------------------------------
    def nodes(self) -> list:
        """All orbits (P-standard exponents); requires a finite orbit set."""
        if self._nodes is None:
            if not self.cofinite:
                names = [self.ring.names[i] for i in self.unbounded]
                raise NotPCofinite(
                    f"infinitely many orbits along P: unbounded in {', '.join(names)}", names
                )
            self._nodes = self._explore(lambda u: True)
        return self._nodes

    def _explore(self, keep) -> list:
        if self.is_whole:
            return []
        zero = tuple([0] * self.n)
        start = self.locate(zero)
        if start is None:
            return []
        seen = {start[0]}
        order = [start[0]]
        queue = deque([start[0]])
        while queue:
            u = queue.popleft()
            for i in self.P:
                s = self.step(u, i)
                if s is None or s[0] in seen or not keep(s[0]):
                    continue
                seen.add(s[0])
                order.append(s[0])
                queue.append(s[0])
                if len(order) > config.MAX_BASIS_SIZE:
                    raise BoundExceeded("too many orbits while exploring the localized congruence")
        return sorted(order, key=_node_sort_key)

    def candidate_nodes(self) -> list:
        if self.cofinite:
            return self.nodes()
        if self._nodes is None:
            inbox = lambda u: all(u[i] <= self.box[i] for i in self.P)
            self._nodes = self._explore(inbox)
        return self._nodes

    # -- stabilizers ---------------------------------------------------------
    def stabilizer(self, u) -> Lattice:
        K = self._stab.get(u)
        if K is None:
            K = self._compute_stabilizer(u)[0]
        return K

    def stabilizer_with_character(self, u):
        """``(K, rho)`` where ``rho`` maps each HNF basis vector to its scalar."""
        if u in self._stab and u in getattr(self, "_rho", {}):
            return self._stab[u], self._rho[u]
        return self._compute_stabilizer(u)

    def _compute_stabilizer(self, u):
        if not hasattr(self, "_rho"):
            self._rho = {}
        m = self.unit_dim
        if m == 0:
            K = Lattice.zero(0)
            self._stab[u] = K
            self._rho[u] = {}
            return K, {}
        if self.locate(u) is None:
            raise NilClass(f"{u} is nil in the localization")
        J = colon(self.isat, self.ring.monomial(u))
        J = saturate(J, list(self.U))
        kept = eliminate(J, list(self.P)) if self.P else list(J.groebner())
        vecs = []
        for g in kept:
            if len(g.terms) != 2:
                continue
            (a, _), (b, _) = list(g.terms.items())
            vecs.append(tuple(a[j] - b[j] for j in self.U))
        K = Lattice(vecs, m)
        rho = {}
        for v in K.basis:
            loc = self.locate(self.join(u, v))
            if loc is None or loc[0] != u or any(loc[1]):
                raise AssertionError("stabilizer vector does not fix the class")
            rho[v] = loc[2]
        self._stab[u] = K
        self._rho[u] = rho
        return K, rho

    # -- Green's preorder ----------------------------------------------------
    def leq(self, a, b) -> bool:
        """Green's preorder on nodes: ``b`` lies in the ideal generated by ``a``."""
        if b is None:
            return True
        if a is None:
            return False
        if a == b:
            return True
        if self.cofinite:
            return b in self._reach_set(a)
        return self._member_leq(a, b)

    def _reach_set(self, a) -> frozenset:
        hit = self._reach.get(a)
        if hit is not None:
            return hit
        seen = {a}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for i in self.P:
                s = self.step(u, i)
                if s is not None and s[0] not in seen:
                    seen.add(s[0])
                    queue.append(s[0])
        out = frozenset(seen)
        self._reach[a] = out
        return out

    def _member_leq(self, a, b) -> bool:
        gb = self._member_gb.get(a)
        if gb is None:
            from .groebner import buchberger

            F = self.ring.field
            polys = [g.terms for g in self.gb] + [{self._to_ext(a): F.one}]
            gb = buchberger(polys, self.order, F)
            self._member_gb[a] = gb
        from .groebner import reduce_terms

        F = self.ring.field
        return not reduce_terms({self._to_ext(b): F.one}, gb, self.order, F)

    # -- predicates ------------------------------------------------------------
    def is_nilpotent(self) -> bool:
        """Every generator of P is nilpotent in the localized quotient."""
        if not self.cofinite:
            return False
        nodes = self.nodes()
        for i in self.P:
            for u in nodes:
                cur = u
                for _ in range(len(nodes) + 1):
                    s = self.step(cur, i)
                    if s is None:
                        break
                    cur = s[0]
                else:
                    return False
        return True

    def units_cancellative(self) -> bool:
        """~_I and ~_{I_P} agree on N^n, i.e. units are cancellative mod I."""
        if not self.U:
            return True
        sat_nil = lambda e: self.isat.normal_form(self.ring.monomial(e)).is_zero()
        I = self.ideal
        box = [max(self.box[i], 2) for i in range(self.n)]
        from itertools import product

        for e in product(*[range(b + 1) for b in box]):
            in_I = I.normal_form(self.ring.monomial(e)).is_zero()
            if in_I != sat_nil(e):
                return False
        # binomial relations: compare class partitions on the box
        groups_I: dict = {}
        groups_S: dict = {}
        for e in product(*[range(b + 1) for b in box]):
            f = I.normal_form(self.ring.monomial(e))
            s = self.isat.normal_form(self.ring.monomial(e))
            if f.is_zero():
                continue
            groups_I.setdefault(next(iter(f.terms)), set()).add(e)
            groups_S.setdefault(next(iter(s.terms)), set()).add(e)
        return sorted(map(sorted, groups_I.values())) == sorted(map(sorted, groups_S.values()))

    def is_mesoprimary_locally(self) -> bool:
        nodes = self.nodes()
        if not nodes:
            return False
        K0 = self.stabilizer(nodes[0])
        return all(self.stabilizer(u) == K0 for u in nodes)

    def label(self, u, shift=()) -> str:
        from .poly import format_monomial

        e = self.join(u, shift) if shift else u
        return _laurent_str(e, self.ring.names)

    def node_monomial(self, u) -> str:
        return self.label(u)

    # -- congruence tables -----------------------------------------------------
    def congruence(self) -> "FiniteCongruence":
        """The whole localized congruence as an explicit table (finite case)."""
        nodes = self.nodes()
        return FiniteCongruence.from_view(self, nodes, None)

    def component_nodes(self, w) -> list:
        """Nodes ``v`` with ``v <= w`` in Green's preorder (the survivors at ``w``)."""
        return self._explore_component(w)

    def _explore_component(self, w) -> list:
        if self.locate(w) is None:
            raise NilClass(f"{w} is nil")
        wn = self.locate(w)[0]
        keep = lambda u: self.leq(u, wn)
        out = self._explore(keep)
        return out


def _node_sort_key(u):
    return (sum(u), tuple(-x for x in u))


def _laurent_str(e, names) -> str:
    factors = []
    for name, v in zip(names, e):
        if v == 1:
            factors.append(name)
        elif v:
            factors.append(f"{name}^{v}")
    return "*".join(factors) if factors else "1"


def localize(I: Ideal, P, box=None) -> LocalView:
    if not isinstance(P, tuple) or (P and isinstance(P[0], str)):
        P = monoid_prime(I.ring, P)
    return LocalView(I, P, box)


# ---------------------------------------------------------------------------
# explicit congruence tables


class FiniteCongruence(_Automaton):
    """A congruence on ``Q_P`` with finitely many orbits, given by tables.

    Node ids are ``0..N-1``.  ``steps[u][i]`` is ``None`` (nil) or
    ``(v, shift)``; ``stabs[u]`` is the stabilizer lattice of node ``u``.
    ``members[u]`` lists ``(label, offset)`` pairs: the original element
    ``label + g`` lies in class ``(u, g + offset)``.  Labels are n-tuples.
    """

    def __init__(self, P, U, n, labels, steps, stabs, members, names=None):
        self.P = tuple(P)
        self.U = tuple(U)
        self.n = n
        self.unit_dim = len(self.U)
        self.labels = list(labels)
        self.steps = steps
        self.stabs = stabs
        self.members = members
        self.names = names
        self._reach: dict = {}
        self.index = {}
        for u, mem in enumerate(members):
            for lab, off in mem:
                self.index[lab] = (u, off)

    @classmethod
    def from_view(cls, view: LocalView, nodes, w=None, uniform: Lattice | None = None):
        """Table for ``view`` restricted to ``nodes`` (others become nil)."""
        ids = {u: k for k, u in enumerate(nodes)}
        steps = []
        for u in nodes:
            row = {}
            for i in view.P:
                s = view.step(u, i)
                if s is None or s[0] not in ids:
                    row[i] = None
                else:
                    K = uniform if uniform is not None else view.stabilizer(s[0])
                    row[i] = (ids[s[0]], K.reduce(s[1]))
            steps.append(row)
        stabs = [uniform if uniform is not None else view.stabilizer(u) for u in nodes]
        zero = tuple([0] * view.unit_dim)
        members = [[(u, zero)] for u in nodes]
        return cls(view.P, view.U, view.n, nodes, steps, stabs, members, view.ring.names)

    # interface
    def candidate_nodes(self):
        return list(range(len(self.labels)))

    def step(self, u, i):
        if u is None:
            return None
        return self.steps[u][i]

    def stabilizer(self, u):
        return self.stabs[u]

    def node_label(self, u):
        return self.labels[u]

    def leq(self, a, b):
        if b is None:
            return True
        if a is None:
            return False
        if a == b:
            return True
        r = self._reach.get(a)
        if r is None:
            seen = {a}
            queue = deque([a])
            while queue:
                u = queue.popleft()
                for i in self.P:
                    s = self.steps[u][i]
                    if s is not None and s[0] not in seen:
                        seen.add(s[0])
                        queue.append(s[0])
            r = frozenset(seen)
            self._reach[a] = r
        return b in r

    @property
    def size(self) -> int:
        return len(self.labels)

    def walk(self, u, vec):
        """Class of ``(u, 0) + vec`` for a vector ``vec`` in N^P x Z^U."""
        shift = [0] * self.unit_dim
        for k, j in enumerate(self.U):
            shift[k] += vec[j]
        cur = u
        for i in self.P:
            for _ in range(vec[i]):
                s = self.steps[cur][i]
                if s is None:
                    return None
                cur = s[0]
                shift = [a + b for a, b in zip(shift, s[1])]
        return cur, self.stabs[cur].reduce(shift)

    def classify(self, e):
        """Class ``(node, shift)`` of a node label plus unit exponents, or None.

        Labels are standard monomials of the view; map arbitrary monomials
        through ``LocalView.locate`` first.
        """
        node_label = tuple(e[i] if i in self.P else 0 for i in range(self.n))
        shift = tuple(e[j] for j in self.U)
        hit = self.index.get(node_label)
        if hit is None:
            return None
        u, off = hit
        return u, self.stabs[u].reduce(_add(shift, off))

    def is_mesoprimary(self) -> bool:
        return len(set(self.stabs)) <= 1

    def is_coprincipal(self) -> bool:
        if not self.labels or not self.is_mesoprimary():
            return False
        return len(self.cogenerator_nodes()) == 1

    def cogenerator(self) -> int:
        cog = self.cogenerator_nodes()
        if len(cog) != 1:
            raise NotCoprincipal(f"{len(cog)} cogenerator orbits")
        return cog[0]

    def partition(self) -> list:
        """Classes as sorted lists of original labels (for unit-free comparisons)."""
        return sorted(sorted(m[0] for m in mem) for mem in self.members)

    def class_members(self) -> dict:
        return {self.labels[u]: sorted(lab for lab, _ in mem) for u, mem in enumerate(self.members)}

    def label(self, u, shift=()) -> str:
        lab = self.labels[u]
        if shift:
            lab = list(lab)
            for k, j in enumerate(self.U):
                lab[j] = shift[k]
        return _laurent_str(lab, self.names or [f"x{i}" for i in range(self.n)])

    def merge(self, pairs) -> "FiniteCongruence":
        """Coarsen by ``(a, b, d)`` meaning ``(a, g) ~ (b, g + d)``.

        Only valid when stabilizers are uniform (mesoprimary tables).
        """
        K = self.stabs[0] if self.stabs else Lattice.zero(self.unit_dim)
        uf = _PotentialUnionFind(len(self.labels), K, key=lambda u: _node_sort_key(self.labels[u]))
        for a, b, d in pairs:
            uf.union(a, b, d)
        roots = sorted({uf.find(u)[0] for u in range(len(self.labels))}, key=lambda u: _node_sort_key(self.labels[u]))
        new_id = {r: k for k, r in enumerate(roots)}
        steps = []
        for r in roots:
            row = {}
            for i in self.P:
                s = self.steps[r][i]
                if s is None:
                    row[i] = None
                else:
                    root, pot = uf.find(s[0])
                    row[i] = (new_id[root], K.reduce(_add(s[1], pot)))
            steps.append(row)
        members = [[] for _ in roots]
        for u in range(len(self.labels)):
            root, pot = uf.find(u)
            for lab, off in self.members[u]:
                members[new_id[root]].append((lab, K.reduce(_add(off, pot))))
        for m in members:
            m.sort(key=lambda t: _node_sort_key(t[0]))
        return FiniteCongruence(
            self.P, self.U, self.n, [self.labels[r] for r in roots], steps, [K] * len(roots), members, self.names
        )

    def same_relation(self, other: "FiniteCongruence") -> bool:
        """Do the two tables relate exactly the same original elements?"""
        if set(self.index) != set(other.index):
            return False
        mine = {}
        for lab, (u, off) in self.index.items():
            mine[lab] = (u, off)
        # group labels by class, using offsets relative to the first member
        def groups(fc):
            out = set()
            for u, mem in enumerate(fc.members):
                base = mem[0][1]
                out.add(tuple((lab, fc.stabs[u].reduce(_sub(off, base))) for lab, off in mem))
            return out

        return groups(self) == groups(other) and set(self.stabs) == set(other.stabs)


class _PotentialUnionFind:
    """Union-find where ``(x, g) ~ (parent, g + pot[x])`` modulo a lattice."""

    def __init__(self, n, K: Lattice, key):
        self.parent = list(range(n))
        self.pot = [tuple([0] * K.dim) for _ in range(n)]
        self.K = K
        self.key = key

    def find(self, x):
        """``(root, pot)`` with ``(x, g) ~ (root, g + pot)``."""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        acc = tuple([0] * self.K.dim)
        for y in reversed(path):
            acc = self.K.reduce(_add(self.pot[y], acc))
            self.pot[y] = acc
            self.parent[y] = root
        return root, (self.pot[path[0]] if path else acc)

    def union(self, a, b, d):
        """Record ``(a, g) ~ (b, g + d)``."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        # (ra, g + pa) ~ (a, g) ~ (b, g + d) ~ (rb, g + d + pb)
        delta = self.K.reduce(_sub(_add(d, pb), pa))  # (ra, h) ~ (rb, h + delta)
        if ra == rb:
            if any(delta):
                raise AssertionError("merge would identify distinct unit translates")
            return
        if self.key(ra) <= self.key(rb):
            self.parent[rb] = ra
            self.pot[rb] = self.K.reduce(_neg(delta))
        else:
            self.parent[ra] = rb
            self.pot[ra] = delta


# ---------------------------------------------------------------------------
# module-level operations


def class_of(q, view: LocalView):
    return view.class_of(tuple(q))


def greens_compare(q, q2, view: LocalView) -> str:
    a = view.locate(tuple(q))
    b = view.locate(tuple(q2))
    if a is None or b is None:
        raise NilClass("Green's comparison of a nil class")
    return view.greens_compare(a[0], b[0])


def witnesses(view: LocalView, kind: str = "witness") -> list:
    if view.is_whole:
        return []
    if not view.P:
        # every element of Q_P is a unit; the single orbit is the witness
        # exactly when the localization is a proper ideal
        return view.witness_records(kind)
    return view.witness_records(kind)


def cogenerators(view) -> list:
    return [view.node_label(u) for u in view.cogenerator_nodes()]


@dataclass
class CongruencePredicates:
    is_primary: bool
    is_mesoprimary: bool
    is_coprincipal: bool
    is_soccular: bool


def congruence_predicates(view: LocalView) -> CongruencePredicates:
    nodes = view.nodes()
    primary = bool(nodes) and view.is_nilpotent() and view.units_cancellative()
    meso = primary and view.is_mesoprimary_locally()
    cogs = view.cogenerator_nodes()
    copr = meso and len(cogs) == 1
    socc = False
    if copr:
        keys = [view.split(r.w)[0] for r in view.witness_records("key")]
        socc = all(view.leq(u, cogs[0]) and view.leq(cogs[0], u) for u in keys)
    return CongruencePredicates(primary, meso, copr, socc)


@dataclass
class PrimeCongruence:
    P: tuple
    K: Lattice

    def __eq__(self, other):
        return isinstance(other, PrimeCongruence) and self.P == other.P and self.K == other.K

    def __hash__(self):
        return hash((self.P, self.K))


def prime_congruence(I: Ideal, P, q) -> PrimeCongruence:
    view = localize(I, P)
    loc = view.locate(tuple(q))
    if loc is None:
        raise NilClass(f"t^{q} lies in the localization")
    return PrimeCongruence(view.P, view.stabilizer(loc[0]))


def coprincipal_component_congruence(view: LocalView, w) -> FiniteCongruence:
    """The coprincipal component of ``~`` cogenerated by ``w`` along ``P``."""
    loc = view.locate(tuple(w))
    if loc is None:
        raise NilClass(f"{w} is nil")
    wn = loc[0]
    nodes = view.component_nodes(w)
    K = view.stabilizer(wn)
    return FiniteCongruence.from_view(view, nodes, wn, uniform=K)
