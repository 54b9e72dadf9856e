"""Soccular collapse, soccular closure and soccular decomposition of congruences.

All operations act on ``FiniteCongruence`` tables that are coprincipal
(uniform stabilizer, one cogenerator orbit).  The closure is computed in
two independent ways, by iterating the collapse and by grouping classes
with equal colon sets ``(w : q)``, and the two are compared.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import config
from .congruence import (
    FiniteCongruence,
    LocalView,
    _add,
    _neg,
    _node_sort_key,
    _sub,
    all_monoid_primes,
    coprincipal_component_congruence,
    localize,
)
from .errors import BoundExceeded, CrossCheckMismatch, NotCoprincipal
from .ideal import Ideal
from .lattice import coset_intersection


def _as_table(C) -> FiniteCongruence:
    if isinstance(C, LocalView):
        C = C.congruence()
    if not C.is_coprincipal():
        raise NotCoprincipal("soccular operations need a coprincipal congruence")
    return C


def colon_set(C, q_node: int, q_shift=None) -> dict:
    """Fingerprint of ``(w :_~ q)``: node ``b`` -> the unique shift ``h`` with
    ``q + (b, h)`` in the class of the cogenerator.

    ``q`` is the class ``(q_node, q_shift)`` of the table ``C``.
    """
    C = _as_table(C)
    w = C.cogenerator()
    K = C.stabs[0]
    g = tuple(q_shift) if q_shift is not None else tuple([0] * C.unit_dim)
    out = {}
    for b in range(C.size):
        r = C.walk(q_node, C.labels[b])
        if r is None or r[0] != w:
            continue
        out[b] = K.reduce(_neg(_add(g, r[1])))
    return out


def colon_set_labels(C, q_node: int, q_shift=None) -> list:
    """The colon set as sorted class labels (printable fingerprint)."""
    C = _as_table(C)
    fp = colon_set(C, q_node, q_shift)
    return sorted(C.label(b, h) for b, h in fp.items())


def soccular_collapse(C) -> FiniteCongruence:
    """Join ``a, b`` outside ``<w>`` whenever ``a + e_i ~ b + e_i`` for every ``i`` in P."""
    C = _as_table(C)
    w = C.cogenerator()
    K = C.stabs[0]
    pairs = []
    for a in range(C.size):
        if a == w:
            continue
        for b in range(a, C.size):
            if b == w:
                continue
            d = _collapse_offset(C, a, b, K)
            if d is None:
                continue
            if a == b:
                # never merges distinct unit translates of one orbit
                if any(d):
                    raise CrossCheckMismatch("collapse joins an orbit with a unit translate")
                continue
            pairs.append((a, b, d))
    out = C.merge(pairs)
    return out


def _collapse_offset(C, a, b, K):
    """``d`` with ``(a, 0) + e_i ~ (b, d) + e_i`` for all ``i``, or None."""
    d = None
    for i in C.P:
        sa, sb = C.steps[a][i], C.steps[b][i]
        if sa is None and sb is None:
            continue
        if sa is None or sb is None or sa[0] != sb[0]:
            return None
        need = K.reduce(_sub(sa[1], sb[1]))
        if d is None:
            d = need
        elif K.reduce(_sub(d, need)) != tuple([0] * K.dim):
            return None
    if d is None:
        # both orbits are killed by all of P: only the cogenerator orbit is
        return None
    return d


def iterated_collapses(C) -> list:
    """``[C, C_1, C_2, ...]`` up to the first repeat."""
    C = _as_table(C)
    stages = [C]
    while True:
        nxt = soccular_collapse(stages[-1])
        if nxt.size == stages[-1].size:
            return stages
        stages.append(nxt)


def _fingerprint_pairs(C):
    """Groups of nodes with equal colon sets, with offsets ``(a, 0) ~ (b, d)``."""
    w = C.cogenerator()
    K = C.stabs[0]
    sigs = {}
    for a in range(C.size):
        fp = {}
        for b in range(C.size):
            r = C.walk(a, C.labels[b])
            if r is not None and r[0] == w:
                fp[b] = r[1]
        keys = sorted(fp)
        if not keys:
            continue
        base = fp[keys[0]]
        sig = (tuple(keys), tuple(K.reduce(_sub(fp[b], base)) for b in keys))
        sigs.setdefault(sig, []).append((a, base))
    pairs = []
    for members in sigs.values():
        a0, s0 = members[0]
        for a, s in members[1:]:
            # (a0, g) + p ~ w  and (a, g') + p ~ w  agree when g' - g = s0 - s
            pairs.append((a0, a, K.reduce(_sub(s0, s))))
    return pairs


def soccular_closure(C, cross_check: bool | None = None) -> FiniteCongruence:
    """The soccular closure, by colon-set fingerprints.

    With ``cross_check`` (default ``config.CROSS_CHECK``) the iterated
    collapse is computed too and must give the same congruence.
    """
    C = _as_table(C)
    if cross_check is None:
        cross_check = config.CROSS_CHECK
    closure = C.merge(_fingerprint_pairs(C))
    if cross_check:
        iterated = iterated_collapses(C)[-1]
        if not closure.same_relation(iterated):
            raise CrossCheckMismatch("iterated collapse and colon-set closure disagree")
    return closure


@dataclass
class ProtectedPair:
    a: tuple
    b: tuple
    shift: tuple
    stage: int  # first collapse stage where the two classes are a key pair


def protected_pairs(C) -> list:
    """Distinct classes with equal colon sets, cross-checked against key
    witness pairs of the iterated collapses.
    """
    C = _as_table(C)
    fp_pairs = {}
    # all pairs inside each fingerprint group
    groups = {}
    for a0, a, d in _fingerprint_pairs(C):
        groups.setdefault(a0, [(a0, tuple([0] * C.unit_dim))]).append((a, d))
    for members in groups.values():
        for (a, da), (b, db) in _pairs(members):
            fp_pairs[_pair_key(C, a, b)] = C.stabs[0].reduce(_sub(db, da))
    stages = iterated_collapses(C)
    found = {}
    for k, S in enumerate(stages):
        for u, a, g in S.key_pairs():
            for lab_u, off_u in S.members[u]:
                for lab_a, off_a in S.members[a]:
                    if lab_u == lab_a:
                        continue
                    key = tuple(sorted([lab_u, lab_a], key=_node_sort_key))
                    found.setdefault(key, k)
    if set(found) != set(fp_pairs):
        raise CrossCheckMismatch("protected pairs from fingerprints and from collapses differ")
    out = []
    for key in sorted(fp_pairs, key=lambda k: (_node_sort_key(k[0]), _node_sort_key(k[1]))):
        out.append(ProtectedPair(key[0], key[1], fp_pairs[key], found[key]))
    return out


def _pairs(members):
    for x in range(len(members)):
        for y in range(x + 1, len(members)):
            yield members[x], members[y]


def _pair_key(C, a, b):
    return tuple(sorted([C.labels[a], C.labels[b]], key=_node_sort_key))


def protected_witnesses(C) -> list:
    """Labels of elements that are key witnesses of some collapse ``i >= 1``."""
    C = _as_table(C)
    out = set()
    for S in iterated_collapses(C)[1:]:
        for r in S.witness_records("key"):
            u = S.labels.index(r.w)
            for lab, _ in S.members[u]:
                out.add(lab)
    return sorted(out, key=_node_sort_key)


def soccular_component(view: LocalView, w) -> FiniteCongruence:
    """Soccular closure of the coprincipal component at ``w``."""
    return soccular_closure(coprincipal_component_congruence(view, w))


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class CongruenceComponent:
    P: tuple
    w: tuple
    table: FiniteCongruence
    view: LocalView = field(repr=False)

    def label_of(self, e):
        """Class of a monomial ``e`` of N^n under this component (None = nil)."""
        loc = self.view.locate(tuple(e))
        if loc is None:
            return None
        node, shift, _ = loc
        hit = self.table.index.get(node)
        if hit is None:
            return None
        u, off = hit
        return u, self.table.stabs[u].reduce(_add(shift, off))

    def presenting_ideal_strs(self) -> list:
        """Display-only binomial ideal: nil monomials plus merged pairs with lambda = 1."""
        names = self.view.ring.names
        from .congruence import _laurent_str

        out = []
        for mem in self.table.members:
            first = mem[0]
            for lab, off in mem[1:]:
                a = _laurent_str(first[0], names)
                b = _laurent_str(self.view.join(lab, off) if any(off) else lab, names)
                out.append(f"{a} - {b}")
        return out


@dataclass
class SoccularDecomposition:
    components: list
    certified: bool
    box: tuple


def soccular_decomposition(I: Ideal, mode: str = "soccular", jobs: int | None = None) -> SoccularDecomposition:
    """Components at every key witness over every monoid prime.

    ``mode`` is ``"coprincipal"`` (plain component congruences) or
    ``"soccular"`` (their soccular closures).  The certificate checks on a
    box of N^n that the common refinement of the components is ``~_I``.
    """
    if mode not in ("coprincipal", "soccular"):
        raise ValueError("mode must be 'coprincipal' or 'soccular'")
    n = I.ring.n
    gb = I.groebner()
    base_box = [max((g.lm()[i] for g in gb), default=0) + 1 for i in range(n)]
    for extra in range(config.DEEPENING_ROUNDS + 1):
        box = [b + extra for b in base_box]
        tasks = []
        for P in all_monoid_primes(n):
            view = LocalView(I, P, box=[box[i] + 1 for i in range(n)])
            if view.is_whole:
                continue
            for rec in view.witness_records("key"):
                tasks.append((view, rec.w))

        def build(task):
            view, w = task
            C = coprincipal_component_congruence(view, w)
            if mode == "soccular":
                C = soccular_closure(C)
            return CongruenceComponent(view.P, w, C, view)

        if jobs and jobs > 1:
            with ThreadPoolExecutor(jobs) as ex:
                comps = list(ex.map(build, tasks))
        else:
            comps = [build(t) for t in tasks]
        ok = refinement_certificate(I, comps, box)
        if ok:
            return SoccularDecomposition(comps, True, tuple(box))
    raise BoundExceeded(f"no certified soccular decomposition within box {box}")


def refinement_certificate(I: Ideal, comps, box) -> bool:
    """The common refinement of ``comps`` equals ``~_I`` on the box (pairwise separation)."""
    ring = I.ring
    by_class = {}
    by_sig = {}
    for e in product(*[range(b + 1) for b in box]):
        f = I.normal_form(ring.monomial(e))
        cls = None if f.is_zero() else next(iter(f.terms))
        by_class.setdefault(cls, []).append(e)
        sig = tuple(c.label_of(e) for c in comps)
        by_sig.setdefault(sig, []).append(e)
    part_I = sorted(sorted(v) for v in by_class.values())
    part_C = sorted(sorted(v) for v in by_sig.values())
    return part_I == part_C
