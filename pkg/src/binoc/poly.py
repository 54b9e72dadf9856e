"""Sparse exact polynomials over N^n and monomial term orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import QQ, Field

Exponent = tuple  # tuple of ints, one per variable


@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"block"``.  A block order
    compares the variables of ``blocks[0]`` by degrevlex first, then
    ``blocks[1]`` and so on, which makes it an elimination order for the
    earlier blocks.  ``perm`` lists variable indices from largest to
    smallest for the non-block kinds.
    """

    kind: str = "degrevlex"
    perm: tuple | None = None
    blocks: tuple | None = None

    def key(self, e: Exponent) -> tuple:
        if self.kind == "block":
            out = []
            for block in self.blocks:
                out.append(sum(e[i] for i in block))
                out.extend(-e[i] for i in reversed(block))
            return tuple(out)
        if self.perm is not None:
            e = tuple(e[i] for i in self.perm)
        if self.kind == "degrevlex":
            return (sum(e),) + tuple(-v for v in reversed(e))
        if self.kind == "lex":
            return tuple(e)
        raise ValueError(f"unknown term order {self.kind!r}")

    @classmethod
    def elimination(cls, first: Sequence[int], rest: Sequence[int]) -> "TermOrder":
        """Block order eliminating the variables in ``first``."""
        return cls("block", blocks=(tuple(first), tuple(rest)))


DEGREVLEX = TermOrder("degrevlex")
LEX = TermOrder("lex")


class PolyRing:
    """k[x_1, ..., x_n] with named variables."""

    def __init__(self, names: Sequence[str], field: Field = QQ):
        self.names = tuple(names)
        self.field = field
        self.n = len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.monomial((0,) * self.n)

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.n)]

    def var(self, i: int) -> "Poly":
        e = [0] * self.n
        e[i] = 1
        return self.monomial(tuple(e))

    def monomial(self, e: Exponent, c=1) -> "Poly":
        c = self.field.convert(c)
        if c == self.field.zero:
            return self.zero
        return Poly(self, {tuple(e): c})

    def constant(self, c) -> "Poly":
        return self.monomial((0,) * self.n, c)

    def from_terms(self, terms) -> "Poly":
        F = self.field
        d: dict = {}
        for e, c in terms:
            e = tuple(e)
            v = F.add(d.get(e, F.zero), F.convert(c))
            if v == F.zero:
                d.pop(e, None)
            else:
                d[e] = v
        return Poly(self, d)

    def binomial(self, a: Exponent, b: Exponent, lam=1) -> "Poly":
        """t^a - lam * t^b."""
        return self.from_terms([(a, 1), (b, self.field.neg(self.field.convert(lam)))])

    def extend(self, new_names: Sequence[str], front: bool = False) -> "PolyRing":
        if front:
            return PolyRing(tuple(new_names) + self.names, self.field)
        return PolyRing(self.names + tuple(new_names), self.field)

    def parse(self, text: str) -> "Poly":
        from .io import parse_polynomial

        return parse_polynomial(text, self)


class Poly:
    """Immutable sparse polynomial: a map Exponent -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_binomial(self) -> bool:
        return len(self.terms) <= 2

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- leading data ------------------------------------------------------
    def lm(self, order: TermOrder = DEGREVLEX) -> Exponent:
        return max(self.terms, key=order.key)

    def lc(self, order: TermOrder = DEGREVLEX):
        return self.terms[self.lm(order)]

    def sorted_terms(self, order: TermOrder = DEGREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: TermOrder = DEGREVLEX) -> "Poly":
        if not self.terms:
            return self
        F = self.ring.field
        inv = F.inv(self.lc(order))
        return Poly(self.ring, {e: F.mul(c, inv) for e, c in self.terms.items()})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def support(self) -> list:
        return list(self.terms)

    def coeff(self, e: Exponent):
        return self.terms.get(tuple(e), self.ring.field.zero)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        d = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(d.get(e, F.zero), c)
            if v == F.zero:
                d.pop(e, None)
            else:
                d[e] = v
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        d: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(d.get(e, F.zero), F.mul(c1, c2))
                if v == F.zero:
                    d.pop(e, None)
                else:
                    d[e] = v
        return Poly(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F.convert(c)
        if c == F.zero:
            return self.ring.zero
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, m: Exponent, c=None) -> "Poly":
        F = self.ring.field
        if c is None:
            return Poly(self.ring, {tuple(a + b for a, b in zip(e, m)): v for e, v in self.terms.items()})
        c = F.convert(c)
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, m)): F.mul(v, c) for e, v in self.terms.items()})

    # -- ring changes -------------------------------------------------------
    def embed(self, ring: PolyRing, positions: Sequence[int]) -> "Poly":
        """Map variable i of this ring to variable ``positions[i]`` of ``ring``."""
        d = {}
        for e, c in self.terms.items():
            ne = [0] * ring.n
            for i, v in enumerate(e):
                ne[positions[i]] += v
            d[tuple(ne)] = c
        return Poly(ring, d)

    def restrict(self, ring: PolyRing, positions: Sequence[int]) -> "Poly":
        """Inverse of ``embed``: keep the listed coordinates (others must be 0)."""
        d = {}
        for e, c in self.terms.items():
            d[tuple(e[i] for i in positions)] = c
        return Poly(ring, d)

    def variables_used(self) -> set:
        return {i for e in self.terms for i, v in enumerate(e) if v}

    # -- printing -----------------------------------------------------------
    def to_str(self, order: TermOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for e, c in self.sorted_terms(order):
            s = F.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = format_monomial(e, self.ring.names)
            if mono == "1":
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"Poly({self.to_str()})"


def format_monomial(e: Exponent, names: Sequence[str]) -> str:
    factors = []
    for name, v in zip(names, e):
        if v == 1:
            factors.append(name)
        elif v:
            factors.append(f"{name}^{v}")
    return "*".join(factors) if factors else "1"


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def unit_vector(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def product_of_variables(ring: PolyRing, indices: Iterable[int]) -> Poly:
    e = [0] * ring.n
    for i in indices:
        e[i] = 1
    return ring.monomial(tuple(e))
