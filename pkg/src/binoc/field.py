"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction

from .errors import BadCharacteristic


class Field:
    """Base class for an exact coefficient field.

    Elements are plain Python objects (``Fraction`` for QQ, ``int`` in
    ``range(p)`` for F_p) so polynomial code can store them directly in
    dictionaries.
    """

    characteristic = 0

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def nth_roots(self, c, n: int) -> list:
        """All ``z`` in the field with ``z**n == c`` (sorted, deterministic)."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        return str(a)

    def is_integral(self, a) -> bool:
        """True if ``a`` prints as an integer literal."""
        return True


class RationalField(Field):
    characteristic = 0

    def convert(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def nth_roots(self, c, n):
        c = Fraction(c)
        if c == 0:
            return [Fraction(0)]
        roots = []
        num = _int_root(abs(c.numerator), n)
        den = _int_root(c.denominator, n)
        if num is None or den is None:
            return []
        r = Fraction(num, den)
        for cand in {r, -r}:
            if cand ** n == c:
                roots.append(cand)
        return sorted(roots)

    def to_str(self, a):
        return str(a)

    def is_integral(self, a):
        return a.denominator == 1

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p >= 2**31 or not _is_prime(p):
            raise BadCharacteristic(f"{p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p

    def convert(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def nth_roots(self, c, n):
        c %= self.p
        if c == 0:
            return [0]
        from sympy.ntheory.residue_ntheory import nthroot_mod

        roots = nthroot_mod(c, n, self.p, all_roots=True) or []
        return sorted(int(r) for r in roots)

    def to_str(self, a):
        # print the symmetric representative so -1 shows as -1, not p-1
        return str(a - self.p if a > self.p // 2 else a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_for_characteristic(char: int) -> Field:
    return QQ if char == 0 else PrimeField(char)


def _int_root(m: int, n: int):
    if m < 2:
        return m
    r = round(m ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == m:
            return cand
    # float rounding can miss on huge inputs; fall back to bisection
    lo, hi = 0, 1 << (m.bit_length() // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**n
        if v == m:
            return mid
        if v < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _is_prime(p: int) -> bool:
    if p < 4:
        return p >= 2
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True
