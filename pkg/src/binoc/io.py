"""Ideal file format and polynomial expression parser.

File grammar::

    ring x y z
    char 0
    ideal
    x^2*y - x*y^2, x^3
    y^3

Lines starting with ``#`` are comments.  Generators are separated by
commas or newlines.  Expressions use ``+ - * ^``, parentheses and integer
coefficients (``/`` is allowed between integers in characteristic 0).

Results go out as JSON documents with ``"schema": "1"``; they record the
ring, the input generators, every component (kind, prime, witness,
reduced Groebner basis) and the certificates, so ``binoc verify`` can
recheck them without trusting the producer.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import BadCharacteristic, ParseError
from .field import field_for_characteristic
from .ideal import Ideal
from .poly import Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def _tokens(text: str, line: int):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos+1]!r}", line, pos + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("num", int(m.group(1)), col))
        elif m.group(2):
            out.append(("name", m.group(2), col))
        else:
            out.append(("op", "^" if m.group(3) == "**" else m.group(3), col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, ring: PolyRing, line: int):
        self.toks = _tokens(text, line)
        self.i = 0
        self.ring = ring
        self.line = line
        self.index = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()
            rhs = self.power()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division only by nonzero constants", op)
                acc = acc * self.ring.constant(self.ring.field.inv(rhs.coeff((0,) * self.ring.n)))
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** tok[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.index:
                self.error(f"unknown variable {val!r}", tok)
            return self.ring.var(self.index[val])
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        self.error("expected a number, variable or '('", tok)


def parse_polynomial(text: str, ring: PolyRing, line: int = 1) -> Poly:
    return _Parser(text, ring, line).parse()


@dataclass
class IdealFile:
    names: tuple
    characteristic: int
    generators: list  # source strings
    ideal: Ideal

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def to_text(self) -> str:
        gens = [g.to_str() for g in self.ideal.gens]
        return "ring {}\nchar {}\nideal\n{}\n".format(" ".join(self.names), self.characteristic, ",\n".join(gens))


def parse_ideal(text: str) -> Ideal:
    return parse_ideal_file(text).ideal


def parse_ideal_file(text: str) -> IdealFile:
    """Parse the ``ring / char / ideal`` format (semicolons may replace newlines)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        # allow one-line form "ring x y; char 0; ideal f, g"
        col = 0
        for piece in line.split(";"):
            lines.append((lineno, col, piece))
            col += len(piece) + 1
    names = None
    char = None
    gens_src: list = []
    in_ideal = False
    for lineno, col, piece in lines:
        s = piece.strip()
        if not s:
            continue
        if in_ideal:
            gens_src.append((lineno, col + piece.find(s), s))
            continue
        head, _, rest = s.partition(" ")
        if head == "ring":
            names = rest.split()
            if not names:
                raise ParseError("ring needs at least one variable", lineno, 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, 1)
            for nm in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                    raise ParseError(f"bad variable name {nm!r}", lineno, 1)
        elif head == "char":
            try:
                char = int(rest.strip())
            except ValueError:
                raise ParseError("char expects an integer", lineno, 1) from None
        elif head == "ideal":
            in_ideal = True
            if rest.strip():
                gens_src.append((lineno, col + s.find(rest.strip()), rest.strip()))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col + 1)
    if names is None:
        raise ParseError("missing 'ring' line")
    if char is None:
        char = 0
    if not in_ideal:
        raise ParseError("missing 'ideal' section")
    try:
        field = field_for_characteristic(char)
    except BadCharacteristic:
        raise
    ring = PolyRing(names, field)
    polys = []
    sources = []
    for lineno, col, chunk in gens_src:
        for part in chunk.split(","):
            if not part.strip():
                continue
            try:
                polys.append(parse_polynomial(part, ring, lineno))
            except ParseError as err:
                raise ParseError(str(err).split(" (line")[0], lineno, (err.column or 0) + col) from None
            sources.append(part.strip())
    return IdealFile(tuple(names), char, sources, Ideal(polys, ring))


# ---------------------------------------------------------------------------
# JSON result documents

SCHEMA_VERSION = "1"


def component_record(comp) -> dict:
    ring = comp.ideal.ring
    flags = {k: v for k, v in sorted(comp.flags.items())}
    if comp.witness is not None:
        flags["witness_kinds"] = sorted(comp.witness.kinds)
    return {
        "kind": comp.kind,
        "prime": [ring.names[i] for i in comp.P],
        "witness": comp.witness_str(),
        "generators": comp.ideal.to_strs(),
        "socle_dim": comp.socle_dim,
        "flags": flags,
    }


def result_document(source: IdealFile, mode: str, components, certificate: dict, seconds: float) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA_VERSION,
        "tool": {"name": "binoc", "version": __version__},
        "input": {
            "ring": list(source.names),
            "char": source.characteristic,
            "generators": [g.to_str() for g in source.ideal.gens],
        },
        "mode": mode,
        "components": [component_record(c) for c in components],
        "certificate": certificate,
        "timing": {"seconds": round(seconds, 3)},
    }


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_document(text: str):
    """``(IdealFile, [Ideal, ...], doc)`` from a result document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if doc.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema {doc.get('schema')!r}")
    inp = doc["input"]
    src = "ring {}\nchar {}\nideal\n{}\n".format(" ".join(inp["ring"]), inp["char"], ",\n".join(inp["generators"]))
    source = parse_ideal_file(src)
    ring = source.ring
    comps = []
    for c in doc["components"]:
        gens = [parse_polynomial(g, ring) for g in c["generators"]]
        comps.append(Ideal(gens, ring))
    return source, comps, doc
