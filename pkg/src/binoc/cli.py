"""Command line interface.

Exit codes: 0 success (certificate valid), 2 certificate failed,
3 input outside the supported scope, 4 parse or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .errors import (
    BadCharacteristic,
    BinocError,
    BoundExceeded,
    CrossCheckMismatch,
    DimensionUnsupported,
    FieldExtensionRequired,
    NilClass,
    NotCoprincipal,
    NotPCofinite,
    ParseError,
    ResourceLimitExceeded,
    UnsupportedUnitRank,
)

EXIT_OK, EXIT_CERT, EXIT_UNSUPPORTED, EXIT_INPUT = 0, 2, 3, 4

_UNSUPPORTED = (
    UnsupportedUnitRank,
    NotPCofinite,
    FieldExtensionRequired,
    DimensionUnsupported,
    BoundExceeded,
    NotCoprincipal,
    NilClass,
    ResourceLimitExceeded,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    from .io import parse_ideal_file

    return parse_ideal_file(_read(path))


def _prime(ring, spec):
    """``None`` (all variables), or a comma/space separated name list; ``-`` is empty."""
    from .congruence import monoid_prime

    if spec is None:
        return tuple(range(ring.n))
    if spec.strip() in ("-", ""):
        return ()
    names = [s for s in spec.replace(",", " ").split() if s]
    try:
        return monoid_prime(ring, names)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad prime {spec!r}: {exc}") from None


def _exponent(ring, text):
    from .io import parse_polynomial

    f = parse_polynomial(text, ring)
    if len(f.terms) != 1:
        raise ParseError(f"{text!r} is not a monomial")
    return next(iter(f.terms))


# ---------------------------------------------------------------------------
# subcommands


def cmd_decompose(args) -> int:
    from .binoccular import binoccular_decomposition
    from .io import dump_document, result_document
    from .irreducible import irreducible_decomposition
    from .mesoprimary import coprincipal_decomposition
    from .verify import check_intersection

    src = _load(args.file)
    I = src.ideal
    t0 = time.perf_counter()
    if args.mode == "soccular":
        return _decompose_soccular(args, src, t0)
    fn = {
        "coprincipal": coprincipal_decomposition,
        "binoccular": binoccular_decomposition,
        "irreducible": irreducible_decomposition,
    }[args.mode]
    dec = fn(I, jobs=args.jobs, prune=args.prune)
    comps = sorted(dec.components, key=lambda c: (c.P, tuple(c.w)))
    cert1 = check_intersection(I, comps, 1)
    block = {"intersection": cert1.as_dict()}
    ok = cert1.verdict and dec.certified
    if args.criterion in ("3", "both"):
        try:
            cert3 = check_intersection(I, comps, 3)
            block["socle_injectivity"] = cert3.as_dict()
            ok = ok and cert3.verdict
        except (UnsupportedUnitRank, NotPCofinite) as exc:
            block["socle_injectivity"] = {"criterion": "socle-injectivity", "verdict": None, "diagnostics": [str(exc)]}
    meso = dec.certificates.get("mesoprimary")
    if meso is not None:
        block["mesoprimary"] = {"verdict": meso.verdict, "combinatorial": meso.combinatorial, "details": meso.details}
    if dec.notes:
        block["notes"] = list(dec.notes)
    block["verdict"] = bool(ok)
    doc = result_document(src, args.mode, comps, block, time.perf_counter() - t0)
    _write(dump_document(doc), args.output)
    errors = [c for c in comps if "error" in c.flags]
    if errors:
        for c in errors:
            print(f"unsupported: component at {c.witness_str()}: {c.flags['error']}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    return EXIT_OK if ok else EXIT_CERT


def _decompose_soccular(args, src, t0) -> int:
    from .io import dump_document, result_document
    from .mesoprimary import Component
    from .soccular import soccular_decomposition

    I = src.ideal
    dec = soccular_decomposition(I, "soccular", jobs=args.jobs)
    comps = []
    for c in dec.components:
        rec = Component("soccular", c.P, tuple(c.w), I)
        rec.flags["classes"] = c.table.size
        rec.flags["presentation"] = c.presenting_ideal_strs()
        comps.append(rec)
    comps.sort(key=lambda c: (c.P, c.w))
    block = {"refinement": {"verdict": dec.certified, "box": list(dec.box)}, "verdict": dec.certified}
    doc = result_document(src, "soccular", comps, block, time.perf_counter() - t0)
    for d, c in zip(doc["components"], comps):
        d["generators"] = []  # components are congruences; see flags.presentation
    _write(dump_document(doc), args.output)
    return EXIT_OK if dec.certified else EXIT_CERT


def cmd_witnesses(args) -> int:
    from .congruence import LocalView, all_monoid_primes, _laurent_str
    from .mesoprimary import essential_witnesses

    src = _load(args.file)
    I = src.ideal
    names = I.ring.names
    primes = [_prime(I.ring, args.prime)] if args.prime is not None else all_monoid_primes(I.ring.n)
    lines = []
    for P in primes:
        view = LocalView(I, P)
        if view.is_whole:
            continue
        if args.kind == "essential":
            recs = essential_witnesses(I, P, view)
        else:
            recs = view.witness_records(args.kind)
        if not recs:
            continue
        label = "{" + ", ".join(names[i] for i in P) + "}"
        lines.append(f"P = {label}")
        for r in recs:
            kinds = ", ".join(sorted(r.kinds))
            line = f"  {_laurent_str(r.w, names)}  [{kinds}]"
            if r.key_aide is not None:
                line += f"  key aide: {r.key_aide.describe(view.label)}"
            lines.append(line)
    _write("\n".join(lines) + ("\n" if lines else ""), args.output)
    return EXIT_OK


def cmd_congruence(args) -> int:
    from .congruence import congruence_predicates, localize

    src = _load(args.file)
    I = src.ideal
    P = _prime(I.ring, args.prime)
    view = localize(I, P)
    if view.is_whole:
        _write("the localization is the unit ideal\n", args.output)
        return EXIT_OK
    C = view.congruence()
    lines = [f"{C.size} non-nil orbit(s)"]
    for u in range(C.size):
        K = C.stabs[u]
        steps = []
        for i in C.P:
            s = C.steps[u][i]
            steps.append(f"{I.ring.names[i]}->" + ("nil" if s is None else C.label(s[0])))
        lat = f" K={[list(b) for b in K.basis]}" if C.unit_dim else ""
        lines.append(f"  {C.label(u)}:{lat} " + " ".join(steps))
    pred = congruence_predicates(view)
    lines.append(
        "primary={} mesoprimary={} coprincipal={} soccular={}".format(
            pred.is_primary, pred.is_mesoprimary, pred.is_coprincipal, pred.is_soccular
        ).lower()
    )
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_socle(args) -> int:
    from .binoccular import socle

    src = _load(args.file)
    I = src.ideal
    S = socle(I, _prime(I.ring, args.prime))
    lines = [f"dim {S.dim}"] + [f"  {s}" for s in S.strs()]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_closure(args) -> int:
    from .binoccular import binoccular_closure
    from .irreducible import irreducible_closure
    from .soccular import soccular_closure
    from .congruence import coprincipal_component_congruence, localize

    src = _load(args.file)
    I = src.ideal
    P = _prime(I.ring, args.prime)
    w = _exponent(I.ring, args.witness) if args.witness else None
    if args.kind == "binoccular":
        J = binoccular_closure(I, P, w)
        out = "\n".join(J.to_strs()) + "\n"
    elif args.kind == "irreducible":
        J = irreducible_closure(I, P, w)
        out = "\n".join(J.to_strs()) + "\n"
    else:
        view = localize(I, P)
        if w is None:
            cogs = view.cogenerator_nodes()
            if len(cogs) != 1:
                raise NotCoprincipal(f"expected one cogenerator orbit, found {len(cogs)}")
            w = cogs[0]
        C = soccular_closure(coprincipal_component_congruence(view, w))
        lines = []
        for u in range(C.size):
            members = [m for m, _ in C.members[u]]
            lines.append("{" + ", ".join(_mono(I.ring, m) for m in members) + "}")
        out = "\n".join(lines) + "\n"
    _write(out, args.output)
    return EXIT_OK


def _mono(ring, e):
    from .congruence import _laurent_str

    return _laurent_str(e, ring.names)


def cmd_verify(args) -> int:
    from .io import load_document
    from .verify import check_intersection

    source, comps, doc = load_document(_read(args.document))
    if doc.get("mode") == "soccular":
        from .soccular import soccular_decomposition

        ok = soccular_decomposition(source.ideal, "soccular").certified
    else:
        ok = check_intersection(source.ideal, comps, 1).verdict
        if ok and args.criterion in ("3", "both"):
            ok = check_intersection(source.ideal, comps, 3).verdict
    _write(f"certificate {'valid' if ok else 'FAILED'}\n", args.output)
    return EXIT_OK if ok else EXIT_CERT


def cmd_render(args) -> int:
    from .render import render_congruence

    src = _load(args.file)
    I = src.ideal
    box = None
    if args.box:
        try:
            box = tuple(int(x) for x in args.box.split(","))
        except ValueError:
            raise ParseError(f"bad box {args.box!r}") from None
        if len(box) != 2:
            raise ParseError("box needs two integers")
    obj = I
    if args.closure == "soccular":
        from .congruence import coprincipal_component_congruence, localize
        from .soccular import CongruenceComponent, soccular_closure

        view = localize(I, tuple(range(I.ring.n)))
        cogs = view.cogenerator_nodes()
        if len(cogs) != 1:
            raise NotCoprincipal("the soccular closure needs a coprincipal ideal")
        obj = CongruenceComponent(view.P, cogs[0], soccular_closure(coprincipal_component_congruence(view, cogs[0])), view)
        if box is None:
            from .render import _default_box

            box = _default_box(I)
    _write(render_congruence(obj, args.format, box), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from . import __version__

    p = argparse.ArgumentParser(prog="binoc", description="Decompositions of binomial ideals with certificates.")
    p.add_argument("--version", action="version", version=f"binoc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, file=True):
        if file:
            sp.add_argument("file", help="ideal file ('-' for stdin)")
        sp.add_argument("-o", "--output", help="write output here instead of stdout")

    d = sub.add_parser("decompose", help="compute a decomposition and its certificate (JSON)")
    common(d)
    d.add_argument("--mode", choices=["coprincipal", "soccular", "binoccular", "irreducible"], default="irreducible")
    d.add_argument("--prune", action="store_true", help="drop redundant components")
    d.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    d.add_argument("--criterion", choices=["1", "3", "both"], default="1")
    d.set_defaults(func=cmd_decompose)

    w = sub.add_parser("witnesses", help="list witnesses per monoid prime")
    common(w)
    w.add_argument("--prime", help="comma separated variables (default: every prime)")
    w.add_argument("--kind", choices=["witness", "key", "essential", "cogenerator"], default="key")
    w.set_defaults(func=cmd_witnesses)

    c = sub.add_parser("congruence", help="print the localized class table and predicates")
    common(c)
    c.add_argument("--prime", help="comma separated variables (default: all)")
    c.set_defaults(func=cmd_congruence)

    s = sub.add_parser("socle", help="print a socle basis")
    common(s)
    s.add_argument("--prime", help="comma separated variables (default: all)")
    s.set_defaults(func=cmd_socle)

    cl = sub.add_parser("closure", help="binoccular, irreducible or soccular closure of a coprincipal ideal")
    common(cl)
    cl.add_argument("--kind", choices=["binoccular", "irreducible", "soccular"], required=True)
    cl.add_argument("--prime", help="comma separated variables (default: all)")
    cl.add_argument("--witness", help="cogenerator monomial (default: the unique one)")
    cl.set_defaults(func=cmd_closure)

    v = sub.add_parser("verify", help="re-check a result document")
    v.add_argument("document")
    v.add_argument("-o", "--output")
    v.add_argument("--criterion", choices=["1", "3", "both"], default="1")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw the congruence on N^2")
    common(r)
    r.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    r.add_argument("--box", help="largest exponents shown, e.g. 4,4")
    r.add_argument("--closure", choices=["none", "soccular"], default="none")
    r.set_defaults(func=cmd_render)
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, BadCharacteristic, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _UNSUPPORTED as exc:
        print(f"unsupported: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CrossCheckMismatch as exc:
        print(f"certificate failed: {exc}", file=sys.stderr)
        return EXIT_CERT


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
