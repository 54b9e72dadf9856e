"""Searching for binomial irreducible decompositions.

For I every binoccular component with a large socle turns out to be
redundant.  For J two such components remain and one of them cannot be
dropped, so the search reports failure (which is not a proof).
"""

from binoc import binomial_irreducibility_report, localize, parse_ideal, witnesses

CASES = {
    "I": "x^2*y - x*y^2, x^4 - x^3*y, x*y^3 - y^4, x^5",
    "J": "x^4*y - x^3*y^2, x^2*y^3 - x*y^4, x^6 - x^5*y, x*y^5 - y^6, x^7",
}

for name, gens in CASES.items():
    ideal = parse_ideal(f"ring x y; char 0; ideal {gens}")
    view = localize(ideal, (0, 1))
    keys = [view.label(view.split(r.w)[0]) + (" (cogenerator)" if r.is_cogenerator else "") for r in witnesses(view, "key")]
    print(f"{name} = <{gens}>")
    print("  key witnesses:", ", ".join(keys))
    rep = binomial_irreducibility_report(ideal)
    print("  report:", rep.status)
    for c in rep.omitted:
        print("  omitted component at", c.witness_str())
    for note in rep.notes:
        print("  note:", note)
    print()
