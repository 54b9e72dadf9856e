"""Why <x^2y - xy^2, x^3, y^3> has no binomial irreducible decomposition.

Walks through the socle of the ideal, its irreducible decomposition, and
the exhaustive check over F_101 that every irreducible overideal cut out
by one socle line needs a non-binomial generator.
"""

from binoc import (
    irreducible_decomposition,
    localize,
    parse_ideal,
    render_congruence,
    socle,
    socle_dimension,
)
from binoc.ideal import Ideal

I = parse_ideal("ring x y; char 0; ideal x^2*y - x*y^2, x^3, y^3")
XY = (0, 1)

print("classes of monomials (same letter = same class, # = in the ideal):")
print(render_congruence(localize(I, XY)).rstrip())

S = socle(I, XY)
print(f"\nsocle at m = <x, y> has dimension {S.dim}:")
for f in S.strs():
    print("  ", f)

dec = irreducible_decomposition(I, prune=True)
print(f"\nirreducible decomposition (certified: {dec.certified}):")
for c in dec.components:
    print("  ", ", ".join(c.ideal.to_strs()))

# one socle line at a time: alpha + lam*beta, for every lam in F_101
J = parse_ideal("ring x y; char 101; ideal x^2*y - x*y^2, x^3, y^3")
binomial_lines = 0
for lam in range(101):
    K = J + Ideal([J.ring.parse(f"x^2 + y^2 - x*y + {lam}*x^2*y")], J.ring)
    assert socle_dimension(K, XY) == 1
    binomial_lines += all(len(g.terms) <= 2 for g in K.groebner())
print(f"\nover F_101: 101 lines tried, {binomial_lines} give a binomial ideal")
