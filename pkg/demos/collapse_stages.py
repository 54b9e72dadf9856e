"""Iterated soccular collapse on a staircase with several key witnesses.

Each stage joins classes that every variable sends to the same place;
the process stops at the soccular closure, which is also computed
directly by grouping classes with equal colon sets.
"""

from binoc import iterated_collapses, localize, parse_ideal, soccular_closure
from binoc.soccular import colon_set_labels

I = parse_ideal("ring x y; char 0; ideal x^3 - x^2*y, x^2*y - x*y^2, x*y^3 - y^4, x^5")
view = localize(I, (0, 1))
C = view.congruence()


def show(S):
    groups = [" ~ ".join(view.label(lab) for lab, _ in mem) for mem in S.members]
    print("  classes:", " | ".join(groups))
    pairs = [f"({S.label(u)}, {S.label(a)})" for u, a, _ in S.key_pairs()]
    print("  key pairs:", ", ".join(pairs) or "none")


stages = iterated_collapses(C)
for k, S in enumerate(stages):
    print(f"stage {k}:")
    show(S)

print("\ncolon sets (w : q) in the original congruence:")
for u in range(C.size):
    print(f"  {view.label(C.labels[u]):>6}: {', '.join(colon_set_labels(C, u))}")

closure = soccular_closure(C, cross_check=True)
print(f"\nclosure by colon sets matches stage {len(stages) - 1}: {closure.same_relation(stages[-1])}")
