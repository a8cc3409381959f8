"""Betti tables of P1 x P1 embedded by bidegree (a, b).

The coordinate ring R_{a,b} is spanned by the lattice points of the dilated
rectangles [0, na] x [0, nb].  kappa_{p,q} is the dimension of the middle
homology of a Koszul complex, and everything below is exact linear algebra
over GF(32003).
"""

from segre_syzygies import (KoszulEngine, closed_form_a2, closed_form_first_row,
                            full_betti_table, segre)

# a = 1: the quadric surface.  One quadric, nothing else.
print(full_betti_table(segre(1, 1)).format())
print()

# a = 2 has a closed form for the whole table; compare entry by entry.
table = full_betti_table(segre(2, 2))
print(table.format())
ok = all(k == closed_form_a2(2, p, q) for (p, q), k in table.entries.items())
print("matches the a = 2 closed form:", ok)
print()

# For 3 <= a <= b the first row ends at p = ab + b - 1, and from p = ab + a - 1
# on its values are p C((a+1)b, p+1), plus p exactly at p = ab + a - 1.
engine = KoszulEngine()
for a, b in [(3, 3), (3, 4)]:
    start = a * b + a - 1
    for p in range(start, a * b + b + 1):
        k = engine.betti_number(segre(a, b), p, 1)
        print(f"a={a} b={b} p={p}: kappa={k:4d}  closed form={closed_form_first_row(a, b, p)}")

# Which route did the engine take?  It estimates the elimination cost of the
# strand itself, of its dual strand over the canonical module and of the other
# strands of the same degree (Euler characteristic), and takes the cheapest.
print("route for (3,4), p=14:", engine.choose_method(segre(3, 4), 14, 1))
