"""Writing the syzygies at p = ab + a - 1 down.

Each expression lives in Lambda^{p-1} V (x) S^2 V: a wedge of p-1 lattice
points tensored with a binomial quadric vanishing on the surface.  One family
moves points up by (0,1), the other right by (1,0).  Being killed by the
Koszul map into Lambda^{p-2} V (x) S^3 V makes each one a syzygy; counting the
rank of the whole family recovers kappa_{p,1}.
"""

from segre_syzygies import betti_number, segre
from segre_syzygies.cocycles import (QuadricIdealBasis, claim_witness_check, cocycle_horizontal,
                                     horizontal_family, independence_and_count, vertical_family,
                                     verify_cocycle)

a = b = 3
p = a * b + a - 1

e = cocycle_horizontal(a, b, 2)
print(f"horizontal j=2: {len(e.terms)} terms in bidegree {tuple(e.bidegree)}")
(w, quad), coeff = sorted(e.terms.items())[0]
print("first term:", coeff, "*", " ^ ".join(f"v{P}" for P in w), "(x)", f"v{quad[0]} v{quad[1]}")

ideal = QuadricIdealBasis(a, b)
print("dim of the quadrics through the surface:", ideal.dim)
vert, hor = list(vertical_family(a, b)), list(horizontal_family(a, b))
print("all cocycles:", all(verify_cocycle(x, ideal=ideal) for x in vert + hor))
print("flipping one sign breaks it:", not verify_cocycle(e.corrupted(), ideal=ideal))

# the horizontal family has terms with a full column of points, the vertical
# one never does; that keeps the two apart
print("separating terms:", all(claim_witness_check(a, b, j, vertical=vert) for j in range(p)))

print(independence_and_count(a, b).format())
print("kappa from the Koszul engine:", betti_number(segre(a, b), p, 1))
