"""Where the upper bound on kappa_{p,1} comes from.

R_{a,b} is a quotient of the scroll ring of P^a x P^1, whose modules have
explicit Eagon-Northcott resolutions.  A short resolution of R_{a,b} over the
scroll ring, together with chain maps between those resolutions, assembles
into a (non-minimal) free resolution by iterated mapping cones.  Counting the
summands that can contribute to K_{p,1} gives the bound.  Each ingredient is
checked here slice by slice.
"""

from segre_syzygies.resolutions import (ENResolution, mapping_cone_ledger,
                                        verify_chain_map_squares, verify_en_exactness,
                                        verify_kernel_lemma, verify_relative_exactness)

# Eagon-Northcott resolution of the scroll with invariants (2, 3, 3)
en = ENResolution((2, 3, 3), 0)
print("ranks:", [en.position(k).rank for k in range(en.length)])
rep = verify_en_exactness((2, 3, 3), 0, 2)
print(rep.format().splitlines()[0])

# the same for a scroll module M_c with c > 0: the quadratic map sits at k = c+1
print(verify_en_exactness((1, 2), 1, 3).format().splitlines()[0])

# R_{3,3} over the scroll ring
print(verify_relative_exactness(3, 3, 4).format().splitlines()[0])

# the horizontal chain maps commute with the differentials, as identities of
# maps between free modules; small degree slices are compared as matrices too
rep = verify_chain_map_squares(3, 3, 2, 2)
print(rep.format().splitlines()[0])

# what is left of the cone at position p in degree p + 1
led = mapping_cone_ledger(3, 3)
print(led.format().split("C_2:")[0].rstrip())
for p in (11, 12):
    print(f"p={p}: kappa_p,1 <= {led.first_row_bound(p)}")

# the extra p at p = ab + a - 1 is the kernel of one explicit map
print(verify_kernel_lemma(3, 3).format())
