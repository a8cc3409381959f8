"""The torus acting on P1 x P1 splits K_{p,1} by bidegree.

Each grid cell is the dimension of one weight space.  At a = b = 3 and p = 11
the 22 syzygies form a cross: two families of 11 that meet in the middle.
"""

from segre_syzygies import bidegree_table, segre
from segre_syzygies.grids import render_ascii, render_json

cross = bidegree_table(segre(3, 3), 11, 1)
print(render_ascii(cross))
print()

# a = b = 2, p = 5: a diamond with 4 in the middle
print(render_ascii(bidegree_table(segre(2, 2), 5, 1)))
print()

# at a = 3, b = 4 the cross thickens, and one step further only a single line
# of 15 is left; the rotated layout puts u1 down the rows
print(render_ascii(bidegree_table(segre(3, 4), 14, 1), rotate=True))
print()
print(render_ascii(bidegree_table(segre(3, 4), 15, 1), rotate=True, pad=1))
print()

# machine readable form, stable under re-serialisation
print(render_json(bidegree_table(segre(2, 2), 5, 1)))
