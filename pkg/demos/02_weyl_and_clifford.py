# Weyl matrices, the symplectic form, and the order-3 Clifford unitaries
# whose eigenspaces carry the entropy minimizers.
import numpy as np

from sictool.clifford import (
    FAMILY_G,
    SL_MATRICES,
    ZAUNER,
    canonical_order3,
    eigenspaces,
    fixed_points,
    is_order3_matrix,
)
from sictool.wh_algebra import INDEX_PAIRS, TAU, max_abs, symplectic_form, weyl

p, q = (1, 2), (2, 2)
lhs = weyl(p) @ weyl(q)
rhs = TAU ** symplectic_form(p, q) * weyl((0, 1))
print("D_p D_q = tau^<p,q> D_(p+q):", max_abs(lhs - rhs))

# the family stabilizer fixes a line of the phase space
print("fixed points of G:", fixed_points(FAMILY_G))
print("fixed points of Zauner:", fixed_points(ZAUNER))

u = canonical_order3(ZAUNER, (0, 0)).unitary
print("U^3 = I:", max_abs(u @ u @ u - np.eye(3)))
es = eigenspaces(u)
print("eigenspace dims", es.dims, "split:", es.is_split)

# counting which (F, r) give a 1 + 2 split over all order-3 symplectic F
split = sum(
    eigenspaces(canonical_order3(f, r).unitary).is_split
    for f in SL_MATRICES if is_order3_matrix(f) for r in INDEX_PAIRS
)
print("split cases:", split)
