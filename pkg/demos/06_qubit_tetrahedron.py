# Same machinery in d = 2: the tetrahedral SIC has minimum entropy ln 3,
# reached at the four states antipodal to the tetrahedron vertices.
import numpy as np

from sictool.minimizers import numeric_min, qubit_bloch, tetrahedron_sic

tet = tetrahedron_sic()
res = numeric_min(tet, restarts=200, seed=0)
print(res.min_entropy, np.log(3))
for s in res.states:
    print(np.round(qubit_bloch(s), 6))
print("vertices:")
print(np.round([qubit_bloch(v) for v in tet.vectors], 6))
