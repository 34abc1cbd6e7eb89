# At t = 0 and t = 2pi/9 the minimizers jump from 3 to 12, and they sort
# into four mutually unbiased bases.
import numpy as np

from sictool import family_sic
from sictool.minimizers import classify_minimizers, group_into_orbits, numeric_min

for t in (0.0, 2 * np.pi / 9, np.pi / 5):
    povm = family_sic(t)
    res = numeric_min(povm, restarts=2000, seed=1)
    ms = classify_minimizers(res.states, povm)
    orbits = group_into_orbits(res.states)
    print(f"t = {t:.4f}: {len(res.states)} minimizers, {len(ms.bases)} bases, "
          f"all MUB: {ms.all_mutually_unbiased}, {len(orbits)} covariant ensembles")
