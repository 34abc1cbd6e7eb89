# The one-parameter family of qutrit SICs and what makes them SICs.
import numpy as np

from sictool import family_sic, verify_sic
from sictool.bloch_geometry import simplex_report

povm = family_sic(np.pi / 5)
print(povm.vectors.shape)  # nine unit vectors in C^3

# every pair of distinct vectors overlaps with |<a|b>|^2 = 1/4
ov = np.abs(povm.vectors.conj() @ povm.vectors.T) ** 2
print(np.round(ov, 12))

report = verify_sic(povm)
print(report.passed, report.max_overlap_deviation, report.max_identity_residual)

# in the real Bloch picture the nine directions form a regular simplex in R^8
geo = simplex_report(povm)
print("max |u_i.u_j + 1/8| =", geo.max_dot_deviation)
print("centroid norm      =", geo.centroid_norm)
print("frame constant     =", geo.frame_constant)  # 9/8 for a tight frame
