# Informational power of the SIC and the Hermite certificate for ln 6.
import numpy as np

from sictool import family_sic
from sictool.info_measures import (
    covariant_ensemble,
    hermite_certificate,
    informational_power,
    mutual_information,
)
from sictool.sic import random_pure_state

povm = family_sic(0.3)
power = informational_power(povm)
print("W =", power.value, " ln(3/2) =", np.log(1.5))

# any orbit is a valid ensemble; the minimizer's orbit is the best one
rng = np.random.default_rng(7)
print("random orbit:", mutual_information(covariant_ensemble(random_pure_state(rng)), povm))
print("best orbit:  ", mutual_information(power.ensemble, povm))

cert = hermite_certificate()
print("coefficients", cert.coefficients)
print("bound", cert.bound, "grid margin", cert.grid_margin)
