# Minimum outcome entropy, three independent ways.
import numpy as np

from sictool import family_sic
from sictool.info_measures import shannon_entropy
from sictool.minimizers import (
    algebraic_minimizers,
    dependent_triples,
    geometric_minimizers,
    numeric_min,
)
from sictool.sic import probabilities

t = np.pi / 5
povm = family_sic(t)

# geometric: a state orthogonal to three linearly dependent SIC vectors
trips = dependent_triples(povm)
print(len(trips), "dependent triples, e.g.", trips[0].indices)
geo = geometric_minimizers(povm)
print("geometric:", geo.entropies)

# algebraic: eigenvectors of a Clifford unitary stabilizing the fiducial
alg = algebraic_minimizers(t)
print("algebraic:", alg.entropies)

# numeric: multistart descent on the chart of CP^2
num = numeric_min(povm, restarts=200, seed=42)
print("numeric:", num.min_entropy, "with", len(num.states), "minimizers")
print("ln 6   =", np.log(6))

# a minimizer sees six outcomes with probability 1/6 and three with zero
print(np.round(probabilities(num.states[0], povm), 12))
print(shannon_entropy(probabilities(num.states[0], povm)))
