"""Weyl-Heisenberg SIC-POVMs in dimension 3: entropy minimizers and informational power."""

from .clifford import (
    FAMILY_G,
    ZAUNER,
    EslMatrix,
    canonical_order3,
    clifford_unitary,
    conjugate_to_zauner,
    eigenspaces,
    fixed_points,
    metaplectic,
)
from .info_measures import (
    Ensemble,
    covariant_ensemble,
    hermite_certificate,
    holevo_chi,
    informational_power,
    mutual_information,
    relative_entropy,
    renyi_entropy,
    shannon_entropy,
    tsallis_entropy,
)
from .minimizers import (
    algebraic_minimizers,
    classify_minimizers,
    covariant_ensembles,
    dependent_triples,
    numeric_min,
    orthogonal_state,
    tetrahedron_sic,
)
from .sic import SicPovm, family_sic, fiducial, orbit, probabilities, verify_sic
from .wh_algebra import INDEX_PAIRS, IndexPair, index_pair, symplectic_form, weyl

__version__ = "0.1.0"
