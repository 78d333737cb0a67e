"""Per-observer descriptions of open stochastic systems in special relativity.

Observers in relative motion slice spacetime differently, so they disagree
about which stochastic interventions have already happened. ``openrel``
computes what each observer assigns (a two-spin state vector, or a
Liouville support on the two-particle energy plane) and checks whether any
single map relates those assignments across all outcome branches.
"""

from .bell import AnalyzerSettings, CorrelationEstimate, chsh
from .checker import (
    CheckVerdict,
    DescriptionTable,
    build_classical_table,
    build_quantum_table,
    check_function_existence,
    check_table,
    fit_best_linear_map,
)
from .classical import (
    BouncerParams,
    LiouvilleSupport,
    MeasurementRecord,
    collapse,
    kicked_energy,
    rest_energy,
    support_on_slice,
)
from .quantum import ObserverSlice, OutcomeBranch, TwoSpinState, description_on_slice, prepare_initial
from .spacetime import CausalClass, FourVector, SpacelikeSlice, boost, causal_relation, slice_time

__version__ = "0.1.0"
