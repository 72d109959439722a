"""Quantum particle statistics on multi-mode Fock spaces.

Exact classification of statistics labels, Schur-sector decompositions of
the occupation basis, explicit sector representations with interference
simulation, and grand-canonical thermodynamics of the corresponding ideal
gases.  All classification decisions are made in exact integer/rational
arithmetic; floating point enters only for numeric evaluation, matrices,
and thermodynamics.
"""

from .classify import (
    ClassificationReport,
    Kind,
    StatisticsSpec,
    TotalPositivityResult,
    build_polynomial,
    character_coefficients,
    excitation_spectrum,
    is_irreducible_statistics,
    is_valid_statistics,
    max_occupation,
    single_mode_character,
    totally_positive_upto,
)
from .dynamics import (
    AmplitudeVector,
    SectorRep,
    beamsplitter,
    bosonic_rep,
    character_trace,
    detection_probabilities,
    evolve,
    fermionic_rep,
    haar_unitary,
    permanent,
    sector_rep,
)
from .errors import (
    DivergenceError,
    FockstatError,
    InsufficientHorizonError,
    InvalidStatisticsError,
    ResourceGuardError,
    UnsupportedStatisticsError,
)
from .fock import (
    LabeledState,
    SectorDecomposition,
    decompose,
    enumerate_basis,
    excitation_number,
    excitation_of,
    from_labeled,
    order_one_sector,
    sector_states,
    state_energy,
    to_labeled,
)
from .symfunc import (
    IntegerSeries,
    Partition,
    enumerate_partitions,
    schur_dimension,
    schur_eval,
    schur_expand_oracle,
    schur_expand_product,
    schur_monomials,
    toeplitz_minor,
)
from .thermo import (
    EnsembleParams,
    SweepRow,
    ThermoReport,
    canonical_logZ,
    grand_logZ,
    mean_occupation,
    solve_mu,
    sweep,
    thermo_report,
)

__version__ = "0.1.0"
