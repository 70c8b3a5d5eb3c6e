"""Exact eigenfunctions of spiked harmonic oscillators via intertwining operators."""
from .exactnum import PiScalar, sqrt_pi_digits, to_decimal
from .laurent import LaurentSeries, monomial
from .measure import (
    LINEAR,
    NO_CONSISTENT_PATTERN,
    GramReport,
    MeasureSpec,
    NonIntegrable,
    bracket_normalized,
    bracket_raw,
    degeneracy,
    even_rule,
    gram,
    is_physical,
    level_states,
    moment,
    physical_pattern,
    quadrature_oracle,
    radial,
)
from .operators import (
    StateLabel,
    a,
    a_dag,
    b,
    b_dag,
    energy,
    hamiltonian_apply,
    ladder_dag,
    twine_dag,
    wavefunction,
    wavefunctions,
)

__version__ = "0.1.0"
