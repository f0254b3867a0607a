"""Braid-group representations from q-deformed Dirac Hamiltonians.

Builds the normalized Dirac Hamiltonian, its q-deformation
``R(theta) = exp(i theta H / 2)``, the anyon generators ``a`` and ``b``, and
verifies numerically that the braid partner of the Dirac Hamiltonian is a
normalized Bogoliubov-type Hamiltonian.
"""

from .matrix_core import (
    Classification,
    DimensionError,
    OrderInfo,
    PreconditionError,
    Tolerance,
    classify,
    exp_involutory,
    frobenius_distance,
    kron,
    kron_factor_residuals,
    matrix_order,
)
from .hamiltonians import (
    BogoliubovParams,
    DiracParams,
    DomainError,
    Momentum,
    NormalizedHamiltonian,
    bogoliubov_hamiltonian,
    bogoliubov_match,
    derived_hamiltonian,
    dirac_hamiltonian,
    dirac_matrices,
)
from .braid import (
    BraidPair,
    BraidWord,
    BraidWordSyntaxError,
    SolverConfig,
    SolverResult,
    anyon_a,
    anyon_b,
    check_braid_relation,
    check_dirac_game_rule,
    evaluate_word,
    q_deform,
    solve_b_given_a,
)
from .pipeline import (
    DerivationReport,
    UnsupportedAngleError,
    build_V,
    check_diagonalization,
    run_derivation,
    run_sweep,
)

__version__ = "0.1.0"
