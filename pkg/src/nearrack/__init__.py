"""
Finite set-theoretic Yang-Baxter solutions, near-rack twists, and Nichols
algebra diagnostics.

The pipeline: build or enumerate finite solutions (``solutions``), attach
coefficient tables and solve their multiplicative braid constraints
(``braided`` + ``multsolve``), search for twist scalars turning a near-rack
braiding into a rack-type one and certify the result (``tequiv``), compute
graded dimensions of the associated Nichols algebras (``nichols``), and
summarize diagonal braidings as labeled diagrams (``dynkin``).
"""

from .permkit import (
    Permutation,
    PermutationError,
    compose,
    from_cycles,
    identity,
    involutions,
    parse_cycles,
    print_cycles,
)
from .scalars import CycScalar, Monomial, ScalarError, evaluate, parse_monomial, zeta
from .multsolve import (
    InconsistentSystemError,
    MultSystem,
    SNFResult,
    SolutionFamily,
    is_identity_modulo,
    smith_normal_form,
    solve,
)
from .solutions import (
    NearRackSolution,
    Rack,
    Report,
    SetSolution,
    SolutionError,
    affine_rack,
    conjugation_rack,
    derived_solution,
    dihedral_rack,
    enum_near_racks,
    involutive_near_racks,
    isomorphic,
    k_family,
    metahomo_solution,
    n_family,
    near_rack_from,
    trivial_rack,
    verify,
)
from .braided import (
    BraidedError,
    BraidedSpace,
    MonomialOperator,
    braid_check,
    braiding_operator,
    is_diagonal,
    twist,
    ybe_coefficient_system,
)
from .nichols import (
    BudgetError,
    HilbertData,
    SymmetrizerPlan,
    compare_graded,
    graded_dims,
    symmetrizer,
)
from .tequiv import (
    TEquivCertificate,
    TEquivObstruction,
    instantiate_certificate,
    involutive_z,
    solve_tequiv,
    verify_certificate,
    z_system,
)
from .dynkin import GDD, TypeLabel, check_tau_symmetry, classify, gdd, render

__version__ = "0.1.0"
