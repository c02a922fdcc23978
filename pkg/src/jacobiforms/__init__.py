"""Fourier expansions of Eisenstein and Poincare series for Jacobi forms of
lattice index: exact rational coefficients for the trivial Eisenstein series,
truncated-series numerics for the rest, and the Weil/Schroedinger averaging
relations connecting them.
"""

from .eisenstein import (
    CoefficientValue,
    EisensteinSpec,
    eisenstein_coefficient_numeric,
    eisenstein_expansion,
    singular_term,
    theta_coefficients,
    trivial_coefficient_exact,
    trivial_coefficient_series,
)
from .errors import (
    ComputationDomainError,
    ConvergenceDomainError,
    JacobiFormError,
    OutOfRangeError,
    ResourceLimitError,
    TailTooLargeError,
    ValidationError,
)
from .expsums import (
    RepCountKey,
    dirichlet_series_partial,
    eisenstein_lattice_sum,
    kloosterman,
    kloosterman_decomposition,
    local_factor,
    poincare_lattice_sum,
    rep_count,
)
from .lattice import (
    DiscElement,
    EvenLattice,
    FourierExpansion,
    FourierIndex,
    beta_values,
    coset_points,
    discriminant_group,
    enumerate_supp,
    isotropy_set,
    lattice_character,
    load_lattice_json,
    make_lattice,
)
from .numbertheory import (
    QuadChar,
    bernoulli,
    bernoulli_poly,
    bessel_j,
    dirichlet_L_nonpositive,
    fundamental_decomposition,
    gamma_half,
    kronecker,
    moebius,
    sigma_twisted,
)
from .poincare import (
    PeterssonConstant,
    PoincareSpec,
    petersson_constant,
    poincare_coefficient,
    poincare_expansion,
)
from .weilrep import (
    OrbitRelation,
    RepMatrix,
    averaging_matrix,
    conjugation_check,
    nontrivial_from_trivial,
    orbit_relation,
    rho_generator,
    rho_word,
    schrodinger_matrix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
