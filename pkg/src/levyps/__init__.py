"""Truncated realizations of Banach-valued Levy processes and the
verification suites for their product-system units."""

from .config import ExperimentConfig, default_config, effective_config_text, load_config, parse_config
from .errors import CapacityError, ConfigError, TruncationError
from .functionals import FiniteFunctional
from .hermite import (
    HermiteSystem,
    Whitener,
    build_hermite_system,
    covariance_matrix,
    generating_exponential,
    generating_series,
    hermite,
    hermite_product,
    multi_indices,
    reconstruct_hermite,
    whitener,
)
from .models import (
    BernoulliCompound,
    GaussianDiagonal,
    LpCompoundPoisson,
    SkellamFamily,
    characteristic_fn,
    drift_vector,
    levy_exponent,
    truncation,
    variance_vector,
)
from .density import ResidualCurve, exponential_density_residual, lattice_frequencies, uniform_ladder
from .orthogonality import OrthogonalityResult, centered_indicator_values, orthogonality_check
from .report import CheckRecord, Report
from .sampling import (
    PathEnsemble,
    TimeGrid,
    empirical_charfn,
    read_binary,
    read_csv,
    sample_paths,
    shifted_view,
    write_binary,
    write_csv,
)
from .skellam import (
    DiscriminationResult,
    SkellamParams,
    coordinate_params,
    discriminate,
    prob_zero,
    psi_lambda,
    skellam_pmf,
    unit_inner_product,
)
from .suites import SUITES, canonical_models, run_suites
from .units import (
    CameronMartinVector,
    ExponentialUnit,
    GaussianUnit,
    ParityUnit,
    eval_unit,
    factorization_check,
    gaussian_unit_norm,
    martingale_test,
    multiplication_isometry_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
