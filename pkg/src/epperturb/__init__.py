"""Strong-coupling perturbation theory near exceptional points.

Benchmark PT-symmetric tridiagonal matrices, their Jordan chains and
transition matrices, the singular (fractional-power) perturbation engine
for a perturbed Jordan block, physical-domain scanning with metric
construction, and pseudospectrum grids.
"""

from .domain import (
    DomainScan,
    MetricResult,
    PseudospectrumGrid,
    SpectrumResult,
    boundary_locate,
    is_physical,
    metric,
    pseudospectrum,
    scan,
    spectrum,
)
from .hamiltonians import (
    HamiltonianSpec,
    PathParams,
    build,
    build_on_path,
    ep_couplings,
    path_couplings,
)
from .jordan import (
    JordanForm,
    cs_fixture,
    extract_perturbation,
    fixture_Q,
    jordan_block,
    jordan_chain,
)
from .kernels import BACKEND
from .numerics import char_poly, eigenpairs, min_singular_value, poly_roots, solve_linear
from .puiseux import (
    PerturbedJordanProblem,
    SecularData,
    analyze,
    classify_roots,
    leading_order_roots,
    secular_polynomial,
    secular_value,
    wavefunction,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainScan",
    "HamiltonianSpec",
    "JordanForm",
    "MetricResult",
    "PathParams",
    "PerturbedJordanProblem",
    "PseudospectrumGrid",
    "SecularData",
    "SpectrumResult",
    "analyze",
    "boundary_locate",
    "build",
    "build_on_path",
    "char_poly",
    "classify_roots",
    "cs_fixture",
    "eigenpairs",
    "ep_couplings",
    "extract_perturbation",
    "fixture_Q",
    "is_physical",
    "jordan_block",
    "jordan_chain",
    "leading_order_roots",
    "metric",
    "min_singular_value",
    "path_couplings",
    "poly_roots",
    "pseudospectrum",
    "scan",
    "secular_polynomial",
    "secular_value",
    "solve_linear",
    "spectrum",
    "wavefunction",
]
