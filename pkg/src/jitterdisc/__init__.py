"""Jittered sampling point sets and their star discrepancy.

Generators for stratified (jittered, half-cube), uniform, and Latin
hypercube point sets; exact, heuristic, and cover-certified star
discrepancy; witness box constructions; binomial-maximum tail bounds
with exact oracles; closed-form bound curves; and a replication sweep
harness with CSV output.
"""

from .binom import (
    MaxBinParams,
    alpha,
    applicability_failure,
    exact_binom_cdf,
    exact_binom_pmf,
    exact_max_binomial_expect,
    exact_max_exceed_prob,
    expect_bound,
    pointwise_pmf_bound,
    prob_bound,
    tail_bound_eq_bino,
    tail_bound_raw,
)
from .bounds import (
    BoundValue,
    Formula,
    lower_main_bound,
    mc_reference,
    smallm_lower_bound,
    upper_thm_bound,
)
from .discrepancy import (
    DEFAULT_COVER_BUDGET,
    DEFAULT_EXACT_BUDGET,
    AxisRect,
    CoverSpec,
    DiscrepancyEstimate,
    Kind,
    Side,
    Witness,
    exact_feasible,
    normalized,
    signed_disc,
    star_disc_certified_upper,
    star_disc_exact,
    star_disc_heuristic,
)
from .errors import (
    ApplicabilityError,
    CapacityError,
    CoverBudgetError,
    ExactInfeasibleError,
    JitterdiscError,
    ParseError,
    ValidationError,
)
from .harness import (
    CollapseReport,
    KHReport,
    SweepConfig,
    SweepRecord,
    SweepRun,
    collapse_analysis,
    collapse_ratio,
    kh_demo,
    parse_config,
    product_integrand_variation,
    read_sweep_csv,
    run_sweep,
    write_sweep_csv,
)
from .io import read_point_set, write_point_set
from .sampler import (
    HARD_CAP,
    CellIndex,
    FullGridSpec,
    HalfCubeSpec,
    PointSet,
    cell_of,
    generate_half_cube,
    generate_jittered,
    generate_lhs,
    generate_uniform,
)
from .witness import (
    WitnessResult,
    ZeroTestReport,
    ZeroTestResult,
    discrete_slabs,
    grid_resolution,
    mean_disc_is_zero_test,
    witness_construct,
    witness_discrete,
    witness_smallm,
)

__version__ = "0.1.0"
