"""Exact-arithmetic toolkit for semiorthogonal decomposition data on small
Grassmannians and flag varieties: Schur/Weyl modules, chart cocycles,
truncated Cech cohomology of Hom-bundles, the diagonal's Koszul complex,
and component catalogs."""

from .catalog import (
    SodCatalogEntry,
    flag_sod,
    grassmann_sod,
    severi_brauer_multiplicities,
    severi_brauer_sod,
    validate_catalog,
)
from .cech import (
    ExceptionalityReport,
    RHomEntry,
    RHomTable,
    boundary_squared_is_zero,
    cech_cohomology_dims,
    exceptionality_report,
    rhom_cell,
    rhom_table,
    truncation_euler_profile,
)
from .charts import (
    Atlas,
    BundleCocycle,
    Chart,
    atlas,
    build_chart,
    dual_cocycle,
    hom_cocycle,
    quotient_cocycle,
    tautological_cocycle,
    tensor_cocycle,
    trivial_cocycle,
    verify_cocycle,
    weyl_bundle,
)
from .diagonal import (
    KoszulSampleReport,
    ProductChart,
    diagonal_section,
    koszul_boundary_matrices,
    koszul_d2_is_zero,
    koszul_homology_at_point,
    points_equal,
    same_chart_ideal_check,
    sample_koszul_checks,
    wedge_box_filtration,
)
from .errors import (
    BadIndexSet,
    ChartMismatch,
    DenominatorViolation,
    InvalidDims,
    NoSolutionError,
    RankMismatch,
    SodkitError,
)
from .partitions import (
    Order,
    compare,
    count_ssyt,
    degree,
    enumerate_box,
    enumerate_flag_tuples,
    flag_tuple_count,
    hook_content_count,
    transpose,
)
from .rings import GF, QQ, ZZ, RingSpec, ring_from_label
from .schur_weyl import (
    DualityReport,
    FiltrationReport,
    cauchy_filtration,
    cauchy_pairing,
    check_duality,
    schur_module,
    schur_on_morphism,
    weyl_module,
    weyl_on_morphism,
)

__version__ = "0.1.0"
