"""orthoplex: construction, analysis and classification of orthocentric
simplices in any dimension d >= 2.

The package parametrizes non-rectangular orthocentric simplices by the
barycentric coordinates of the orthocenter together with the obtuseness
(the constant pairwise inner product about the orthocenter), builds them
from Gram matrices, provides the special families (regular, kite,
rectangular, generalized-kite equiradial), and ships numerical
verification suites for the center-coincidence theorems.
"""

from .errors import (
    AdmissibilityError,
    DegenerateKiteError,
    DegenerateSimplexError,
    InputError,
    NotLiftableError,
    NotOrthocentricError,
    NotPSDError,
    NumericError,
    OrthoplexError,
    ParametrizationError,
    RectangularParamsError,
)
from .numerics import DEFAULT_POLICY, SymMatrix, TolerancePolicy, det_structured, gram_embed, sym_eigen
from .simplex import (
    Metrics,
    ShapeFlags,
    Simplex,
    dihedral_cosines,
    face,
    from_vertices,
    gram,
    metrics,
    shape_predicates,
    volume,
)
from .centers import (
    CenterReport,
    EulerLineData,
    FeuerbachSphere,
    center_report,
    centroid,
    circumcenter,
    euler_line,
    feuerbach_sphere,
    incenter,
    monge_point,
    orthocenter,
)
from .orthocentric import (
    ACUTE,
    OBTUSE,
    RECTANGULAR,
    AltitudeData,
    LambdaParams,
    OrthoGramForm,
    OrthoParams,
    circum_data,
    construct,
    edge_and_altitude_data,
    is_orthocentric,
    lambda_params,
    orthocentric_system_check,
    params_of,
    restrict_to_face,
    sample_params,
)
from .families import (
    EquiradialSolution,
    EquiradialSpec,
    KiteMetrics,
    KiteSpec,
    RectMetrics,
    RectSpec,
    RegularMetrics,
    equiradial_admissible,
    equiradial_general,
    equiradial_kite,
    kite,
    kite_metrics,
    lift_to_rectangular,
    rect_centers_distinct,
    rect_metrics,
    rectangular,
    regular,
    regular_metrics,
)
from .verify import SuiteConfig, SuiteResult, VerificationReport, run_all

__version__ = "0.1.0"
