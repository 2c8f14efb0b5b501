"""Certified evaluation of graph partition functions at complex parameters.

Approximate the independence polynomial (and, rescaled, the chromatic
polynomial) with a certified multiplicative error by truncating the Taylor
series of the log inside a zero-free disk, with coefficient computation that
stays polynomial on bounded-degree graphs and exact brute-force oracles that
verify every stage at desk scale.
"""

__version__ = "0.1.0"

from .certify import (
    RatioCertificate,
    certify_zero_free,
    family_root_survey,
    lambda_c,
    min_root_modulus,
    ratio,
    shearer_radius,
    zero_free_radius,
)
from .chromatic import (
    chromatic_interpolate,
    chromatic_poly,
    chromatic_radius_constant,
    chromatic_zero_survey,
    gk_condition_check,
    polymer_partition,
    polymer_weight,
    random_cluster_eval,
    tree_gen_fn,
)
from .coefficients import (
    compute_alpha,
    count_induced_connected,
    enumerate_connected_sets,
    newton_alpha_to_ps,
    newton_ps_to_alpha,
    power_sum_expansion,
    product_expand,
)
from .errors import (
    BudgetExceededError,
    GraphParseError,
    InternalConsistencyError,
    NumericsError,
    OutsideCertifiedRegionError,
)
from .graphs import (
    CanonicalKey,
    Graph,
    canonical_key,
    connected_components,
    generate,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_connected,
    max_degree,
    parse_edge_list,
    spanning_tree_count,
)
from .interpolation import (
    ApproxCertificate,
    LogTaylor,
    approx_independence,
    evaluate_truncated,
    log_taylor,
    series_exp,
    truncation_order,
)
from .multivariate import (
    MultiAffinePoly,
    multivariate_Z,
    schur_product,
    stability_probe,
    union_factorization_check,
)
from .multivariate import evaluate as evaluate_multivariate
from .oracles import (
    brute_force_ind,
    brute_force_independence_coeffs,
    exact_Z_eval,
    poly_roots,
)
