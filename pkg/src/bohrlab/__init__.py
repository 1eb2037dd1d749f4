"""Numerical toolkit for mixed Bohr radii and unconditionality constants of
the monomial basis: exact index-set combinatorics, sparse homogeneous
polynomials, sup-norm estimation, closed-form analytic bounds, randomized
lower-bound witnesses, and bracket assembly."""

from .bohr import (
    RadiusBracket,
    WienerReport,
    bohr_1d_bracket,
    k_bracket,
    k_m_bracket,
    k_table,
    reduce_to_disk,
    wiener_check,
)
from .bounds import (
    ExponentPair,
    bayart_bound,
    chi_upper_small_pq,
    coeff_chi_upper_generic,
    conjugate,
    envelope_constant,
    inv,
    j_sum,
    j_sum_filtered,
    lempoly_rhs,
    min_power_log,
    rate,
    region_classify,
    transfer_lower_pq,
)
from .errors import BudgetExceededError
from .multiindex import (
    alpha_to_tuple,
    complement_card_bound,
    derived_set,
    enumerate_j,
    enumerate_lambda,
    enumerate_lambda_k,
    is_k_bounded,
    lambda_card,
    multiplicity,
    partition_shapes,
    tuple_to_alpha,
)
from .optimize import (
    NormEstimate,
    OptConfig,
    bohr_sum,
    dec_rearrange,
    id_norm_q_to_xinfty,
    majorant_sup,
    series_sup,
    split_factorize,
    sup_norm,
    x_infty_norm,
)
from .polynomial import (
    HomPoly,
    TruncatedSeries,
    moebius_series,
    poly_from_dict,
    poly_to_dict,
    random_series,
    series_from_dict,
    series_to_dict,
    sign_polynomial,
)
from .witness import (
    BoundBracket,
    SearchConfig,
    brute_chi,
    chi_bracket,
    chi_lower_flat,
    lempoly_check,
    sign_search,
)

__version__ = "0.1.0"
