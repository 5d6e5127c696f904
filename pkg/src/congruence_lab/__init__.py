"""Exact counting for binary quadratic congruences, with error envelopes,
quadratic Gauss sums, sawtooth approximations, averaged coefficient
families, and almost-prime point searches on a sextic del Pezzo surface."""

from .arith import (
    Factorization,
    arith_function,
    big_omega,
    divisors,
    factorize,
    is_prime,
    jacobi,
    little_omega,
    log1n,
    mobius,
    mod_inv,
    phi,
    phi_star,
    sigma_half_inv,
    tau,
    unit_symbols,
)
from .averaged import (
    AveragedFamily,
    AveragedReport,
    FamilyBounds,
    affine_in_y_bounds,
    avg_report,
    constant_bounds,
    delta_H,
    dominance_report,
    error_budget,
    main_term as averaged_main_term,
    s_exact,
    suggest_H,
    unit_disc_point,
)
from .congruence import (
    AffineBoundary,
    BoundarySpec,
    CongruenceInstance,
    CountReport,
    Interval,
    affine_bounds,
    bilinear_jacobi,
    boundary_report,
    box_bounds,
    box_report,
    count_boundaries,
    count_exact,
    count_exact_naive,
    error_envelope,
    main_term,
    main_term_boundaries,
    scan_boxes,
)
from .dp6 import (
    BETA_3,
    GrowthRow,
    PointRecord,
    SieveSequence,
    SpecialPoint,
    SurfacePoint,
    TorsorPoint,
    build_sieve_sequence,
    enumerate_lower_bound_points,
    icbrt,
    l_t_count,
    m_t_growth,
    pi_map,
    prime_window,
    rho,
    rho_oracle_prime,
    sieve_condition_report,
    sieve_threshold,
    special_to_torsor,
    sum_over_d,
)
from .gausssum import (
    GaussSumValue,
    gauss_brute,
    gauss_closed,
    reciprocity_check,
)
from .sawtooth import (
    VaalerPolynomial,
    fejer_majorant,
    psi,
    psi_fourier,
    vaaler_check,
    vaaler_polynomial,
)

__version__ = "0.1.0"
