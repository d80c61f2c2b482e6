//! Certified evaluation of the counting bounds on fixed subsets and of the
//! closed-form inequalities built from them.

mod expr;
mod functions;
mod interval;
mod numtheory;
mod registry;

pub use expr::{BoundExpression, BoundValue, ExponentExpr, ScaledPower, Term};
pub use functions::{
    b3_log2, class_size_p_ij, cutoff_pairs, cutoff_wreath, exact_sqrt, f0, f_double_prime, f_p_ij,
    f_prime, f_total, factorial, falling_factorial, fixed_point_envelope, g_double_prime, g_i_p,
    g_prime, g_total, pair_classes, wreath_classes,
};
pub use interval::{BinaryFloat, Interval};
pub use numtheory::{
    agl_order, gaussian_binomial, gl_order, perfect_power, prime_form_primes,
    prime_form_solutions, prime_power, primes_in, sp_order, stirling_check, StirlingReport,
};
pub use registry::{
    check_inequality, entry, scan_parameters, scan_threshold, sides, wreath_bound_log2, Branch,
    ExternalConstants, InequalityVerdict, RegistryEntry, ScanReport, Sides, AUT_G2_3,
    AUT_POMEGA7_3, AUT_HS, REGISTRY,
};

/// Working precisions tried in turn, in bits after the binary point.
pub const PRECISION_LADDER: [u32; 3] = [128, 256, 1024];
