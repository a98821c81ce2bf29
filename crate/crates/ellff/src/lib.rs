//! ellff: exact L-functions of non-isotrivial elliptic curves over F_q(t).
//!
//! Everything here is exact integer arithmetic: point counts over the places
//! of P^1, logarithmic sums, L-coefficients via the Newton-style recursion,
//! the functional equation, and analytic ranks as the exact multiplicity of
//! the vanishing factor. No floating point touches a single invariant.

pub mod cli;
pub mod curve;
pub mod error;
pub mod experiments;
pub mod finite_field;
pub mod lfunction;
pub mod poly;
pub mod tables;

pub use curve::{
    canonical_nonsquare, make_curve, versal_curve, CurveModel, Decomposition, KodairaType,
    Place, ReductionInfo, ReductionType,
};
pub use error::{Error, Result};
pub use experiments::{
    emit, emit_signs, enumerate_family, named_curve, run_family, sign_stats, CurveId,
    DegreeStats, FamilyOpts, FamilySpec, RankReport, SignReport, TwistRecord,
};
pub use finite_field::{make_field, FieldCtx, FieldElem};
pub use lfunction::{
    analytic_rank, b_value, coeffs_from_logsums, complete_fe, compute_l, ComputeOpts,
    LPolynomial,
};
pub use poly::{
    coeff_list_string, enumerate_monic, jacobi_symbol, legendre_symbol, poly_from_str,
    rational_from_str, Poly, RationalFn,
};
pub use tables::{
    build_direct, cache_get_or_build, derive_pullback, derive_twist, CacheStore, EntryStatus,
    TableStrategy, TraceTable, TABLE_FORMAT,
};
