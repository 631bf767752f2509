//! Exact arithmetic for Casson-Gordon tau-signatures of twist knots and the
//! stable 4-genus bounds they imply.
//!
//! The twist knot with parameter `n` has a genus-one Seifert surface and
//! double branched cover of order `m = 4n + 1`. Gilmer's formula evaluates
//! the tau-signature at each character of the cover from Levine-Tristram
//! signatures of the surface's derived torus knot, and averaging those
//! values over the characters vanishing on a prime-index subgroup turns
//! them into a lower bound on the stable 4-genus. An upper bound of 1/2
//! comes from exhibiting a rank-two subgroup of the doubled Seifert lattice
//! with Gram matrix `[[0, 1], [0, c]]`, either constructed from a negative
//! Pell solution or found by a bounded search.
//!
//! Everything on the bound-producing path is computed over `BigInt` and
//! `BigRational`; floating point appears only in the optional numeric
//! cross-checks of signature computations.
//!
//! The `parallel` feature (on by default) runs table builds, survey sweeps,
//! and witness searches on a rayon pool; every entry point has a `_seq`
//! twin and produces identical results either way.

pub mod arith;
pub mod bounds;
pub mod pell;
pub mod seifert;
pub mod signatures;
pub mod subgroup;
pub mod tau;

pub use arith::{factorize, is_prime, Factorization, Rational};
pub use bounds::{
    bound_report, corollary_bound, g4_nk_bound, main_theorem_bound, murasugi_tristram_lower,
    subspace_sum_closed, subspace_sum_direct, survey_reports, survey_reports_seq, weakened_bound,
    BoundReport, BoundsError, GenericBoundInput, ParityCase, PrimeBound, ReportOptions,
    SubspaceSum,
};
pub use pell::{continued_fraction_sqrt, solve_negative_pell, ContinuedFraction, PellError, PellSolution};
pub use seifert::{IntVector, SeifertError, SeifertMatrix, TwistKnot};
pub use signatures::{
    lt_signature_generic, lt_signature_torus_2q, ordinary_signature, twist_lt_signature,
    RationalAngle, SignatureError, DEFAULT_TOLERANCE,
};
pub use subgroup::{
    doubled_pell_matrix, exhaustive_search, exhaustive_search_seq, pell_construction,
    upper_bound_verdict, SubgroupWitness, UpperBoundVerdict, WitnessSource,
};
pub use tau::{
    gilmer_formula, gilmer_tau, gilmer_tau_permissive, tau_table, tau_table_seq, tau_twist,
    Character, GilmerInput, GilmerValue, TauError, TauTable,
};
