//! Exact symbolic dynamics for inverse limits of tentish dendrite maps.
//!
//! Points are represented by their itineraries over `{*, 1, 2}`: forward
//! sequences in [`ForwardSeq`], backward itineraries in [`BackSeq`] and
//! two-sided points in [`BiSeq`]. Every sequence is eventually periodic and
//! kept in a canonical form, so each decision procedure here is exact.

pub mod arc;
pub mod backward;
pub mod cycle;
pub mod cylinder;
pub mod discrepancy;
mod error;
pub mod figure;
pub mod fold;
pub mod forward;
pub mod kneading;
pub mod literal;
pub mod periodic;
pub mod ray;
pub mod symbol;
pub mod theorems;

pub use arc::same_arc_component;
pub use backward::{BackSeq, BiSeq};
pub use cylinder::{
    beta, biseq_admissible, boundary_point, in_cylinder, match_depth, project, BetaResult,
};
pub use discrepancy::{discrepancies, DiscrepancySet};
pub use error::{FoldError, KneadingError, MuError, ParseError, SeqError};
pub use fold::{fold_apply, FlipChoice};
pub use forward::{approx, first_discrepancy, shift, Depth, ForwardSeq};
pub use kneading::{is_acceptable, is_admissible, mu_point, KneadingSeq};
pub use literal::{parse_literal, Literal};
pub use ray::{
    c_class, certify_self_similar, check_asymptotic, schedule_apply, AsymptoticReport,
    FoldSchedule, FoldSpec, FoldingPattern, RayError, SelfSimilarCertificate, Verdict,
};
pub use symbol::{Symbol, Word};
