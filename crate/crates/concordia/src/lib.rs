//! Exact symbolic and numeric invariants for knot concordance.
//!
//! The crate has two halves. The symbolic half implements arithmetic in
//! finitely generated free groups, the right-multiplied free differential
//! calculus, group rings of derived-series quotients `F/F^(k)` with a
//! decidable word problem, the recursive pair sets `P_n`, and the
//! certificate-producing special-pair selection for concrete solution
//! maps. The numeric half computes Alexander polynomials, Levine-Tristram
//! signatures, Arf invariants, and the infinite-cyclic von Neumann
//! rho-invariant from Seifert matrices and Hermitian Laurent forms, and an
//! infection planner assembles the resulting numeric obstruction data
//! against a user-supplied Cheeger-Gromov bound.

pub mod certificate;
pub mod error;
pub mod fox;
pub mod laurent;
pub mod limits;
mod matrixdet;
pub mod pairs;
pub mod planner;
pub mod parse;
pub mod seifert;
pub mod signature;
pub mod special;
mod sturm;
pub mod words;

pub use certificate::{verify_certificate, CertificateError};
pub use error::{CapError, FoxError, KnotError, ParseError, WordError};
pub use fox::{FoxEngine, FoxVector, Level, QuotientElement, RingElem};
pub use laurent::LaurentPoly;
pub use limits::Limits;
pub use pairs::{axes, generate_pair_set, PairSet, WordPair};
pub use parse::{parse_ring_terms, parse_word};
pub use planner::{obstruction_check, plan, rho_difference, InfectionPlan, ObstructionVerdict, PlanError, RhoLedger};
pub use seifert::SeifertMatrix;
pub use signature::{
    lambda_j, lambda_j_mirror, CirclePoint, HermitianLaurentMatrix, JumpAngle, RhoValue,
    SignatureProfile,
};
pub use special::{
    check_condition1, check_relation_coordinate, good_pair_check, select_special_pair, CaseId,
    GoodPairVerdict, Reordering, SolutionMap, SpecialPairCertificate, SpecialPairError,
    SurfaceRelation,
};
pub use words::{Generator, Letter, Word};
