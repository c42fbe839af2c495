//! Assembles the numeric data of the infection construction: axis lists
//! from the pair sets, the infection-knot copy count `N` against a
//! user-supplied Cheeger-Gromov bound `C`, and the rho-difference
//! bookkeeping.
//!
//! The bound `C` is an input: it exists but is not computable from the
//! data we hold. The planner reports both the sharp minimal even `N` with
//! `N·ρ > C` and the coarser choice of the least even integer exceeding
//! `C` itself. Copy counts are kept even throughout because an odd block
//! sum of the trefoil stand-in has Arf invariant 1.

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

use crate::error::CapError;
use crate::pairs::axes;
use crate::sturm::big_rational;
use crate::words::Word;

/// ρ contributed by one copy of the reference infection form.
pub fn rho_per_copy() -> BigRational {
    big_rational(4, 3)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("the bound C must be positive, got {0}")]
    NonPositiveBound(String),
    #[error(transparent)]
    Cap(#[from] CapError),
    #[error("epsilon row {row} has {got} entries, expected {expected}")]
    ShapeMismatch {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("epsilon and rho lists have different lengths: {epsilons} vs {rhos}")]
    LengthMismatch { epsilons: usize, rhos: usize },
}

/// The assembled numeric data for one infection at level `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfectionPlan {
    pub n: u32,
    pub axes: Vec<Word>,
    pub c: BigRational,
    pub rho_per_copy: BigRational,
    /// Least even `N` with `N·rho_per_copy > C`.
    pub n_minimal: u64,
    /// Least even integer exceeding `C` itself.
    pub n_paper: u64,
    pub total_rho: BigRational,
}

impl InfectionPlan {
    pub fn axis_count(&self) -> usize {
        self.axes.len()
    }

    /// Stable field order for diff-based testing.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n = {}\n", self.n));
        out.push_str(&format!("m = {}\n", self.axes.len()));
        for axis in &self.axes {
            out.push_str(&format!("axis = {axis}\n"));
        }
        out.push_str(&format!("C = {}\n", self.c));
        out.push_str(&format!("rho_per_copy = {}\n", self.rho_per_copy));
        out.push_str(&format!("N_minimal = {}\n", self.n_minimal));
        out.push_str(&format!("N_paper = {}\n", self.n_paper));
        out.push_str(&format!("total_rho = {}\n", self.total_rho));
        out
    }
}

/// Least even integer strictly greater than `x`.
fn least_even_above(x: &BigRational) -> u64 {
    let half = x / big_rational(2, 1);
    let floor_half = half.floor().to_integer();
    let candidate = (&floor_half + BigInt::from(1)) * BigInt::from(2);
    let candidate = if candidate.is_negative() || candidate.is_zero() {
        BigInt::from(2)
    } else {
        candidate
    };
    let (digits_ok, as_u64) = match candidate.to_u64_digits() {
        (num::bigint::Sign::Plus, digits) if digits.len() == 1 => (true, digits[0]),
        _ => (false, 0),
    };
    assert!(digits_ok, "copy count exceeds u64");
    as_u64
}

/// Builds the plan for level `n` against the bound `C > 0`.
pub fn plan(n: u32, c: BigRational) -> Result<InfectionPlan, PlanError> {
    if !c.is_positive() {
        return Err(PlanError::NonPositiveBound(c.to_string()));
    }
    let axes = axes(n)?;
    let rho = rho_per_copy();
    // N·ρ > C  ⟺  N > C/ρ
    let n_minimal = least_even_above(&(&c / &rho));
    let n_paper = least_even_above(&c);
    let total_rho = big_rational(n_minimal as i64, 1) * &rho;
    let plan = InfectionPlan {
        n,
        axes,
        c,
        rho_per_copy: rho,
        n_minimal,
        n_paper,
        total_rho,
    };
    debug_assert!(plan.n_minimal.is_multiple_of(2));
    debug_assert!(
        big_rational(plan.n_minimal as i64, 1) * &plan.rho_per_copy > plan.c
    );
    debug_assert!(
        big_rational(plan.n_minimal as i64 - 2, 1) * &plan.rho_per_copy <= plan.c
    );
    Ok(plan)
}

/// The ε bookkeeping of the rho-difference formula.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoLedger {
    pub epsilons: Vec<u8>,
    pub rho_values: Vec<BigRational>,
}

impl RhoLedger {
    pub fn new(epsilons: Vec<u8>, rho_values: Vec<BigRational>) -> Result<Self, PlanError> {
        if epsilons.len() != rho_values.len() {
            return Err(PlanError::LengthMismatch {
                epsilons: epsilons.len(),
                rhos: rho_values.len(),
            });
        }
        assert!(epsilons.iter().all(|&e| e <= 1), "epsilons are 0 or 1");
        Ok(RhoLedger {
            epsilons,
            rho_values,
        })
    }
}

/// `Σ ε_i·ρ_i`.
pub fn rho_difference(ledger: &RhoLedger) -> BigRational {
    ledger
        .epsilons
        .iter()
        .zip(&ledger.rho_values)
        .filter(|(&e, _)| e == 1)
        .map(|(_, r)| r.clone())
        .sum()
}

/// Outcome of checking whether a plan's budget forces the contradiction.
#[derive(Clone, Debug, PartialEq)]
pub enum ObstructionVerdict {
    /// Every copy contributes and the total exceeds `k·C`.
    Contradiction {
        total: BigRational,
        threshold: BigRational,
    },
    /// Some copy has all ε = 0 and contributes nothing.
    Insufficient { failing_copy: usize },
}

/// Checks the plan against per-copy ε assignments (`epsilons[j][i]` for
/// copy `j`, axis `i`). With `per_knot` set, additionally demands the
/// stricter per-knot bound `N_minimal·ρ > C` (which the plan's invariant
/// already guarantees).
pub fn obstruction_check(
    plan: &InfectionPlan,
    epsilons: &[Vec<u8>],
    per_knot: bool,
) -> Result<ObstructionVerdict, PlanError> {
    let m = plan.axes.len();
    for (row, eps) in epsilons.iter().enumerate() {
        if eps.len() != m {
            return Err(PlanError::ShapeMismatch {
                row,
                got: eps.len(),
                expected: m,
            });
        }
    }
    if let Some(failing) = epsilons.iter().position(|eps| eps.iter().all(|&e| e == 0)) {
        return Ok(ObstructionVerdict::Insufficient {
            failing_copy: failing,
        });
    }
    let per_copy_budget = &plan.total_rho; // N_minimal · rho_per_copy
    if per_knot && per_copy_budget <= &plan.c {
        // unreachable under the plan invariant, but the strict flag
        // re-checks it rather than trusting the constructor
        return Ok(ObstructionVerdict::Insufficient { failing_copy: 0 });
    }
    let active: i64 = epsilons
        .iter()
        .flat_map(|eps| eps.iter())
        .filter(|&&e| e == 1)
        .count() as i64;
    let total = big_rational(active, 1) * per_copy_budget;
    let threshold = big_rational(epsilons.len() as i64, 1) * &plan.c;
    if total > threshold {
        Ok(ObstructionVerdict::Contradiction { total, threshold })
    } else {
        // cannot happen when every copy has an active axis and the plan
        // invariant holds; kept as an honest arithmetic outcome
        Ok(ObstructionVerdict::Insufficient { failing_copy: 0 })
    }
}

/// Parses `C` from `p/q`, an integer, or a decimal string.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num_part, den_part)) = s.split_once('/') {
        let n: BigInt = num_part.trim().parse().ok()?;
        let d: BigInt = den_part.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let frac_digits = frac_part.len() as u32;
        let combined: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        return Some(BigRational::new(combined, BigInt::from(10u32).pow(frac_digits)));
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from(n))
}
