//! Hermitian Laurent forms on the unit circle: Levine-Tristram signatures,
//! signature profiles, and the infinite-cyclic von Neumann rho-invariant.
//!
//! The signature function of a form `B(t)` is piecewise constant on the
//! circle, jumping only where the generically-nonzero coefficient of the
//! characteristic polynomial vanishes. That coefficient is a symmetric
//! Laurent polynomial, so it rewrites as an ordinary polynomial in
//! `u = t + t^{-1}`, whose roots in `[-2, 2)` are isolated exactly by
//! Sturm sequences. Arc signatures are sampled numerically at interior
//! points; the normalized integral is emitted as an exact rational
//! whenever every jump sits at an angle commensurable with π (`u` in
//! {-2, -1, 0, 1}, the rational-cosine angles) and as a bounded real
//! otherwise.

use std::fmt;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::KnotError;
use crate::laurent::LaurentPoly;
use crate::matrixdet::{det_laurent, exact_signature_bigint, principal_minor_sum};
use crate::seifert::SeifertMatrix;
use crate::sturm::{big_rational, RatPoly, SturmChain};

/// Largest size for which a degenerate (identically singular) form is
/// handled by principal-minor enumeration.
const DEGENERATE_SIZE_BOUND: usize = 16;

/// A point `ω` on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CirclePoint {
    One,
    MinusOne,
    /// `ω = e^{iθ}`.
    Angle(f64),
}

/// A square matrix of Laurent polynomials with `entry(i,j)(t) =
/// entry(j,i)(t^{-1})`, so every evaluation on the unit circle is
/// Hermitian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianLaurentMatrix {
    size: usize,
    entries: Vec<LaurentPoly>, // row-major
}

impl HermitianLaurentMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, KnotError> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in &rows {
            if row.len() != size {
                return Err(KnotError::NotHermitian);
            }
            entries.extend(row.iter().cloned());
        }
        let m = HermitianLaurentMatrix { size, entries };
        for i in 0..size {
            for j in 0..size {
                if *m.entry(i, j) != m.entry(j, i).involute() {
                    return Err(KnotError::NotHermitian);
                }
            }
        }
        Ok(m)
    }

    /// The standard bridge from Seifert data:
    /// `B(t) = (1-t)·V + (1-t^{-1})·V^T`.
    pub fn from_seifert(v: &SeifertMatrix) -> Self {
        let n = v.size();
        let one_minus_t = LaurentPoly::from_coeffs([(0, 1), (1, -1)]);
        let one_minus_tinv = one_minus_t.involute();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(
                    one_minus_t
                        .scale(v.get(i, j))
                        .add(&one_minus_tinv.scale(v.get(j, i))),
                );
            }
        }
        HermitianLaurentMatrix { size: n, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn det(&self) -> LaurentPoly {
        det_laurent(&self.rows())
    }

    /// Evaluation at `t = ±1`, where every entry is an integer.
    fn eval_int(&self, t: i64) -> Vec<Vec<BigInt>> {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.entry(i, j).eval_int(t))
                    .collect()
            })
            .collect()
    }

    fn eval_circle(&self, theta: f64) -> Vec<Complex64> {
        self.entries.iter().map(|p| p.eval_circle(theta)).collect()
    }

    /// The Levine-Tristram signature at a unit-circle point. At `t = ±1`
    /// the matrix is integral and the signature exact; elsewhere it is
    /// computed numerically with a relative zero tolerance.
    pub fn lt_signature(&self, point: CirclePoint) -> Result<i32, KnotError> {
        match point {
            CirclePoint::One => Ok(exact_signature_bigint(&self.eval_int(1))),
            CirclePoint::MinusOne => Ok(exact_signature_bigint(&self.eval_int(-1))),
            CirclePoint::Angle(theta) => {
                let (sig, _, _) = numeric_signature(&self.eval_circle(theta), self.size);
                Ok(sig)
            }
        }
    }

    /// The piecewise-constant signature function over the whole circle.
    pub fn signature_profile(&self) -> Result<SignatureProfile, KnotError> {
        let n = self.size;
        if n == 0 {
            return Ok(SignatureProfile {
                jumps: Vec::new(),
                arc_values: vec![0],
                integral: RhoValue::Exact(BigRational::zero()),
            });
        }
        let (jump_poly, kernel_dim) = self.jump_polynomial()?;
        let q_coeffs = jump_poly
            .as_poly_in_u()
            .expect("hermitian minor sums are symmetric Laurent polynomials");
        let chain = SturmChain::new(&RatPoly::from_int_coeffs(&q_coeffs));
        let jumps = locate_jumps(&chain)?;

        // arc boundaries over (0, 2π), in units of π where exact
        let mut boundaries: Vec<Jump> = jumps;
        boundaries.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
        let mut arc_values = Vec::with_capacity(boundaries.len() + 1);
        let mut cuts = vec![0.0];
        cuts.extend(boundaries.iter().map(|j| j.theta));
        cuts.push(2.0 * std::f64::consts::PI);
        for w in cuts.windows(2) {
            arc_values.push(self.arc_signature(w[0], w[1], kernel_dim)?);
        }

        let all_exact = boundaries.iter().all(|j| j.pi_fraction.is_some());
        let integral = if all_exact {
            let mut fractions = vec![BigRational::zero()];
            fractions.extend(boundaries.iter().map(|j| j.pi_fraction.clone().unwrap()));
            fractions.push(big_rational(2, 1));
            let mut total = BigRational::zero();
            for (i, w) in fractions.windows(2).enumerate() {
                let len = &w[1] - &w[0];
                total += len * big_rational(arc_values[i] as i64, 2);
            }
            RhoValue::Exact(total)
        } else {
            let two_pi = 2.0 * std::f64::consts::PI;
            let mut total = 0.0;
            for (i, w) in cuts.windows(2).enumerate() {
                total += (w[1] - w[0]) / two_pi * arc_values[i] as f64;
            }
            let bound: f64 = boundaries
                .iter()
                .map(|j| j.theta_uncertainty * (2 * n) as f64 / two_pi)
                .sum::<f64>()
                + 1e-9;
            RhoValue::Approx {
                value: total,
                bound,
            }
        };

        Ok(SignatureProfile {
            jumps: boundaries
                .into_iter()
                .map(|j| JumpAngle {
                    theta: j.theta,
                    pi_fraction: j.pi_fraction,
                })
                .collect(),
            arc_values,
            integral,
        })
    }

    /// The von Neumann rho-invariant over ℤ: the normalized integral of
    /// the signature function minus the ordinary signature at `ω = 1`.
    pub fn rho_z(&self) -> Result<RhoValue, KnotError> {
        let profile = self.signature_profile()?;
        let sig_one = self.lt_signature(CirclePoint::One)?;
        Ok(match profile.integral {
            RhoValue::Exact(q) => RhoValue::Exact(q - big_rational(sig_one as i64, 1)),
            RhoValue::Approx { value, bound } => RhoValue::Approx {
                value: value - sig_one as f64,
                bound,
            },
        })
    }

    /// Numeric route to rho: uniform signature sampling with bisection
    /// refinement of every detected jump. Independent of the exact
    /// Sturm-based path. Arcs narrower than the sample spacing can go
    /// undetected; the returned bound assumes the sampling resolved all of
    /// them.
    pub fn rho_z_numeric(&self, samples: usize) -> Result<(f64, f64), KnotError> {
        let n = samples.max(16);
        let two_pi = 2.0 * std::f64::consts::PI;
        let theta = |i: usize| (i as f64 + 0.5) * two_pi / n as f64;
        let sigma: Vec<i32> = (0..n)
            .map(|i| self.lt_signature(CirclePoint::Angle(theta(i))))
            .collect::<Result<_, _>>()?;
        // refine each sign change between consecutive samples (cyclically)
        let mut integral = 0.0;
        let mut refinements = 0usize;
        for i in 0..n {
            let j = (i + 1) % n;
            let (si, sj) = (sigma[i], sigma[j]);
            let hi_raw = if j == 0 { theta(0) + two_pi } else { theta(j) };
            if si == sj {
                integral += si as f64 * (hi_raw - theta(i)) / two_pi;
                continue;
            }
            refinements += 1;
            let mut lo = theta(i);
            let mut hi = hi_raw;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let sm = self.lt_signature(CirclePoint::Angle(mid % two_pi))?;
                if sm == si {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let cut = 0.5 * (lo + hi);
            integral += si as f64 * (cut - theta(i)) / two_pi;
            integral += sj as f64 * (hi_raw - cut) / two_pi;
        }
        let sig_one = self.lt_signature(CirclePoint::One)? as f64;
        let bound = refinements as f64 * two_pi * 2f64.powi(-58) + 1e-12;
        Ok((integral - sig_one, bound))
    }

    /// Plain uniform-midpoint Riemann estimate of the normalized signature
    /// integral (no jump detection). Cross-validation only.
    pub fn riemann_integral(&self, samples: usize) -> Result<f64, KnotError> {
        let n = samples.max(1);
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut sum = 0.0;
        for i in 0..n {
            let theta = (i as f64 + 0.5) * two_pi / n as f64;
            sum += self.lt_signature(CirclePoint::Angle(theta))? as f64;
        }
        Ok(sum / n as f64)
    }

    /// The polynomial whose unit-circle roots carry all signature jumps:
    /// the determinant when nonzero, otherwise the largest nonvanishing
    /// principal-minor sum. Also returns the generic kernel dimension.
    fn jump_polynomial(&self) -> Result<(LaurentPoly, usize), KnotError> {
        let det = self.det();
        if !det.is_zero() {
            return Ok((det, 0));
        }
        if self.size > DEGENERATE_SIZE_BOUND {
            return Err(KnotError::DegenerateTooLarge(self.size));
        }
        let rows = self.rows();
        for k in (1..self.size).rev() {
            let e = principal_minor_sum(&rows, k);
            if !e.is_zero() {
                return Ok((e, self.size - k));
            }
        }
        // the zero form: constant signature 0, no jumps
        Ok((LaurentPoly::one(), self.size))
    }

    /// Signature on the open arc `(lo, hi)`, sampled at interior points
    /// with a consistency check on the kernel dimension.
    fn arc_signature(&self, lo: f64, hi: f64, kernel_dim: usize) -> Result<i32, KnotError> {
        for frac in [0.5, 0.25, 0.75, 0.375, 0.625] {
            let theta = lo + (hi - lo) * frac;
            let (sig, zeros, margin) = numeric_signature(&self.eval_circle(theta), self.size);
            if zeros == kernel_dim && margin > 1e3 {
                return Ok(sig);
            }
        }
        Err(KnotError::Precision(format!(
            "could not classify the signature on the arc ({lo:.6}, {hi:.6})"
        )))
    }
}

/// One signature jump, known either as an exact rational multiple of π or
/// as a float with an uncertainty.
struct Jump {
    theta: f64,
    pi_fraction: Option<BigRational>,
    theta_uncertainty: f64,
}

/// Finds all jump angles in `(0, 2π)` from the Sturm chain of the jump
/// polynomial written in `u = 2cos θ`.
fn locate_jumps(chain: &SturmChain) -> Result<Vec<Jump>, KnotError> {
    let minus_two = big_rational(-2, 1);
    let two = big_rational(2, 1);
    let mut jumps = Vec::new();

    // the rational-cosine angles: u = -1, 0, 1 at θ/π = 2/3, 1/2, 1/3
    let mut niven_roots = 0usize;
    for (u, frac) in [
        (-1i64, big_rational(2, 3)),
        (0, big_rational(1, 2)),
        (1, big_rational(1, 3)),
    ] {
        if chain.is_root(&big_rational(u, 1)) {
            niven_roots += 1;
            let theta = std::f64::consts::PI * frac.to_f64().unwrap();
            jumps.push(Jump {
                theta,
                pi_fraction: Some(frac.clone()),
                theta_uncertainty: 0.0,
            });
            let mirror = big_rational(2, 1) - frac;
            jumps.push(Jump {
                theta: std::f64::consts::PI * mirror.to_f64().unwrap(),
                pi_fraction: Some(mirror),
                theta_uncertainty: 0.0,
            });
        }
    }
    // u = -2 is the angle π itself
    if chain.is_root(&minus_two) {
        jumps.push(Jump {
            theta: std::f64::consts::PI,
            pi_fraction: Some(BigRational::one()),
            theta_uncertainty: 0.0,
        });
    }

    let interior = chain.count_roots_open(&minus_two, &two);
    if interior > niven_roots {
        // isolate the irrational-angle roots
        let eps = BigRational::new(BigInt::one(), BigInt::from(2).pow(100));
        for (lo, hi) in chain.isolate_open(&minus_two, &two, &eps) {
            // skip intervals holding a rational-cosine root already recorded
            if [-1i64, 0, 1].iter().any(|&u| {
                let u = big_rational(u, 1);
                lo <= u && u <= hi && chain.is_root(&u)
            }) {
                continue;
            }
            let lo_f = lo.to_f64().unwrap();
            let hi_f = hi.to_f64().unwrap();
            let theta_hi = (lo_f / 2.0).clamp(-1.0, 1.0).acos();
            let theta_lo = (hi_f / 2.0).clamp(-1.0, 1.0).acos();
            let theta = 0.5 * (theta_lo + theta_hi);
            let uncertainty = (theta_hi - theta_lo).abs() + 1e-12;
            jumps.push(Jump {
                theta,
                pi_fraction: None,
                theta_uncertainty: uncertainty,
            });
            jumps.push(Jump {
                theta: 2.0 * std::f64::consts::PI - theta,
                pi_fraction: None,
                theta_uncertainty: uncertainty,
            });
        }
    }
    Ok(jumps)
}

/// Signature of a Hermitian complex matrix via the symmetric real
/// embedding `[[Re, -Im], [Im, Re]]` (eigenvalues doubled). Returns
/// `(signature, kernel dimension, margin)` where margin is the ratio of
/// the smallest eigenvalue counted nonzero to the zero tolerance.
fn numeric_signature(entries: &[Complex64], n: usize) -> (i32, usize, f64) {
    if n == 0 {
        return (0, 0, f64::INFINITY);
    }
    let scale = entries.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    let tol = 1e-9 * scale;
    let m = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (i, j) = (r % n, c % n);
        let e = entries[i * n + j];
        match (r < n, c < n) {
            (true, true) | (false, false) => e.re,
            (true, false) => -e.im,
            (false, true) => e.im,
        }
    });
    let eigen = m.symmetric_eigenvalues();
    let mut pos = 0i32;
    let mut neg = 0i32;
    let mut zeros = 0usize;
    let mut min_nonzero = f64::INFINITY;
    for &ev in eigen.iter() {
        if ev.abs() <= tol {
            zeros += 1;
        } else {
            if ev > 0.0 {
                pos += 1;
            } else {
                neg += 1;
            }
            min_nonzero = min_nonzero.min(ev.abs());
        }
    }
    ((pos - neg) / 2, zeros / 2, min_nonzero / tol)
}

/// An exact rational value, or a real with an explicit error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum RhoValue {
    Exact(BigRational),
    Approx { value: f64, bound: f64 },
}

impl RhoValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            RhoValue::Exact(q) => q.to_f64().unwrap(),
            RhoValue::Approx { value, .. } => *value,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            RhoValue::Exact(q) => Some(q),
            RhoValue::Approx { .. } => None,
        }
    }
}

impl fmt::Display for RhoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoValue::Exact(q) => write!(f, "{q}"),
            RhoValue::Approx { value, bound } => write!(f, "{value:.12}±{bound:.2e}"),
        }
    }
}

/// One jump of the signature function, with its exact position as a
/// multiple of π when the angle is commensurable.
#[derive(Clone, Debug)]
pub struct JumpAngle {
    pub theta: f64,
    pub pi_fraction: Option<BigRational>,
}

/// The full piecewise-constant signature function on `(0, 2π)`:
/// `arc_values[i]` holds between `jumps[i-1]` and `jumps[i]`, and
/// `integral` is `(1/2π)·∫ σ dθ`.
#[derive(Clone, Debug)]
pub struct SignatureProfile {
    pub jumps: Vec<JumpAngle>,
    pub arc_values: Vec<i32>,
    pub integral: RhoValue,
}

impl SignatureProfile {
    /// The signature on the arc containing `θ`.
    pub fn value_at(&self, theta: f64) -> i32 {
        let mut idx = 0;
        for (i, j) in self.jumps.iter().enumerate() {
            if theta > j.theta {
                idx = i + 1;
            }
        }
        self.arc_values[idx]
    }
}

/// The reference Hermitian form: diagonal `2 - t - t^{-1}`, off-diagonal 1.
pub fn lambda_j() -> HermitianLaurentMatrix {
    let diag = LaurentPoly::from_coeffs([(0, 2), (1, -1), (-1, -1)]);
    HermitianLaurentMatrix::new(vec![
        vec![diag.clone(), LaurentPoly::one()],
        vec![LaurentPoly::one(), diag],
    ])
    .expect("lambda_j is hermitian")
}

/// The sign-flipped variant (`-2 + t + t^{-1}` on the diagonal), whose
/// signature function mirrors the right-handed trefoil.
pub fn lambda_j_mirror() -> HermitianLaurentMatrix {
    let diag = LaurentPoly::from_coeffs([(0, -2), (1, 1), (-1, 1)]);
    HermitianLaurentMatrix::new(vec![
        vec![diag.clone(), LaurentPoly::one()],
        vec![LaurentPoly::one(), diag],
    ])
    .expect("mirror form is hermitian")
}
