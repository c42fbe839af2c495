//! Exact integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::BigInt;

/// `Σ c_k t^k` with integer coefficients; zero coefficients are never
/// stored, so equality is coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `c·t^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in pairs {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in self.iter() {
            for (kb, cb) in other.iter() {
                out.add_term(ka + kb, ca.checked_mul(cb).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &a)| (k, a * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// The involution `t ↦ t^{-1}`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    /// Whether the polynomial is fixed by `t ↦ t^{-1}` (real-valued on the
    /// unit circle).
    pub fn is_symmetric(&self) -> bool {
        *self == self.involute()
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, t: i64) -> BigInt {
        assert!(t != 0, "Laurent polynomial evaluated at 0");
        let mut sum = BigInt::from(0);
        let t = BigInt::from(t);
        for (k, c) in self.iter() {
            // only used with t = ±1 for negative exponents
            let power = if k >= 0 {
                t.pow(k as u32)
            } else {
                assert!(
                    t == BigInt::from(1) || t == BigInt::from(-1),
                    "negative exponent at non-unit point"
                );
                t.pow((-k) as u32)
            };
            sum += power * BigInt::from(c);
        }
        sum
    }

    /// Value at `t = e^{iθ}`.
    pub fn eval_circle(&self, theta: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, c) in self.iter() {
            let angle = theta * k as f64;
            sum += Complex64::new(angle.cos(), angle.sin()) * c as f64;
        }
        sum
    }

    /// Rewrites a symmetric Laurent polynomial as an ordinary polynomial
    /// in `u = t + t^{-1}`, using `t^k + t^{-k} = s_k(u)` with
    /// `s_0 = 2, s_1 = u, s_{k+1} = u·s_k − s_{k-1}`.
    ///
    /// Returns ascending coefficients; `None` if not symmetric.
    pub fn as_poly_in_u(&self) -> Option<Vec<i64>> {
        if !self.is_symmetric() {
            return None;
        }
        let deg = self.max_exp().unwrap_or(0).max(0) as usize;
        // s_k(u) as ascending coefficient vectors
        let mut s: Vec<Vec<i64>> = Vec::with_capacity(deg + 1);
        s.push(vec![2]);
        if deg >= 1 {
            s.push(vec![0, 1]);
        }
        for k in 2..=deg {
            let mut next = vec![0i64; k + 1];
            for (i, &c) in s[k - 1].iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, &c) in s[k - 2].iter().enumerate() {
                next[i] -= c;
            }
            s.push(next);
        }
        let mut out = vec![0i64; deg + 1];
        out[0] = self.coeff(0);
        for k in 1..=deg as i64 {
            let c = self.coeff(k);
            if c != 0 {
                for (i, &sc) in s[k as usize].iter().enumerate() {
                    out[i] += c * sc;
                }
            }
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        Some(out)
    }

    /// Normalizes up to units: lowest exponent 0 and positive leading
    /// coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let shifted = self.shift(-self.min_exp().unwrap());
        if shifted.coeff(shifted.max_exp().unwrap()) < 0 {
            shifted.neg()
        } else {
            shifted
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `t^2 - t + 1` or `t - 4 + t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, &c) in self.coeffs.iter().rev() {
            let magnitude = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (magnitude, k) {
                (_, 0) => write!(f, "{magnitude}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{k}")?,
                (_, 1) => write!(f, "{magnitude}*t")?,
                (_, _) => write!(f, "{magnitude}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = LaurentPoly::from_coeffs([(0, 1), (1, -1)]); // 1 - t
        let q = LaurentPoly::from_coeffs([(0, 1), (-1, -1)]); // 1 - t^-1
        let prod = p.mul(&q);
        // (1-t)(1-t^-1) = 2 - t - t^-1
        assert_eq!(prod, LaurentPoly::from_coeffs([(0, 2), (1, -1), (-1, -1)]));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.involute(), q);
        assert!(prod.is_symmetric());
        assert!(!p.is_symmetric());
    }

    #[test]
    fn poly_in_u_conversion() {
        // 2 - t - t^-1 = 2 - u
        let p = LaurentPoly::from_coeffs([(0, 2), (1, -1), (-1, -1)]);
        assert_eq!(p.as_poly_in_u().unwrap(), vec![2, -1]);
        // t^2 + t^-2 = u^2 - 2
        let p = LaurentPoly::from_coeffs([(2, 1), (-2, 1)]);
        assert_eq!(p.as_poly_in_u().unwrap(), vec![-2, 0, 1]);
        assert!(LaurentPoly::monomial(1, 1).as_poly_in_u().is_none());
    }

    #[test]
    fn eval_and_normalize() {
        let p = LaurentPoly::from_coeffs([(2, 1), (1, -1), (0, 1)]); // t^2 - t + 1
        assert_eq!(p.eval_int(-1), BigInt::from(3));
        let q = p.shift(-2).neg();
        assert_eq!(q.normalized(), p);
        let v = p.eval_circle(std::f64::consts::PI);
        assert!((v.re - 3.0).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn display_forms() {
        let p = LaurentPoly::from_coeffs([(2, 1), (1, -1), (0, 1)]);
        assert_eq!(p.to_string(), "t^2 - t + 1");
        let q = LaurentPoly::from_coeffs([(1, -1), (0, 2), (-1, -1)]);
        assert_eq!(q.to_string(), "-t + 2 - t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
