//! Sturm-sequence root counting and isolation for rational polynomials.
//!
//! Everything here is exact arithmetic over `BigRational`; callers convert
//! integer polynomials on the way in.

use num::{BigInt, BigRational, Signed, Zero};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        RatPoly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() == 1 {
            return RatPoly::new(vec![BigRational::zero()]);
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of `self / divisor`.
    fn rem(&self, divisor: &RatPoly) -> RatPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let d = divisor.degree();
        if d == 0 {
            return RatPoly::new(vec![BigRational::zero()]);
        }
        let mut rem = self.coeffs.clone();
        let lead = divisor.coeffs[d].clone();
        while rem.len() > d {
            let k = rem.len() - 1;
            if rem[k].is_zero() {
                rem.pop();
                continue;
            }
            let factor = &rem[k] / &lead;
            for i in 0..=d {
                let idx = k - d + i;
                let sub = &divisor.coeffs[i] * &factor;
                rem[idx] -= sub;
            }
            rem.pop();
        }
        RatPoly::new(rem)
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// The squarefree part `self / gcd(self, self')`.
    pub fn squarefree(&self) -> RatPoly {
        if self.is_zero() || self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    /// Quotient of an exact division (remainder known to vanish).
    fn div_exact(&self, divisor: &RatPoly) -> RatPoly {
        let d = divisor.degree();
        if d == 0 {
            let c = divisor.coeffs[0].clone();
            return RatPoly::new(self.coeffs.iter().map(|x| x / &c).collect());
        }
        let mut rem = self.coeffs.clone();
        let lead = divisor.coeffs[d].clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let factor = &rem[k] / &lead;
            quot[k - d] = factor.clone();
            for i in 0..=d {
                let idx = k - d + i;
                let sub = &divisor.coeffs[i] * &factor;
                rem[idx] -= sub;
            }
            rem.pop();
        }
        RatPoly::new(quot)
    }
}

/// Sturm chain of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain for the squarefree part of `p`.
    pub fn new(p: &RatPoly) -> Self {
        let p = p.squarefree();
        let mut chain = vec![p.clone()];
        if p.degree() >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(RatPoly::new(
                    r.coeffs.iter().map(|c| -c.clone()).collect(),
                ));
            }
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if let Some(prev) = last {
                if prev != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a < b);
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_roots_open(&self, a: &BigRational, b: &BigRational) -> usize {
        let mut n = self.count_roots_half_open(a, b);
        if self.chain[0].eval(b).is_zero() {
            n -= 1;
        }
        n
    }

    pub fn is_root(&self, x: &BigRational) -> bool {
        self.chain[0].eval(x).is_zero()
    }

    /// Isolating intervals (each containing exactly one root) of width
    /// at most `eps` for all roots in the open interval `(a, b)`.
    pub fn isolate_open(
        &self,
        a: &BigRational,
        b: &BigRational,
        eps: &BigRational,
    ) -> Vec<(BigRational, BigRational)> {
        let mut out = Vec::new();
        self.isolate_rec(a.clone(), b.clone(), eps, &mut out);
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    fn isolate_rec(
        &self,
        a: BigRational,
        b: BigRational,
        eps: &BigRational,
        out: &mut Vec<(BigRational, BigRational)>,
    ) {
        let count = self.count_roots_open(&a, &b);
        if count == 0 {
            return;
        }
        let width = &b - &a;
        if count == 1 && &width <= eps {
            out.push((a, b));
            return;
        }
        let mid = (&a + &b) / BigRational::from(BigInt::from(2));
        if self.is_root(&mid) {
            // a root exactly at the midpoint: emit a pinpoint interval
            out.push((mid.clone(), mid.clone()));
        }
        self.isolate_rec(a, mid.clone(), eps, out);
        self.isolate_rec(mid, b, eps, out);
    }
}

pub fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
