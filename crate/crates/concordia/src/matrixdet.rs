//! Exact determinants and signatures of small matrices.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::laurent::LaurentPoly;

/// Fraction-free Bareiss determinant of an integer matrix.
pub fn det_bigint(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search below row k
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

pub fn det_i64(matrix: &[Vec<i64>]) -> BigInt {
    det_bigint(
        &matrix
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect::<Vec<_>>(),
    )
}

/// Determinant of a matrix of Laurent polynomials, computed exactly by
/// shifting to ordinary polynomials, evaluating at integer points, and
/// Lagrange-interpolating the coefficients.
pub fn det_laurent(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = matrix.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let min_exp = matrix
        .iter()
        .flatten()
        .filter_map(|p| p.min_exp())
        .min()
        .unwrap_or(0)
        .min(0);
    let shift = -min_exp;
    let shifted: Vec<Vec<LaurentPoly>> = matrix
        .iter()
        .map(|row| row.iter().map(|p| p.shift(shift)).collect())
        .collect();
    let max_deg = shifted
        .iter()
        .flatten()
        .filter_map(|p| p.max_exp())
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let det_deg = n * max_deg;
    // evaluate at 1, 2, …, det_deg + 1
    let points: Vec<i64> = (1..=(det_deg as i64 + 1)).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|&t| {
            let m: Vec<Vec<BigInt>> = shifted
                .iter()
                .map(|row| row.iter().map(|p| eval_poly_int(p, t)).collect())
                .collect();
            det_bigint(&m)
        })
        .collect();
    let coeffs = lagrange_interpolate(&points, &values);
    let mut out = LaurentPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let as_i64 = c
                .to_i64()
                .expect("determinant coefficient exceeds i64 range");
            out = out.add(&LaurentPoly::monomial(as_i64, k as i64 - (n as i64 * shift)));
        }
    }
    out
}

/// Sum of all k×k principal minors.
pub fn principal_minor_sum(matrix: &[Vec<LaurentPoly>], k: usize) -> LaurentPoly {
    let n = matrix.len();
    assert!(k <= n);
    if k == 0 {
        return LaurentPoly::one();
    }
    let mut total = LaurentPoly::zero();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<LaurentPoly>> = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| matrix[i][j].clone()).collect())
            .collect();
        total = total.add(&det_laurent(&sub));
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

fn eval_poly_int(p: &LaurentPoly, t: i64) -> BigInt {
    let mut sum = BigInt::zero();
    let t = BigInt::from(t);
    for (k, c) in p.iter() {
        assert!(k >= 0, "polynomial evaluation requires non-negative exponents");
        sum += t.pow(k as u32) * BigInt::from(c);
    }
    sum
}

/// Newton divided-difference interpolation through
/// `(points[i], values[i])`; returns ascending coefficients.
fn lagrange_interpolate(points: &[i64], values: &[BigInt]) -> Vec<BigRational> {
    let n = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|&x| BigRational::from(BigInt::from(x)))
        .collect();
    let mut dd: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from(v.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // expand p = dd[0] + dd[1](x-x0) + dd[2](x-x0)(x-x1) + …
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::zero(); n];
    basis[0] = BigRational::one();
    let mut deg = 0usize;
    coeffs[0] = dd[0].clone();
    for k in 1..n {
        // basis *= (x - x_{k-1}), updated high-to-low in place
        for d in (0..=deg).rev() {
            let c = basis[d].clone();
            basis[d + 1] = &basis[d + 1] + &c;
            basis[d] = c * -&xs[k - 1];
        }
        deg += 1;
        for d in 0..=deg {
            coeffs[d] += &basis[d] * &dd[k];
        }
    }
    coeffs
}

/// Exact signature of a symmetric rational matrix via congruence
/// (simultaneous row/column) reduction.
pub fn exact_signature_rational(matrix: &[Vec<BigRational>]) -> i32 {
    let n = matrix.len();
    let mut m: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut sig = 0i32;
    let mut rows: Vec<usize> = (0..n).collect();
    while !rows.is_empty() {
        match rows.iter().copied().find(|&i| !m[i][i].is_zero()) {
            Some(p) => {
                // Schur complement on the active block (a congruence)
                let d = m[p][p].clone();
                sig += if d.is_positive() { 1 } else { -1 };
                rows.retain(|&i| i != p);
                for &i in &rows {
                    let f = &m[i][p] / &d;
                    if f.is_zero() {
                        continue;
                    }
                    for &j in &rows {
                        let sub = &f * &m[p][j];
                        m[i][j] -= sub;
                    }
                }
            }
            None => {
                // all active diagonals vanish; a nonzero coupling m[i][j]
                // gains a usable pivot under e_i <- e_i + e_j
                let mut found = None;
                'outer: for (a_idx, &i) in rows.iter().enumerate() {
                    for &j in rows.iter().skip(a_idx + 1) {
                        if !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break; // remaining block is zero
                };
                for &k in &rows.clone() {
                    let v = &m[i][k] + &m[j][k];
                    m[i][k] = v;
                }
                for &k in &rows.clone() {
                    let v = &m[k][i] + &m[k][j];
                    m[k][i] = v;
                }
            }
        }
    }
    sig
}

pub fn exact_signature_bigint(matrix: &[Vec<BigInt>]) -> i32 {
    exact_signature_rational(
        &matrix
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_determinants() {
        assert_eq!(det_bigint(&bi(&[])), BigInt::from(1));
        assert_eq!(det_i64(&[vec![7]]), BigInt::from(7));
        assert_eq!(det_i64(&[vec![1, 2], vec![3, 4]]), BigInt::from(-2));
        // needs a pivot swap
        assert_eq!(
            det_i64(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, 5, 0]]),
            BigInt::from(22)
        );
        assert_eq!(det_i64(&[vec![0, 0], vec![0, 0]]), BigInt::from(0));
    }

    #[test]
    fn laurent_determinant_matches_expansion() {
        // [[1 - t, -1], [t, 1 - t]] -> (1-t)^2 + t = t^2 - t + 1
        let one_minus_t = LaurentPoly::from_coeffs([(0, 1), (1, -1)]);
        let m = vec![
            vec![one_minus_t.clone(), LaurentPoly::constant(-1)],
            vec![LaurentPoly::monomial(1, 1), one_minus_t],
        ];
        assert_eq!(
            det_laurent(&m),
            LaurentPoly::from_coeffs([(2, 1), (1, -1), (0, 1)])
        );
    }

    #[test]
    fn laurent_determinant_handles_negative_exponents() {
        // [[t^-1, 0], [0, t]] -> 1
        let m = vec![
            vec![LaurentPoly::monomial(1, -1), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), LaurentPoly::monomial(1, 1)],
        ];
        assert_eq!(det_laurent(&m), LaurentPoly::one());
    }

    #[test]
    fn minor_sums() {
        let m = vec![
            vec![LaurentPoly::constant(2), LaurentPoly::constant(1)],
            vec![LaurentPoly::constant(1), LaurentPoly::constant(3)],
        ];
        assert_eq!(principal_minor_sum(&m, 1), LaurentPoly::constant(5));
        assert_eq!(principal_minor_sum(&m, 2), LaurentPoly::constant(5));
        assert_eq!(principal_minor_sum(&m, 0), LaurentPoly::one());
    }

    #[test]
    fn signatures() {
        let pos = bi(&[&[2, 0], &[0, 3]]);
        assert_eq!(exact_signature_bigint(&pos), 2);
        let hyperbolic = bi(&[&[0, 1], &[1, 0]]);
        assert_eq!(exact_signature_bigint(&hyperbolic), 0);
        let mixed = bi(&[&[4, -2], &[-2, 4]]);
        assert_eq!(exact_signature_bigint(&mixed), 2);
        let neg = bi(&[&[-1, 0, 0], &[0, 0, 2], &[0, 2, 0]]);
        assert_eq!(exact_signature_bigint(&neg), -1);
        let zero = bi(&[&[0, 0], &[0, 0]]);
        assert_eq!(exact_signature_bigint(&zero), 0);
    }
}
