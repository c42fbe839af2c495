//! Integer Seifert matrices and the classical invariants read off them.

use num::{BigInt, Signed};

use crate::error::KnotError;
use crate::laurent::LaurentPoly;
use crate::matrixdet::{det_i64, det_laurent};

/// A `2g × 2g` integer Seifert matrix; `V - V^T` must be unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    size: usize,
    entries: Vec<i64>, // row-major
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, KnotError> {
        let size = rows.len();
        if !size.is_multiple_of(2) {
            return Err(KnotError::InvalidSeifert(format!(
                "size {size} is odd; a Seifert matrix is 2g x 2g"
            )));
        }
        let mut entries = Vec::with_capacity(size * size);
        for row in &rows {
            if row.len() != size {
                return Err(KnotError::InvalidSeifert("matrix is not square".into()));
            }
            entries.extend_from_slice(row);
        }
        let m = SeifertMatrix { size, entries };
        let skew: Vec<Vec<i64>> = (0..size)
            .map(|i| (0..size).map(|j| m.get(i, j) - m.get(j, i)).collect())
            .collect();
        let det = det_i64(&skew);
        if det.abs() != BigInt::from(1) {
            return Err(KnotError::InvalidSeifert(format!(
                "V - V^T has determinant {det}, not ±1"
            )));
        }
        Ok(m)
    }

    /// The 0×0 matrix of the unknot.
    pub fn unknot() -> Self {
        SeifertMatrix {
            size: 0,
            entries: Vec::new(),
        }
    }

    /// The left-handed trefoil, with the chirality convention chosen so
    /// that the signature at ω = -1 is +2. Chirality naming varies in the
    /// literature; this is the one matching the reference form
    /// [`crate::signature::lambda_j`].
    pub fn trefoil_left() -> Self {
        SeifertMatrix::new(vec![vec![1, -1], vec![0, 1]]).expect("trefoil matrix is Seifert")
    }

    /// The figure-eight knot.
    pub fn figure_eight() -> Self {
        SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).expect("figure-eight matrix is Seifert")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn genus(&self) -> usize {
        self.size / 2
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// The Alexander polynomial `det(V - t·V^T)`, normalized so the lowest
    /// exponent is 0 and the leading coefficient positive.
    pub fn alexander_poly(&self) -> LaurentPoly {
        let minus_t = LaurentPoly::monomial(-1, 1);
        let m: Vec<Vec<LaurentPoly>> = (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| {
                        LaurentPoly::constant(self.get(i, j))
                            .add(&minus_t.scale(self.get(j, i)))
                    })
                    .collect()
            })
            .collect();
        det_laurent(&m).normalized()
    }

    /// The Arf invariant: 0 iff `Δ(-1) ≡ ±1 (mod 8)`.
    pub fn arf(&self) -> u8 {
        let delta = self.alexander_poly().eval_int(-1);
        let eight = BigInt::from(8);
        let residue = ((delta % &eight) + &eight) % &eight;
        if residue == BigInt::from(1) || residue == BigInt::from(7) {
            0
        } else {
            1
        }
    }

    /// Block sum, modelling connected sum of knots.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let size = self.size + other.size;
        let mut entries = vec![0i64; size * size];
        for i in 0..self.size {
            for j in 0..self.size {
                entries[i * size + j] = self.get(i, j);
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                entries[(self.size + i) * size + (self.size + j)] = other.get(i, j);
            }
        }
        SeifertMatrix { size, entries }
    }

    /// Parses the plain-text format: integer rows, comma-separated, one
    /// row per line. Blank lines and `#` comments are skipped; empty input
    /// is the unknot.
    pub fn parse(text: &str) -> Result<Self, KnotError> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| {
                    cell.trim().parse::<i64>().map_err(|_| {
                        KnotError::InvalidSeifert(format!("bad entry {cell:?}"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        SeifertMatrix::new(rows)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_seifert_matrices() {
        assert!(SeifertMatrix::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(SeifertMatrix::new(vec![vec![1]]).is_err());
        assert!(SeifertMatrix::new(vec![vec![1, 2], vec![0, 1]]).is_err());
    }

    #[test]
    fn alexander_of_standard_knots() {
        assert_eq!(
            SeifertMatrix::trefoil_left().alexander_poly(),
            LaurentPoly::from_coeffs([(2, 1), (1, -1), (0, 1)])
        );
        assert_eq!(SeifertMatrix::unknot().alexander_poly(), LaurentPoly::one());
        assert_eq!(
            SeifertMatrix::figure_eight().alexander_poly(),
            LaurentPoly::from_coeffs([(2, 1), (1, -3), (0, 1)])
        );
    }

    #[test]
    fn arf_values() {
        let trefoil = SeifertMatrix::trefoil_left();
        assert_eq!(trefoil.arf(), 1);
        assert_eq!(trefoil.connected_sum(&trefoil).arf(), 0);
        assert_eq!(SeifertMatrix::unknot().arf(), 0);
        // Δ(-1) = 5 for the figure eight
        assert_eq!(SeifertMatrix::figure_eight().arf(), 1);
    }

    #[test]
    fn connected_sum_multiplies_alexander() {
        let a = SeifertMatrix::trefoil_left();
        let b = SeifertMatrix::figure_eight();
        let sum = a.connected_sum(&b);
        assert_eq!(
            sum.alexander_poly(),
            a.alexander_poly().mul(&b.alexander_poly()).normalized()
        );
        assert_eq!(a.connected_sum(&SeifertMatrix::unknot()), a);
    }

    #[test]
    fn parse_round_trip() {
        let v = SeifertMatrix::trefoil_left();
        assert_eq!(SeifertMatrix::parse(&v.serialize()).unwrap(), v);
        assert_eq!(SeifertMatrix::parse("").unwrap(), SeifertMatrix::unknot());
        assert!(SeifertMatrix::parse("1,x\n0,1").is_err());
    }
}
