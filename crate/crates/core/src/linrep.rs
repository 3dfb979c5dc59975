//! Integer linear representations `f(n) = w · A_{e_0} ⋯ A_{e_d} · v` over the
//! base-`b` digits `e_0, …, e_d` of `n` (least significant first).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeral::{self, DigitString};
use crate::{Base, BigCount, Error, Result};

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Shape("matrix has no rows".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.get(k, j);
                }
            }
        }
        Matrix { dim: d, entries }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, row: &[BigInt]) -> Vec<BigInt> {
        let d = self.dim;
        (0..d)
            .map(|j| (0..d).map(|i| &row[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply(&self, col: &[BigInt]) -> Vec<BigInt> {
        self.rows()
            .map(|row| row.iter().zip(col).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &Matrix) -> bool {
        self.dim == other.dim && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

/// The data `(A_0, …, A_{b-1}, w, v)` of a `b`-regular sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRep {
    base: Base,
    matrices: Vec<Matrix>,
    w: Vec<BigInt>,
    v: Vec<BigInt>,
}

impl LinearRep {
    pub fn new(base: Base, matrices: Vec<Matrix>, w: Vec<BigInt>, v: Vec<BigInt>) -> Result<Self> {
        if matrices.len() != base.get() as usize {
            return Err(Error::Shape(format!(
                "base {base} needs {base} matrices, got {}",
                matrices.len()
            )));
        }
        let dim = w.len();
        if dim == 0 {
            return Err(Error::Shape("dimension must be positive".into()));
        }
        if v.len() != dim {
            return Err(Error::Shape(format!(
                "w has length {dim} but v has length {}",
                v.len()
            )));
        }
        if let Some(i) = matrices.iter().position(|m| m.dim() != dim) {
            return Err(Error::Shape(format!(
                "A_{i} is {0}x{0}, expected {dim}x{dim}",
                matrices[i].dim()
            )));
        }
        Ok(LinearRep {
            base,
            matrices,
            w,
            v,
        })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, digit: u32) -> &Matrix {
        &self.matrices[digit as usize]
    }

    pub fn w(&self) -> &[BigInt] {
        &self.w
    }

    pub fn v(&self) -> &[BigInt] {
        &self.v
    }

    /// Row vector `w · A_{e_0} ⋯ A_{e_{len-1}}`.
    pub fn prefix_row(&self, digits: &[u32]) -> Result<Vec<BigInt>> {
        let b = self.base.get();
        digits.iter().try_fold(self.w.clone(), |row, &e| {
            if e >= b {
                return Err(Error::DigitOutOfRange { digit: e, base: b });
            }
            Ok(self.matrices[e as usize].left_apply(&row))
        })
    }

    /// `w · A_{e_0} ⋯ A_{e_d} · v`, folding from the least significant digit.
    pub fn evaluate(&self, d: &DigitString) -> Result<BigInt> {
        self.evaluate_digits(d.digits())
    }

    pub fn evaluate_digits(&self, digits: &[u32]) -> Result<BigInt> {
        let row = self.prefix_row(digits)?;
        Ok(row.iter().zip(&self.v).map(|(a, x)| a * x).sum())
    }

    /// Evaluation at `n`, using `O(log_b n)` vector-matrix products.
    pub fn evaluate_at(&self, n: &BigCount) -> BigInt {
        let digits = numeral::to_digits(n, self.base);
        self.evaluate_digits(digits.digits())
            .expect("canonical digits are in range")
    }
}

/// The two-dimensional representation of `s_b`:
/// `A_0 = [[1,0],[1,1]]`, `A_1 = [[1,1],[0,1]]`, `A_i = [[0,1],[0,1]]` for
/// `i >= 2`, `w = (1,0)`, `v = (0,1)ᵀ`.
pub fn stern_rep(base: Base) -> LinearRep {
    let a0 = Matrix::from_i64(&[&[1, 0], &[1, 1]]).unwrap();
    let a1 = Matrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
    let high = Matrix::from_i64(&[&[0, 1], &[0, 1]]).unwrap();
    let mut matrices = vec![a0, a1];
    matrices.resize(base.get() as usize, high);
    LinearRep::new(
        base,
        matrices,
        vec![BigInt::one(), BigInt::zero()],
        vec![BigInt::zero(), BigInt::one()],
    )
    .expect("stern representation is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn stern_rep_shape() {
        let r2 = stern_rep(base(2));
        assert_eq!(r2.matrices().len(), 2);
        assert_eq!(
            r2.matrix(0),
            &Matrix::from_i64(&[&[1, 0], &[1, 1]]).unwrap()
        );
        assert_eq!(
            r2.matrix(1),
            &Matrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap()
        );
        assert_eq!(r2.w(), &[int(1), int(0)]);
        assert_eq!(r2.v(), &[int(0), int(1)]);

        let r3 = stern_rep(base(3));
        assert_eq!(
            r3.matrix(2),
            &Matrix::from_i64(&[&[0, 1], &[0, 1]]).unwrap()
        );
        for b in 2..20 {
            assert_eq!(stern_rep(base(b)).matrices().len(), b as usize);
        }
    }

    #[test]
    fn evaluate_examples() {
        let rep = stern_rep(base(4));
        let empty = DigitString::new(base(4), vec![]).unwrap();
        assert_eq!(rep.evaluate(&empty).unwrap(), int(0));
        let one = DigitString::new(base(4), vec![1]).unwrap();
        assert_eq!(rep.evaluate(&one).unwrap(), int(1));

        let r2 = stern_rep(base(2));
        let d = numeral::to_digits(&BigUint::from(19u32), base(2));
        assert_eq!(r2.evaluate(&d).unwrap(), int(7));
        assert_eq!(r2.evaluate_at(&BigUint::from(5u32)), int(3));
        assert_eq!(r2.evaluate_at(&BigUint::from(0u32)), int(0));
        assert_eq!(
            stern_rep(base(3)).evaluate_at(&BigUint::from(10u32)),
            int(3)
        );
    }

    #[test]
    fn digit_out_of_range() {
        let rep = stern_rep(base(2));
        let d = DigitString::new(base(3), vec![1, 2]).unwrap();
        assert_eq!(
            rep.evaluate(&d),
            Err(Error::DigitOutOfRange { digit: 2, base: 2 })
        );
        // Digits valid in both bases are fine.
        let d = DigitString::new(base(3), vec![1, 1]).unwrap();
        assert_eq!(rep.evaluate(&d).unwrap(), int(2));
    }

    #[test]
    fn a0_fixes_v() {
        let rep = stern_rep(base(5));
        assert_eq!(rep.matrix(0).apply(rep.v()), rep.v());
    }

    #[test]
    fn high_digits_dominated_by_a1() {
        let rep = stern_rep(base(9));
        for i in 2..9 {
            assert!(rep.matrix(i).dominated_by(rep.matrix(1)));
        }
    }

    #[test]
    fn shape_errors() {
        let m = Matrix::identity(2);
        let err = LinearRep::new(
            base(3),
            vec![m.clone(), m.clone()],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        );
        assert!(matches!(err, Err(Error::Shape(_))));
        let err = LinearRep::new(
            base(2),
            vec![m.clone(), Matrix::identity(3)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        );
        assert!(matches!(err, Err(Error::Shape(_))));
        let err = LinearRep::new(
            base(2),
            vec![m.clone(), m],
            vec![int(1), int(0)],
            vec![int(0)],
        );
        assert!(matches!(err, Err(Error::Shape(_))));
        assert!(Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3)]]).is_err());
    }

    #[test]
    fn negative_entries_are_allowed() {
        // f(n) = (-1)^(number of ones in binary n)
        let a0 = Matrix::identity(1);
        let a1 = Matrix::from_i64(&[&[-1]]).unwrap();
        let rep = LinearRep::new(base(2), vec![a0, a1], vec![int(1)], vec![int(1)]).unwrap();
        assert_eq!(rep.evaluate_at(&BigUint::from(7u32)), int(-1));
        assert_eq!(rep.evaluate_at(&BigUint::from(6u32)), int(1));
    }

    #[test]
    fn matrix_product_associates_with_evaluation() {
        let rep = stern_rep(base(3));
        let digits = [1u32, 0, 2, 1, 1, 0, 1];
        let product = digits
            .iter()
            .fold(Matrix::identity(2), |acc, &e| acc.mul(rep.matrix(e)));
        let row = product.left_apply(rep.w());
        let direct: BigInt = row.iter().zip(rep.v()).map(|(a, x)| a * x).sum();
        assert_eq!(rep.evaluate_digits(&digits).unwrap(), direct);
    }
}
