//! The power law `H(x) = ((b^2 - 1)^{log_b φ} / sqrt 5) · x^{log_b φ}` and the
//! maximal-order constant `c_b = φ^{log_b (b^2 - 1)} / sqrt 5 = H(1)`.

use num_bigint::BigInt;

use crate::real::{golden_ratio, sqrt5};
use crate::{Base, Error, Real, Result};

/// `H` for one base, with its exponent and scale precomputed.
#[derive(Debug, Clone)]
pub struct PowerLaw {
    base: Base,
    /// `log_b φ`
    exponent: Real,
    /// `(b^2 - 1)^{log_b φ} / sqrt 5`
    scale: Real,
    exponent_f64: f64,
    scale_f64: f64,
}

impl PowerLaw {
    pub fn new(base: Base) -> Result<Self> {
        let b = BigInt::from(base.get());
        let ln_b = Real::from_int(b.clone()).ln()?;
        let exponent = golden_ratio().ln()?.div(&ln_b)?;
        let scale = Real::from_int(&b * &b - 1).powf(&exponent)?.div(&sqrt5())?;
        Ok(PowerLaw {
            base,
            exponent_f64: exponent.to_f64(),
            scale_f64: scale.to_f64(),
            exponent,
            scale,
        })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn exponent(&self) -> &Real {
        &self.exponent
    }

    /// `H(1) = c_b`.
    pub fn scale(&self) -> &Real {
        &self.scale
    }

    /// `H(x)` for `x > 0`.
    pub fn eval(&self, x: &Real) -> Result<Real> {
        if !x.is_certainly_positive() {
            return Err(Error::NotPositive("power-law argument"));
        }
        Ok(self.scale.mul(&x.powf(&self.exponent)?))
    }

    /// Machine-precision `H(x)`; relative error around `1e-15` for `x <= 2^53`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.scale_f64 * libm::pow(x, self.exponent_f64)
    }
}

/// `H(x)` for a single evaluation.
pub fn power_law_bound(base: Base, x: &Real) -> Result<Real> {
    PowerLaw::new(base)?.eval(x)
}

/// `c_b = φ^{log_b (b^2 - 1)} / sqrt 5`.
///
/// Also evaluates the equal form `(b^2 - 1)^{log_b φ} / sqrt 5` and fails if
/// the two enclosures do not overlap.
pub fn maximal_order_constant(base: Base) -> Result<Real> {
    let b = BigInt::from(base.get());
    let ln_b = Real::from_int(b.clone()).ln()?;
    let phi = golden_ratio();
    let root5 = sqrt5();

    let log_b_b2m1 = Real::from_int(&b * &b - 1).ln()?.div(&ln_b)?;
    let constant = phi.powf(&log_b_b2m1)?.div(&root5)?;

    let log_b_phi = phi.ln()?.div(&ln_b)?;
    let swapped = Real::from_int(&b * &b - 1).powf(&log_b_phi)?.div(&root5)?;

    if constant.certain_cmp(&swapped).is_some() {
        return Err(Error::Precision("maximal-order constant"));
    }
    Ok(constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigRational;

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn tol(digits: usize) -> BigRational {
        BigRational::new(1.into(), num_traits::pow(BigInt::from(10), digits))
    }

    // mpmath, 60 digits: phi^{log_b(b^2-1)}/sqrt(5)
    const C_B: [(u32, &str); 5] = [
        (2, "0.958854190824767383209094304204"),
        (3, "1.11194820708862758574403142771"),
        (4, "1.14488251035016451116033926909"),
        (5, "1.15661677920615515617233192213"),
        (10, "1.16836378763539244340781974083"),
    ];

    #[test]
    fn constant_matches_reference() {
        for (b, expected) in C_B {
            let c = maximal_order_constant(base(b)).unwrap();
            assert_eq!(c.to_decimal(30), expected, "b={b}");
        }
    }

    #[test]
    fn constant_is_h_at_one() {
        for b in 2..12 {
            let c = maximal_order_constant(base(b)).unwrap();
            let h1 = power_law_bound(base(b), &Real::from_int(1)).unwrap();
            assert!(c.within(&h1, &tol(80)), "b={b}");
        }
    }

    #[test]
    fn h_at_inverse_b2m1_is_inverse_sqrt5() {
        for b in 2..12i64 {
            let x = Real::from_ratio(&rat(1, b * b - 1));
            let v = power_law_bound(base(b as u32), &x).unwrap();
            assert_eq!(v.to_decimal(30), "0.447213595499957939281834733746");
        }
    }

    #[test]
    fn power_law_scaling() {
        let phi2 = golden_ratio().mul(&golden_ratio());
        for b in [2u32, 3, 7] {
            let law = PowerLaw::new(base(b)).unwrap();
            for x in [rat(1, 3), rat(5, 1), rat(1234567, 89)] {
                let x = Real::from_ratio(&x);
                let x2 = x.mul(&Real::from_int(b * b));
                let ratio = law.eval(&x2).unwrap().div(&law.eval(&x).unwrap()).unwrap();
                assert!(ratio.within(&phi2, &tol(80)));
            }
        }
    }

    #[test]
    fn h_at_two() {
        // 3^{log_2 phi} / sqrt 5
        let v = power_law_bound(base(2), &Real::from_int(1)).unwrap();
        assert_eq!(v.to_decimal(6), "0.958854");
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(power_law_bound(base(2), &Real::from_int(0)).is_err());
        assert!(power_law_bound(base(2), &Real::from_int(-1)).is_err());
    }

    #[test]
    fn f64_path_agrees() {
        let law = PowerLaw::new(base(3)).unwrap();
        for m in [1u64, 17, 1000, 999_999] {
            let exact = law.eval(&Real::from_int(m)).unwrap().to_f64();
            assert!((law.eval_f64(m as f64) / exact - 1.0).abs() < 1e-13);
        }
    }
}
