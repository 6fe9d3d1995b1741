//! The truncated ring `R_m = Scalar[t] / (t^{m+1})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// `c_0 + c_1 t + ... + c_m t^m` with all higher powers of `t` discarded.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RmElement {
    coeffs: Vec<Scalar>,
}

impl RmElement {
    pub fn zero(m: usize) -> Self {
        RmElement {
            coeffs: vec![Scalar::zero(); m + 1],
        }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(Scalar::one(), m)
    }

    pub fn constant(c: Scalar, m: usize) -> Self {
        let mut r = Self::zero(m);
        r.coeffs[0] = c;
        r
    }

    /// Builds from coefficients; missing ones are zero and extra ones are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, m: usize) -> Self {
        coeffs.resize(m + 1, Scalar::zero());
        RmElement { coeffs }
    }

    /// The truncation order `m`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Scalar {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    /// True when only the `t^0` coefficient may be nonzero.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    /// Smallest `j` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RmElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_order(other)?;
        Ok(RmElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_order(other)?;
        let m = self.order();
        let mut out = Self::zero(m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; exists iff the constant coefficient is nonzero.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let c0 = self.coeffs[0].inv()?;
        let m = self.order();
        let mut out = Self::zero(m);
        out.coeffs[0] = c0.clone();
        for n in 1..=m {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = -(&acc * &c0);
        }
        Ok(out)
    }

    fn same_order(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order() != other.order() {
            return Err(AlgebraError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

/// `q^{kt} = sum_j (kL)^j t^j / j!` truncated at order `m`.
pub fn jet_exp(k: i64, m: usize) -> RmElement {
    let kl = &Scalar::from_int(k) * &Scalar::log_q();
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut term = Scalar::one();
    for j in 0..=m {
        if j > 0 {
            term = &(&term * &kl) * &Scalar::ratio(1, j as i64);
        }
        coeffs.push(term.clone());
    }
    RmElement { coeffs }
}

impl fmt::Display for RmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*t", c)?,
                _ => write!(f, "({})*t^{}", c, j)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rm[{}]({})", self.order(), self)
    }
}

impl Add for &RmElement {
    type Output = RmElement;
    fn add(self, rhs: &RmElement) -> RmElement {
        self.checked_add(rhs).expect("jet orders differ")
    }
}

impl Sub for &RmElement {
    type Output = RmElement;
    fn sub(self, rhs: &RmElement) -> RmElement {
        self.checked_add(&-rhs).expect("jet orders differ")
    }
}

impl Mul for &RmElement {
    type Output = RmElement;
    fn mul(self, rhs: &RmElement) -> RmElement {
        self.checked_mul(rhs).expect("jet orders differ")
    }
}

impl Neg for &RmElement {
    type Output = RmElement;
    fn neg(self) -> RmElement {
        RmElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_examples() {
        assert!(jet_exp(0, 3).is_one());
        let l = Scalar::log_q();
        assert_eq!(
            jet_exp(1, 1),
            RmElement::from_coeffs(vec![Scalar::one(), l.clone()], 1)
        );
        assert_eq!(
            jet_exp(2, 2),
            RmElement::from_coeffs(
                vec![Scalar::one(), &Scalar::from_int(2) * &l, &Scalar::from_int(2) * &(&l * &l)],
                2
            )
        );
    }

    #[test]
    fn exp_inverse() {
        for m in 0..4 {
            for k in -5..=5 {
                assert!((&jet_exp(k, m) * &jet_exp(-k, m)).is_one());
                assert_eq!(jet_exp(k, m).inv().unwrap(), jet_exp(-k, m));
            }
        }
    }

    #[test]
    fn order_mismatch() {
        assert_eq!(
            RmElement::one(1).checked_mul(&RmElement::one(2)),
            Err(AlgebraError::OrderMismatch(1, 2))
        );
    }
}
