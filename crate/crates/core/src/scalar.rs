//! Exact scalars: the rational function field `Q(q, s, L, s2, s3)`.
//!
//! A [`Scalar`] is stored as `num / den` where `num` is a Laurent polynomial and
//! `den` is a monic polynomial (lexicographic leading term) that is coprime to
//! `num` and divisible by no variable. Under this normalization every field
//! element has exactly one representation, so equality, ordering and hashing
//! are structural. Laurent monomials in `q` (the overwhelmingly common case)
//! keep `den == 1` and never touch the gcd.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::AlgebraError;
use crate::poly::{var_index, Exponents, MPoly, NVARS, VARS, ZERO_EXP};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

/// Index of `q` in [`VARS`].
pub const Q: usize = 0;
/// Index of `s` in [`VARS`].
pub const S: usize = 1;
/// Index of `L` (the formal logarithm of `q`) in [`VARS`].
pub const LOG_Q: usize = 2;

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar {
            num: MPoly::constant(r),
            den: MPoly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// The variable with index `i` in [`VARS`].
    pub fn var(i: usize) -> Self {
        Scalar {
            num: MPoly::var(i),
            den: MPoly::one(),
        }
    }

    pub fn symbol(name: &str) -> Option<Self> {
        var_index(name).map(Self::var)
    }

    pub fn q() -> Self {
        Self::var(Q)
    }

    pub fn s() -> Self {
        Self::var(S)
    }

    pub fn log_q() -> Self {
        Self::var(LOG_Q)
    }

    /// `c * q^k` as a Laurent monomial.
    pub fn q_pow(k: i64) -> Self {
        let mut e = ZERO_EXP;
        e[Q] = k as i32;
        Scalar {
            num: MPoly::monomial(e, BigRational::one()),
            den: MPoly::one(),
        }
    }

    /// Builds `num / den` from arbitrary Laurent polynomials.
    pub fn from_fraction(num: MPoly, den: MPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // Push the monomial part of the denominator into the numerator.
        let (dm, den) = den.split_monomial();
        let neg: Exponents = std::array::from_fn(|i| -dm[i]);
        let mut num = num.shift(&neg);
        let mut den = den;
        if !den.is_constant() {
            let (nm, nrest) = num.split_monomial();
            let g = MPoly::gcd(&nrest, &den);
            if !g.is_one() {
                num = nrest.div_exact(&g).expect("gcd divides").shift(&nm);
                den = den.div_exact(&g).expect("gcd divides");
            }
        }
        let lc = den.leading_coeff().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value is a rational number.
    pub fn is_rational(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.num.constant_value())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// True when the denominator is trivial (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (m, rest) = self.num.split_monomial();
        let neg: Exponents = std::array::from_fn(|i| -m[i]);
        let num = self.den.shift(&neg);
        let lc = rest.leading_coeff().clone().recip();
        Ok(Scalar {
            num: num.scale(&lc),
            den: rest.scale(&lc),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, AlgebraError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, AlgebraError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.den.is_one() {
            return Ok(Scalar {
                num: self.num.pow(k as u32),
                den: MPoly::one(),
            });
        }
        Ok(Scalar {
            num: self.num.pow(k as u32),
            den: self.den.pow(k as u32),
        })
    }

    /// Power with a nonnegative exponent, or a negative one on a nonzero base.
    /// Panics only on `0^k` with `k < 0`.
    pub fn powi(&self, k: i64) -> Self {
        self.pow(k).expect("negative power of zero")
    }

    /// Returns `k` when `self / other == q^k` exactly.
    pub fn q_power_ratio(&self, other: &Scalar) -> Result<Option<i64>, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Err(AlgebraError::ZeroArgument("q_power_ratio"));
        }
        let r = self.checked_div(other)?;
        if !r.den.is_one() || !r.num.is_monomial() {
            return Ok(None);
        }
        let (e, c) = r.num.leading();
        if !c.is_one() || (0..NVARS).any(|i| i != Q && e[i] != 0) {
            return Ok(None);
        }
        Ok(Some(e[Q] as i64))
    }

    /// Substitutes a rational value for a symbol.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Result<Self, AlgebraError> {
        let num = self.num.substitute(var, value);
        let den = self.den.substitute(var, value);
        Self::from_fraction(num, den)
    }

    /// Splits into integer-coefficient polynomials `(n, d)` with positive
    /// exponents only, `d` having positive leading coefficient.
    fn display_parts(&self) -> (MPoly, MPoly) {
        let m = self.num.min_exponents();
        let shift: Exponents = std::array::from_fn(|i| -(m[i].min(0)));
        let n = self.num.shift(&shift);
        let d = self.den.shift(&shift);
        let f = crate::poly::joint_content(&[&n, &d]);
        let inv = f.recip();
        (n.scale(&inv), d.scale(&inv))
    }

    /// True when the printed form can be used as a factor without parentheses.
    pub fn is_atomic(&self) -> bool {
        let (n, d) = self.display_parts();
        d.is_one() && n.len() <= 1
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.display_parts();
        if d.is_one() {
            return write!(f, "{}", n.fmt_terms());
        }
        let ns = n.fmt_terms();
        let ns = if n.len() > 1 { format!("({})", ns) } else { ns };
        let ds = d.fmt_terms();
        let d_simple = d.len() == 1 && {
            let (e, c) = d.leading();
            let nvars = e.iter().filter(|&&k| k != 0).count();
            nvars == 0 || (c.is_one() && nvars == 1)
        };
        if d_simple {
            write!(f, "{}/{}", ns, ds)
        } else {
            write!(f, "{}/({})", ns, ds)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar {
            num: a.num.add(&b.num),
            den: MPoly::one(),
        };
    }
    if a.den == b.den {
        return Scalar::normalize(a.num.add(&b.num), a.den.clone());
    }
    let g = MPoly::gcd(&a.den, &b.den);
    let ca = b.den.div_exact(&g).expect("gcd divides");
    let cb = a.den.div_exact(&g).expect("gcd divides");
    let num = a.num.mul(&ca).add(&b.num.mul(&cb));
    let den = a.den.mul(&ca);
    Scalar::normalize(num, den)
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar {
            num: a.num.mul(&b.num),
            den: MPoly::one(),
        };
    }
    // Cross-cancel before multiplying.
    let (am, an) = a.num.split_monomial();
    let (bm, bn) = b.num.split_monomial();
    let g1 = MPoly::gcd(&an, &b.den);
    let g2 = MPoly::gcd(&bn, &a.den);
    let an = an.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = bn.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    let mono: Exponents = std::array::from_fn(|i| am[i] + bm[i]);
    let num = an.mul(&bn).shift(&mono);
    let den = ad.mul(&bd);
    let lc = den.leading_coeff().clone();
    if lc.is_one() {
        Scalar { num, den }
    } else {
        let inv = lc.recip();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| add_impl(a, &-b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add_impl(self, &-rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_impl(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Orders scalars by their printed form; used only to make outputs deterministic
/// in a human-friendly way.
pub fn display_order(a: &Scalar, b: &Scalar) -> Ordering {
    a.to_string().cmp(&b.to_string())
}

/// Name of a symbol index.
pub fn symbol_name(i: usize) -> &'static str {
    VARS[i]
}

/// Field operation selector used by the command line `parse` command and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Outcome of [`field_op`]: scalar results for arithmetic, booleans for equality.
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, AlgebraError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
        FieldOp::Neg => -a,
    })
}
