//! Exact arithmetic in `Z[L]`, the subring of the Grothendieck ring spanned
//! by powers of the Lefschetz class, plus rationally scaled classes.
//!
//! Every class is kept in canonical form (no trailing zero coefficients),
//! so structural equality is class equality. Rendering is stable and used
//! verbatim by the CLI and its JSON output.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Highest degree a class may reach.
pub const MAX_DEGREE: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("degree {0} exceeds the cap of {MAX_DEGREE}")]
    DegreeOverflow(usize),
    #[error("quotient class is not a Tate polynomial (remainder {remainder})")]
    InexactDivision { remainder: LPoly },
    #[error("division by the zero class")]
    DivisionByZero,
}

/// A polynomial in `L` with integer coefficients, index = degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    coeffs: Vec<BigInt>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The Lefschetz class itself.
    pub fn l() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * L^d`. Panics if `d` exceeds [`MAX_DEGREE`].
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        assert!(d <= MAX_DEGREE, "monomial degree {d} above cap");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// `L^d - L^e`, the recurring factor of group orders.
    pub fn l_pow_minus(d: usize, e: usize) -> Self {
        Self::monomial(1, d) - Self::monomial(1, e)
    }

    /// Coefficients in ascending degree; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero class.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn checked_mul(&self, other: &LPoly) -> Result<LPoly, ClassError> {
        if self.is_zero() || other.is_zero() {
            return Ok(LPoly::zero());
        }
        let deg = self.coeffs.len() + other.coeffs.len() - 2;
        if deg > MAX_DEGREE {
            return Err(ClassError::DegreeOverflow(deg));
        }
        let mut out = vec![BigInt::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(LPoly::from_coeffs(out))
    }

    pub fn checked_pow(&self, e: u32) -> Result<LPoly, ClassError> {
        let mut acc = LPoly::one();
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Product of a sequence of classes, failing on degree overflow.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a LPoly>) -> Result<LPoly, ClassError> {
        factors.into_iter().try_fold(LPoly::one(), |acc, f| acc.checked_mul(f))
    }

    pub fn scale(&self, c: &BigInt) -> LPoly {
        LPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Long division over `Z`: `self = quotient * divisor + remainder`.
    /// Stops as soon as a leading coefficient is not divisible, returning
    /// what is left as the remainder.
    pub fn div_rem(&self, divisor: &LPoly) -> Result<(LPoly, LPoly), ClassError> {
        let d_deg = divisor.degree().ok_or(ClassError::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(d_deg).max(1)];
        while rem.len() > d_deg {
            let top = rem.len() - 1;
            let c = &rem[top];
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                break;
            }
            let shift = top - d_deg;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * dc;
            }
            quot[shift] = q;
            rem.pop();
        }
        Ok((LPoly::from_coeffs(quot), LPoly::from_coeffs(rem)))
    }

    /// Exact quotient; a nonzero remainder means the quotient is not in `Z[L]`.
    pub fn exact_div(&self, divisor: &LPoly) -> Result<LPoly, ClassError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ClassError::InexactDivision { remainder: r })
        }
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Gcd of the coefficients (zero for the zero class).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl Add for &LPoly {
    type Output = LPoly;

    fn add(self, rhs: &LPoly) -> LPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        LPoly::from_coeffs(coeffs)
    }
}

impl Add for LPoly {
    type Output = LPoly;

    fn add(self, rhs: LPoly) -> LPoly {
        &self + &rhs
    }
}

impl Neg for &LPoly {
    type Output = LPoly;

    fn neg(self) -> LPoly {
        LPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LPoly {
    type Output = LPoly;

    fn neg(self) -> LPoly {
        -&self
    }
}

impl Sub for &LPoly {
    type Output = LPoly;

    fn sub(self, rhs: &LPoly) -> LPoly {
        self + &(-rhs)
    }
}

impl Sub for LPoly {
    type Output = LPoly;

    fn sub(self, rhs: LPoly) -> LPoly {
        &self - &rhs
    }
}

impl fmt::Display for LPoly {
    /// Descending powers: `L^4 - L^3 - L^2 + L`, `2*L^3 + 1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if deg == 1 {
                        f.write_str("L")?;
                    } else {
                        write!(f, "L^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A class `scalar * poly` with a reduced rational scalar. Orders such as
/// `|O_n|` carry a constant 2 that is not a power of `L`; keeping it apart
/// from the polynomial makes half-integral counting functions first-class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScaledClass {
    scalar: BigRational,
    poly: LPoly,
}

impl ScaledClass {
    pub fn new(scalar: BigRational, poly: LPoly) -> Self {
        if poly.is_zero() || scalar.is_zero() {
            return ScaledClass { scalar: BigRational::zero(), poly: LPoly::zero() };
        }
        ScaledClass { scalar, poly }
    }

    pub fn integral(poly: LPoly) -> Self {
        Self::new(BigRational::one(), poly)
    }

    pub fn with_scalar(num: i64, den: i64, poly: LPoly) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), poly)
    }

    pub fn one() -> Self {
        Self::integral(LPoly::one())
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn poly(&self) -> &LPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn denominator(&self) -> BigInt {
        self.scalar.denom().clone()
    }

    /// `Some(poly)` when the scalar is exactly 1.
    pub fn as_integral(&self) -> Option<&LPoly> {
        self.scalar.is_one().then_some(&self.poly)
    }

    /// Writes the class as `(1/d) * P` with `P` integral and `d` the scalar's
    /// denominator.
    fn over_common_denominator(&self, d: &BigInt) -> LPoly {
        let factor = &self.scalar * BigRational::from_integer(d.clone());
        debug_assert!(factor.is_integer());
        self.poly.scale(&factor.to_integer())
    }

    fn combine(&self, other: &ScaledClass, negate: bool) -> ScaledClass {
        let d = self.scalar.denom().lcm(other.scalar.denom());
        let a = self.over_common_denominator(&d);
        let b = other.over_common_denominator(&d);
        let poly = if negate { a - b } else { a + b };
        ScaledClass::new(BigRational::new(BigInt::one(), d), poly).normalized_integral_part()
    }

    /// Pulls the coefficient content into the scalar when the scalar is not
    /// already an integer, so `(1/2) * (2*L + 2)` becomes `(1) * (L + 1)`.
    fn normalized_integral_part(self) -> ScaledClass {
        if self.scalar.is_integer() || self.poly.is_zero() {
            return self;
        }
        let content = self.poly.content();
        let g = content.gcd(self.scalar.denom());
        if g.is_one() {
            return self;
        }
        let poly = LPoly::from_coeffs(self.poly.coeffs.iter().map(|c| c / &g).collect());
        ScaledClass::new(&self.scalar * BigRational::from_integer(g), poly)
    }

    pub fn checked_add(&self, other: &ScaledClass) -> ScaledClass {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &ScaledClass) -> ScaledClass {
        self.combine(other, true)
    }

    pub fn checked_mul(&self, other: &ScaledClass) -> Result<ScaledClass, ClassError> {
        Ok(ScaledClass::new(&self.scalar * &other.scalar, self.poly.checked_mul(&other.poly)?))
    }

    /// Divides polynomial parts exactly and scalars as rationals.
    pub fn scaled_div(&self, divisor: &ScaledClass) -> Result<ScaledClass, ClassError> {
        if divisor.is_zero() {
            return Err(ClassError::DivisionByZero);
        }
        let poly = self.poly.exact_div(&divisor.poly)?;
        Ok(ScaledClass::new(&self.scalar / &divisor.scalar, poly))
    }

    /// `scalar * poly(q)` as an exact rational.
    pub fn eval_at(&self, q: &BigInt) -> BigRational {
        &self.scalar * BigRational::from_integer(self.poly.eval(q))
    }

    pub fn eval_at_u64(&self, q: u64) -> BigRational {
        self.eval_at(&BigInt::from(q))
    }

    /// True when both classes define the same rational polynomial, even if
    /// the scalar/polynomial split differs.
    pub fn same_value(&self, other: &ScaledClass) -> bool {
        self.checked_sub(other).is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }
}

impl From<LPoly> for ScaledClass {
    fn from(poly: LPoly) -> Self {
        ScaledClass::integral(poly)
    }
}

impl fmt::Display for ScaledClass {
    /// `(c) * (poly)` with `c` a reduced fraction; just `poly` when `c = 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar.is_one() {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "({}) * ({})", self.scalar, self.poly)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(c: &[i64]) -> LPoly {
        LPoly::from_i64s(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn arithmetic_examples() {
        let lm1 = lp(&[-1, 1]);
        let lp1 = lp(&[1, 1]);
        assert_eq!(lm1.checked_mul(&lp1).unwrap(), lp(&[-1, 0, 1]));
        assert_eq!(lm1.checked_mul(&LPoly::zero()).unwrap(), LPoly::zero());
        let gl2 = LPoly::l_pow_minus(2, 0).checked_mul(&LPoly::l_pow_minus(2, 1)).unwrap();
        // L^4 - L^3 - L^2 + L, expanded by hand
        assert_eq!(gl2, lp(&[0, 1, -1, -1, 1]));
    }

    #[test]
    fn division_examples() {
        let lm1 = lp(&[-1, 1]);
        assert_eq!(lp(&[-1, 0, 1]).exact_div(&lm1).unwrap(), lp(&[1, 1]));
        let gl2 = lp(&[0, 1, -1, -1, 1]);
        assert_eq!(gl2.exact_div(&lm1).unwrap(), lp(&[0, -1, 0, 1]));
        match lp(&[1, 0, 1]).exact_div(&lm1) {
            Err(ClassError::InexactDivision { remainder }) => assert_eq!(remainder, LPoly::constant(2)),
            other => panic!("{other:?}"),
        }
        assert_eq!(gl2.exact_div(&LPoly::zero()), Err(ClassError::DivisionByZero));
    }

    #[test]
    fn non_monic_division() {
        // 2L^2 + 2L divides by 2L exactly; L^2 does not divide by 2L over Z
        assert_eq!(lp(&[0, 2, 2]).exact_div(&lp(&[0, 2])).unwrap(), lp(&[1, 1]));
        assert!(matches!(lp(&[0, 0, 1]).exact_div(&lp(&[0, 2])), Err(ClassError::InexactDivision { .. })));
    }

    #[test]
    fn scaled_division_examples() {
        let lm1 = lp(&[-1, 1]);
        let a = ScaledClass::integral(lp(&[-1, 0, 1]));
        let b = ScaledClass::integral(lm1.clone());
        assert_eq!(a.scaled_div(&b).unwrap(), ScaledClass::integral(lp(&[1, 1])));

        let gl2 = ScaledClass::integral(lp(&[0, 1, -1, -1, 1]));
        let o1 = ScaledClass::with_scalar(2, 1, lm1);
        let q = gl2.scaled_div(&o1).unwrap();
        assert_eq!(q, ScaledClass::with_scalar(1, 2, lp(&[0, -1, 0, 1])));
        assert_eq!(q.eval_at_u64(3), rat(12, 1));

        let p = ScaledClass::with_scalar(2, 1, lp(&[3, 0, 1]));
        assert_eq!(p.scaled_div(&p).unwrap(), ScaledClass::one());
    }

    #[test]
    fn eval_examples() {
        let sl2 = ScaledClass::integral(lp(&[0, -1, 0, 1]));
        assert_eq!(sl2.eval_at_u64(2), rat(6, 1));
        for q in 2..10 {
            assert_eq!(ScaledClass::one().eval_at_u64(q), rat(1, 1));
        }
        assert_eq!(ScaledClass::with_scalar(1, 2, lp(&[0, -1, 0, 1])).eval_at_u64(3), rat(12, 1));
    }

    #[test]
    fn eval_is_arbitrary_precision() {
        // |GL_8(F_13)| overflows 128 bits
        let mut gl8 = LPoly::one();
        for i in 0..8 {
            gl8 = gl8.checked_mul(&LPoly::l_pow_minus(8, i)).unwrap();
        }
        let value = gl8.eval(&big(13));
        let mut expected = BigInt::one();
        for i in 0..8u32 {
            expected *= big(13).pow(8) - big(13).pow(i);
        }
        assert_eq!(value, expected);
        assert!(value.bits() > 128);
    }

    #[test]
    fn rendering() {
        assert_eq!(lp(&[0, 1, -1, -1, 1]).to_string(), "L^4 - L^3 - L^2 + L");
        assert_eq!(lp(&[1, 0, 2]).to_string(), "2*L^2 + 1");
        assert_eq!(lp(&[-1]).to_string(), "-1");
        assert_eq!(lp(&[0, -3]).to_string(), "-3*L");
        assert_eq!(LPoly::zero().to_string(), "0");
        assert_eq!(ScaledClass::with_scalar(1, 2, lp(&[0, -1, 0, 1])).to_string(), "(1/2) * (L^3 - L)");
        assert_eq!(ScaledClass::with_scalar(2, 2, lp(&[1, 1])).to_string(), "L + 1");
        assert_eq!(ScaledClass::with_scalar(-1, 1, lp(&[1, 1])).to_string(), "(-1) * (L + 1)");
        assert_eq!(ScaledClass::with_scalar(2, 1, lp(&[-1, 1])).to_string(), "(2) * (L - 1)");
    }

    #[test]
    fn degree_cap() {
        let big_poly = LPoly::monomial(1, 150);
        assert_eq!(big_poly.checked_mul(&big_poly), Err(ClassError::DegreeOverflow(300)));
        assert!(LPoly::monomial(1, 100).checked_mul(&LPoly::monomial(1, 100)).is_ok());
    }

    #[test]
    fn scaled_sum_uses_common_denominator() {
        let half = ScaledClass::with_scalar(1, 2, lp(&[1, 1]));
        let sum = half.checked_add(&half);
        assert_eq!(sum, ScaledClass::integral(lp(&[1, 1])));
        let third = ScaledClass::with_scalar(1, 3, lp(&[1]));
        let s = half.checked_add(&third);
        assert_eq!(s.eval_at_u64(5), rat(3, 1) + rat(1, 3));
        assert!(half.checked_sub(&half).is_zero());
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = LPoly> {
        prop::collection::vec(-50i64..50, 0..=max_deg + 1).prop_map(|c| LPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn division_round_trip(a in arb_poly(12), b in arb_poly(8)) {
            prop_assume!(!b.is_zero());
            let prod = a.checked_mul(&b).unwrap();
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_multiplicative(a in arb_poly(10), b in arb_poly(10), q in 2i64..40) {
            let q = BigInt::from(q);
            prop_assert_eq!(a.checked_mul(&b).unwrap().eval(&q), a.eval(&q) * b.eval(&q));
            prop_assert_eq!((&a + &b).eval(&q), a.eval(&q) + b.eval(&q));
        }

        #[test]
        fn canonical_form_is_unique(a in arb_poly(10), b in arb_poly(10)) {
            let back = &(&a - &b) + &b;
            prop_assert_eq!(back.coeffs(), a.coeffs());
            prop_assert!(back.leading().is_none_or(|c| !c.is_zero()));
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(10), b in arb_poly(5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&q.checked_mul(&b).unwrap() + &r, a);
        }
    }
}
