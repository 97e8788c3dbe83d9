//! Rational functions: reduced fractions of polynomials with monic
//! denominator.  These are the coordinates of points on the curve over the
//! function field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{poly_gcd, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduces `num/den` to lowest terms with monic denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if num.spec() != den.spec() {
            return Err(Error::MixedFields);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = poly_gcd(&num, &den)?;
        let (num, den) = if g.is_constant() { (num, den) } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lead_inv = den.leading_coeff().unwrap().inv()?;
        Ok(RationalFunction { num: num.scale(&lead_inv), den: den.scale(&lead_inv) })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let one = Poly::one(p.spec());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(c: FieldElement) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn zero(spec: &FieldSpec) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(spec))
    }

    pub fn spec(&self) -> &FieldSpec {
        self.num.spec()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Degree as a rational map to P^1: `max(deg num, deg den)` on the
    /// reduced fraction; constants (including zero) have degree 0.
    pub fn degree_as_map(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Pole order at infinity: `deg num - deg den` when positive.
    pub fn pole_order_at_infinity(&self) -> i64 {
        self.num.degree().map_or(i64::MIN, |d| d as i64) - self.den.degree().unwrap() as i64
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn square(&self) -> RationalFunction {
        self * self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl std::ops::Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl std::ops::Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl std::ops::Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_degree() {
        let spec = FieldSpec::prime(7).unwrap();
        let num = Poly::from_i64_coeffs(&spec, &[-1, 0, 1]); // t^2 - 1
        let den = Poly::from_i64_coeffs(&spec, &[1, 1]); // t + 1
        let f = RationalFunction::new(num, den).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &Poly::from_i64_coeffs(&spec, &[-1, 1]));
        assert_eq!(f.degree_as_map(), 1);
    }

    #[test]
    fn monic_denominator() {
        let spec = FieldSpec::prime(7).unwrap();
        let num = Poly::from_i64_coeffs(&spec, &[1]);
        let den = Poly::from_i64_coeffs(&spec, &[0, 3]); // 3t
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.den(), &Poly::from_i64_coeffs(&spec, &[0, 1]));
        assert_eq!(f.num(), &Poly::from_i64_coeffs(&spec, &[5])); // 1/3 = 5 mod 7
        assert_eq!(f.degree_as_map(), 1);
    }

    #[test]
    fn field_operations() {
        let spec = FieldSpec::prime(13).unwrap();
        let t = RationalFunction::from_poly(Poly::x(&spec));
        let one = RationalFunction::from_poly(Poly::one(&spec));
        // t + 1/t = (t^2 + 1)/t
        let f = &t + &t.inv().unwrap();
        assert_eq!(f.num(), &Poly::from_i64_coeffs(&spec, &[1, 0, 1]));
        assert_eq!(f.den(), &Poly::from_i64_coeffs(&spec, &[0, 1]));
        assert_eq!(f.degree_as_map(), 2);
        // (f - f) = 0, f * 1/f = 1
        assert!((&f - &f).is_zero());
        assert_eq!(f.div(&f).unwrap(), one);
    }
}
