//! Eisenstein integers `a + b*rho` and their rationals.
//!
//! `rho` is a primitive cube root of unity, so `rho^2 = -1 - rho`, the
//! conjugate of `a + b*rho` is `(a - b) - b*rho`, and the norm is
//! `a^2 - a*b + b^2`.  The ramified prime is `sqrt(-3) = 1 + 2*rho`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, Signed, Zero};

/// An Eisenstein integer `a + b*rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        EisensteinInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisensteinInt::new(1, 0)
    }

    pub fn rho() -> Self {
        EisensteinInt::new(0, 1)
    }

    /// `sqrt(-3) = 1 + 2*rho`, the generator of the ramified prime.
    pub fn sqrt_m3() -> Self {
        EisensteinInt::new(1, 2)
    }

    /// The six units `+-1, +-rho, +-rho^2`.
    pub fn units() -> [EisensteinInt; 6] {
        [
            EisensteinInt::new(1, 0),
            EisensteinInt::new(0, 1),
            EisensteinInt::new(-1, -1), // rho^2
            EisensteinInt::new(-1, 0),
            EisensteinInt::new(0, -1),
            EisensteinInt::new(1, 1), // -rho^2
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        EisensteinInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// `a^2 - a*b + b^2 >= 0`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Residue in `Z[rho]/(sqrt(-3)) = F_3`, as one of `0, 1, 2`.
    /// `rho = 1 (mod sqrt(-3))`, so the residue is `a + b mod 3`.
    pub fn residue_mod_sqrt3(&self) -> u8 {
        (&self.a + &self.b).mod_floor_u8(3)
    }

    /// Residue pair in `Z[rho]/2 = F_4`, as `(a mod 2, b mod 2)`.
    pub fn residue_mod_two(&self) -> (u8, u8) {
        (self.a.mod_floor_u8(2), self.b.mod_floor_u8(2))
    }

    /// Cube roots of `self` in `Z[rho]`, if any exist.
    ///
    /// The three roots differ by unit cube roots of unity; all are returned.
    /// Located by a float estimate of the principal root and verified
    /// exactly; falls back to a norm-bounded search for inputs too large
    /// for `f64` (not reachable at the coefficient sizes used here).
    pub fn cube_roots(&self) -> Vec<EisensteinInt> {
        if self.is_zero() {
            return vec![EisensteinInt::zero()];
        }
        let n = self.norm();
        let nr = n.cbrt();
        if &nr * &nr * &nr != n {
            return Vec::new();
        }
        if let Some(root) = self.cube_root_by_float() {
            let mut out: Vec<EisensteinInt> = [
                root.clone(),
                &root * &EisensteinInt::rho(),
                &root * &EisensteinInt::new(-1, -1),
            ]
            .into_iter()
            .collect();
            out.sort();
            return out;
        }
        self.cube_roots_by_norm_search(&nr)
    }

    fn cube_root_by_float(&self) -> Option<EisensteinInt> {
        let (fa, fb) = (big_to_f64(&self.a)?, big_to_f64(&self.b)?);
        // Embed with rho = (-1 + i*sqrt(3))/2.
        let re = fa - fb / 2.0;
        let im = fb * 3f64.sqrt() / 2.0;
        let r = (re * re + im * im).sqrt().cbrt();
        let theta = im.atan2(re) / 3.0;
        for k in 0..3 {
            let ang = theta + 2.0 * std::f64::consts::PI * (k as f64) / 3.0;
            let (wre, wim) = (r * ang.cos(), r * ang.sin());
            // Back to (a, b): b = 2*im/sqrt(3), a = re + b/2.
            let bf = 2.0 * wim / 3f64.sqrt();
            let af = wre + bf / 2.0;
            for da in [-1i64, 0, 1] {
                for db in [-1i64, 0, 1] {
                    let cand = EisensteinInt::new(
                        BigInt::from(af.round() as i64 + da),
                        BigInt::from(bf.round() as i64 + db),
                    );
                    if &(&(&cand * &cand) * &cand) == self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    fn cube_roots_by_norm_search(&self, target_norm: &BigInt) -> Vec<EisensteinInt> {
        let mut out = Vec::new();
        // |b| <= 2*sqrt(n/3) when a^2 - a*b + b^2 = n.
        let scaled: BigInt = target_norm * BigInt::from(4) / BigInt::from(3);
        let bound: BigInt = scaled.sqrt() + BigInt::from(1);
        let mut b = -bound.clone();
        while b <= bound {
            // a = (b +- sqrt(4n - 3b^2)) / 2
            let disc: BigInt = target_norm * BigInt::from(4) - &b * &b * BigInt::from(3);
            if disc.sign() != Sign::Minus {
                let s = disc.sqrt();
                if &s * &s == disc {
                    for a2 in [&b + &s, &b - &s] {
                        if (&a2).mod_floor_u8(2) == 0 {
                            let cand = EisensteinInt { a: a2 / 2, b: b.clone() };
                            if &(&(&cand * &cand) * &cand) == self {
                                out.push(cand);
                            }
                        }
                    }
                }
            }
            b += 1;
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*rho", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*rho", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*rho", self.a, self.b)
        }
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        // (a + b rho)(c + d rho) = (ac - bd) + (ad + bc - bd) rho
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        EisensteinInt { a: ac - &bd, b: ad + bc - bd }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -&self.a, b: -&self.b }
    }
}

trait ModFloorU8 {
    fn mod_floor_u8(&self, m: u8) -> u8;
}

impl ModFloorU8 for BigInt {
    fn mod_floor_u8(&self, m: u8) -> u8 {
        use num::Integer;
        let r = self.mod_floor(&BigInt::from(m));
        let digits = r.to_u32_digits().1;
        if digits.is_empty() { 0 } else { digits[0] as u8 }
    }
}

/// An Eisenstein rational `a + b*rho` with `a, b` in `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinRat {
    pub a: BigRational,
    pub b: BigRational,
}

impl EisensteinRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        EisensteinRat { a, b }
    }

    pub fn from_int(z: &EisensteinInt) -> Self {
        EisensteinRat {
            a: BigRational::from_integer(z.a.clone()),
            b: BigRational::from_integer(z.b.clone()),
        }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        EisensteinRat::from_int(&EisensteinInt::new(a, b))
    }

    pub fn zero() -> Self {
        EisensteinRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        EisensteinRat { a: &self.a - &self.b, b: -&self.b }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Real part under the standard embedding (`Re rho = -1/2`).
    pub fn real_part(&self) -> BigRational {
        &self.a - &self.b / BigRational::from_integer(BigInt::from(2))
    }

    pub fn inv(&self) -> Option<EisensteinRat> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(EisensteinRat { a: c.a / &n, b: c.b / &n })
    }

    /// Exact conversion to an Eisenstein integer when both parts are integral.
    pub fn to_int(&self) -> Option<EisensteinInt> {
        if self.a.is_integer() && self.b.is_integer() {
            Some(EisensteinInt { a: self.a.to_integer(), b: self.b.to_integer() })
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> EisensteinRat {
        EisensteinRat { a: &self.a * c, b: &self.b * c }
    }
}

impl fmt::Display for EisensteinRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*rho", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*rho", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*rho", self.a, self.b)
        }
    }
}

impl Add for &EisensteinRat {
    type Output = EisensteinRat;
    fn add(self, rhs: &EisensteinRat) -> EisensteinRat {
        EisensteinRat { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &EisensteinRat {
    type Output = EisensteinRat;
    fn sub(self, rhs: &EisensteinRat) -> EisensteinRat {
        EisensteinRat { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &EisensteinRat {
    type Output = EisensteinRat;
    fn mul(self, rhs: &EisensteinRat) -> EisensteinRat {
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        EisensteinRat { a: ac - &bd, b: ad + bc - bd }
    }
}

impl Neg for &EisensteinRat {
    type Output = EisensteinRat;
    fn neg(self) -> EisensteinRat {
        EisensteinRat { a: -&self.a, b: -&self.b }
    }
}

fn big_to_f64(x: &BigInt) -> Option<f64> {
    use num::ToPrimitive;
    let f = x.to_f64()?;
    if f.is_finite() { Some(f) } else { None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_satisfies_minimal_polynomial() {
        let rho = EisensteinInt::rho();
        let sq = &rho * &rho;
        let sum = &(&sq + &rho) + &EisensteinInt::one();
        assert!(sum.is_zero());
    }

    #[test]
    fn sqrt_m3_squares_to_minus_three() {
        let s = EisensteinInt::sqrt_m3();
        assert_eq!(&s * &s, EisensteinInt::new(-3, 0));
        assert_eq!(s.norm(), BigInt::from(3));
    }

    #[test]
    fn units_have_norm_one_and_are_distinct() {
        let units = EisensteinInt::units();
        for u in &units {
            assert_eq!(u.norm(), BigInt::from(1));
        }
        let mut sorted: Vec<_> = units.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn residues_mod_sqrt3() {
        assert_eq!(EisensteinInt::sqrt_m3().residue_mod_sqrt3(), 0);
        assert_eq!(EisensteinInt::rho().residue_mod_sqrt3(), 1);
        assert_eq!(EisensteinInt::new(-1, 0).residue_mod_sqrt3(), 2);
        assert_eq!(EisensteinInt::new(0, -1).residue_mod_sqrt3(), 2); // -rho = -1
    }

    #[test]
    fn cube_roots_of_cubes() {
        for (a, b) in [(2i64, 3i64), (-5, 1), (0, 2), (7, 0), (-4, -9)] {
            let z = EisensteinInt::new(a, b);
            let c = &(&z * &z) * &z;
            let roots = c.cube_roots();
            assert_eq!(roots.len(), 3, "cube of {z} should have 3 roots");
            assert!(roots.contains(&z));
            for r in &roots {
                assert_eq!(&(r * r) * r, c);
            }
        }
    }

    #[test]
    fn cube_roots_absent() {
        // norm 2 is not a cube in Z
        assert!(EisensteinInt::new(1, -1).cube_roots().is_empty());
        // norm is a cube but the element is not: 2 has norm 4... use 2+0rho, norm 4 -> reject
        assert!(EisensteinInt::new(2, 0).cube_roots().is_empty());
    }

    #[test]
    fn rat_inverse() {
        let z = EisensteinRat::from_i64(3, -2);
        let w = z.inv().unwrap();
        let p = &z * &w;
        assert_eq!(p, EisensteinRat::from_i64(1, 0));
    }

    #[test]
    fn real_part_of_rho() {
        let r = EisensteinRat::from_i64(0, 1);
        assert_eq!(r.real_part(), BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }
}
