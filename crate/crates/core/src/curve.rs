//! The elliptic curve `y^2 = x^3 + S(t)` over the rational function field:
//! chord-tangent group law, complex multiplication by `rho`, Eisenstein
//! scalar multiplication, the `sqrt(-3) = 1 + 2*rho` isogeny in closed form,
//! the naive (= canonical) height with its per-place profile, the Hermitian
//! height pairing, and fiber diagnostics.
//!
//! A note on closed-form isogenies: the degree-3 map
//! `(x, y) -> ((3x^3 - 4y^2)/(3x^2), sqrt(-3) (9x^3 y - 8y^3)/(9x^3))`
//! is implemented and checked against the group law.  A closed-form
//! *doubling* y-coordinate sometimes quoted for this family,
//! `-(27x^6 - 9x^3y^2 + y^4)/(8y^3)`, is wrong: at (2, 3) on `y^2 = x^3 + 1`
//! it yields -1161/216 while the chord-tangent law gives 2*(2,3) = (0, 1).
//! The expansion consistent with the group law is
//! `-(27x^6 - 36x^3y^2 + 8y^4)/(8y^3)`; only the x-coordinate
//! `(9x^4 - 8xy^2)/(4y^2)` of the quoted form is correct.  This crate uses
//! the group law for doubling throughout.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};

use crate::eisenstein::{EisensteinInt, EisensteinRat};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{
    distinct_irreducible_factors, is_squarefree, squarefree_decomposition, Poly,
};
use crate::ratfun::RationalFunction;

#[derive(Debug)]
struct CurveData {
    spec: FieldSpec,
    s: Poly,
    validated: bool,
}

/// The curve `y^2 = x^3 + S(t)`; cheap to clone.
#[derive(Clone, Debug)]
pub struct Curve(Arc<CurveData>);

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.spec == other.0.spec && self.0.s == other.0.s)
    }
}

impl Eq for Curve {}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({}) over {}", self.0.s, self.0.spec)
    }
}

impl Curve {
    /// Validated family member: `S` squarefree of degree 5 or 6.
    pub fn new(s: Poly) -> Result<Curve> {
        let deg = s.degree();
        if deg != Some(5) && deg != Some(6) {
            return Err(Error::BadCurveDegree(deg));
        }
        if !is_squarefree(&s)? {
            return Err(Error::RepeatedRoots);
        }
        let spec = s.spec().clone();
        Ok(Curve(Arc::new(CurveData { spec, s, validated: true })))
    }

    /// Skips the degree-5/6 and squarefreeness validation.  The group law
    /// and heights remain valid for any nonzero `S`; used for spot checks on
    /// constant-coefficient models such as `y^2 = x^3 + 1`.
    pub fn unvalidated(s: Poly) -> Result<Curve> {
        if s.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let spec = s.spec().clone();
        Ok(Curve(Arc::new(CurveData { spec, s, validated: false })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn s(&self) -> &Poly {
        &self.0.s
    }

    pub fn is_validated(&self) -> bool {
        self.0.validated
    }

    pub fn identity(&self) -> CurvePoint {
        CurvePoint { curve: self.clone(), value: PointValue::Identity }
    }

    /// Affine point with an exact on-curve check.
    pub fn affine(&self, x: RationalFunction, y: RationalFunction) -> Result<CurvePoint> {
        if x.spec() != &self.0.spec || y.spec() != &self.0.spec {
            return Err(Error::MixedFields);
        }
        let p = CurvePoint { curve: self.clone(), value: PointValue::Affine { x, y } };
        if !p.on_curve() {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    pub fn affine_from_polys(&self, x: Poly, y: Poly) -> Result<CurvePoint> {
        self.affine(RationalFunction::from_poly(x), RationalFunction::from_poly(y))
    }

    /// Vanishing orders of the discriminant `-432 S^2` at the bad places.
    ///
    /// Finite places are reported per irreducible factor of `S` (fully split
    /// over finite fields; over `Q(rho)` the root locus is one block), each
    /// with valuation 2 (type II); the place at infinity carries
    /// `2*(6 - deg S)`.  The total is always 12.
    pub fn fiber_valuations(&self) -> Result<FiberReport> {
        if !self.0.validated {
            return Err(Error::BadCurveDegree(self.0.s.degree()));
        }
        let factors = distinct_irreducible_factors(&self.0.s)?;
        let finite: Vec<FiberPlace> = factors
            .into_iter()
            .map(|f| {
                let degree = f.degree().unwrap();
                FiberPlace { factor: f, degree, valuation: 2 }
            })
            .collect();
        let deg_s = self.0.s.degree().unwrap();
        let infinity_valuation = 2 * (6 - deg_s as u64);
        let total =
            finite.iter().map(|p| p.degree as u64 * p.valuation).sum::<u64>() + infinity_valuation;
        if total != 12 {
            return Err(Error::InvariantViolation(format!(
                "discriminant valuations sum to {total}, expected 12"
            )));
        }
        Ok(FiberReport { finite, infinity_valuation, total })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPlace {
    pub factor: Poly,
    pub degree: usize,
    pub valuation: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub finite: Vec<FiberPlace>,
    pub infinity_valuation: u64,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PointValue {
    Identity,
    Affine { x: RationalFunction, y: RationalFunction },
}

/// A point of `E(k(t))`: the identity or an affine pair of rational
/// functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    curve: Curve,
    value: PointValue,
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            PointValue::Identity => write!(f, "O"),
            PointValue::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl CurvePoint {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.value, PointValue::Identity)
    }

    pub fn xy(&self) -> Option<(&RationalFunction, &RationalFunction)> {
        match &self.value {
            PointValue::Identity => None,
            PointValue::Affine { x, y } => Some((x, y)),
        }
    }

    /// Exact check of `y^2 = x^3 + S(t)`.
    pub fn on_curve(&self) -> bool {
        match &self.value {
            PointValue::Identity => true,
            PointValue::Affine { x, y } => {
                let s = RationalFunction::from_poly(self.curve.0.s.clone());
                &y.square() - &(&(&x.square() * x) + &s) == RationalFunction::zero(x.spec())
            }
        }
    }

    pub fn negate(&self) -> CurvePoint {
        match &self.value {
            PointValue::Identity => self.clone(),
            PointValue::Affine { x, y } => CurvePoint {
                curve: self.curve.clone(),
                value: PointValue::Affine { x: x.clone(), y: -y },
            },
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, q: &CurvePoint) -> Result<CurvePoint> {
        if self.curve != q.curve {
            return Err(Error::MixedCurves);
        }
        let (x1, y1) = match &self.value {
            PointValue::Identity => return Ok(q.clone()),
            PointValue::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match &q.value {
            PointValue::Identity => return Ok(self.clone()),
            PointValue::Affine { x, y } => (x, y),
        };
        let lambda = if x1 == x2 {
            if &-y2 == y1 {
                return Ok(self.curve.identity());
            }
            // Doubling: lambda = 3 x^2 / (2 y).
            let spec = x1.spec().clone();
            let three_x2 = &x1.square() * &RationalFunction::constant(spec.from_u64(3));
            let two_y = y1 * &RationalFunction::constant(spec.from_u64(2));
            three_x2.div(&two_y)?
        } else {
            (y2 - y1).div(&(x2 - x1))?
        };
        let x3 = &(&lambda.square() - x1) - x2;
        let y3 = &(&lambda * &(x1 - &x3)) - y1;
        let out = CurvePoint {
            curve: self.curve.clone(),
            value: PointValue::Affine { x: x3, y: y3 },
        };
        debug_assert!(out.on_curve(), "group law left the curve");
        Ok(out)
    }

    pub fn sub(&self, q: &CurvePoint) -> Result<CurvePoint> {
        self.add(&q.negate())
    }

    pub fn double(&self) -> Result<CurvePoint> {
        self.add(self)
    }

    /// Integer scalar multiplication by double-and-add.
    pub fn mul_int(&self, n: i64) -> Result<CurvePoint> {
        self.mul_bigint(&BigInt::from(n))
    }

    pub fn mul_bigint(&self, n: &BigInt) -> Result<CurvePoint> {
        if n.is_zero() {
            return Ok(self.curve.identity());
        }
        let base = if n.is_negative() { self.negate() } else { self.clone() };
        let mag = n.abs();
        let bits = mag.bits();
        let mut acc = self.curve.identity();
        for i in (0..bits).rev() {
            acc = acc.double()?;
            if mag.bit(i) {
                acc = acc.add(&base)?;
            }
        }
        Ok(acc)
    }

    /// Complex multiplication: `rho (x, y) = (rho x, y)` with the field's
    /// canonical cube root.
    pub fn rho_action(&self) -> CurvePoint {
        match &self.value {
            PointValue::Identity => self.clone(),
            PointValue::Affine { x, y } => {
                let rho = RationalFunction::constant(self.curve.0.spec.primitive_cube_root());
                CurvePoint {
                    curve: self.curve.clone(),
                    value: PointValue::Affine { x: &rho * x, y: y.clone() },
                }
            }
        }
    }

    /// `(a + b*rho) P = a P + b (rho P)`: the Z[rho]-module structure.
    pub fn mul_eisenstein(&self, z: &EisensteinInt) -> Result<CurvePoint> {
        let ap = self.mul_bigint(&z.a)?;
        let brp = self.rho_action().mul_bigint(&z.b)?;
        ap.add(&brp)
    }

    /// The degree-3 isogeny `sqrt(-3) = 1 + 2*rho` in closed form:
    /// `(x, y) -> ((3x^3 - 4y^2)/(3x^2), sqrt(-3) (9x^3 y - 8y^3)/(9x^3))`.
    /// Errors with [`Error::KernelPoint`] when `x = 0`.
    pub fn sqrt3_closed_form(&self) -> Result<CurvePoint> {
        let (x, y) = match &self.value {
            PointValue::Identity => return Ok(self.clone()),
            PointValue::Affine { x, y } => (x, y),
        };
        if x.is_zero() {
            return Err(Error::KernelPoint);
        }
        let spec = self.curve.0.spec.clone();
        let c = |n: i64| RationalFunction::constant(spec.from_i64(n));
        let x2 = x.square();
        let x3 = &x2 * x;
        let y2 = y.square();
        let new_x = (&(&c(3) * &x3) - &(&c(4) * &y2)).div(&(&c(3) * &x2))?;
        let rho = spec.primitive_cube_root();
        let sqrt_m3 = &spec.one() + &(&spec.from_u64(2) * &rho);
        let num = &(&c(9) * &(&x3 * y)) - &(&c(8) * &(&y2 * y));
        let new_y = &RationalFunction::constant(sqrt_m3) * &num.div(&(&c(9) * &x3))?;
        let out = CurvePoint {
            curve: self.curve.clone(),
            value: PointValue::Affine { x: new_x, y: new_y },
        };
        if !out.on_curve() {
            return Err(Error::InvariantViolation("sqrt(-3) image off curve".into()));
        }
        Ok(out)
    }

    /// Naive height `max(deg x, (2/3) deg y)` with its place profile.
    /// Equals the canonical height for this family.
    pub fn naive_height(&self) -> Result<(u64, HeightProfile)> {
        let (x, y) = match &self.value {
            PointValue::Identity => {
                return Ok((0, HeightProfile { finite: Vec::new(), at_infinity: 0, total: 0 }))
            }
            PointValue::Affine { x, y } => (x, y),
        };
        let dx = x.degree_as_map() as u64;
        let dy = y.degree_as_map() as u64;
        let h3 = (3 * dx).max(2 * dy);
        if h3 % 3 != 0 {
            return Err(Error::InvariantViolation(format!(
                "height max(deg x, 2/3 deg y) = {h3}/3 is not an integer"
            )));
        }
        let h = h3 / 3;
        if h % 2 != 0 {
            return Err(Error::InvariantViolation(format!("height {h} is odd")));
        }

        // Finite poles: den x = prod f^(2n), den y = prod f^(3n) over the
        // same factors with the same n.
        let (_, x_factors) = if x.den().is_constant() {
            (self.curve.0.spec.one(), Vec::new())
        } else {
            squarefree_decomposition(x.den())?
        };
        let (_, y_factors) = if y.den().is_constant() {
            (self.curve.0.spec.one(), Vec::new())
        } else {
            squarefree_decomposition(y.den())?
        };
        let mut finite: Vec<(Poly, u64)> = Vec::new();
        for (f, m) in &x_factors {
            if m % 2 != 0 {
                return Err(Error::InvariantViolation(format!(
                    "pole multiplicity {m} of x is odd at {f}"
                )));
            }
            finite.push((f.clone(), (m / 2) as u64));
        }
        let mut from_y: Vec<(Poly, u64)> = Vec::new();
        for (f, m) in &y_factors {
            if m % 3 != 0 {
                return Err(Error::InvariantViolation(format!(
                    "pole multiplicity {m} of y is not a multiple of 3 at {f}"
                )));
            }
            from_y.push((f.clone(), (m / 3) as u64));
        }
        let key = |v: &[(Poly, u64)]| {
            let mut k: Vec<(u64, Vec<FieldElement>)> =
                v.iter().map(|(f, n)| (*n, f.coeffs().to_vec())).collect();
            k.sort();
            k
        };
        if key(&finite) != key(&from_y) {
            return Err(Error::InvariantViolation(
                "x and y pole loci disagree; malformed point".into(),
            ));
        }

        let finite_sum: u64 = finite.iter().map(|(f, n)| f.degree().unwrap() as u64 * n).sum();
        if h / 2 < finite_sum {
            return Err(Error::InvariantViolation(
                "finite pole contributions exceed the height".into(),
            ));
        }
        let at_infinity = h / 2 - finite_sum;

        if self.curve.0.validated {
            // Cross-check n_0 against the pole orders at infinity.
            let ex = x.pole_order_at_infinity();
            let ey = y.pole_order_at_infinity();
            let expected = if 3 * ex > 6 || 2 * ey > 6 {
                if 3 * ex != 2 * ey {
                    return Err(Error::InvariantViolation(
                        "unbalanced pole orders at infinity".into(),
                    ));
                }
                (ex / 2) as u64
            } else {
                1
            };
            if at_infinity != expected || at_infinity == 0 {
                return Err(Error::InvariantViolation(format!(
                    "infinite-place multiplicity {at_infinity} != expected {expected}"
                )));
            }
        }

        Ok((h, HeightProfile { finite, at_infinity, total: h }))
    }

    /// Canonical height (equal to the naive height for this family).
    pub fn height(&self) -> Result<u64> {
        Ok(self.naive_height()?.0)
    }

    /// True iff the coordinates are polynomials of degree <= 2 and <= 3.
    pub fn is_minimal_shape(&self) -> bool {
        match &self.value {
            PointValue::Identity => false,
            PointValue::Affine { x, y } => {
                x.is_polynomial()
                    && y.is_polynomial()
                    && x.num().degree().unwrap_or(0) <= 2
                    && y.num().degree().unwrap_or(0) <= 3
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile {
    /// `(monic factor, n)`: every geometric root of the factor is a pole of
    /// `(x, y)` of orders `(2n, 3n)`.
    pub finite: Vec<(Poly, u64)>,
    pub at_infinity: u64,
    /// `2 * (sum of deg-weighted n's + n_0)` = the naive height.
    pub total: u64,
}

/// The Hermitian height pairing `H(P, Q)`: linear in `P`, conjugate-linear
/// in `Q`, with `H(P, P)` the canonical height.
///
/// Computed from `n_s = h(P + rho^s Q) - h(P) - h(Q)` for `s = 0, 1, 2`
/// (whose sum vanishes) by solving `2 Re(conj(rho)^s H) = n_s`, giving
/// `H = (2n_0 + n_1)/3 + ((n_0 + 2n_1)/3) rho`.
pub fn hermitian_pairing(p: &CurvePoint, q: &CurvePoint) -> Result<EisensteinRat> {
    if p.curve() != q.curve() {
        return Err(Error::MixedCurves);
    }
    let hp = p.height()? as i64;
    let hq = q.height()? as i64;
    let mut n = [0i64; 3];
    let mut rq = q.clone();
    for (s, slot) in n.iter_mut().enumerate() {
        if s > 0 {
            rq = rq.rho_action();
        }
        *slot = p.add(&rq)?.height()? as i64 - hp - hq;
    }
    if n[0] + n[1] + n[2] != 0 {
        return Err(Error::InvariantViolation(format!(
            "pairing defect triple {n:?} does not sum to zero"
        )));
    }
    let third = |v: i64| BigRational::new(BigInt::from(v), BigInt::from(3));
    Ok(EisensteinRat::new(third(2 * n[0] + n[1]), third(n[0] + 2 * n[1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::EisensteinRat;

    fn q_rho() -> FieldSpec {
        FieldSpec::eisenstein_rational()
    }

    /// `S = t^6 + 1` over `Q(rho)`.
    fn t6_curve() -> Curve {
        let spec = q_rho();
        Curve::new(Poly::from_i64_coeffs(&spec, &[1, 0, 0, 0, 0, 0, 1])).unwrap()
    }

    fn rf(p: Poly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    /// `(-t^2, 1)`.
    fn base_point(c: &Curve) -> CurvePoint {
        let spec = c.spec().clone();
        c.affine_from_polys(
            Poly::from_i64_coeffs(&spec, &[0, 0, -1]),
            Poly::one(&spec),
        )
        .unwrap()
    }

    /// `(-1, t^3)`.
    fn second_point(c: &Curve) -> CurvePoint {
        let spec = c.spec().clone();
        c.affine_from_polys(
            Poly::from_i64_coeffs(&spec, &[-1]),
            Poly::from_i64_coeffs(&spec, &[0, 0, 0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn on_curve_examples() {
        let c = t6_curve();
        assert!(base_point(&c).on_curve());
        assert!(second_point(&c).on_curve());
        let spec = c.spec().clone();
        let t = Poly::x(&spec);
        assert!(c.affine_from_polys(t.clone(), t).is_err());
        assert!(c.identity().on_curve());
    }

    #[test]
    fn add_identity_and_inverse() {
        let c = t6_curve();
        let p = base_point(&c);
        assert_eq!(p.add(&c.identity()).unwrap(), p);
        assert_eq!(c.identity().add(&p).unwrap(), p);
        assert!(p.add(&p.negate()).unwrap().is_identity());
        assert_eq!(p.negate().negate(), p);
    }

    #[test]
    fn collinear_cm_triple() {
        // (-t^2, 1) + (-rho t^2, 1) = (-rho^2 t^2, -1): the three CM twists
        // lie on the line y = 1 and sum to zero.
        let c = t6_curve();
        let p = base_point(&c);
        let q = p.rho_action();
        let sum = p.add(&q).unwrap();
        let spec = c.spec().clone();
        let rho = spec.primitive_cube_root();
        let rho2 = &rho * &rho;
        let want_x = Poly::from_coeffs(
            &spec,
            vec![spec.zero(), spec.zero(), -&rho2],
        );
        let want = c
            .affine(rf(want_x), rf(Poly::constant(spec.from_i64(-1))))
            .unwrap();
        assert_eq!(sum, want);
        // and the full triple sums to the identity
        let r = q.rho_action();
        assert!(p.add(&q).unwrap().add(&r).unwrap().is_identity());
    }

    #[test]
    fn rho_has_order_three_and_preserves_height() {
        let c = t6_curve();
        let p = base_point(&c);
        let r3 = p.rho_action().rho_action().rho_action();
        assert_eq!(r3, p);
        assert_eq!(p.rho_action().height().unwrap(), p.height().unwrap());
    }

    #[test]
    fn heights_of_minimal_points() {
        let c = t6_curve();
        assert_eq!(c.identity().height().unwrap(), 0);
        assert_eq!(base_point(&c).height().unwrap(), 2);
        assert_eq!(second_point(&c).height().unwrap(), 2);
        let (h, profile) = base_point(&c).naive_height().unwrap();
        assert_eq!(h, 2);
        assert!(profile.finite.is_empty());
        assert_eq!(profile.at_infinity, 1);
    }

    #[test]
    fn sqrt3_mul_and_height() {
        let c = t6_curve();
        let p = base_point(&c);
        let via_formula = p.sqrt3_closed_form().unwrap();
        let via_group_law = p.mul_eisenstein(&EisensteinInt::new(1, 2)).unwrap();
        assert_eq!(via_formula, via_group_law);
        // x-coordinate (-3t^6 - 4)/(3t^4)
        let spec = c.spec().clone();
        let num = Poly::from_i64_coeffs(&spec, &[-4, 0, 0, 0, 0, 0, -3]);
        let den = Poly::from_i64_coeffs(&spec, &[0, 0, 0, 0, 3]);
        let want_x = RationalFunction::new(num, den).unwrap();
        assert_eq!(via_formula.xy().unwrap().0, &want_x);
        // h((1+2rho) P) = 3 h(P) = 6, with x-degree 6
        assert_eq!(via_formula.height().unwrap(), 6);
    }

    #[test]
    fn sqrt3_kernel_error() {
        // (0, 1) on the unvalidated curve y^2 = x^3 + 1 is in the kernel.
        let spec = q_rho();
        let c = Curve::unvalidated(Poly::one(&spec)).unwrap();
        let p = c.affine_from_polys(Poly::zero(&spec), Poly::one(&spec)).unwrap();
        assert_eq!(p.sqrt3_closed_form().unwrap_err(), Error::KernelPoint);
    }

    #[test]
    fn constant_curve_spot_checks() {
        // On y^2 = x^3 + 1: sqrt(-3)(2,3) = (-1, 0) and 2*(2,3) = (0, 1).
        let spec = q_rho();
        let c = Curve::unvalidated(Poly::one(&spec)).unwrap();
        let p = c
            .affine_from_polys(Poly::constant(spec.from_u64(2)), Poly::constant(spec.from_u64(3)))
            .unwrap();
        let s3p = p.sqrt3_closed_form().unwrap();
        let want = c
            .affine_from_polys(Poly::constant(spec.from_i64(-1)), Poly::zero(&spec))
            .unwrap();
        assert_eq!(s3p, want);
        // group-law route: rho P - rho^2 P
        let alt = p.rho_action().sub(&p.rho_action().rho_action()).unwrap();
        assert_eq!(alt, s3p);
        let dbl = p.double().unwrap();
        let want2 = c
            .affine_from_polys(Poly::zero(&spec), Poly::one(&spec))
            .unwrap();
        assert_eq!(dbl, want2);
    }

    #[test]
    fn quoted_doubling_y_coordinate_is_wrong() {
        // The x-coordinate (9x^4 - 8xy^2)/(4y^2) matches the group law at
        // (2,3) on y^2 = x^3 + 1; the quoted y-numerator 27x^6 - 9x^3y^2 + y^4
        // does not (it gives -1161/216, not 1), while 27x^6 - 36x^3y^2 + 8y^4
        // does.
        let spec = q_rho();
        let x = BigRational::from_integer(BigInt::from(2));
        let y = BigRational::from_integer(BigInt::from(3));
        let x3 = &x * &x * &x;
        let x4 = &x3 * &x;
        let x6 = &x3 * &x3;
        let y2 = &y * &y;
        let y3 = &y2 * &y;
        let y4 = &y2 * &y2;
        let four = BigRational::from_integer(BigInt::from(4));
        let eight = BigRational::from_integer(BigInt::from(8));
        let nine = BigRational::from_integer(BigInt::from(9));
        let x_formula = (&nine * &x4 - &eight * &(&x * &y2)) / (&four * &y2);
        assert!(x_formula.is_zero());
        let quoted = -(&(BigRational::from_integer(BigInt::from(27)) * &x6)
            - &(&nine * &(&x3 * &y2))
            + &y4)
            / (&eight * &y3);
        assert_eq!(quoted, BigRational::new(BigInt::from(-1161), BigInt::from(216)));
        let corrected = -(&(BigRational::from_integer(BigInt::from(27)) * &x6)
            - &(BigRational::from_integer(BigInt::from(36)) * &(&x3 * &y2))
            + &(&eight * &y4))
            / (&eight * &y3);
        assert_eq!(corrected, BigRational::from_integer(BigInt::from(1)));
        let _ = spec;
    }

    #[test]
    fn isogeny_degree_height_laws() {
        let c = t6_curve();
        for p in [base_point(&c), second_point(&c)] {
            let h = p.height().unwrap();
            assert_eq!(p.double().unwrap().height().unwrap(), 4 * h);
            assert_eq!(p.mul_int(3).unwrap().height().unwrap(), 9 * h);
            assert_eq!(
                p.mul_eisenstein(&EisensteinInt::new(1, 2)).unwrap().height().unwrap(),
                3 * h
            );
        }
    }

    #[test]
    fn pairing_examples() {
        let c = t6_curve();
        let p = base_point(&c);
        let q = second_point(&c);
        // H(P, P) = height
        assert_eq!(hermitian_pairing(&p, &p).unwrap(), EisensteinRat::from_i64(2, 0));
        // h(P + Q) = 4 via the chord with slope (t^2+t+1)/(t+1)
        assert_eq!(p.add(&q).unwrap().height().unwrap(), 4);
        // the multiset {h(P + rho^s Q)} sums to 12
        let mut multiset: Vec<u64> = (0..3)
            .map(|s| {
                let mut rq = q.clone();
                for _ in 0..s {
                    rq = rq.rho_action();
                }
                p.add(&rq).unwrap().height().unwrap()
            })
            .collect();
        multiset.sort();
        assert_eq!(multiset.iter().sum::<u64>(), 12);
        assert!(multiset == vec![4, 4, 4] || multiset == vec![2, 4, 6]);
        // conjugate symmetry
        let hpq = hermitian_pairing(&p, &q).unwrap();
        let hqp = hermitian_pairing(&q, &p).unwrap();
        assert_eq!(hpq.conj(), hqp);
        // H / (2/sqrt(-3)) is an Eisenstein integer:
        // H * sqrt(-3)/2 = H * (1 + 2 rho)/2
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let scaled = (&hpq * &EisensteinRat::from_i64(1, 2)).scale(&half);
        assert!(scaled.to_int().is_some(), "H*(sqrt-3)/2 = {scaled} not integral");
    }

    #[test]
    fn fiber_valuations_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        let sextic = Curve::new(Poly::from_i64_coeffs(&f7, &[1, 0, 0, 0, 0, 0, 1])).unwrap();
        let rep = sextic.fiber_valuations().unwrap();
        assert_eq!(rep.infinity_valuation, 0);
        assert_eq!(rep.total, 12);
        let geometric_roots: usize = rep.finite.iter().map(|p| p.degree).sum();
        assert_eq!(geometric_roots, 6);
        assert!(rep.finite.iter().all(|p| p.valuation == 2));

        let quintic = Curve::new(Poly::from_i64_coeffs(&f7, &[1, 0, 0, 0, 0, 1])).unwrap();
        let rep = quintic.fiber_valuations().unwrap();
        assert_eq!(rep.infinity_valuation, 2);
        assert_eq!(rep.total, 12);
        let geometric_roots: usize = rep.finite.iter().map(|p| p.degree).sum();
        assert_eq!(geometric_roots, 5);
    }

    #[test]
    fn group_law_associativity_sampled() {
        // Small-height points over F_7: use CM twists and sums of the two
        // generators plus pseudo-random unit multiples.
        let f7 = FieldSpec::prime(7).unwrap();
        let c = Curve::new(Poly::from_i64_coeffs(&f7, &[1, 0, 0, 0, 0, 0, 1])).unwrap();
        let p = c
            .affine_from_polys(Poly::from_i64_coeffs(&f7, &[0, 0, -1]), Poly::one(&f7))
            .unwrap();
        let q = c
            .affine_from_polys(
                Poly::from_i64_coeffs(&f7, &[-1]),
                Poly::from_i64_coeffs(&f7, &[0, 0, 0, 1]),
            )
            .unwrap();
        let mut pool = vec![c.identity(), p.clone(), q.clone()];
        for s in 1..3 {
            let mut tp = p.clone();
            let mut tq = q.clone();
            for _ in 0..s {
                tp = tp.rho_action();
                tq = tq.rho_action();
            }
            pool.push(tp.negate());
            pool.push(tq);
        }
        pool.push(p.add(&q).unwrap());
        pool.push(p.sub(&q).unwrap());
        let mut state = 12345u64;
        let mut pick = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pool[(state >> 33) as usize % pool.len()].clone()
        };
        for _ in 0..100 {
            let (a, b, d) = (pick(), pick(), pick());
            let left = a.add(&b).unwrap().add(&d).unwrap();
            let right = a.add(&b.add(&d).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn heights_are_even_and_zero_only_for_identity() {
        let c = t6_curve();
        let p = base_point(&c);
        let q = second_point(&c);
        for point in [
            p.clone(),
            q.clone(),
            p.add(&q).unwrap(),
            p.double().unwrap(),
            p.mul_int(3).unwrap(),
            p.sub(&q).unwrap(),
        ] {
            let h = point.height().unwrap();
            assert_eq!(h % 2, 0);
            assert!(h > 0);
        }
    }
}
