//! Univariate polynomials over any [`FieldSpec`] field.
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial is the empty sequence.  Besides the ring operations this
//! module provides monic gcd, squarefreeness, Yun squarefree decomposition
//! (with the char-p fallback through the inverse Frobenius), exact square
//! and cube root extraction, and the "constant times an r-th power"
//! classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(spec: &FieldSpec) -> Poly {
        Poly { spec: spec.clone(), coeffs: Vec::new() }
    }

    pub fn one(spec: &FieldSpec) -> Poly {
        Poly::constant(spec.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let spec = c.spec().clone();
        Poly::from_coeffs(&spec, vec![c])
    }

    /// The monomial `t`.
    pub fn x(spec: &FieldSpec) -> Poly {
        Poly::from_coeffs(spec, vec![spec.zero(), spec.one()])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(spec: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        for c in &coeffs {
            assert_eq!(c.spec(), spec, "mixed field specs");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { spec: spec.clone(), coeffs }
    }

    pub fn from_i64_coeffs(spec: &FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() { None } else { Some(self.coeffs.len() - 1) }
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.spec);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.spec.from_u64(i as u64) * c)
            .collect();
        Poly::from_coeffs(&self.spec, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::from_coeffs(&self.spec, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder; errors on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.spec != self.spec {
            return Err(Error::MixedFields);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        let db = d.coeffs.len();
        if r.len() < db {
            return Ok((Poly::zero(&self.spec), self.clone()));
        }
        let inv_lead = d.leading_coeff().unwrap().inv()?;
        let mut q = vec![self.spec.zero(); r.len() - db + 1];
        while r.len() >= db {
            let coef = r.last().unwrap() * &inv_lead;
            let shift = r.len() - db;
            for (j, dj) in d.coeffs.iter().enumerate() {
                let sub = &coef * dj;
                r[shift + j] = &r[shift + j] - &sub;
            }
            q[shift] = coef;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
        }
        Ok((Poly::from_coeffs(&self.spec, q), Poly::from_coeffs(&self.spec, r)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "inexact polynomial division: {self} by {d}"
            )));
        }
        Ok(q)
    }

}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.spec, rhs.spec, "mixed field specs");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.spec, coeffs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.spec, rhs.spec, "mixed field specs");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.spec, coeffs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.spec, rhs.spec, "mixed field specs");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.spec, coeffs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.spec, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.spec() != b.spec() {
        return Err(Error::MixedFields);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.divrem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// True iff `gcd(s, s')` is constant.  Errors on the zero polynomial.
pub fn is_squarefree(s: &Poly) -> Result<bool> {
    if s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = poly_gcd(s, &s.derivative())?;
    Ok(g.is_constant())
}

/// Yun squarefree decomposition: `f = unit * prod_i base_i^(mult_i)` with the
/// bases monic, squarefree, and pairwise coprime.  In characteristic `p` the
/// part with vanishing derivative is peeled off as a `p`-th power through the
/// inverse Frobenius and handled recursively.
pub fn squarefree_decomposition(f: &Poly) -> Result<(FieldElement, Vec<(Poly, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading_coeff().unwrap().clone();
    let mut factors = Vec::new();
    decompose_monic(&f.monic(), 1, &mut factors)?;
    factors.sort_by_key(|(_, m)| *m);
    Ok((unit, factors))
}

fn decompose_monic(f: &Poly, outer: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let d = f.derivative();
    if d.is_zero() {
        let (root, exp) = pth_power_root(f)?;
        return decompose_monic(&root, outer * exp, out);
    }
    let mut c = poly_gcd(f, &d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_constant() {
        let y = poly_gcd(&w, &c)?;
        let z = w.div_exact(&y)?;
        if !z.is_constant() {
            out.push((z.monic(), outer * i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_constant() {
        // Remaining p-th power part (characteristic p only).
        let (root, exp) = pth_power_root(&c)?;
        decompose_monic(&root, outer * exp, out)?;
    }
    Ok(())
}

/// For `f = g(t^p)` over a finite field, returns `(h, p)` with `h^p = f`.
fn pth_power_root(f: &Poly) -> Result<(Poly, u32)> {
    let spec = f.spec().clone();
    let p = spec.characteristic();
    if p == 0 {
        return Err(Error::InvariantViolation(
            "zero derivative for a nonconstant polynomial in characteristic 0".into(),
        ));
    }
    let deg = f.degree().unwrap();
    if deg % p as usize != 0 {
        return Err(Error::InvariantViolation("derivative vanished unexpectedly".into()));
    }
    let mut coeffs = Vec::with_capacity(deg / p as usize + 1);
    for i in 0..=deg {
        let c = f.coeff(i);
        if i % p as usize == 0 {
            coeffs.push(c.pth_root());
        } else if !c.is_zero() {
            return Err(Error::InvariantViolation("derivative vanished unexpectedly".into()));
        }
    }
    Ok((Poly::from_coeffs(&spec, coeffs), p as u32))
}

/// Exact `r`-th root (`r` in {2, 3}), leading coefficient included.
///
/// Returns the candidate whose leading coefficient is canonically smallest
/// among the valid roots, or `None` when `f` is not an exact `r`-th power.
pub fn exact_power_root(f: &Poly, r: u32) -> Option<Poly> {
    assert!(r == 2 || r == 3, "only square and cube roots are supported");
    let spec = f.spec().clone();
    if f.is_zero() {
        return Some(Poly::zero(&spec));
    }
    let deg = f.degree().unwrap();
    if deg % r as usize != 0 {
        return None;
    }
    let d = deg / r as usize;
    let lc = f.leading_coeff().unwrap();
    // sqrt/cbrt already return the canonically smallest valid constant root.
    let c_root = if r == 2 { lc.sqrt()? } else { lc.cbrt()? };
    let fm = f.monic();
    // Monic r-th root by descending coefficient matching: the coefficient of
    // t^((r-1)d + j) in g^r is r*a_j plus terms in higher coefficients.
    let mut g = {
        let mut coeffs = vec![spec.zero(); d + 1];
        coeffs[d] = spec.one();
        Poly::from_coeffs(&spec, coeffs)
    };
    let r_inv = spec.from_u64(r as u64).inv().ok()?;
    for j in (0..d).rev() {
        let gr = g.pow(r);
        let idx = (r as usize - 1) * d + j;
        let defect = &fm.coeff(idx) - &gr.coeff(idx);
        let aj = &defect * &r_inv;
        if !aj.is_zero() {
            let mut coeffs: Vec<FieldElement> =
                (0..=d).map(|i| g.coeff(i)).collect();
            coeffs[j] = &coeffs[j] + &aj;
            g = Poly::from_coeffs(&spec, coeffs);
        }
    }
    let root = g.scale(&c_root);
    if root.pow(r) == *f { Some(root) } else { None }
}

/// `f = constant * base^r` classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerClassification {
    /// True when the constant is 1, i.e. `f` itself is an exact power.
    pub is_exact_power: bool,
    pub constant: FieldElement,
    /// Monic.
    pub base: Poly,
}

/// Classifies `f` as `constant * base^r` (base monic) when every irreducible
/// multiplicity of `f` is divisible by `r`; computed from the squarefree
/// decomposition, no factorization into irreducibles.
pub fn constant_power_class(f: &Poly, r: u32) -> Option<PowerClassification> {
    assert!(r == 2 || r == 3, "only squares and cubes are classified");
    if f.is_zero() {
        return None;
    }
    let (unit, factors) = squarefree_decomposition(f).ok()?;
    let spec = f.spec().clone();
    let mut base = Poly::one(&spec);
    for (g, m) in &factors {
        if m % r != 0 {
            return None;
        }
        base = &base * &g.pow(m / r);
    }
    debug_assert_eq!(&base.pow(r).scale(&unit), f);
    Some(PowerClassification { is_exact_power: unit.is_one(), constant: unit, base })
}

// --- factorization into irreducibles over finite fields --------------------

/// Distinct irreducible factors of a squarefree polynomial over a finite
/// field (distinct-degree then Cantor-Zassenhaus equal-degree splitting with
/// a fixed-seed generator, so results are deterministic).  Over `Q(rho)` no
/// splitting is attempted: the monic input is returned as a single block.
pub fn distinct_irreducible_factors(f: &Poly) -> Result<Vec<Poly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_squarefree(f)? {
        return Err(Error::RepeatedRoots);
    }
    let spec = f.spec().clone();
    if spec.kind() == FieldKind::EisensteinRational {
        return Ok(vec![f.monic()]);
    }
    let q = spec.order().expect("finite");
    let mut factors = Vec::new();
    let mut rest = f.monic();
    let x = Poly::x(&spec);
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            // What remains is irreducible.
            factors.push(rest.clone());
            break;
        }
        h = pow_mod_poly(&h, q, &rest);
        let g = poly_gcd(&(&h - &x), &rest)?;
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_split(&g, d, q, &mut factors)?;
            rest = rest.div_exact(&g)?;
            h = h.divrem(&rest)?.1;
        }
    }
    factors.sort_by(|a, b| poly_sort_key(a).cmp(&poly_sort_key(b)));
    Ok(factors)
}

fn poly_sort_key(p: &Poly) -> (usize, Vec<FieldElement>) {
    (p.coeffs().len(), p.coeffs().to_vec())
}

/// Splits a product of distinct degree-`d` irreducibles.
fn equal_degree_split(g: &Poly, d: usize, q: u128, out: &mut Vec<Poly>) -> Result<()> {
    let deg = g.degree().unwrap();
    if deg == d {
        out.push(g.monic());
        return Ok(());
    }
    let spec = g.spec().clone();
    // (q^d - 1) / 2
    let e = {
        let mut acc = num::BigUint::from(1u32);
        for _ in 0..d {
            acc *= q;
        }
        (acc - 1u32) / 2u32
    };
    // Deterministic candidate walk: the counter's base-q digits are the
    // coefficients, skipping constants.  Cantor-Zassenhaus succeeds for at
    // least half of all candidates, so the walk stays short.
    let mut counter: u128 = q;
    for _attempt in 0..1_000_000u32 {
        let mut digits = Vec::new();
        let mut rest = counter;
        while rest > 0 && digits.len() < 2 * d {
            digits.push(spec.element_from_index(rest % q));
            rest /= q;
        }
        counter += 1;
        let a = Poly::from_coeffs(&spec, digits);
        let shared = poly_gcd(&a, g)?;
        let k0 = shared.degree().unwrap_or(0);
        if k0 > 0 && k0 < deg {
            equal_degree_split(&shared, d, q, out)?;
            equal_degree_split(&g.div_exact(&shared)?, d, q, out)?;
            return Ok(());
        }
        let b = pow_mod_poly_big(&a, &e, g);
        let split = poly_gcd(&(&b - &Poly::one(&spec)), g)?;
        let k = split.degree().unwrap_or(0);
        if k > 0 && k < deg {
            equal_degree_split(&split, d, q, out)?;
            equal_degree_split(&g.div_exact(&split)?, d, q, out)?;
            return Ok(());
        }
    }
    Err(Error::InvariantViolation("equal-degree splitting did not converge".into()))
}

pub(crate) fn pow_mod_poly(base: &Poly, mut e: u128, m: &Poly) -> Poly {
    let spec = base.spec().clone();
    let mut acc = Poly::one(&spec);
    let mut b = base.divrem(m).expect("modulus nonzero").1;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).divrem(m).expect("modulus nonzero").1;
        }
        b = (&b * &b).divrem(m).expect("modulus nonzero").1;
        e >>= 1;
    }
    acc
}

fn pow_mod_poly_big(base: &Poly, e: &num::BigUint, m: &Poly) -> Poly {
    let spec = base.spec().clone();
    let mut acc = Poly::one(&spec);
    let mut b = base.divrem(m).expect("modulus nonzero").1;
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = (&acc * &b).divrem(m).expect("modulus nonzero").1;
        }
        b = (&b * &b).divrem(m).expect("modulus nonzero").1;
    }
    acc
}

/// Resultant via the Euclidean remainder sequence (used as an independent
/// squarefreeness oracle in tests: `S` squarefree iff `res(S, S') != 0`).
pub fn resultant(a: &Poly, b: &Poly) -> Result<FieldElement> {
    if a.spec() != b.spec() {
        return Err(Error::MixedFields);
    }
    let spec = a.spec().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(spec.zero());
    }
    let mut f = a.clone();
    let mut g = b.clone();
    let mut acc = spec.one();
    let mut sign_flips = 0u64;
    loop {
        let df = f.degree().unwrap();
        let dg = g.degree().unwrap();
        if dg == 0 {
            // res(f, c) = c^deg(f)
            let c = g.leading_coeff().unwrap();
            acc = &acc * &c.pow_u128(df as u128);
            break;
        }
        let (_, r) = f.divrem(&g)?;
        if r.is_zero() {
            return Ok(spec.zero());
        }
        let dr = r.degree().unwrap();
        // res(f, g) = (-1)^(df*dg) * lc(g)^(df - dr) * res(g, r)
        sign_flips += (df as u64) * (dg as u64);
        acc = &acc * &g.leading_coeff().unwrap().pow_u128((df - dr) as u128);
        f = g;
        g = r;
    }
    if sign_flips % 2 == 1 {
        acc = -&acc;
    }
    Ok(acc)
}
