//! Combinatorics of triple covers: the census of involution tuples in S_3
//! with identity product, its closed-form count, and the plane-cubic model
//! `s^3 - 3 x(t) s + 2 y(t) = 0` attached to a minimal solution.
//!
//! The sign convention on the linear term: with `p = -3x`, `q = 2y` the
//! cubic discriminant is `-4 p^3 - 27 q^2 = -108 (y^2 - x^3)`, so the
//! ramified values of `t` are exactly the roots of the sextic.  Only the
//! `-3x` form has this property, which is why it is the one implemented.

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::poly::{poly_gcd, Poly};
use crate::solver::Solution;

/// Multiplication table of S_3 on indices 0..6:
/// 0 = id, 1 = (01), 2 = (02), 3 = (12), 4 = (012), 5 = (021).
/// `(012)` maps 0->1, 1->2, 2->0.
const S3_IMAGES: [[u8; 3]; 6] = [
    [0, 1, 2], // id
    [1, 0, 2], // (01)
    [2, 1, 0], // (02)
    [0, 2, 1], // (12)
    [1, 2, 0], // (012)
    [2, 0, 1], // (021)
];

const INVOLUTIONS: [u8; 3] = [1, 2, 3];

fn s3_mul(a: u8, b: u8) -> u8 {
    // a then b as maps
    let img = [
        S3_IMAGES[b as usize][S3_IMAGES[a as usize][0] as usize],
        S3_IMAGES[b as usize][S3_IMAGES[a as usize][1] as usize],
        S3_IMAGES[b as usize][S3_IMAGES[a as usize][2] as usize],
    ];
    S3_IMAGES
        .iter()
        .position(|m| *m == img)
        .expect("closed under multiplication") as u8
}

/// Census of length-`n` involution tuples with identity product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCensus {
    pub n: u32,
    /// All tuples: `3^(n-1)` (the last involution is determined).
    pub total: u64,
    /// Tuples generating a transitive subgroup: `3^(n-1) - 3`.
    pub transitive: u64,
    /// Transitive tuples modulo simultaneous conjugation: `transitive / 6`.
    pub orbits: u64,
}

/// Exhaustive enumeration for even `n` in `4..=8` (a product of an odd
/// number of transpositions can never be the identity, so odd `n` is
/// rejected, matching the closed form).
pub fn s3_census(n: u32) -> Result<TupleCensus> {
    if !(4..=8).contains(&n) || n % 2 != 0 {
        return Err(Error::BranchPointsOutOfRange(n));
    }
    let free = (n - 1) as usize;
    let count = 3u64.pow(n - 1);
    let mut total = 0u64;
    let mut transitive = 0u64;
    let mut canonical_forms = std::collections::HashSet::new();
    let mut tuple = vec![0u8; n as usize];
    for code in 0..count {
        let mut rest = code;
        let mut product = 0u8;
        for slot in tuple.iter_mut().take(free) {
            *slot = INVOLUTIONS[(rest % 3) as usize];
            rest /= 3;
            product = s3_mul(product, *slot);
        }
        // The last entry must invert the running product; involutions are
        // self-inverse, so it must equal the product and be an involution.
        if !INVOLUTIONS.contains(&product) {
            continue;
        }
        tuple[free] = product;
        total += 1;
        if !is_transitive(&tuple) {
            continue;
        }
        transitive += 1;
        canonical_forms.insert(conjugation_canonical_form(&tuple));
    }
    Ok(TupleCensus { n, total, transitive, orbits: canonical_forms.len() as u64 })
}

fn is_transitive(tuple: &[u8]) -> bool {
    // Subgroup closure inside S_3, then one-orbit test on {0, 1, 2}.
    let mut members = [false; 6];
    members[0] = true;
    let mut frontier: Vec<u8> = vec![0];
    while let Some(g) = frontier.pop() {
        for &t in tuple {
            let h = s3_mul(g, t);
            if !members[h as usize] {
                members[h as usize] = true;
                frontier.push(h);
            }
        }
    }
    let mut reach = [false; 3];
    for (g, &present) in members.iter().enumerate() {
        if present {
            for p in 0..3 {
                if S3_IMAGES[g][p] as usize == 0 {
                    reach[p] = true;
                }
            }
        }
    }
    reach.iter().all(|&r| r)
}

/// Conjugation acts on transpositions as the natural S_3 action on their
/// indices; the canonical form is the minimum relabeling.
fn conjugation_canonical_form(tuple: &[u8]) -> Vec<u8> {
    // transposition index: 1 = (01) <-> fixed point 2, 2 = (02) <-> 1,
    // 3 = (12) <-> 0.  Conjugating by g sends the transposition with fixed
    // point f to the one with fixed point g(f).
    let fixed_point = |t: u8| -> u8 {
        match t {
            1 => 2,
            2 => 1,
            3 => 0,
            _ => unreachable!("involutions only"),
        }
    };
    let from_fixed = |f: u8| -> u8 {
        match f {
            2 => 1,
            1 => 2,
            0 => 3,
            _ => unreachable!(),
        }
    };
    let mut best: Option<Vec<u8>> = None;
    for g in 0..6usize {
        let image: Vec<u8> = tuple
            .iter()
            .map(|&t| from_fixed(S3_IMAGES[g][fixed_point(t) as usize]))
            .collect();
        if best.as_ref().is_none_or(|b| &image < b) {
            best = Some(image);
        }
    }
    best.unwrap()
}

/// Closed form `(3^(n-2) - 1)/2` for the number of conjugation orbits at
/// `n` branch points (`n` even, >= 4).
pub fn cover_count_formula(n: u32) -> Result<u64> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::BranchPointsOutOfRange(n));
    }
    Ok((3u64.pow(n - 2) - 1) / 2)
}

/// The plane cubic `s^3 - 3 x(t) s + 2 y(t) = 0` attached to a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCubic {
    pub x: Poly,
    pub y: Poly,
}

#[derive(Clone, Debug)]
pub struct PlaneCubicReport {
    pub cubic: PlaneCubic,
    /// `disc_s + 108 S = 0` held exactly.
    pub disc_identity: bool,
    /// For each root of `S` found in the working field: the specialized
    /// cubic in `s` had a repeated root there.
    pub tangencies: Vec<(crate::field::FieldElement, bool)>,
}

/// Builds the cubic, verifies the discriminant identity
/// `disc_s = -4(-3x)^3 - 27(2y)^2 = -108 S`, and checks the tangency at
/// every root of `S` available in the base field.
pub fn to_plane_cubic(curve: &Curve, sol: &Solution) -> Result<PlaneCubicReport> {
    let spec = curve.spec().clone();
    let p = curve.affine_from_polys(sol.x.clone(), sol.y.clone())?;
    let h = p.height()?;
    if h != 2 {
        return Err(Error::NotMinimal(h));
    }
    let cubic = PlaneCubic { x: sol.x.clone(), y: sol.y.clone() };
    // disc(s^3 + p s + q) = -4 p^3 - 27 q^2 with p = -3x, q = 2y.
    let p_coef = sol.x.scale(&spec.from_i64(-3));
    let q_coef = sol.y.scale(&spec.from_i64(2));
    let disc = &(&p_coef.pow(3)).scale(&spec.from_i64(-4)) - &q_coef.pow(2).scale(&spec.from_i64(27));
    let identity = &disc + &curve.s().scale(&spec.from_i64(108));
    let disc_identity = identity.is_zero();

    let mut tangencies = Vec::new();
    if spec.is_finite() {
        for root in field_roots(curve.s()) {
            // specialize: s^3 - 3x(r) s + 2y(r)
            let xr = sol.x.eval(&root);
            let yr = sol.y.eval(&root);
            let specialized = Poly::from_coeffs(
                &spec,
                vec![
                    &spec.from_i64(2) * &yr,
                    &spec.from_i64(-3) * &xr,
                    spec.zero(),
                    spec.one(),
                ],
            );
            let g = poly_gcd(&specialized, &specialized.derivative())?;
            tangencies.push((root, !g.is_constant()));
        }
    }
    Ok(PlaneCubicReport { cubic, disc_identity, tangencies })
}

/// Roots of a polynomial in its (finite) base field, via the linear factors
/// of the distinct-degree factorization.
fn field_roots(f: &Poly) -> Vec<crate::field::FieldElement> {
    let mut roots = Vec::new();
    if let Ok(factors) = crate::poly::distinct_irreducible_factors(f) {
        for factor in factors {
            if factor.degree() == Some(1) {
                // monic t + c has root -c
                roots.push(-&factor.coeff(0));
            }
        }
    }
    roots.sort();
    roots
}

/// Canonical representative of the cubic under the scaling action
/// `(s, x, y) -> (lambda s, lambda^2 x, lambda^3 y)` over the sixth roots
/// of unity: the least `(x-coefficients, y-coefficients)` tuple.
pub fn cubic_canonical_form(cubic: &PlaneCubic) -> (Vec<crate::field::FieldElement>, Vec<crate::field::FieldElement>) {
    let spec = cubic.x.spec().clone();
    let rho = spec.primitive_cube_root();
    let mut best: Option<(Vec<crate::field::FieldElement>, Vec<crate::field::FieldElement>)> =
        None;
    let mut x = cubic.x.clone();
    for _ in 0..3 {
        x = x.scale(&rho);
        for y in [cubic.y.clone(), -&cubic.y] {
            let mut key_x = Vec::with_capacity(3);
            for i in 0..3 {
                key_x.push(x.coeff(i));
            }
            let mut key_y = Vec::with_capacity(4);
            for i in 0..4 {
                key_y.push(y.coeff(i));
            }
            let cand = (key_x.clone(), key_y);
            if best.as_ref().is_none_or(|b| &cand < b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}
