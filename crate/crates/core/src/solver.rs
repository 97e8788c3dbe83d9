//! Exhaustive enumeration of minimal solutions of `y^2 = x^3 + S(t)` over a
//! finite field: all `q^3` candidate quadratics `x` are tried and
//! `x^3 + S` is tested for an exact polynomial square.  The set is closed
//! under the six twists `(rho^s x, +-y)`; grouping by `y` gives the size-3
//! mu_3-classes, grouping by `x` the size-2 sign classes.
//!
//! Candidates are partitioned by leading coefficient across rayon workers;
//! workers share nothing and the merged output is canonically sorted, so
//! results are deterministic regardless of worker count.

use rayon::prelude::*;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::{FieldKind, FieldSpec};
use crate::poly::{exact_power_root, Poly};

/// A minimal pair: `x` of degree <= 2, `y` of degree <= 3 with
/// `y^2 - x^3 = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Poly,
    pub y: Poly,
}

impl Solution {
    /// Sort key: x-coefficients padded to 3, then y-coefficients padded
    /// to 4.
    fn key(&self) -> Vec<crate::field::FieldElement> {
        let mut k = Vec::with_capacity(7);
        for i in 0..3 {
            k.push(self.x.coeff(i));
        }
        for i in 0..4 {
            k.push(self.y.coeff(i));
        }
        k
    }
}

/// The full solution set over one finite field, canonically ordered, with
/// its twist-class partitions.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub curve: Curve,
    pub solutions: Vec<Solution>,
    /// Same-y classes (each of size 3), sorted by least member index.
    pub y_classes: Vec<Vec<usize>>,
    /// Same-x classes (each of size 2), sorted by least member index.
    pub x_classes: Vec<Vec<usize>>,
}

/// Enumerates every minimal solution over the (finite) base field of the
/// curve.  Errors on `Q(rho)` ([`Error::UnsupportedField`]); known-point
/// workflows cover the infinite case.
pub fn enumerate_solutions(curve: &Curve) -> Result<SolutionSet> {
    enumerate_impl(curve, None)
}

/// As [`enumerate_solutions`], but refuses fields with `q^3 > budget`.
pub fn enumerate_solutions_bounded(curve: &Curve, budget: u128) -> Result<SolutionSet> {
    enumerate_impl(curve, Some(budget))
}

fn enumerate_impl(curve: &Curve, budget: Option<u128>) -> Result<SolutionSet> {
    let spec = curve.spec().clone();
    if spec.kind() == FieldKind::EisensteinRational {
        return Err(Error::UnsupportedField(
            "solution enumeration needs a finite field".into(),
        ));
    }
    if !curve.is_validated() {
        return Err(Error::BadCurveDegree(curve.s().degree()));
    }
    let q = spec.order().expect("finite");
    let work = q * q * q;
    if let Some(b) = budget {
        if work > b {
            return Err(Error::BudgetExceeded(work, b));
        }
    }
    let s = curve.s().clone();

    // Partition candidate space by the leading (degree-2) coefficient.
    let leading: Vec<u128> = (0..q).collect();
    let mut solutions: Vec<Solution> = leading
        .into_par_iter()
        .map(|c2_idx| {
            let mut local = Vec::new();
            let c2 = spec.element_from_index(c2_idx);
            for c1_idx in 0..q {
                let c1 = spec.element_from_index(c1_idx);
                for c0_idx in 0..q {
                    let c0 = spec.element_from_index(c0_idx);
                    let x = Poly::from_coeffs(&spec, vec![c0, c1.clone(), c2.clone()]);
                    let f = &(&x * &x) * &x;
                    let f = &f + &s;
                    if let Some(y) = exact_power_root(&f, 2) {
                        debug_assert!(!y.is_zero() && !x.is_zero());
                        local.push(Solution { x: x.clone(), y: y.clone() });
                        local.push(Solution { x, y: -&y });
                    }
                }
            }
            local
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    solutions.sort_by(|a, b| a.key().cmp(&b.key()));

    let set = build_set(curve.clone(), solutions)?;
    Ok(set)
}

/// Rebuilds a [`SolutionSet`] from externally supplied solutions (e.g. a
/// cache file), re-checking the defining identity and every set invariant.
pub fn solution_set_from_parts(curve: Curve, mut solutions: Vec<Solution>) -> Result<SolutionSet> {
    for sol in &solutions {
        let lhs = &(&sol.y * &sol.y) - &(&(&sol.x * &sol.x) * &sol.x);
        if &lhs != curve.s() {
            return Err(Error::InvariantViolation(
                "cached solution fails y^2 - x^3 = S".into(),
            ));
        }
        if sol.x.degree().unwrap_or(0) > 2 || sol.y.degree().unwrap_or(0) > 3 {
            return Err(Error::InvariantViolation("cached solution is not minimal".into()));
        }
    }
    solutions.sort_by(|a, b| a.key().cmp(&b.key()));
    build_set(curve, solutions)
}

/// Validates twist closure and the count invariants, then partitions.
fn build_set(curve: Curve, solutions: Vec<Solution>) -> Result<SolutionSet> {
    let n = solutions.len();
    if n % 6 != 0 {
        return Err(Error::InvariantViolation(format!("solution count {n} not divisible by 6")));
    }
    if n > 240 {
        return Err(Error::InvariantViolation(format!("solution count {n} exceeds 240")));
    }
    // Twist closure: (rho^s x, +-y) all present and pairwise distinct.
    let index: std::collections::HashMap<Vec<crate::field::FieldElement>, usize> =
        solutions.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();
    let rho = curve.spec().primitive_cube_root();
    for sol in &solutions {
        let mut x = sol.x.clone();
        for _ in 0..3 {
            x = x.scale(&rho);
            for y in [sol.y.clone(), -&sol.y] {
                let twin = Solution { x: x.clone(), y };
                if !index.contains_key(&twin.key()) {
                    return Err(Error::InvariantViolation(
                        "solution set is not closed under the six twists".into(),
                    ));
                }
            }
        }
    }
    let (y_classes, x_classes) = class_partition(&solutions)?;
    Ok(SolutionSet { curve, solutions, y_classes, x_classes })
}

/// Groups solutions by `y` (size-3 mu_3-classes `{(rho^s x, y)}`) and by `x`
/// (size-2 sign classes `{(x, +-y)}`).  Classes are sorted by least member.
pub fn class_partition(solutions: &[Solution]) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    use std::collections::BTreeMap;
    let mut by_y: BTreeMap<Vec<crate::field::FieldElement>, Vec<usize>> = BTreeMap::new();
    let mut by_x: BTreeMap<Vec<crate::field::FieldElement>, Vec<usize>> = BTreeMap::new();
    for (i, s) in solutions.iter().enumerate() {
        by_y.entry(s.y.coeffs().to_vec()).or_default().push(i);
        by_x.entry(s.x.coeffs().to_vec()).or_default().push(i);
    }
    let mut y_classes: Vec<Vec<usize>> = by_y.into_values().collect();
    let mut x_classes: Vec<Vec<usize>> = by_x.into_values().collect();
    for c in &y_classes {
        if c.len() != 3 {
            return Err(Error::InvariantViolation(format!(
                "same-y class has size {} != 3",
                c.len()
            )));
        }
    }
    for c in &x_classes {
        if c.len() != 2 {
            return Err(Error::InvariantViolation(format!(
                "same-x class has size {} != 2",
                c.len()
            )));
        }
    }
    y_classes.sort_by_key(|c| c[0]);
    x_classes.sort_by_key(|c| c[0]);
    Ok((y_classes, x_classes))
}

/// Per-extension solution count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCount {
    pub m: u32,
    pub field_order: u128,
    /// `None` when `q^3` exceeded the budget and the level was skipped.
    pub count: Option<usize>,
}

/// Counts minimal solutions over `F_{p^m}` for `m = 1..=max_m`, skipping
/// levels whose `q^3` work exceeds `budget`.  The base field must be prime
/// so that constants embed canonically (residues to constants).
pub fn extension_counts(curve: &Curve, max_m: u32, budget: u128) -> Result<Vec<ExtensionCount>> {
    let base = curve.spec();
    if base.kind() != FieldKind::Prime {
        return Err(Error::UnsupportedField(
            "extension counting needs a prime base field".into(),
        ));
    }
    let p = base.characteristic();
    let mut out = Vec::new();
    for m in 1..=max_m {
        let spec = if m == 1 { base.clone() } else { FieldSpec::extension(p, m)? };
        let q = spec.order().expect("finite");
        let work = q.checked_mul(q).and_then(|x| x.checked_mul(q));
        let within = work.map(|w| w <= budget).unwrap_or(false);
        if !within {
            out.push(ExtensionCount { m, field_order: q, count: None });
            continue;
        }
        let s_lifted = lift_constants(curve.s(), &spec);
        let lifted_curve = Curve::new(s_lifted)?;
        let set = enumerate_solutions(&lifted_curve)?;
        out.push(ExtensionCount { m, field_order: q, count: Some(set.solutions.len()) });
    }
    Ok(out)
}

/// Canonical constant embedding of a prime-field polynomial into `F_{p^m}`.
fn lift_constants(s: &Poly, spec: &FieldSpec) -> Poly {
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| spec.from_u64(c.residue().expect("prime-field coefficient")))
        .collect();
    Poly::from_coeffs(spec, coeffs)
}
