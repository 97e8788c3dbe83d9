//! Height Gram matrices, the Clebsch orthogonality partition, and the
//! mod-2 / mod-sqrt(-3) class forms carried by solution sets — the curve
//! side of the structures that the lattice module computes on roots.
//!
//! The orthogonality dichotomy: for minimal points `P, Q` in distinct
//! mu_6-classes the multiset `{h(P + rho^s Q)}` sums to 12 and is either
//! `{4,4,4}` (orthogonal) or `{2,4,6}` (not).  Clebsch's factor criterion
//! detects the same split from the gcds of `x - rho^s x'` with `y - y'`.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational};

use crate::curve::{hermitian_pairing, CurvePoint};
use crate::eisenstein::{EisensteinInt, EisensteinRat};
use crate::error::{Error, Result};
use crate::lattice::{self, EisensteinVector};
use crate::poly::{poly_gcd, Poly};
use crate::solver::SolutionSet;

/// Pairwise height data for a list of minimal points.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub labels: Vec<String>,
    /// `(h(P_i + P_j) - h_i - h_j) / 2`; diagonal 2 for minimal points.
    pub z_gram: Vec<Vec<i64>>,
    /// Hermitian pairing values `H(P_i, P_j)`.
    pub hermitian: Vec<Vec<EisensteinRat>>,
    /// Sorted `{h(P_i + rho^s P_j)}` per pair `i <= j`.
    pub multisets: BTreeMap<(usize, usize), [u64; 3]>,
    /// Pairs that are unit multiples of one another (excluded from the
    /// orthogonality dichotomy).
    pub proportional: BTreeSet<(usize, usize)>,
}

/// Builds the full pairwise report.  Every point must be minimal (height 2)
/// on one curve.
pub fn gram_matrix(points: &[CurvePoint], labels: Vec<String>) -> Result<GramReport> {
    assert_eq!(points.len(), labels.len());
    for p in points {
        let h = p.height()?;
        if h != 2 {
            return Err(Error::NotMinimal(h));
        }
        if points[0].curve() != p.curve() {
            return Err(Error::MixedCurves);
        }
    }
    let n = points.len();
    let mut z_gram = vec![vec![0i64; n]; n];
    let mut hermitian = vec![vec![EisensteinRat::zero(); n]; n];
    let mut multisets = BTreeMap::new();
    let mut proportional = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let h = hermitian_pairing(&points[i], &points[j])?;
            // z-pairing = Re H (integer for this family)
            let re = h.real_part();
            if !re.is_integer() {
                return Err(Error::InvariantViolation("non-integral Z-pairing".into()));
            }
            z_gram[i][j] = i64::try_from(re.to_integer())
                .map_err(|_| Error::InvariantViolation("pairing overflow".into()))?;
            hermitian[i][j] = h;
            if i <= j {
                let mut m = [0u64; 3];
                let mut rq = points[j].clone();
                for (s, slot) in m.iter_mut().enumerate() {
                    if s > 0 {
                        rq = rq.rho_action();
                    }
                    *slot = points[i].add(&rq)?.height()?;
                }
                m.sort();
                multisets.insert((i, j), m);
            }
            if i < j && are_proportional(&points[i], &points[j]) {
                proportional.insert((i, j));
            }
        }
    }
    // Structural checks: diagonal 2, multiset sums 12, entries in [-2, 2]
    // for non-proportional pairs.
    for i in 0..n {
        if z_gram[i][i] != 2 {
            return Err(Error::InvariantViolation("Gram diagonal != 2".into()));
        }
    }
    for (&(i, j), m) in &multisets {
        if m.iter().sum::<u64>() != 12 {
            return Err(Error::InvariantViolation(format!(
                "multiset {m:?} at ({i},{j}) does not sum to 12"
            )));
        }
        if i != j && !proportional.contains(&(i, j)) && !(m == &[4, 4, 4] || m == &[2, 4, 6]) {
            return Err(Error::InvariantViolation(format!(
                "multiset {m:?} outside the dichotomy at ({i},{j})"
            )));
        }
    }
    Ok(GramReport { labels, z_gram, hermitian, multisets, proportional })
}

fn are_proportional(p: &CurvePoint, q: &CurvePoint) -> bool {
    let mut r = q.clone();
    for _ in 0..3 {
        if &r == p || &r.negate() == p {
            return true;
        }
        r = r.rho_action();
    }
    false
}

/// mu_6-classes of a solution set (orbits under `(x, y) -> (rho^s x, +-y)`),
/// sorted by least member index.
pub fn mu6_classes(set: &SolutionSet) -> Vec<Vec<usize>> {
    let index: BTreeMap<Vec<crate::field::FieldElement>, usize> = set
        .solutions
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut key: Vec<crate::field::FieldElement> = Vec::with_capacity(7);
            for k in 0..3 {
                key.push(s.x.coeff(k));
            }
            for k in 0..4 {
                key.push(s.y.coeff(k));
            }
            (key, i)
        })
        .collect();
    let rho = set.curve.spec().primitive_cube_root();
    let mut seen = vec![false; set.solutions.len()];
    let mut classes = Vec::new();
    for i in 0..set.solutions.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = set.solutions[i].x.clone();
        for _ in 0..3 {
            x = x.scale(&rho);
            for y in [set.solutions[i].y.clone(), -&set.solutions[i].y] {
                let mut key: Vec<crate::field::FieldElement> = Vec::with_capacity(7);
                for k in 0..3 {
                    key.push(x.coeff(k));
                }
                for k in 0..4 {
                    key.push(y.coeff(k));
                }
                let j = *index.get(&key).expect("twist closure");
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbit.sort();
        classes.push(orbit);
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Per-class Gram report: one representative (the least member) per
/// mu_6-class.  Class-level multisets are representative independent.
pub fn class_gram_report(set: &SolutionSet) -> Result<(GramReport, Vec<Vec<usize>>)> {
    let classes = mu6_classes(set);
    let mut points = Vec::with_capacity(classes.len());
    let mut labels = Vec::with_capacity(classes.len());
    for class in &classes {
        let s = &set.solutions[class[0]];
        points.push(set.curve.affine_from_polys(s.x.clone(), s.y.clone())?);
        labels.push(class[0].to_string());
    }
    Ok((gram_matrix(&points, labels)?, classes))
}

/// The Clebsch split of the other classes relative to a base class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClebschPartition {
    pub base: usize,
    pub orthogonal: Vec<usize>,
    pub nonorthogonal: Vec<usize>,
    /// Cell sizes including the base singleton: `{1, |orth|, |nonorth|}`.
    pub sizes: Vec<usize>,
}

/// Classifies every non-base index of a class-level report by its multiset:
/// `{4,4,4}` orthogonal, `{2,4,6}` not.
pub fn clebsch_partition(report: &GramReport, base: usize) -> Result<ClebschPartition> {
    let n = report.labels.len();
    if base >= n {
        return Err(Error::BaseNotInSet);
    }
    let mut orthogonal = Vec::new();
    let mut nonorthogonal = Vec::new();
    for j in 0..n {
        if j == base {
            continue;
        }
        let key = (base.min(j), base.max(j));
        if report.proportional.contains(&key) {
            return Err(Error::InvariantViolation(
                "class representatives must not be proportional".into(),
            ));
        }
        let m = report.multisets.get(&key).ok_or(Error::BaseNotInSet)?;
        if m == &[4, 4, 4] {
            orthogonal.push(j);
        } else {
            nonorthogonal.push(j);
        }
    }
    let sizes = vec![1, orthogonal.len(), nonorthogonal.len()];
    Ok(ClebschPartition { base, orthogonal, nonorthogonal, sizes })
}

/// Clebsch's factor criterion for two solutions in distinct mu_6-classes:
/// orthogonal iff each `x - rho^s x'` shares exactly one root with
/// `y - y'`, read off gcd degrees (splitting-free).
pub fn factor_criterion_orthogonal(
    a: (&Poly, &Poly),
    b: (&Poly, &Poly),
) -> Result<bool> {
    let (x1, y1) = a;
    let (x2, y2) = b;
    let spec = x1.spec().clone();
    let rho = spec.primitive_cube_root();
    let ydiff = y1 - y2;
    if ydiff.is_zero() {
        return Err(Error::InvariantViolation(
            "factor criterion needs distinct y coordinates".into(),
        ));
    }
    let mut degs = Vec::with_capacity(3);
    let mut xt = x2.clone();
    for _ in 0..3 {
        let g = poly_gcd(&(x1 - &xt), &ydiff)?;
        degs.push(g.degree().unwrap_or(0));
        xt = xt.scale(&rho);
    }
    degs.sort();
    Ok(degs == vec![1, 1, 1])
}

/// Runs both orthogonality detectors over every class pair of a solution
/// set and checks they agree; returns the partition for `base` plus the
/// number of pairs compared.
pub fn clebsch_with_factor_check(
    set: &SolutionSet,
    base: usize,
) -> Result<(ClebschPartition, usize)> {
    let (report, classes) = class_gram_report(set)?;
    let partition = clebsch_partition(&report, base)?;
    let mut compared = 0usize;
    for j in 0..classes.len() {
        if j == base {
            continue;
        }
        let key = (base.min(j), base.max(j));
        let m = report.multisets[&key];
        let a = &set.solutions[classes[base][0]];
        let b = &set.solutions[classes[j][0]];
        let orth_factor = factor_criterion_orthogonal((&a.x, &a.y), (&b.x, &b.y))?;
        let orth_multiset = m == [4, 4, 4];
        if orth_factor != orth_multiset {
            return Err(Error::InvariantViolation(format!(
                "factor criterion ({orth_factor}) disagrees with multiset {m:?}"
            )));
        }
        compared += 1;
    }
    Ok((partition, compared))
}

/// F_3 and F_4 class-form values carried by a solution set's twist classes.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    /// Least member index of each same-y (mu_3) class.
    pub mu3_labels: Vec<usize>,
    /// Symplectic values in F_3 between mu_3 classes.
    pub symplectic: Vec<Vec<u8>>,
    /// Least member index of each same-x (+-) class.
    pub pm_labels: Vec<usize>,
    /// Hermitian F_4 values between +- classes (encoded 0,1,2,3 for
    /// 0,1,rho,1+rho).
    pub hermitian_f4: Vec<Vec<u8>>,
    /// Parity `(h/2) mod 2` per +- class; 1 for minimal solutions.
    pub upsilon: Vec<u8>,
}

/// `sqrt(-3) H mod sqrt(-3)` in F_3.
pub fn symplectic_value(h: &EisensteinRat) -> Result<u8> {
    let v = h * &EisensteinRat::from_i64(1, 2);
    let v = v.to_int().ok_or_else(|| {
        Error::InvariantViolation("sqrt(-3) H is not an Eisenstein integer".into())
    })?;
    Ok(v.residue_mod_sqrt3())
}

/// `(sqrt(-3)/2) H mod 2` in F_4 (encoded like the lattice classes).
pub fn hermitian_f4_value(h: &EisensteinRat) -> Result<u8> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let v = (h * &EisensteinRat::from_i64(1, 2)).scale(&half);
    let v = v.to_int().ok_or_else(|| {
        Error::InvariantViolation("(sqrt(-3)/2) H is not an Eisenstein integer".into())
    })?;
    let (a, b) = v.residue_mod_two();
    Ok(a + 2 * b)
}

/// Computes the class forms from pairings between class representatives.
pub fn torsion_forms(set: &SolutionSet) -> Result<TorsionReport> {
    let to_point = |i: usize| {
        let s = &set.solutions[i];
        set.curve.affine_from_polys(s.x.clone(), s.y.clone())
    };
    let mu3_labels: Vec<usize> = set.y_classes.iter().map(|c| c[0]).collect();
    let mut symplectic = vec![vec![0u8; mu3_labels.len()]; mu3_labels.len()];
    for (i, &a) in mu3_labels.iter().enumerate() {
        let pa = to_point(a)?;
        for (j, &b) in mu3_labels.iter().enumerate() {
            let pb = to_point(b)?;
            let h = hermitian_pairing(&pa, &pb)?;
            symplectic[i][j] = symplectic_value(&h)?;
        }
    }
    let pm_labels: Vec<usize> = set.x_classes.iter().map(|c| c[0]).collect();
    let mut hermitian_f4 = vec![vec![0u8; pm_labels.len()]; pm_labels.len()];
    let mut upsilon = vec![0u8; pm_labels.len()];
    for (i, &a) in pm_labels.iter().enumerate() {
        let pa = to_point(a)?;
        upsilon[i] = ((pa.height()? / 2) % 2) as u8;
        for (j, &b) in pm_labels.iter().enumerate() {
            let pb = to_point(b)?;
            let h = hermitian_pairing(&pa, &pb)?;
            hermitian_f4[i][j] = hermitian_f4_value(&h)?;
        }
    }
    Ok(TorsionReport { mu3_labels, symplectic, pm_labels, hermitian_f4, upsilon })
}

/// Builds the lattice-side class-level Gram report over the 240 roots:
/// one representative per mu_6-class, Z-pairings `Re(r, r')`, Hermitian
/// inner products, and norm multisets `{|r + rho^s r'|^2}`.
pub fn lattice_class_gram_report() -> Result<(GramReport, Vec<Vec<usize>>)> {
    let roots = lattice::enumerate_roots();
    let classes = lattice::mu6_classes(&roots);
    let reps: Vec<&EisensteinVector> = classes.iter().map(|c| &roots[c[0]]).collect();
    let rho = EisensteinInt::rho();
    let n = reps.len();
    let mut z_gram = vec![vec![0i64; n]; n];
    let mut hermitian = vec![vec![EisensteinRat::zero(); n]; n];
    let mut multisets = BTreeMap::new();
    let labels: Vec<String> = classes.iter().map(|c| c[0].to_string()).collect();
    for i in 0..n {
        for j in 0..n {
            let ip = lattice::inner_product(reps[i], reps[j]);
            let re = ip.real_part();
            if !re.is_integer() {
                return Err(Error::InvariantViolation("non-integral root pairing".into()));
            }
            z_gram[i][j] = i64::try_from(re.to_integer()).expect("small");
            hermitian[i][j] = ip;
            if i <= j {
                let mut m = [0u64; 3];
                let mut w = reps[j].clone();
                for (s, slot) in m.iter_mut().enumerate() {
                    if s > 0 {
                        w = w.scale(&rho);
                    }
                    let norm = lattice::norm_int(&reps[i].add(&w))?;
                    *slot = u64::try_from(norm).expect("small norm");
                }
                m.sort();
                multisets.insert((i, j), m);
            }
        }
    }
    let report = GramReport {
        labels,
        z_gram,
        hermitian,
        multisets,
        proportional: BTreeSet::new(),
    };
    Ok((report, classes))
}

/// Finds a pair of roots whose Hermitian inner product equals `h`; used to
/// embed curve-side twist orbits into the root system Gram-compatibly.
pub fn find_root_pair_with_pairing(
    h: &EisensteinRat,
) -> Option<(EisensteinVector, EisensteinVector)> {
    let roots = lattice::enumerate_roots();
    for i in 0..roots.len() {
        for j in 0..roots.len() {
            if lattice::inner_product(&roots[i], &roots[j]) == *h {
                return Some((roots[i].clone(), roots[j].clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::field::FieldSpec;
    use crate::solver::enumerate_solutions;

    fn f7_set() -> SolutionSet {
        let spec = FieldSpec::prime(7).unwrap();
        let c = Curve::new(Poly::from_i64_coeffs(&spec, &[1, 0, 0, 0, 0, 0, 1])).unwrap();
        enumerate_solutions(&c).unwrap()
    }

    #[test]
    fn gram_diagonal_and_multisets() {
        let set = f7_set();
        let points: Vec<CurvePoint> = set
            .solutions
            .iter()
            .map(|s| set.curve.affine_from_polys(s.x.clone(), s.y.clone()).unwrap())
            .collect();
        let labels: Vec<String> = (0..points.len()).map(|i| i.to_string()).collect();
        let report = gram_matrix(&points, labels).unwrap();
        for i in 0..points.len() {
            assert_eq!(report.z_gram[i][i], 2);
            assert_eq!(report.hermitian[i][i], EisensteinRat::from_i64(2, 0));
        }
        for m in report.multisets.values() {
            assert_eq!(m.iter().sum::<u64>(), 12);
        }
        // entries bounded for non-proportional pairs
        for i in 0..points.len() {
            for j in 0..points.len() {
                if i < j && !report.proportional.contains(&(i, j)) {
                    assert!(report.z_gram[i][j].abs() <= 2);
                }
            }
        }
    }

    #[test]
    fn non_minimal_rejected() {
        let set = f7_set();
        let s = &set.solutions[0];
        let p = set.curve.affine_from_polys(s.x.clone(), s.y.clone()).unwrap();
        let dbl = p.double().unwrap();
        let err = gram_matrix(&[dbl], vec!["d".into()]).unwrap_err();
        assert_eq!(err, Error::NotMinimal(8));
    }

    #[test]
    fn mu6_classes_of_twelve() {
        let set = f7_set();
        let classes = mu6_classes(&set);
        assert_eq!(classes.len(), set.solutions.len() / 6);
        for c in &classes {
            assert_eq!(c.len(), 6);
        }
    }

    #[test]
    fn two_class_partition_for_t6_f7() {
        let set = f7_set();
        let (report, classes) = class_gram_report(&set).unwrap();
        assert_eq!(classes.len(), 2);
        let partition = clebsch_partition(&report, 0).unwrap();
        assert_eq!(partition.sizes[0], 1);
        assert_eq!(partition.orthogonal.len() + partition.nonorthogonal.len(), 1);
    }

    #[test]
    fn factor_criterion_agrees_on_f7_set() {
        let set = f7_set();
        let (_, compared) = clebsch_with_factor_check(&set, 0).unwrap();
        assert_eq!(compared, 1);
    }

    #[test]
    fn torsion_forms_structure() {
        let set = f7_set();
        let report = torsion_forms(&set).unwrap();
        assert!(report.upsilon.iter().all(|&u| u == 1));
        // symplectic form alternating on the diagonal
        for i in 0..report.mu3_labels.len() {
            assert_eq!(report.symplectic[i][i], 0);
        }
        // Hermitian diagonal is sqrt(-3) mod 2 = 1 (nonzero)
        for i in 0..report.pm_labels.len() {
            assert_eq!(report.hermitian_f4[i][i], 1);
        }
    }

    #[test]
    fn torsion_values_representative_independent() {
        let set = f7_set();
        let report = torsion_forms(&set).unwrap();
        // Recompute each symplectic value with the *other* members of the
        // classes; values must not change.
        let to_point = |i: usize| {
            let s = &set.solutions[i];
            set.curve.affine_from_polys(s.x.clone(), s.y.clone()).unwrap()
        };
        for (ci, class_a) in set.y_classes.iter().enumerate() {
            for (cj, class_b) in set.y_classes.iter().enumerate() {
                for &a in class_a {
                    for &b in class_b {
                        let h = hermitian_pairing(&to_point(a), &to_point(b)).unwrap();
                        assert_eq!(
                            symplectic_value(&h).unwrap(),
                            report.symplectic[ci][cj],
                            "symplectic value changed under representatives {a},{b}"
                        );
                    }
                }
            }
        }
        for (ci, class_a) in set.x_classes.iter().enumerate() {
            for (cj, class_b) in set.x_classes.iter().enumerate() {
                for &a in class_a {
                    for &b in class_b {
                        let h = hermitian_pairing(&to_point(a), &to_point(b)).unwrap();
                        assert_eq!(
                            hermitian_f4_value(&h).unwrap(),
                            report.hermitian_f4[ci][cj],
                            "F4 value changed under representatives {a},{b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_report_partition() {
        let (report, classes) = lattice_class_gram_report().unwrap();
        assert_eq!(classes.len(), 40);
        let partition = clebsch_partition(&report, 0).unwrap();
        assert_eq!(partition.sizes, vec![1, 12, 27]);
        // every base point sees the same split
        for base in [5, 17, 39] {
            let p = clebsch_partition(&report, base).unwrap();
            assert_eq!(p.sizes, vec![1, 12, 27]);
        }
    }

    #[test]
    fn sum_rule_exact() {
        // h(P+Q) + h(P+rhoQ) + h(P+rho^2Q) = 3h(P) + 3h(Q)
        let set = f7_set();
        let pts: Vec<CurvePoint> = set
            .solutions
            .iter()
            .take(6)
            .map(|s| set.curve.affine_from_polys(s.x.clone(), s.y.clone()).unwrap())
            .collect();
        for p in &pts {
            for q in &pts {
                let mut total = 0u64;
                let mut rq = q.clone();
                for s in 0..3 {
                    if s > 0 {
                        rq = rq.rho_action();
                    }
                    total += p.add(&rq).unwrap().height().unwrap();
                }
                assert_eq!(total, 3 * p.height().unwrap() + 3 * q.height().unwrap());
            }
        }
    }
}
