//! JSON report types for the CLI: stable schemas, deterministic key order
//! (struct declaration order), exact string encodings for field elements.
//!
//! Polynomials serialize as arrays of field-element strings in ascending
//! degree; e.g. the sextic `t^6 + 1` over `F_7` is
//! `["1","0","0","0","0","0","1"]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::pairings::{ClebschPartition, GramReport};
use crate::poly::Poly;
use crate::solver::{ExtensionCount, Solution, SolutionSet};

pub fn poly_to_json(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn poly_from_json(spec: &FieldSpec, coeffs: &[String]) -> Result<Poly> {
    let elems: Result<Vec<FieldElement>> =
        coeffs.iter().map(|s| FieldElement::parse(spec, s)).collect();
    Ok(Poly::from_coeffs(spec, elems?))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolutionJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

/// The cacheable part of a solve run: everything derived deterministically
/// from `(field, S)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolveBase {
    pub field: String,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub count: usize,
    pub solutions: Vec<SolutionJson>,
    pub y_classes: Vec<Vec<usize>>,
    pub x_classes: Vec<Vec<usize>>,
}

impl SolveBase {
    pub fn from_set(set: &SolutionSet) -> SolveBase {
        SolveBase {
            field: set.curve.spec().to_string(),
            s: poly_to_json(set.curve.s()),
            count: set.solutions.len(),
            solutions: set
                .solutions
                .iter()
                .map(|sol| SolutionJson { x: poly_to_json(&sol.x), y: poly_to_json(&sol.y) })
                .collect(),
            y_classes: set.y_classes.clone(),
            x_classes: set.x_classes.clone(),
        }
    }

    /// Rebuilds (and re-validates) the solution set from cached JSON.
    pub fn to_solutions(&self, spec: &FieldSpec) -> Result<Vec<Solution>> {
        if spec.to_string() != self.field {
            return Err(Error::InvalidInput("cached field spec mismatch".into()));
        }
        self.solutions
            .iter()
            .map(|s| {
                Ok(Solution {
                    x: poly_from_json(spec, &s.x)?,
                    y: poly_from_json(spec, &s.y)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionJson {
    pub base: String,
    pub orthogonal: Vec<String>,
    pub nonorthogonal: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramJson {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub multisets: BTreeMap<String, [u64; 3]>,
    pub partition: PartitionJson,
}

pub fn gram_to_json(report: &GramReport, partition: &ClebschPartition) -> GramJson {
    let label = |i: usize| report.labels[i].clone();
    GramJson {
        labels: report.labels.clone(),
        gram: report.z_gram.clone(),
        multisets: report
            .multisets
            .iter()
            .map(|(&(i, j), m)| (format!("{i},{j}"), *m))
            .collect(),
        partition: PartitionJson {
            base: label(partition.base),
            orthogonal: partition.orthogonal.iter().map(|&i| label(i)).collect(),
            nonorthogonal: partition.nonorthogonal.iter().map(|&i| label(i)).collect(),
        },
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub m: u32,
    /// Field order as a string (can exceed the safe JSON integer range).
    pub order: String,
    /// `null` when the level was skipped for budget.
    pub count: Option<usize>,
}

pub fn extensions_to_json(counts: &[ExtensionCount]) -> Vec<ExtensionJson> {
    counts
        .iter()
        .map(|c| ExtensionJson { m: c.m, order: c.field_order.to_string(), count: c.count })
        .collect()
}

/// Full solve output: the cacheable base plus recomputed companions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub base: SolveBase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extensions: Option<Vec<ExtensionJson>>,
}

/// Lattice census keys per the lattice module's report schema.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusJson {
    pub roots: usize,
    pub split: [usize; 2],
    pub classes_mod2: usize,
    pub odd_census: [usize; 2],
    pub classes_mod_sqrt3: usize,
}

/// The selftest fingerprint; every field is pinned by the acceptance
/// constants.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SelftestFingerprint {
    pub roots: usize,
    pub split: [usize; 2],
    pub classes_mod2: usize,
    pub theta_census: [usize; 2],
    pub classes_mod_sqrt3: usize,
    pub aut_order: u64,
    pub induced_order: u64,
    pub stab_orbits: [usize; 3],
    pub covers: [u64; 3],
}

impl SelftestFingerprint {
    pub fn expected() -> SelftestFingerprint {
        SelftestFingerprint {
            roots: 240,
            split: [24, 216],
            classes_mod2: 120,
            theta_census: [136, 120],
            classes_mod_sqrt3: 80,
            aut_order: 155_520,
            induced_order: 25_920,
            stab_orbits: [1, 12, 27],
            covers: [243, 240, 40],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoversJson {
    pub n: u32,
    pub tuples: u64,
    pub transitive: u64,
    pub orbits: u64,
    pub formula: u64,
}

/// Curve point JSON: `{"identity": true}` or
/// `{"x": {"num": [...], "den": [...]}, "y": {...}}` with `Poly` arrays as
/// element strings.
pub fn point_to_json(p: &crate::curve::CurvePoint) -> serde_json::Value {
    match p.xy() {
        None => serde_json::json!({ "identity": true }),
        Some((x, y)) => serde_json::json!({
            "x": { "num": poly_to_json(x.num()), "den": poly_to_json(x.den()) },
            "y": { "num": poly_to_json(y.num()), "den": poly_to_json(y.den()) },
        }),
    }
}

pub fn point_from_json(
    curve: &crate::curve::Curve,
    v: &serde_json::Value,
) -> Result<crate::curve::CurvePoint> {
    if v.get("identity").and_then(|b| b.as_bool()) == Some(true) {
        return Ok(curve.identity());
    }
    let spec = curve.spec();
    let side = |key: &str| -> Result<crate::ratfun::RationalFunction> {
        let strings = |w: &serde_json::Value| -> Result<Vec<String>> {
            w.as_array()
                .ok_or_else(|| Error::InvalidInput(format!("point JSON: `{key}` malformed")))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::InvalidInput("non-string coefficient".into()))
                })
                .collect()
        };
        let obj = v
            .get(key)
            .ok_or_else(|| Error::InvalidInput(format!("point JSON missing `{key}`")))?;
        let num = poly_from_json(spec, &strings(&obj["num"])?)?;
        let den = poly_from_json(spec, &strings(&obj["den"])?)?;
        crate::ratfun::RationalFunction::new(num, den)
    };
    curve.affine(side("x")?, side("y")?)
}

/// Lattice vector JSON: an array of four `[a, b]` integer pairs.
pub fn vector_to_json(z: &crate::lattice::EisensteinVector) -> Result<serde_json::Value> {
    let mut coords = Vec::with_capacity(4);
    for c in &z.0 {
        let a = i64::try_from(&c.a)
            .map_err(|_| Error::InvalidInput("coordinate exceeds i64".into()))?;
        let b = i64::try_from(&c.b)
            .map_err(|_| Error::InvalidInput("coordinate exceeds i64".into()))?;
        coords.push(serde_json::json!([a, b]));
    }
    Ok(serde_json::Value::Array(coords))
}

pub fn vector_from_json(v: &serde_json::Value) -> Result<crate::lattice::EisensteinVector> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::InvalidInput("vector JSON must have 4 coordinates".into()))?;
    let mut out = crate::lattice::EisensteinVector::zero();
    for (i, pair) in arr.iter().enumerate() {
        let p = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::InvalidInput("coordinate must be [a, b]".into()))?;
        let a = p[0].as_i64().ok_or_else(|| Error::InvalidInput("bad integer".into()))?;
        let b = p[1].as_i64().ok_or_else(|| Error::InvalidInput("bad integer".into()))?;
        out.0[i] = crate::eisenstein::EisensteinInt::new(a, b);
    }
    Ok(out)
}

pub fn census_to_json(c: &crate::lattice::LatticeCensus) -> CensusJson {
    CensusJson {
        roots: c.roots,
        split: [c.split.0, c.split.1],
        classes_mod2: c.classes_mod2,
        odd_census: [c.upsilon_census.0, c.upsilon_census.1],
        classes_mod_sqrt3: c.classes_mod_sqrt3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_json_roundtrip() {
        let spec = FieldSpec::prime(7).unwrap();
        let p = Poly::from_i64_coeffs(&spec, &[1, 0, 0, 0, 0, 0, 1]);
        let json = poly_to_json(&p);
        assert_eq!(json, vec!["1", "0", "0", "0", "0", "0", "1"]);
        assert_eq!(poly_from_json(&spec, &json).unwrap(), p);
        let f49 = FieldSpec::extension(7, 2).unwrap();
        let q = Poly::from_coeffs(&f49, vec![f49.primitive_cube_root(), f49.one()]);
        let json = poly_to_json(&q);
        assert_eq!(poly_from_json(&f49, &json).unwrap(), q);
    }

    #[test]
    fn fingerprint_serialization_is_stable() {
        let fp = SelftestFingerprint::expected();
        let s = serde_json::to_string(&fp).unwrap();
        assert!(s.starts_with("{\"roots\":240,\"split\":[24,216]"));
        let back: SelftestFingerprint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, fp);
    }

    #[test]
    fn point_json_roundtrip() {
        let spec = FieldSpec::eisenstein_rational();
        let curve =
            crate::curve::Curve::new(Poly::from_i64_coeffs(&spec, &[1, 0, 0, 0, 0, 0, 1]))
                .unwrap();
        let p = curve
            .affine_from_polys(Poly::from_i64_coeffs(&spec, &[0, 0, -1]), Poly::one(&spec))
            .unwrap();
        let sum = p.sqrt3_closed_form().unwrap(); // non-polynomial coordinates
        for point in [curve.identity(), p, sum] {
            let v = point_to_json(&point);
            let back = point_from_json(&curve, &v).unwrap();
            assert_eq!(back, point);
        }
        // off-curve input rejected
        let bad = serde_json::json!({
            "x": {"num": ["1"], "den": ["1"]},
            "y": {"num": ["1"], "den": ["1"]},
        });
        assert!(point_from_json(&curve, &bad).is_err());
    }

    #[test]
    fn vector_and_census_json() {
        let roots = crate::lattice::enumerate_roots();
        let v = vector_to_json(&roots[0]).unwrap();
        assert_eq!(vector_from_json(&v).unwrap(), roots[0]);
        let census = crate::lattice::census().unwrap();
        let json = serde_json::to_string(&census_to_json(&census)).unwrap();
        assert!(json.contains("\"odd_census\":[136,120]"));
        assert!(json.contains("\"classes_mod_sqrt3\":80"));
    }
}
