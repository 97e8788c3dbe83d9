//! The Eisenstein form of E8 from the tetracode, via complex Construction A:
//! vectors in `Z[rho]^4` congruent mod `sqrt(-3)` to a tetracode word, with
//! the Hermitian inner product `(z, w) = (2/3) sum_j z_j conj(w_j)`.
//!
//! Provides the 240 roots with their 24 + 216 split, triflections, the mod-2
//! and mod-sqrt(-3) reductions with their Hermitian / symplectic forms, the
//! parity invariant `upsilon`, class censuses, and the even-unimodular Gram
//! verification.
//!
//! `upsilon(z) = (norm(z)/2) mod 2` is well defined on classes mod 2: for
//! lattice members the inner product lies in `(2/sqrt(-3)) Z[rho]`, whose
//! real part is an integer, so `|z + 2w|^2/2 - |z|^2/2 = 2 Re(z,w) + 2|w|^2`
//! is even.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, One, Zero};

use crate::eisenstein::{EisensteinInt, EisensteinRat};
use crate::error::{Error, Result};

/// Length-4 vector of Eisenstein integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinVector(pub [EisensteinInt; 4]);

impl std::fmt::Display for EisensteinVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl EisensteinVector {
    pub fn from_i64(coords: [(i64, i64); 4]) -> Self {
        EisensteinVector(coords.map(|(a, b)| EisensteinInt::new(a, b)))
    }

    pub fn zero() -> Self {
        EisensteinVector::from_i64([(0, 0); 4])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..4 {
            out.0[i] = &out.0[i] + &other.0[i];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..4 {
            out.0[i] = &out.0[i] - &other.0[i];
        }
        out
    }

    pub fn neg(&self) -> Self {
        EisensteinVector([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }

    pub fn scale(&self, c: &EisensteinInt) -> Self {
        EisensteinVector([c * &self.0[0], c * &self.0[1], c * &self.0[2], c * &self.0[3]])
    }

    /// Coordinatewise conjugation; the conjugate-linear outer symmetry.
    pub fn conj(&self) -> Self {
        EisensteinVector([self.0[0].conj(), self.0[1].conj(), self.0[2].conj(), self.0[3].conj()])
    }

    /// Residues mod `sqrt(-3)` as a vector over F_3.
    pub fn residues_mod_sqrt3(&self) -> [u8; 4] {
        [
            self.0[0].residue_mod_sqrt3(),
            self.0[1].residue_mod_sqrt3(),
            self.0[2].residue_mod_sqrt3(),
            self.0[3].residue_mod_sqrt3(),
        ]
    }

    /// Construction A membership: the residue vector is a tetracode word.
    pub fn is_lattice_member(&self) -> bool {
        let r = self.residues_mod_sqrt3();
        tetracode_contains(&r)
    }
}

/// The 9 words of the tetracode: the F_3-span of `(1,1,1,0)` and
/// `(1,-1,0,1)`, in sorted order.  Weight enumerator `1 + 8 z^3`.
pub fn tetracode_words() -> Vec<[u8; 4]> {
    let g1 = [1u8, 1, 1, 0];
    let g2 = [1u8, 2, 0, 1]; // (1, -1, 0, 1)
    let mut words = Vec::with_capacity(9);
    for a in 0..3u8 {
        for b in 0..3u8 {
            let mut w = [0u8; 4];
            for i in 0..4 {
                w[i] = (a * g1[i] + b * g2[i]) % 3;
            }
            words.push(w);
        }
    }
    words.sort();
    words
}

fn tetracode_contains(word: &[u8; 4]) -> bool {
    // Parity checks for the span of (1,1,1,0) and (1,2,0,1): with
    // w = (w0, w1, w2, w3) = a(1,1,1,0) + b(1,2,0,1) one has
    // w0 = a + b, w2 = a, w3 = b, and w1 = a + 2b must match.
    let a = word[2] % 3;
    let b = word[3] % 3;
    word[0] % 3 == (a + b) % 3 && word[1] % 3 == (a + 2 * b) % 3
}

/// `(z, w) = (2/3) sum z_j conj(w_j)`.
pub fn inner_product(z: &EisensteinVector, w: &EisensteinVector) -> EisensteinRat {
    let mut acc = EisensteinInt::zero();
    for i in 0..4 {
        acc = &acc + &(&z.0[i] * &w.0[i].conj());
    }
    let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
    EisensteinRat::from_int(&acc).scale(&two_thirds)
}

/// Norm as an exact rational (real since `(z, z)` is fixed by conjugation).
pub fn norm_rat(z: &EisensteinVector) -> BigRational {
    let n = inner_product(z, z);
    debug_assert!(n.b.is_zero());
    n.a
}

/// Norm of a lattice member (a nonnegative even integer).
pub fn norm_int(z: &EisensteinVector) -> Result<BigInt> {
    let n = norm_rat(z);
    if !n.is_integer() {
        return Err(Error::NotInLattice);
    }
    Ok(n.to_integer())
}

pub fn is_root(z: &EisensteinVector) -> bool {
    z.is_lattice_member() && norm_rat(z) == BigRational::from_integer(BigInt::from(2))
}

/// All 240 roots in canonical sorted order (lexicographic on the `(a, b)`
/// coordinate pairs): 24 unit-vector multiples by the six units times
/// `sqrt(-3)`, and 216 minimal lifts of the 8 nonzero tetracode words
/// (0 lifts to 0; residue-1 coordinates lift to `{1, rho, rho^2}`,
/// residue-2 to their negatives).
pub fn enumerate_roots() -> Vec<EisensteinVector> {
    let units = EisensteinInt::units();
    let sqrt_m3 = EisensteinInt::sqrt_m3();
    let mut roots = Vec::with_capacity(240);
    for j in 0..4 {
        for u in &units {
            let mut v = EisensteinVector::zero();
            v.0[j] = u * &sqrt_m3;
            roots.push(v);
        }
    }
    let lifts_of = |r: u8| -> Vec<EisensteinInt> {
        match r {
            0 => vec![EisensteinInt::zero()],
            1 => vec![
                EisensteinInt::new(1, 0),
                EisensteinInt::new(0, 1),
                EisensteinInt::new(-1, -1),
            ],
            2 => vec![
                EisensteinInt::new(-1, 0),
                EisensteinInt::new(0, -1),
                EisensteinInt::new(1, 1),
            ],
            _ => unreachable!(),
        }
    };
    for word in tetracode_words() {
        if word == [0, 0, 0, 0] {
            continue;
        }
        let choices: Vec<Vec<EisensteinInt>> = word.iter().map(|&r| lifts_of(r)).collect();
        for c0 in &choices[0] {
            for c1 in &choices[1] {
                for c2 in &choices[2] {
                    for c3 in &choices[3] {
                        roots.push(EisensteinVector([
                            c0.clone(),
                            c1.clone(),
                            c2.clone(),
                            c3.clone(),
                        ]));
                    }
                }
            }
        }
    }
    debug_assert_eq!(roots.len(), 240);
    roots.sort();
    roots
}

/// `(unit-vector multiples, tetracode lifts)` counts, classified by support.
pub fn root_split(roots: &[EisensteinVector]) -> (usize, usize) {
    let mut singles = 0;
    let mut lifts = 0;
    for r in roots {
        let support = r.0.iter().filter(|c| !c.is_zero()).count();
        if support == 1 {
            singles += 1;
        } else {
            lifts += 1;
        }
    }
    (singles, lifts)
}

/// The triflection `z -> z + (rho - 1)/2 (z, r) r` attached to a root `r`:
/// an order-3 isometry fixing the hyperplane orthogonal to `r`.
pub fn triflection(r: &EisensteinVector, z: &EisensteinVector) -> Result<EisensteinVector> {
    if !is_root(r) {
        return Err(Error::NotARoot);
    }
    let ip = inner_product(z, r);
    // (rho - 1)/2 * (z, r)
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let factor = (&EisensteinRat::from_i64(-1, 1) * &ip).scale(&half);
    let mut out = z.clone();
    for i in 0..4 {
        let add = &factor * &EisensteinRat::from_int(&r.0[i]);
        let new = &EisensteinRat::from_int(&out.0[i]) + &add;
        out.0[i] = new.to_int().ok_or_else(|| {
            Error::InvariantViolation("triflection left the integral lattice".into())
        })?;
    }
    Ok(out)
}

/// The fixed Z[rho]-basis used for quotient coordinates.
pub fn standard_basis() -> [EisensteinVector; 4] {
    [
        EisensteinVector::from_i64([(1, 0), (1, 0), (1, 0), (0, 0)]),
        EisensteinVector::from_i64([(1, 0), (-1, 0), (0, 0), (1, 0)]),
        EisensteinVector::from_i64([(1, 2), (0, 0), (0, 0), (0, 0)]),
        EisensteinVector::from_i64([(0, 0), (0, 0), (1, 2), (0, 0)]),
    ]
}

/// Coordinates of `z` in a Z[rho]-basis, by Gaussian elimination over
/// `Q(rho)`; errors when the coordinates are not Eisenstein integers.
pub fn coordinates_in_basis(
    basis: &[EisensteinVector; 4],
    z: &EisensteinVector,
) -> Result<[EisensteinInt; 4]> {
    // Augmented 4x5 system: columns are the basis vectors.
    let mut m: Vec<Vec<EisensteinRat>> = (0..4)
        .map(|row| {
            let mut r: Vec<EisensteinRat> =
                (0..4).map(|col| EisensteinRat::from_int(&basis[col].0[row])).collect();
            r.push(EisensteinRat::from_int(&z.0[row]));
            r
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::InvariantViolation("singular basis matrix".into()))?;
        m.swap(col, pivot);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for c in col..5 {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..5 {
                    m[r][c] = &m[r][c] - &(&f * &m[col][c]);
                }
            }
        }
    }
    let mut out = [
        EisensteinInt::zero(),
        EisensteinInt::zero(),
        EisensteinInt::zero(),
        EisensteinInt::zero(),
    ];
    for i in 0..4 {
        out[i] = m[i][4].to_int().ok_or(Error::NotInLattice)?;
    }
    Ok(out)
}

/// Class in `L/2L`: the four basis coordinates mod 2, each encoded as
/// `(a mod 2) + 2*(b mod 2)` (so `0, 1, rho, 1+rho` are `0, 1, 2, 3`).
pub type F4Class = [u8; 4];
/// Class in `L/sqrt(-3)L`: basis coordinates mod `sqrt(-3)` in `{0, 1, 2}`.
pub type F3Class = [u8; 4];

/// Reduction mod 2 together with the parity bit
/// `upsilon = (norm/2) mod 2`.
pub fn reduce_mod_two(z: &EisensteinVector) -> Result<(F4Class, u8)> {
    if !z.is_lattice_member() {
        return Err(Error::NotInLattice);
    }
    let coords = coordinates_in_basis(&standard_basis(), z)?;
    let class = coords.map(|c| {
        let (a, b) = c.residue_mod_two();
        a + 2 * b
    });
    let n = norm_int(z)?;
    let half = n / BigInt::from(2);
    let upsilon = (half % BigInt::from(2) + BigInt::from(2)) % BigInt::from(2);
    Ok((class, if upsilon.is_zero() { 0 } else { 1 }))
}

/// Reduction mod `sqrt(-3)`.
pub fn reduce_mod_sqrt3(z: &EisensteinVector) -> Result<F3Class> {
    if !z.is_lattice_member() {
        return Err(Error::NotInLattice);
    }
    let coords = coordinates_in_basis(&standard_basis(), z)?;
    Ok(coords.map(|c| c.residue_mod_sqrt3()))
}

/// The F_4-valued Hermitian form on classes mod 2: `(sqrt(-3)/2)(z, w)`
/// reduced mod 2, encoded like [`F4Class`] entries.
pub fn hermitian_form_f4(z: &EisensteinVector, w: &EisensteinVector) -> Result<u8> {
    let ip = inner_product(z, w);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mu = (&ip * &EisensteinRat::from_i64(1, 2)).scale(&half);
    let mu = mu.to_int().ok_or(Error::NotInLattice)?;
    let (a, b) = mu.residue_mod_two();
    Ok(a + 2 * b)
}

/// The F_3-valued symplectic form on classes mod `sqrt(-3)`:
/// `sqrt(-3)(z, w)` reduced mod `sqrt(-3)`.
pub fn symplectic_form_f3(z: &EisensteinVector, w: &EisensteinVector) -> Result<u8> {
    let ip = inner_product(z, w);
    let v = &ip * &EisensteinRat::from_i64(1, 2); // sqrt(-3) * (z, w)
    let v = v.to_int().ok_or(Error::NotInLattice)?;
    Ok(v.residue_mod_sqrt3())
}

/// Census results for the root system and both quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCensus {
    pub roots: usize,
    /// (unit-vector multiples, tetracode lifts)
    pub split: (usize, usize),
    /// Distinct classes of roots mod 2 (each a `{r, -r}` pair).
    pub classes_mod2: usize,
    /// Over all 256 classes: (upsilon = 0 count including zero, upsilon = 1).
    pub upsilon_census: (usize, usize),
    /// Distinct nonzero classes of roots mod sqrt(-3) (each a `mu_3 r`).
    pub classes_mod_sqrt3: usize,
}

/// Runs the full census; errors if any structural invariant fails.
pub fn census() -> Result<LatticeCensus> {
    census_of(&enumerate_roots())
}

/// Census over a supplied root list (lets a test harness inject a corrupted
/// list and watch the invariants trip).
pub fn census_of(roots: &[EisensteinVector]) -> Result<LatticeCensus> {
    let two = BigInt::from(2);
    for r in roots {
        if norm_int(r)? != two {
            return Err(Error::InvariantViolation(format!("root {r} has norm != 2")));
        }
    }
    let split = root_split(roots);

    // mod 2: fibers must be {r, -r} with upsilon = 1
    let mut mod2: BTreeMap<F4Class, Vec<usize>> = BTreeMap::new();
    for (i, r) in roots.iter().enumerate() {
        let (class, upsilon) = reduce_mod_two(r)?;
        if upsilon != 1 {
            return Err(Error::InvariantViolation(format!("root {r} has upsilon 0")));
        }
        mod2.entry(class).or_default().push(i);
    }
    for (class, members) in &mod2 {
        if members.len() != 2 || roots[members[0]] != roots[members[1]].neg() {
            return Err(Error::InvariantViolation(format!(
                "mod-2 class {class:?} is not an antipodal pair"
            )));
        }
    }

    // upsilon census over all 256 classes
    let basis = standard_basis();
    let mut even = 0usize;
    let mut odd = 0usize;
    let residue = |code: u8| EisensteinInt::new((code & 1) as i64, ((code >> 1) & 1) as i64);
    for code in 0..256u32 {
        let digits = [
            (code & 3) as u8,
            ((code >> 2) & 3) as u8,
            ((code >> 4) & 3) as u8,
            ((code >> 6) & 3) as u8,
        ];
        let mut z = EisensteinVector::zero();
        for i in 0..4 {
            z = z.add(&basis[i].scale(&residue(digits[i])));
        }
        let (_, upsilon) = reduce_mod_two(&z)?;
        if upsilon == 0 {
            even += 1;
        } else {
            odd += 1;
        }
    }

    // mod sqrt(-3): fibers must be {r, rho r, rho^2 r}, none at zero
    let mut mod3: BTreeMap<F3Class, Vec<usize>> = BTreeMap::new();
    for (i, r) in roots.iter().enumerate() {
        let class = reduce_mod_sqrt3(r)?;
        if class == [0, 0, 0, 0] {
            return Err(Error::InvariantViolation(format!("root {r} reduces to zero")));
        }
        mod3.entry(class).or_default().push(i);
    }
    let rho = EisensteinInt::rho();
    for members in mod3.values() {
        if members.len() != 3 {
            return Err(Error::InvariantViolation("mod-sqrt(-3) fiber size != 3".into()));
        }
        let base = &roots[members[0]];
        let twisted = [base.scale(&rho), base.scale(&(&rho * &rho))];
        for t in &twisted {
            if !members.iter().any(|&i| &roots[i] == t) {
                return Err(Error::InvariantViolation(
                    "mod-sqrt(-3) fiber is not a mu_3 orbit".into(),
                ));
            }
        }
    }

    Ok(LatticeCensus {
        roots: roots.len(),
        split,
        classes_mod2: mod2.len(),
        upsilon_census: (even, odd),
        classes_mod_sqrt3: mod3.len(),
    })
}

/// Nondegeneracy of the two reduced forms, by kernel scan over all classes.
pub fn forms_nondegenerate() -> Result<(bool, bool)> {
    let basis = standard_basis();
    let residue = |code: u8| EisensteinInt::new((code & 1) as i64, ((code >> 1) & 1) as i64);
    let class_vector = |digits: [u8; 4]| {
        let mut z = EisensteinVector::zero();
        for i in 0..4 {
            z = z.add(&basis[i].scale(&residue(digits[i])));
        }
        z
    };
    let mut f4_ok = true;
    for code in 1..256u32 {
        let digits = [
            (code & 3) as u8,
            ((code >> 2) & 3) as u8,
            ((code >> 4) & 3) as u8,
            ((code >> 6) & 3) as u8,
        ];
        let z = class_vector(digits);
        if (0..4).try_fold(true, |acc, i| -> Result<bool> {
            Ok(acc && hermitian_form_f4(&z, &basis[i])? == 0)
        })? {
            f4_ok = false;
            break;
        }
    }
    let mut f3_ok = true;
    let residue3 = |d: u8| EisensteinInt::new(d as i64, 0);
    for code in 1..81u32 {
        let mut digits = [0u8; 4];
        let mut rest = code;
        for d in digits.iter_mut() {
            *d = (rest % 3) as u8;
            rest /= 3;
        }
        let mut z = EisensteinVector::zero();
        for i in 0..4 {
            z = z.add(&basis[i].scale(&residue3(digits[i])));
        }
        if (0..4).try_fold(true, |acc, i| -> Result<bool> {
            Ok(acc && symplectic_form_f3(&z, &basis[i])? == 0)
        })? {
            f3_ok = false;
            break;
        }
    }
    Ok((f4_ok, f3_ok))
}

/// Result of the even-unimodular verification for a candidate basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E8Report {
    /// 8x8 integer Gram of `{b_1..b_4, rho b_1..rho b_4}` under `Re(.,.)`.
    pub gram: Vec<Vec<BigInt>>,
    pub even: bool,
    pub determinant: BigInt,
    pub spanning: bool,
    pub unimodular: bool,
    /// Norm-2 vectors in the Construction-A lattice (basis independent).
    pub root_count: usize,
    pub success: bool,
}

/// Builds the Z-Gram of `{b_i, rho b_i}`, reports evenness and determinant,
/// and counts the norm-2 vectors of the ambient Construction-A lattice by
/// scanning coordinate-norm patterns.
pub fn verify_e8(basis: &[EisensteinVector; 4]) -> Result<E8Report> {
    for b in basis {
        if !b.is_lattice_member() {
            return Err(Error::NotInLattice);
        }
    }
    let rho = EisensteinInt::rho();
    let mut z_basis: Vec<EisensteinVector> = basis.to_vec();
    for b in basis {
        z_basis.push(b.scale(&rho));
    }
    let mut gram = vec![vec![BigInt::zero(); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let ip = inner_product(&z_basis[i], &z_basis[j]);
            let re = ip.real_part();
            if !re.is_integer() {
                return Err(Error::InvariantViolation(
                    "non-integral real pairing on lattice members".into(),
                ));
            }
            gram[i][j] = re.to_integer();
        }
    }
    let even = (0..8).all(|i| (&gram[i][i] % BigInt::from(2)).is_zero());
    let determinant = det_bareiss(&gram);
    let spanning = !determinant.is_zero();
    let unimodular = determinant == BigInt::one();
    let root_count = count_lattice_roots();
    let success = even && unimodular && root_count == 240;
    Ok(E8Report { gram, even, determinant, spanning, unimodular, root_count, success })
}

/// Counts norm-2 members by scanning all coordinate patterns with
/// `sum_j N(z_j) = 3` (coordinates of norm 0, 1, or 3).
fn count_lattice_roots() -> usize {
    let units = EisensteinInt::units();
    let sqrt_m3 = EisensteinInt::sqrt_m3();
    let norm3: Vec<EisensteinInt> = units.iter().map(|u| u * &sqrt_m3).collect();
    let mut count = 0usize;
    // pattern (3, 0, 0, 0)
    for j in 0..4 {
        for v in &norm3 {
            let mut z = EisensteinVector::zero();
            z.0[j] = v.clone();
            if is_root(&z) {
                count += 1;
            }
        }
    }
    // pattern (1, 1, 1, 0)
    for zero_at in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&i| i != zero_at).collect();
        for u0 in &units {
            for u1 in &units {
                for u2 in &units {
                    let mut z = EisensteinVector::zero();
                    z.0[idx[0]] = u0.clone();
                    z.0[idx[1]] = u1.clone();
                    z.0[idx[2]] = u2.clone();
                    if is_root(&z) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Fraction-free Bareiss determinant for small integer matrices.
fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// mu_6-classes of the root list: orbits under `{±1, ±rho, ±rho^2}` scaling,
/// labeled by least member index.  There are 40.
pub fn mu6_classes(roots: &[EisensteinVector]) -> Vec<Vec<usize>> {
    let index: HashMap<&EisensteinVector, usize> =
        roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut seen = vec![false; roots.len()];
    let mut classes = Vec::new();
    for i in 0..roots.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for u in EisensteinInt::units() {
            let im = roots[i].scale(&u);
            let j = *index.get(&im).expect("unit multiple of a root is a root");
            if !seen[j] {
                seen[j] = true;
                orbit.push(j);
            }
        }
        orbit.sort();
        classes.push(orbit);
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// The distinct triflection permutations of the sorted root list.  A
/// triflection depends only on the mu_6-class of its root, so there are 40.
pub fn triflection_permutations(roots: &[EisensteinVector]) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&EisensteinVector, usize> =
        roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let classes = mu6_classes(roots);
    let mut perms = Vec::with_capacity(classes.len());
    for class in &classes {
        let r = &roots[class[0]];
        let mut images = Vec::with_capacity(roots.len());
        for z in roots {
            let im = triflection(r, z)?;
            let j = *index
                .get(&im)
                .ok_or_else(|| Error::InvariantViolation("triflection image not a root".into()))?;
            images.push(j);
        }
        perms.push(images);
    }
    Ok(perms)
}

/// The permutation of the sorted roots induced by coordinatewise
/// conjugation (the outer, conjugate-linear symmetry).
pub fn conjugation_permutation(roots: &[EisensteinVector]) -> Vec<usize> {
    let index: HashMap<&EisensteinVector, usize> =
        roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    roots.iter().map(|r| *index.get(&r.conj()).expect("conjugate of a root is a root")).collect()
}

/// Pushes degree-240 permutations down to the 40 mu_6-classes.
pub fn induced_class_permutations(
    roots: &[EisensteinVector],
    classes: &[Vec<usize>],
    perms: &[Vec<usize>],
) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; roots.len()];
    for (ci, class) in classes.iter().enumerate() {
        for &i in class {
            class_of[i] = ci;
        }
    }
    perms
        .iter()
        .map(|perm| {
            classes
                .iter()
                .map(|class| class_of[perm[class[0]]])
                .collect::<Vec<usize>>()
        })
        .collect()
}
