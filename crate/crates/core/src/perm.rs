//! A small permutation-group engine: deterministic Schreier-Sims stabilizer
//! chains, exact group orders, orbits, and membership sifting.  Sized for
//! the order-155520 action on the 240 roots; no randomization anywhere.

use std::collections::HashSet;

use num::BigUint;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Transposition `(a b)` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// `self` then `other`: `(p)^(self * other) = ((p)^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &im)| *i != im).map(|(i, _)| i)
    }
}

#[derive(Debug)]
struct Level {
    point: usize,
    /// Strong generators stored at this level: they fix the base points of
    /// all earlier levels.  The group at level `i` is generated by the union
    /// of the stores at levels `>= i`.
    store: Vec<Permutation>,
    /// transversal[p] = a word taking `point` to `p`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Level {
        Level { point, store: Vec::new(), transversal: vec![None; degree], orbit: Vec::new() }
    }

    /// Deterministic BFS orbit with transversal under the given generators.
    fn recompute_orbit(&mut self, degree: usize, gens: &[Permutation]) {
        self.transversal = vec![None; degree];
        self.orbit.clear();
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit.push(self.point);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let word = self.transversal[p].as_ref().unwrap().compose(g);
                    self.transversal[q] = Some(word);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Union of the stores at levels `>= i`.
fn gens_at(chain: &[Level], i: usize) -> Vec<Permutation> {
    chain[i..].iter().flat_map(|l| l.store.iter().cloned()).collect()
}

/// A permutation group given by generators, with a lazily built
/// deterministic stabilizer chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: std::sync::OnceLock<Vec<Level>>,
    base_hint: Vec<usize>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch);
            }
        }
        Ok(PermGroup { degree, generators, chain: std::sync::OnceLock::new(), base_hint: Vec::new() })
    }

    /// Same group, but the stabilizer chain starts at `point` (used to read
    /// off point stabilizers).
    pub fn with_base_point(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange(point, self.degree));
        }
        Ok(PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: std::sync::OnceLock::new(),
            base_hint: vec![point],
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &Vec<Level> {
        self.chain.get_or_init(|| build_chain(self.degree, &self.generators, &self.base_hint))
    }

    /// Exact order as the product of the transversal lengths.
    pub fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for level in self.chain() {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        match sift(self.chain(), 0, g.clone()) {
            SiftResult::Identity => true,
            SiftResult::Residue(..) => false,
        }
    }

    /// Orbit partition; cells sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbit_partition(self.degree, &self.generators)
    }

    /// Orbit sizes of the stabilizer of `point` on all points, sorted
    /// ascending.  Read from a chain rebased at `point`.
    pub fn stabilizer_orbit_sizes(&self, point: usize) -> Result<Vec<usize>> {
        let rebased = self.with_base_point(point)?;
        let sizes = {
            let chain = rebased.chain();
            let stab_gens: Vec<Permutation> = if chain.is_empty() || chain[0].point != point {
                // The whole group already fixes `point`.
                self.generators.clone()
            } else {
                gens_at(chain, 1)
            };
            orbit_partition(self.degree, &stab_gens).into_iter().map(|o| o.len())
        };
        let mut out: Vec<usize> = sizes.collect();
        out.sort();
        Ok(out)
    }

    /// Brute-force closure; only for small groups (test oracle).
    pub fn brute_force_order(&self, cap: usize) -> Option<usize> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = vec![Permutation::identity(self.degree)];
        seen.insert(queue[0].images.to_vec());
        while let Some(g) = queue.pop() {
            for s in &self.generators {
                let h = g.compose(s);
                if seen.insert(h.images.to_vec()) {
                    queue.push(h);
                }
                if seen.len() > cap {
                    return None;
                }
            }
        }
        Some(seen.len())
    }
}

fn orbit_partition(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits
}

enum SiftResult {
    Identity,
    Residue(Permutation, usize),
}

/// Sifts `g` through the chain starting at `level`; returns the residue and
/// the level where it got stuck.
fn sift(chain: &[Level], start: usize, mut g: Permutation) -> SiftResult {
    for (i, level) in chain.iter().enumerate().skip(start) {
        if g.is_identity() {
            return SiftResult::Identity;
        }
        let image = g.apply(level.point);
        match &level.transversal[image] {
            None => return SiftResult::Residue(g, i),
            Some(u) => {
                g = g.compose(&u.inverse());
            }
        }
    }
    if g.is_identity() { SiftResult::Identity } else { SiftResult::Residue(g, chain.len()) }
}

/// Deterministic Schreier-Sims (bottom-up verification): fixed base
/// selection (hint first, then smallest moved point), BFS transversals.
/// A level is "verified" when every Schreier generator of its orbit sifts
/// to the identity through the deeper levels; inserting a residue restarts
/// verification from the insertion level.
fn build_chain(degree: usize, generators: &[Permutation], base_hint: &[usize]) -> Vec<Level> {
    let mut chain: Vec<Level> = Vec::new();
    let gens: Vec<Permutation> =
        generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return chain;
    }
    let first = base_hint
        .iter()
        .copied()
        .find(|&p| gens.iter().any(|g| g.apply(p) != p))
        .or_else(|| gens.iter().filter_map(|g| g.smallest_moved_point()).min())
        .expect("non-identity generators move something");
    chain.push(Level::new(degree, first));
    for g in gens {
        chain[0].store.push(g);
    }
    let all = gens_at(&chain, 0);
    chain[0].recompute_orbit(degree, &all);

    // Verify from the deepest level upward.
    let mut i: isize = chain.len() as isize - 1;
    while i >= 0 {
        let li = i as usize;
        let level_gens = gens_at(&chain, li);
        chain[li].recompute_orbit(degree, &level_gens);
        let orbit = chain[li].orbit.clone();
        let mut descended = false;
        'verify: for &p in &orbit {
            let u_p = chain[li].transversal[p].as_ref().unwrap().clone();
            for s in &level_gens {
                let q = s.apply(p);
                let u_q_inv = chain[li].transversal[q].as_ref().unwrap().inverse();
                let schreier = u_p.compose(s).compose(&u_q_inv);
                if let SiftResult::Residue(residue, at) = sift(&chain, li + 1, schreier) {
                    if at == chain.len() {
                        let point = residue.smallest_moved_point().expect("non-identity");
                        chain.push(Level::new(degree, point));
                    }
                    chain[at].store.push(residue);
                    let at_gens = gens_at(&chain, at);
                    chain[at].recompute_orbit(degree, &at_gens);
                    i = at as isize;
                    descended = true;
                    break 'verify;
                }
            }
        }
        if !descended {
            i -= 1;
        }
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, points: &[usize]) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        for w in points.windows(2) {
            images[w[0]] = w[1];
        }
        if points.len() > 1 {
            images[*points.last().unwrap()] = points[0];
        }
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn s3_order_six() {
        let g = PermGroup::new(
            3,
            vec![Permutation::transposition(3, 0, 1), Permutation::transposition(3, 1, 2)],
        )
        .unwrap();
        assert_eq!(g.order(), BigUint::from(6u32));
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(g.stabilizer_orbit_sizes(0).unwrap(), vec![1, 2]);
    }

    #[test]
    fn identity_only_group() {
        let g = PermGroup::new(5, vec![Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), BigUint::from(1u32));
        assert_eq!(g.orbits().len(), 5);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = PermGroup::new(
            4,
            vec![Permutation::identity(3)],
        )
        .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch);
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn orders_match_brute_force_on_small_groups() {
        // A4, D4, S4, a cyclic group, and the Mathieu-style degree-6 pair.
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (4, vec![cycle(4, &[0, 1, 2]), cycle(4, &[1, 2, 3])]), // A4, order 12
            (4, vec![cycle(4, &[0, 1, 2, 3]), Permutation::transposition(4, 0, 2)]), // D4
            (4, vec![Permutation::transposition(4, 0, 1), cycle(4, &[0, 1, 2, 3])]), // S4
            (6, vec![cycle(6, &[0, 1, 2, 3, 4, 5])]),              // C6
            (5, vec![cycle(5, &[0, 1, 2, 3, 4]), cycle(5, &[1, 2, 4, 3])]), // F20
            (6, vec![cycle(6, &[0, 1, 2, 3, 4]), Permutation::transposition(6, 3, 4)]), // S5 on 6? no: S5 natural on first 5
        ];
        for (degree, gens) in cases {
            let g = PermGroup::new(degree, gens).unwrap();
            let brute = g.brute_force_order(5000).expect("small group");
            assert_eq!(g.order(), BigUint::from(brute), "degree {degree}");
        }
    }

    #[test]
    fn membership_sifting() {
        let g = PermGroup::new(
            4,
            vec![cycle(4, &[0, 1, 2]), cycle(4, &[1, 2, 3])], // A4
        )
        .unwrap();
        // even permutations belong, odd ones do not
        assert!(g.contains(&cycle(4, &[0, 1, 2])));
        assert!(g.contains(&cycle(4, &[0, 1]).compose(&cycle(4, &[2, 3]))));
        assert!(!g.contains(&Permutation::transposition(4, 0, 1)));
        // sampled generator products of depth <= 6 always pass
        let gens = g.generators().to_vec();
        let mut state = 7u64;
        for _ in 0..200 {
            let mut w = Permutation::identity(4);
            for _ in 0..6 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                w = w.compose(&gens[(state >> 33) as usize % gens.len()]);
            }
            assert!(g.contains(&w));
        }
    }

    #[test]
    fn stabilizer_orbit_sizes_sum_to_degree() {
        let g = PermGroup::new(
            4,
            vec![Permutation::transposition(4, 0, 1), cycle(4, &[0, 1, 2, 3])],
        )
        .unwrap();
        for p in 0..4 {
            let sizes = g.stabilizer_orbit_sizes(p).unwrap();
            assert_eq!(sizes.iter().sum::<usize>(), 4);
        }
        assert!(g.stabilizer_orbit_sizes(7).is_err());
    }
}
