//! Exact fields containing a primitive cube root of unity.
//!
//! Three kinds are supported: prime fields `F_p` with `p = 1 (mod 3)`,
//! extension fields `F_{p^k}` with `p^k = 1 (mod 3)`, and the Eisenstein
//! rationals `Q(rho)`.  Characteristic 2 and 3 are rejected everywhere.
//!
//! Extension fields are built as `F_p[g]/(m(g))` where `m` is the
//! lexicographically least monic irreducible of the requested degree,
//! coefficients compared ascending from the constant term, so a spec is
//! reproducible from `(p, k)` alone.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

use crate::eisenstein::EisensteinRat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Prime,
    Extension,
    EisensteinRational,
}

#[derive(Debug)]
struct SpecData {
    kind: FieldKind,
    p: u64,
    k: u32,
    /// Monic irreducible modulus, ascending coefficients, length `k + 1`.
    /// Empty for prime and Eisenstein-rational specs.
    modulus: Vec<u64>,
    cube_root: OnceLock<Repr>,
}

/// Cheap-to-clone handle to a field description.
#[derive(Clone, Debug)]
pub struct FieldSpec(Arc<SpecData>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.kind as u8).hash(state);
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Prime => write!(f, "{}", self.0.p),
            FieldKind::Extension => write!(f, "{}^{}", self.0.p, self.0.k),
            FieldKind::EisensteinRational => write!(f, "Q(rho)"),
        }
    }
}

impl FieldSpec {
    /// The prime field `F_p`; requires `p >= 5` prime with `p = 1 (mod 3)`.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        validate_prime(p)?;
        if p % 3 != 1 {
            return Err(Error::NoCubeRoot(p, 1));
        }
        Ok(FieldSpec(Arc::new(SpecData {
            kind: FieldKind::Prime,
            p,
            k: 1,
            modulus: Vec::new(),
            cube_root: OnceLock::new(),
        })))
    }

    /// The extension field `F_{p^k}` with the canonical modulus.
    pub fn extension(p: u64, k: u32) -> Result<FieldSpec> {
        validate_prime(p)?;
        if k < 1 {
            return Err(Error::BadExtensionDegree);
        }
        let order = checked_pow_u128(p, k).ok_or(Error::OrderOverflow(p, k))?;
        if order % 3 != 1 {
            return Err(Error::NoCubeRoot(p, k));
        }
        let modulus = least_monic_irreducible(p, k);
        Ok(FieldSpec(Arc::new(SpecData {
            kind: FieldKind::Extension,
            p,
            k,
            modulus,
            cube_root: OnceLock::new(),
        })))
    }

    /// The Eisenstein rational field `Q(rho)`.
    pub fn eisenstein_rational() -> FieldSpec {
        FieldSpec(Arc::new(SpecData {
            kind: FieldKind::EisensteinRational,
            p: 0,
            k: 1,
            modulus: Vec::new(),
            cube_root: OnceLock::new(),
        }))
    }

    /// Parses the CLI spec syntax: `p`, `p^k`, or `Q(rho)`.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s == "Q(rho)" {
            return Ok(FieldSpec::eisenstein_rational());
        }
        if let Some((base, exp)) = s.split_once('^') {
            let p: u64 = base.parse().map_err(|_| Error::BadFieldSpec(s.into()))?;
            let k: u32 = exp.parse().map_err(|_| Error::BadFieldSpec(s.into()))?;
            return FieldSpec::extension(p, k);
        }
        let p: u64 = s.parse().map_err(|_| Error::BadFieldSpec(s.into()))?;
        FieldSpec::prime(p)
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Characteristic; 0 for `Q(rho)`.
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.k
    }

    /// Modulus coefficients (ascending) for extension specs.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.kind == FieldKind::Extension { Some(&self.0.modulus) } else { None }
    }

    pub fn is_finite(&self) -> bool {
        self.0.kind != FieldKind::EisensteinRational
    }

    /// Field order for finite specs.
    pub fn order(&self) -> Option<u128> {
        match self.0.kind {
            FieldKind::Prime => Some(self.0.p as u128),
            FieldKind::Extension => checked_pow_u128(self.0.p, self.0.k),
            FieldKind::EisensteinRational => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: self.clone(), repr: self.zero_repr() }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    fn zero_repr(&self) -> Repr {
        match self.0.kind {
            FieldKind::Prime => Repr::Prime(0),
            FieldKind::Extension => Repr::Ext(vec![0; self.0.k as usize]),
            FieldKind::EisensteinRational => Repr::Eis(EisensteinRat::zero()),
        }
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let repr = match self.0.kind {
            FieldKind::Prime => Repr::Prime(n % self.0.p),
            FieldKind::Extension => {
                let mut c = vec![0; self.0.k as usize];
                c[0] = n % self.0.p;
                Repr::Ext(c)
            }
            FieldKind::EisensteinRational => Repr::Eis(EisensteinRat::new(
                BigRational::from_integer(BigInt::from(n)),
                BigRational::zero(),
            )),
        };
        FieldElement { spec: self.clone(), repr }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        if n >= 0 {
            self.from_u64(n as u64)
        } else {
            -&self.from_u64(n.unsigned_abs())
        }
    }

    /// Element from an Eisenstein rational; only valid on `Q(rho)`.
    pub fn from_eisenstein(&self, z: EisensteinRat) -> Result<FieldElement> {
        if self.0.kind != FieldKind::EisensteinRational {
            return Err(Error::UnsupportedField(self.to_string()));
        }
        Ok(FieldElement { spec: self.clone(), repr: Repr::Eis(z) })
    }

    /// The canonical primitive cube root of unity: the smaller of the two
    /// in the canonical element order.
    pub fn primitive_cube_root(&self) -> FieldElement {
        let repr = self
            .0
            .cube_root
            .get_or_init(|| match self.0.kind {
                FieldKind::EisensteinRational => {
                    Repr::Eis(EisensteinRat::from_i64(0, 1))
                }
                _ => {
                    let q = self.order().expect("finite");
                    let e = (q - 1) / 3;
                    // First element whose ((q-1)/3)-th power is a nontrivial
                    // cube root of unity; deterministic over the canonical
                    // enumeration order.
                    let mut z = None;
                    for a in self.iter_elements().skip(1) {
                        let c = a.pow_u128(e);
                        if !c.is_one() {
                            z = Some(c);
                            break;
                        }
                    }
                    let z = z.expect("q = 1 (mod 3) guarantees a cube root");
                    let z2 = &z * &z;
                    if z <= z2 { z.repr } else { z2.repr }
                }
            })
            .clone();
        FieldElement { spec: self.clone(), repr }
    }

    /// All `p^k` elements in canonical order.  Errors on `Q(rho)`.
    pub fn enumerate(&self) -> Result<Vec<FieldElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteField);
        }
        Ok(self.iter_elements().collect())
    }

    /// Iterator over all elements of a finite spec in canonical order.
    /// Panics on `Q(rho)`; use [`FieldSpec::enumerate`] for a checked API.
    pub fn iter_elements(&self) -> ElementIter {
        assert!(self.is_finite(), "cannot enumerate an infinite field");
        ElementIter { spec: self.clone(), next: Some(self.zero_repr()) }
    }

    /// The element at position `idx` of the canonical enumeration.
    /// Panics when `idx >= order` or the field is infinite.
    pub fn element_from_index(&self, idx: u128) -> FieldElement {
        let q = self.order().expect("finite field");
        assert!(idx < q, "index out of range");
        let repr = match self.0.kind {
            FieldKind::Prime => Repr::Prime(idx as u64),
            FieldKind::Extension => {
                let k = self.0.k as usize;
                let p = self.0.p as u128;
                let mut c = vec![0u64; k];
                let mut rest = idx;
                for slot in c.iter_mut().rev() {
                    *slot = (rest % p) as u64;
                    rest /= p;
                }
                Repr::Ext(c)
            }
            FieldKind::EisensteinRational => unreachable!(),
        };
        FieldElement { spec: self.clone(), repr }
    }
}

pub struct ElementIter {
    spec: FieldSpec,
    next: Option<Repr>,
}

impl Iterator for ElementIter {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        let current = self.next.take()?;
        let p = self.spec.0.p;
        self.next = match &current {
            Repr::Prime(r) => {
                if r + 1 < p { Some(Repr::Prime(r + 1)) } else { None }
            }
            Repr::Ext(c) => {
                // Lexicographic successor: the last coordinate varies fastest.
                let mut c = c.clone();
                let mut i = c.len();
                loop {
                    if i == 0 {
                        break None;
                    }
                    i -= 1;
                    if c[i] + 1 < p {
                        c[i] += 1;
                        break Some(Repr::Ext(c));
                    }
                    c[i] = 0;
                }
            }
            Repr::Eis(_) => unreachable!(),
        };
        Some(FieldElement { spec: self.spec.clone(), repr: current })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Prime(u64),
    Ext(Vec<u64>),
    Eis(EisensteinRat),
}

/// An element of a [`FieldSpec`]; immutable value type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    repr: Repr,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(r) => *r == 0,
            Repr::Ext(c) => c.iter().all(|&x| x == 0),
            Repr::Eis(z) => z.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.spec.one()
    }

    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(r) => Some(*r),
            _ => None,
        }
    }

    /// Coefficient vector for extension-field elements.
    pub fn coefficients(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Ext(c) => Some(c),
            _ => None,
        }
    }

    /// The `a + b*rho` value for `Q(rho)` elements.
    pub fn eisenstein(&self) -> Option<&EisensteinRat> {
        match &self.repr {
            Repr::Eis(z) => Some(z),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Prime(r) => Repr::Prime(mod_inverse(*r, self.spec.0.p)),
            Repr::Ext(c) => {
                let m = &self.spec.0.modulus;
                Repr::Ext(raw::inverse_mod(c, m, self.spec.0.p))
            }
            Repr::Eis(z) => Repr::Eis(z.inv().expect("nonzero")),
        };
        Ok(FieldElement { spec: self.spec.clone(), repr })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inv()?)
    }

    pub fn pow_u128(&self, mut e: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> FieldElement {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = &acc * &base;
            }
            base = &base * &base;
        }
        acc
    }

    /// `p`-th root via the inverse Frobenius (finite fields only).
    pub(crate) fn pth_root(&self) -> FieldElement {
        match self.spec.0.kind {
            FieldKind::Prime => self.clone(),
            FieldKind::Extension => {
                // Frobenius has order k, so its inverse is a ↦ a^(p^(k-1)).
                let e = BigUint::from(self.spec.0.p).pow(self.spec.0.k - 1);
                self.pow_big(&e)
            }
            FieldKind::EisensteinRational => unreachable!("characteristic zero"),
        }
    }

    /// A square root, when one exists; the canonically smaller of the pair.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match &self.repr {
            Repr::Eis(z) => eis_sqrt(z).map(|w| {
                let cand = FieldElement { spec: self.spec.clone(), repr: Repr::Eis(w) };
                let neg = -&cand;
                if cand <= neg { cand } else { neg }
            }),
            _ => {
                let r = finite_prime_root(self, 2)?;
                let neg = -&r;
                Some(if r <= neg { r } else { neg })
            }
        }
    }

    /// A cube root, when one exists; the canonically smallest of the three.
    pub fn cbrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let root = match &self.repr {
            Repr::Eis(z) => {
                let w = eis_cbrt(z)?;
                FieldElement { spec: self.spec.clone(), repr: Repr::Eis(w) }
            }
            _ => finite_prime_root(self, 3)?,
        };
        let rho = self.spec.primitive_cube_root();
        let mut best = root.clone();
        let mut cur = root;
        for _ in 0..2 {
            cur = &cur * &rho;
            if cur < best {
                best = cur.clone();
            }
        }
        Some(best)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Canonical order: residue order for prime fields, lexicographic on the
    /// ascending coefficient sequence for extensions, lexicographic `(a, b)`
    /// for `Q(rho)`.
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.spec, other.spec, "cannot order elements of different fields");
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => a.cmp(b),
            (Repr::Ext(a), Repr::Ext(b)) => a.cmp(b),
            (Repr::Eis(a), Repr::Eis(b)) => (&a.a, &a.b).cmp(&(&b.a, &b.b)),
            _ => unreachable!("same spec implies same representation kind"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(r) => write!(f, "{r}"),
            Repr::Ext(c) => {
                let strs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", strs.join(","))
            }
            Repr::Eis(z) => write!(f, "{z}"),
        }
    }
}

impl FieldElement {
    /// Parses the output of `Display` back into an element of `spec`.
    pub fn parse(spec: &FieldSpec, s: &str) -> Result<FieldElement> {
        let bad = || Error::InvalidInput(format!("bad element `{s}`"));
        match spec.0.kind {
            FieldKind::Prime => {
                let r: u64 = s.trim().parse().map_err(|_| bad())?;
                if r >= spec.0.p {
                    return Err(bad());
                }
                Ok(FieldElement { spec: spec.clone(), repr: Repr::Prime(r) })
            }
            FieldKind::Extension => {
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() != spec.0.k as usize {
                    return Err(bad());
                }
                let mut c = Vec::with_capacity(parts.len());
                for part in parts {
                    let r: u64 = part.trim().parse().map_err(|_| bad())?;
                    if r >= spec.0.p {
                        return Err(bad());
                    }
                    c.push(r);
                }
                Ok(FieldElement { spec: spec.clone(), repr: Repr::Ext(c) })
            }
            FieldKind::EisensteinRational => {
                let z = parse_eisenstein(s).ok_or_else(bad)?;
                Ok(FieldElement { spec: spec.clone(), repr: Repr::Eis(z) })
            }
        }
    }
}

fn parse_eisenstein(s: &str) -> Option<EisensteinRat> {
    let s = s.trim().replace(' ', "");
    let parse_rat = |t: &str| -> Option<BigRational> { t.parse().ok() };
    if let Some(head) = s.strip_suffix("*rho") {
        // Split "a+b" / "a-b" / "b" at the last +/- that is not a leading sign
        // or an exponent-free rational separator.
        let bytes = head.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let a = parse_rat(&head[..i])?;
                let sign = if bytes[i] == b'-' { -BigRational::one() } else { BigRational::one() };
                let b = parse_rat(&head[i + 1..])?;
                Some(EisensteinRat::new(a, sign * b))
            }
            None => Some(EisensteinRat::new(BigRational::zero(), parse_rat(head)?)),
        }
    } else {
        Some(EisensteinRat::new(parse_rat(&s)?, BigRational::zero()))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $prime:expr, $ext:expr, $eis:expr) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert_eq!(self.spec, rhs.spec, "mixed field specs");
                let p = self.spec.0.p;
                let repr = match (&self.repr, &rhs.repr) {
                    (Repr::Prime(a), Repr::Prime(b)) => Repr::Prime($prime(*a, *b, p)),
                    (Repr::Ext(a), Repr::Ext(b)) => {
                        Repr::Ext($ext(a, b, &self.spec.0.modulus, p))
                    }
                    (Repr::Eis(a), Repr::Eis(b)) => Repr::Eis($eis(a, b)),
                    _ => unreachable!(),
                };
                FieldElement { spec: self.spec.clone(), repr }
            }
        }
    };
}

binary_op!(
    Add,
    add,
    |a: u64, b: u64, p: u64| ((a as u128 + b as u128) % p as u128) as u64,
    |a: &[u64], b: &[u64], _m: &[u64], p: u64| raw::add(a, b, p),
    |a: &EisensteinRat, b: &EisensteinRat| a + b
);

binary_op!(
    Sub,
    sub,
    |a: u64, b: u64, p: u64| ((a as u128 + p as u128 - b as u128) % p as u128) as u64,
    |a: &[u64], b: &[u64], _m: &[u64], p: u64| raw::sub(a, b, p),
    |a: &EisensteinRat, b: &EisensteinRat| a - b
);

binary_op!(
    Mul,
    mul,
    |a: u64, b: u64, p: u64| mul_mod(a, b, p),
    |a: &[u64], b: &[u64], m: &[u64], p: u64| raw::mul_reduced(a, b, m, p),
    |a: &EisensteinRat, b: &EisensteinRat| a * b
);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.spec.0.p;
        let repr = match &self.repr {
            Repr::Prime(a) => Repr::Prime(if *a == 0 { 0 } else { p - a }),
            Repr::Ext(c) => {
                Repr::Ext(c.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
            }
            Repr::Eis(z) => Repr::Eis(-z),
        };
        FieldElement { spec: self.spec.clone(), repr }
    }
}

// --- square / cube roots in Q(rho) ---------------------------------------

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let (n, d) = (r.numer(), r.denom());
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

fn rational_cbrt(r: &BigRational) -> Option<BigRational> {
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let (n, d) = (r.numer(), r.denom());
    let cn = n.cbrt();
    let cd = d.cbrt();
    if &(&cn * &cn * &cn) == n && &(&cd * &cd * &cd) == d {
        Some(BigRational::new(cn, cd))
    } else {
        None
    }
}

/// Solve `(u + v*rho)^2 = a + b*rho` over the rationals.
/// Expanding gives `u^2 - v^2 = a` and `v*(2u - v) = b`.
fn eis_sqrt(z: &EisensteinRat) -> Option<EisensteinRat> {
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    if z.b.is_zero() {
        // v = 0 branch: u^2 = a; or v = 2u branch: -3u^2 = a.
        if let Some(u) = rational_sqrt(&z.a) {
            return Some(EisensteinRat::new(u, BigRational::zero()));
        }
        let m = -&z.a / &three;
        if let Some(u) = rational_sqrt(&m) {
            return Some(EisensteinRat::new(u.clone(), &u * &two));
        }
        return None;
    }
    // 3 w^2 + (4a - 2b) w - b^2 = 0 with w = v^2.
    let lin = &(&z.a * &BigRational::from_integer(BigInt::from(4)))
        - &(&z.b * &two);
    let disc = &lin * &lin + &three * &BigRational::from_integer(BigInt::from(4)) * &z.b * &z.b;
    let sd = rational_sqrt(&disc)?;
    for sign in [BigRational::one(), -BigRational::one()] {
        let w = (&(&sign * &sd) - &lin) / (&three * &two);
        if w.is_negative() || w.is_zero() {
            continue;
        }
        if let Some(v) = rational_sqrt(&w) {
            for v in [v.clone(), -v] {
                if v.is_zero() {
                    continue;
                }
                let u = (&z.b + &(&v * &v)) / (&two * &v);
                let cand = EisensteinRat::new(u, v);
                if &(&cand * &cand) == z {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Cube root in `Q(rho)`: clear denominators and take a cube root in `Z[rho]`.
fn eis_cbrt(z: &EisensteinRat) -> Option<EisensteinRat> {
    use crate::eisenstein::EisensteinInt;
    if z.is_zero() {
        return Some(EisensteinRat::zero());
    }
    if z.b.is_zero() {
        if let Some(u) = rational_cbrt(&z.a) {
            return Some(EisensteinRat::new(u, BigRational::zero()));
        }
    }
    // z = (A + B*rho)/D with integral A, B; then (D*w)^3 = D^2 (A + B*rho).
    let d = num::integer::lcm(z.a.denom().clone(), z.b.denom().clone());
    let a = (&z.a * BigRational::from_integer(d.clone())).to_integer();
    let b = (&z.b * BigRational::from_integer(d.clone())).to_integer();
    let d2 = &d * &d;
    let target = EisensteinInt { a: a * &d2, b: b * &d2 };
    let roots = target.cube_roots();
    let root = roots.into_iter().next()?;
    let dr = BigRational::from_integer(d);
    Some(EisensteinRat::new(
        BigRational::from_integer(root.a) / &dr,
        BigRational::from_integer(root.b) / &dr,
    ))
}

// --- r-th roots in finite fields ------------------------------------------

/// Adleman-Manders-Miller style `r`-th root for prime `r` in {2, 3}.
/// Both 2 and 3 divide `q - 1` for every supported finite field.
fn finite_prime_root(a: &FieldElement, r: u32) -> Option<FieldElement> {
    let spec = a.spec().clone();
    let q = spec.order().expect("finite field");
    let qm1 = q - 1;
    debug_assert_eq!(qm1 % r as u128, 0);
    if !a.pow_u128(qm1 / r as u128).is_one() {
        return None;
    }
    let mut s = 0u32;
    let mut t = qm1;
    while t % r as u128 == 0 {
        t /= r as u128;
        s += 1;
    }
    // Non r-th residue, deterministically the first in canonical order.
    let eta = spec
        .iter_elements()
        .skip(1)
        .find(|e| !e.pow_u128(qm1 / r as u128).is_one())
        .expect("multiplicative group is cyclic");
    let g = eta.pow_u128(t); // order r^s
    let e = if t == 1 { 0 } else { mod_inverse_u128(r as u128, t) };
    let x0 = a.pow_u128(e);
    // c = x0^r / a lies in the Sylow r-subgroup generated by g.
    let c = &x0.pow_u128(r as u128) * &a.inv().expect("nonzero");
    let h = c.inv().expect("nonzero"); // want y^r = h
    // Digit-by-digit discrete log of h in <g> (order r^s).
    let mut digits = vec![0u32; s as usize];
    let gr = g.pow_u128(pow_u128(r as u128, s - 1)); // order r
    let mut partial = spec.one(); // g^(digits so far)
    for i in 0..s {
        let exp = pow_u128(r as u128, s - 1 - i);
        let probe = (&h * &partial.inv().expect("unit")).pow_u128(exp);
        let mut d = 0u32;
        let mut acc = spec.one();
        while acc != probe {
            acc = &acc * &gr;
            d += 1;
            assert!(d < r, "discrete log failed");
        }
        digits[i as usize] = d;
        if d > 0 {
            partial = &partial * &g.pow_u128((d as u128) * pow_u128(r as u128, i));
        }
    }
    // M = sum digits[i] r^i must be divisible by r when a is an r-th power.
    if digits[0] != 0 {
        return None;
    }
    let mut m_over_r = 0u128;
    for i in (1..s).rev() {
        m_over_r = m_over_r * r as u128 + digits[i as usize] as u128;
    }
    let y = g.pow_u128(m_over_r);
    let root = &x0 * &y;
    debug_assert!(root.pow_u128(r as u128) == *a);
    Some(root)
}

// --- small modular arithmetic ---------------------------------------------

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u128, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn pow_u128(b: u128, e: u32) -> u128 {
    let mut acc = 1u128;
    for _ in 0..e {
        acc *= b;
    }
    acc
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_inverse_u128(a as u128, p as u128) as u64
}

fn mod_inverse_u128(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r.abs(), 1, "not invertible");
    let mut inv = old_s * old_r.signum();
    inv %= m as i128;
    if inv < 0 {
        inv += m as i128;
    }
    inv as u128
}

fn checked_pow_u128(p: u64, k: u32) -> Option<u128> {
    let mut acc = 1u128;
    for _ in 0..k {
        acc = acc.checked_mul(p as u128)?;
        if acc >= 1u128 << 63 {
            return None;
        }
    }
    Some(acc)
}

fn validate_prime(p: u64) -> Result<()> {
    if p == 2 || p == 3 {
        return Err(Error::BadCharacteristic);
    }
    if p < 5 || !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Deterministic Miller-Rabin, valid for all u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// --- raw polynomial arithmetic over F_p (coefficients as Vec<u64>) ---------

pub(crate) mod raw {
    use super::{mod_inverse, mul_mod};

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Fixed-width add (element representation, length preserved).
    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
    }

    /// Variable-length product (no reduction).
    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        out
    }

    /// Remainder of `a` modulo monic `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
        let mut r: Vec<u64> = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (j, &mj) in m.iter().enumerate().take(dm) {
                    let idx = shift + j;
                    r[idx] = (r[idx] + p - mul_mod(lead, mj, p)) % p;
                }
            }
            r.pop();
            r = trim(r);
        }
        r
    }

    /// Fixed-width product mod the field modulus.
    pub fn mul_reduced(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let prod = mul(a, b, p);
        let mut r = rem(&prod, m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    /// Inverse of `a` modulo monic irreducible `m` (fixed width).
    /// Extended Euclid maintaining `old_s * a = old_r (mod m)`.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut old_r = trim(a.to_vec());
        let mut r = trim(m.to_vec());
        let mut old_s: Vec<u64> = vec![1];
        let mut s: Vec<u64> = Vec::new();
        while !r.is_empty() {
            let (q, rest) = divrem(&old_r, &r, p);
            let qs = mul(&q, &s, p);
            let new_s = sub_var(&old_s, &qs, p);
            old_r = std::mem::replace(&mut r, rest);
            old_s = std::mem::replace(&mut s, new_s);
        }
        debug_assert_eq!(old_r.len(), 1, "inverse of non-unit");
        let c = mod_inverse(old_r[0], p);
        let scaled: Vec<u64> = old_s.iter().map(|&x| mul_mod(x, c, p)).collect();
        let mut out = rem(&scaled, m, p);
        out.resize(m.len() - 1, 0);
        out
    }

    pub fn sub_var(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = (x + p - y) % p;
        }
        trim(out)
    }

    /// Long division `a = q*b + r` over F_p; `b` nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv_lead = mod_inverse(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let coef = mul_mod(*r.last().unwrap(), inv_lead, p);
            let shift = r.len() - b.len();
            q[shift] = coef;
            for (j, &bj) in b.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + p - mul_mod(coef, bj, p)) % p;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        (trim(q), r)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = mod_inverse(lead, p);
            x = x.iter().map(|&c| mul_mod(c, inv, p)).collect();
        }
        x
    }

    /// `base^e mod m` for polynomials over F_p.
    pub fn pow_mod_poly(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over F_p: `x^(p^k) = x (mod f)` and
    /// `gcd(x^(p^(k/l)) - x, f) = 1` for each prime `l | k`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let k = (f.len() - 1) as u32;
        if k == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let frob_power = |e: u32| -> Vec<u64> {
            // x^(p^e) mod f by iterated q-powering
            let mut acc = x.clone();
            for _ in 0..e {
                acc = pow_mod_poly(&acc, p as u128, &f, p);
            }
            acc
        };
        let top = frob_power(k);
        if trim(sub_var(&top, &x, p)) != Vec::<u64>::new() {
            return false;
        }
        let mut rem_k = k;
        let mut primes = Vec::new();
        let mut d = 2u32;
        while d * d <= rem_k {
            if rem_k % d == 0 {
                primes.push(d);
                while rem_k % d == 0 {
                    rem_k /= d;
                }
            }
            d += 1;
        }
        if rem_k > 1 {
            primes.push(rem_k);
        }
        for l in primes {
            let sub_power = frob_power(k / l);
            let diff = sub_var(&sub_power, &x, p);
            if gcd(&diff, &f, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Lexicographically least monic irreducible of degree `k` over `F_p`,
/// comparing the coefficient tuple `(c0, ..., c_{k-1})`.
fn least_monic_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    if k == 1 {
        return coeffs; // x itself
    }
    let mut digits = vec![0u64; k];
    loop {
        coeffs[..k].copy_from_slice(&digits);
        if raw::is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // Lexicographic successor, last digit fastest.
        let mut i = k;
        loop {
            assert!(i > 0, "no irreducible of degree {k} over F_{p}?");
            i -= 1;
            if digits[i] + 1 < p {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn create_field_examples() {
        assert!(FieldSpec::prime(7).is_ok());
        assert_eq!(FieldSpec::prime(5).unwrap_err(), Error::NoCubeRoot(5, 1));
        let f25 = FieldSpec::extension(5, 2).unwrap();
        assert_eq!(f25.order(), Some(25));
        assert_eq!(FieldSpec::prime(2).unwrap_err(), Error::BadCharacteristic);
        assert_eq!(FieldSpec::prime(3).unwrap_err(), Error::BadCharacteristic);
        assert_eq!(FieldSpec::prime(9).unwrap_err(), Error::NotPrime(9));
        assert!(FieldSpec::extension(7, 0).is_err());
        // 5^3 = 125 = 2 (mod 3): no cube root
        assert_eq!(FieldSpec::extension(5, 3).unwrap_err(), Error::NoCubeRoot(5, 3));
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!(FieldSpec::parse("7").unwrap(), FieldSpec::prime(7).unwrap());
        assert_eq!(FieldSpec::parse("5^2").unwrap(), FieldSpec::extension(5, 2).unwrap());
        assert_eq!(FieldSpec::parse("Q(rho)").unwrap(), FieldSpec::eisenstein_rational());
        assert!(FieldSpec::parse("banana").is_err());
        assert!(FieldSpec::parse("7.5").is_err());
    }

    #[test]
    fn f25_modulus_is_least() {
        // Over F_5 the least irreducible monic quadratic by (c0, c1) is
        // x^2 + x + 1 = (1, 1, 1): c0 = 0 gives x*(x + c1); x^2 + 1 splits
        // because -1 = 4 = 2^2.
        let f25 = FieldSpec::extension(5, 2).unwrap();
        assert_eq!(f25.modulus(), Some(&[1u64, 1, 1][..]));
    }

    #[test]
    fn f49_modulus() {
        // -1 is not a square mod 7, so x^2 + 1 is the least irreducible.
        let f49 = FieldSpec::extension(7, 2).unwrap();
        assert_eq!(f49.modulus(), Some(&[1u64, 0, 1][..]));
    }

    #[test]
    fn primitive_cube_roots() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.primitive_cube_root(), f7.from_u64(2));
        let f13 = FieldSpec::prime(13).unwrap();
        assert_eq!(f13.primitive_cube_root(), f13.from_u64(3));
        let q = FieldSpec::eisenstein_rational();
        let rho = q.primitive_cube_root();
        assert_eq!(rho.eisenstein().unwrap(), &EisensteinRat::from_i64(0, 1));
        // rho^2 + rho + 1 = 0 in every spec
        for spec in [f7, f13, FieldSpec::extension(5, 2).unwrap(), q] {
            let r = spec.primitive_cube_root();
            let sum = &(&(&r * &r) + &r) + &spec.one();
            assert!(sum.is_zero(), "rho^2+rho+1 != 0 in {spec}");
            assert!(r.pow_u128(3).is_one());
            assert!(!r.is_one());
        }
    }

    #[test]
    fn enumerate_field_sizes() {
        let f7 = FieldSpec::prime(7).unwrap();
        let elems = f7.enumerate().unwrap();
        assert_eq!(elems.len(), 7);
        assert_eq!(elems[3], f7.from_u64(3));
        let f25 = FieldSpec::extension(5, 2).unwrap();
        let e25 = f25.enumerate().unwrap();
        assert_eq!(e25.len(), 25);
        let mut sorted = e25.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 25, "elements distinct");
        assert_eq!(sorted, e25, "enumeration is in canonical order");
        assert_eq!(
            FieldSpec::eisenstein_rational().enumerate().unwrap_err(),
            Error::InfiniteField
        );
    }

    #[test]
    fn sqrt_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        // Squares mod 7 by exhaustive squaring: {0, 1, 2, 4}.
        let mut squares: Vec<u64> = (0..7).map(|a| (a * a) % 7).collect();
        squares.sort();
        squares.dedup();
        assert_eq!(squares, vec![0, 1, 2, 4]);
        assert_eq!(f7.from_u64(2).sqrt(), Some(f7.from_u64(3)));
        assert_eq!(f7.from_u64(3).sqrt(), None);
        for a in 0..7u64 {
            let e = f7.from_u64(a);
            match e.sqrt() {
                Some(r) => assert_eq!(&r * &r, e),
                None => assert!(!squares.contains(&a)),
            }
        }
    }

    #[test]
    fn sqrt_exhaustive_small_fields() {
        for spec in [
            FieldSpec::prime(7).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::prime(31).unwrap(),
            FieldSpec::extension(5, 2).unwrap(),
            FieldSpec::extension(7, 2).unwrap(),
        ] {
            for b in spec.iter_elements() {
                let sq = &b * &b;
                let r = sq.sqrt().expect("square must have a root");
                assert_eq!(&r * &r, sq, "sqrt(b^2)^2 = b^2 in {spec}");
            }
        }
    }

    #[test]
    fn sqrt_in_q_rho() {
        let q = FieldSpec::eisenstein_rational();
        let rho = q.primitive_cube_root();
        // sqrt(rho) = +-rho^2; the canonical pick is rho^2 = (-1, -1)
        let r = rho.sqrt().expect("rho is a square");
        assert_eq!(&r * &r, rho);
        assert_eq!(r, &rho * &rho);
        // a rational square; the canonical pick is the (a, b)-lex smaller root
        let nine = q.from_u64(9);
        assert_eq!(nine.sqrt(), Some(q.from_i64(-3)));
        // -3 = (1 + 2 rho)^2
        let m3 = q.from_i64(-3);
        let s = m3.sqrt().expect("-3 is a square in Q(rho)");
        assert_eq!(&s * &s, m3);
        // 2 is not a square in Q(rho)
        assert_eq!(q.from_u64(2).sqrt(), None);
        // random squares round-trip
        for (a, b) in [(1i64, 2i64), (-3, 5), (7, -1), (0, 3), (4, 4)] {
            let z = q
                .from_eisenstein(EisensteinRat::from_i64(a, b))
                .unwrap();
            let sq = &z * &z;
            let r = sq.sqrt().expect("square");
            assert_eq!(&r * &r, sq);
        }
    }

    #[test]
    fn cbrt_small_fields() {
        for spec in [
            FieldSpec::prime(7).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::prime(19).unwrap(),
            FieldSpec::extension(5, 2).unwrap(),
            FieldSpec::extension(7, 2).unwrap(),
        ] {
            let mut cube_count = 0usize;
            for b in spec.iter_elements() {
                let c = &(&b * &b) * &b;
                let r = c.cbrt().expect("cube must have a root");
                assert_eq!(&(&r * &r) * &r, c);
                if !c.is_zero() {
                    cube_count += 1;
                }
            }
            // Nonzero cubes hit each value three times.
            let q = spec.order().unwrap() as usize;
            assert_eq!(cube_count, q - 1);
        }
    }

    #[test]
    fn cbrt_in_q_rho() {
        let q = FieldSpec::eisenstein_rational();
        for (a, b) in [(2i64, 3i64), (-1, 4), (5, 0), (0, 2)] {
            let z = q.from_eisenstein(EisensteinRat::from_i64(a, b)).unwrap();
            let c = &(&z * &z) * &z;
            let r = c.cbrt().expect("cube");
            assert_eq!(&(&r * &r) * &r, c);
        }
        assert_eq!(q.from_u64(2).cbrt(), None);
    }

    #[test]
    fn field_axioms_sampled() {
        // Deterministic pseudo-random sampling, 1000 triples per spec.
        for spec in [
            FieldSpec::prime(7).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::extension(5, 2).unwrap(),
            FieldSpec::eisenstein_rational(),
        ] {
            let sample = |state: &mut u64| -> FieldElement {
                *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let r = *state >> 33;
                match spec.kind() {
                    FieldKind::EisensteinRational => {
                        let a = (r % 41) as i64 - 20;
                        let b = ((r / 41) % 41) as i64 - 20;
                        spec.from_eisenstein(EisensteinRat::from_i64(a, b)).unwrap()
                    }
                    _ => spec.from_u64(r),
                }
            };
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..1000 {
                let a = sample(&mut state);
                let b = sample(&mut state);
                let c = sample(&mut state);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn element_display_parse_roundtrip() {
        let f49 = FieldSpec::extension(7, 2).unwrap();
        for e in f49.iter_elements() {
            let s = e.to_string();
            assert_eq!(FieldElement::parse(&f49, &s).unwrap(), e);
        }
        let q = FieldSpec::eisenstein_rational();
        for (a, b) in [(0i64, 0i64), (1, 0), (0, 1), (-2, 3), (5, -7)] {
            let e = q.from_eisenstein(EisensteinRat::from_i64(a, b)).unwrap();
            let s = e.to_string();
            assert_eq!(FieldElement::parse(&q, &s).unwrap(), e, "roundtrip {s}");
        }
    }
}
