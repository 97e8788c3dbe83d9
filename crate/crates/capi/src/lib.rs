//! C ABI for the mwlat toolkit.
//!
//! Conventions: every function returns an [`MwlatStatus`]; out-parameters
//! are written only on `MWLAT_STATUS_OK`.  Strings returned through
//! `char **` are UTF-8, NUL-terminated, allocated by this library, and must
//! be released with [`mwlat_string_free`].  Solution sets are opaque handles
//! released with [`mwlat_solution_set_free`].  On failure,
//! [`mwlat_last_error_message`] returns a thread-local description valid
//! until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use mwlat::curve::Curve;
use mwlat::error::Error;
use mwlat::field::FieldSpec;
use mwlat::pairings::{class_gram_report, clebsch_partition};
use mwlat::poly::Poly;
use mwlat::report::{gram_to_json, SolveBase, SolveReport};
use mwlat::solver::{enumerate_solutions_bounded, SolutionSet};

/// Call outcome; mirrors the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MwlatStatus {
    /// Success.
    Ok = 0,
    /// Invalid input (bad field spec, repeated roots, budget, ...).
    InvalidInput = 1,
    /// Internal invariant failure.
    InternalError = 2,
    /// A required pointer argument was NULL.
    NullPointer = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> MwlatStatus {
    match e {
        Error::InvariantViolation(_) => MwlatStatus::InternalError,
        _ => MwlatStatus::InvalidInput,
    }
}

/// Most recent error message on this thread (empty when no error yet).
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mwlat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library.  NULL is ignored.
///
/// # Safety
/// `s` must be a pointer previously returned through a `char **`
/// out-parameter of this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mwlat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn hand_out(s: String, out: *mut *mut c_char) -> MwlatStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            MwlatStatus::Ok
        }
        Err(_) => {
            set_error("interior NUL in output");
            MwlatStatus::InternalError
        }
    }
}

fn guard<F: FnOnce() -> MwlatStatus>(f: F) -> MwlatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic across the FFI boundary");
            MwlatStatus::InternalError
        }
    }
}

/// Runs the lattice / covers self-test and hands back the fingerprint JSON.
/// Returns `MWLAT_STATUS_INTERNAL_ERROR` when any fingerprint mismatches.
#[no_mangle]
pub extern "C" fn mwlat_selftest_json(out_json: *mut *mut c_char) -> MwlatStatus {
    if out_json.is_null() {
        return MwlatStatus::NullPointer;
    }
    guard(|| {
        let fingerprint = match selftest_fingerprint() {
            Ok(fp) => fp,
            Err(e) => {
                set_error(&e.to_string());
                return MwlatStatus::InternalError;
            }
        };
        let expected = mwlat::report::SelftestFingerprint::expected();
        let text = serde_json::to_string_pretty(&fingerprint).expect("serializable");
        let status =
            if fingerprint == expected { MwlatStatus::Ok } else { MwlatStatus::InternalError };
        if status != MwlatStatus::Ok {
            set_error("selftest fingerprint mismatch");
        }
        let hand = hand_out(text, out_json);
        if hand != MwlatStatus::Ok { hand } else { status }
    })
}

fn selftest_fingerprint() -> Result<mwlat::report::SelftestFingerprint, Error> {
    use mwlat::perm::{PermGroup, Permutation};
    let roots = mwlat::lattice::enumerate_roots();
    let census = mwlat::lattice::census_of(&roots)?;
    let perms = mwlat::lattice::triflection_permutations(&roots)?;
    let gens: Result<Vec<Permutation>, Error> =
        perms.iter().map(|p| Permutation::from_images(p.clone())).collect();
    let group = PermGroup::new(roots.len(), gens?)?;
    let classes = mwlat::lattice::mu6_classes(&roots);
    let induced = mwlat::lattice::induced_class_permutations(&roots, &classes, &perms);
    let igens: Result<Vec<Permutation>, Error> =
        induced.iter().map(|p| Permutation::from_images(p.clone())).collect();
    let igroup = PermGroup::new(classes.len(), igens?)?;
    let stab = igroup.stabilizer_orbit_sizes(0)?;
    let covers = mwlat::covers::s3_census(6)?;
    Ok(mwlat::report::SelftestFingerprint {
        roots: census.roots,
        split: [census.split.0, census.split.1],
        classes_mod2: census.classes_mod2,
        theta_census: [census.upsilon_census.0, census.upsilon_census.1],
        classes_mod_sqrt3: census.classes_mod_sqrt3,
        aut_order: u64::try_from(&group.order()).unwrap_or(u64::MAX),
        induced_order: u64::try_from(&igroup.order()).unwrap_or(u64::MAX),
        stab_orbits: match stab.as_slice() {
            [a, b, c] => [*a, *b, *c],
            _ => [0, 0, 0],
        },
        covers: [covers.total, covers.transitive, covers.orbits],
    })
}

/// Involution-tuple census JSON for `branch_points` in {4, 6, 8}.
#[no_mangle]
pub extern "C" fn mwlat_covers_census_json(
    branch_points: u32,
    out_json: *mut *mut c_char,
) -> MwlatStatus {
    if out_json.is_null() {
        return MwlatStatus::NullPointer;
    }
    guard(|| {
        let census = match mwlat::covers::s3_census(branch_points) {
            Ok(c) => c,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let formula = mwlat::covers::cover_count_formula(branch_points).expect("validated");
        let out = mwlat::report::CoversJson {
            n: census.n,
            tuples: census.total,
            transitive: census.transitive,
            orbits: census.orbits,
            formula,
        };
        hand_out(serde_json::to_string_pretty(&out).expect("serializable"), out_json)
    })
}

/// Opaque solution-set handle.
pub struct MwlatSolutionSet {
    set: SolutionSet,
}

/// Enumerates minimal solutions of `y^2 = x^3 + S(t)`.
///
/// `field` uses the CLI syntax (`"7"`, `"7^2"`); `sextic_csv` is the
/// comma-separated ascending integer coefficient list; fields with
/// `q^3 > budget` are rejected.
///
/// # Safety
/// `field` and `sextic_csv` must be NUL-terminated strings; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mwlat_solve_open(
    field: *const c_char,
    sextic_csv: *const c_char,
    budget: u64,
    out: *mut *mut MwlatSolutionSet,
) -> MwlatStatus {
    if field.is_null() || sextic_csv.is_null() || out.is_null() {
        return MwlatStatus::NullPointer;
    }
    let field = match CStr::from_ptr(field).to_str() {
        Ok(s) => s.to_owned(),
        Err(_) => {
            set_error("field spec is not UTF-8");
            return MwlatStatus::InvalidInput;
        }
    };
    let sextic = match CStr::from_ptr(sextic_csv).to_str() {
        Ok(s) => s.to_owned(),
        Err(_) => {
            set_error("sextic is not UTF-8");
            return MwlatStatus::InvalidInput;
        }
    };
    guard(move || match solve(&field, &sextic, budget) {
        Ok(set) => {
            let handle = Box::new(MwlatSolutionSet { set });
            unsafe { *out = Box::into_raw(handle) };
            MwlatStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

fn solve(field: &str, sextic: &str, budget: u64) -> Result<SolutionSet, Error> {
    let spec = FieldSpec::parse(field)?;
    let coeffs: Result<Vec<i64>, _> =
        sextic.split(',').map(|c| c.trim().parse::<i64>()).collect();
    let coeffs =
        coeffs.map_err(|_| Error::InvalidInput(format!("bad sextic `{sextic}`")))?;
    let s = Poly::from_i64_coeffs(&spec, &coeffs);
    let curve = Curve::new(s)?;
    enumerate_solutions_bounded(&curve, budget as u128)
}

/// Releases a solution set.  NULL is ignored.
///
/// # Safety
/// `handle` must come from [`mwlat_solve_open`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mwlat_solution_set_free(handle: *mut MwlatSolutionSet) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of minimal solutions in the set.
///
/// # Safety
/// `handle` must be a live pointer from [`mwlat_solve_open`].
#[no_mangle]
pub unsafe extern "C" fn mwlat_solution_count(handle: *const MwlatSolutionSet) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).set.solutions.len()
}

/// Number of same-y (mu_3) classes.
///
/// # Safety
/// `handle` must be a live pointer from [`mwlat_solve_open`].
#[no_mangle]
pub unsafe extern "C" fn mwlat_y_class_count(handle: *const MwlatSolutionSet) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).set.y_classes.len()
}

/// Number of same-x (sign) classes.
///
/// # Safety
/// `handle` must be a live pointer from [`mwlat_solve_open`].
#[no_mangle]
pub unsafe extern "C" fn mwlat_x_class_count(handle: *const MwlatSolutionSet) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).set.x_classes.len()
}

/// Full solve report JSON (solutions, class partitions, class-level Gram
/// with the orthogonality partition).
///
/// # Safety
/// `handle` must be live; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mwlat_solve_report_json(
    handle: *const MwlatSolutionSet,
    out_json: *mut *mut c_char,
) -> MwlatStatus {
    if handle.is_null() || out_json.is_null() {
        return MwlatStatus::NullPointer;
    }
    let set = &(*handle).set;
    guard(|| {
        let gram = if set.solutions.is_empty() {
            None
        } else {
            let (report, _) = match class_gram_report(set) {
                Ok(r) => r,
                Err(e) => {
                    set_error(&e.to_string());
                    return status_of(&e);
                }
            };
            let partition = match clebsch_partition(&report, 0) {
                Ok(p) => p,
                Err(e) => {
                    set_error(&e.to_string());
                    return status_of(&e);
                }
            };
            Some(gram_to_json(&report, &partition))
        };
        let report = SolveReport { base: SolveBase::from_set(set), gram, extensions: None };
        hand_out(serde_json::to_string_pretty(&report).expect("serializable"), out_json)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
        unsafe { mwlat_string_free(p) };
        s
    }

    #[test]
    fn selftest_through_ffi() {
        let mut out: *mut c_char = ptr::null_mut();
        let status = mwlat_selftest_json(&mut out);
        assert_eq!(status, MwlatStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(json["roots"], 240);
        assert_eq!(json["aut_order"], 155520);
    }

    #[test]
    fn solve_roundtrip_through_ffi() {
        let field = CString::new("7").unwrap();
        let sextic = CString::new("1,0,0,0,0,0,1").unwrap();
        let mut handle: *mut MwlatSolutionSet = ptr::null_mut();
        let status = unsafe {
            mwlat_solve_open(field.as_ptr(), sextic.as_ptr(), 1_000_000, &mut handle)
        };
        assert_eq!(status, MwlatStatus::Ok);
        unsafe {
            assert_eq!(mwlat_solution_count(handle), 12);
            assert_eq!(mwlat_y_class_count(handle), 4);
            assert_eq!(mwlat_x_class_count(handle), 6);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(mwlat_solve_report_json(handle, &mut out), MwlatStatus::Ok);
            let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(json["count"], 12);
            mwlat_solution_set_free(handle);
        }
    }

    #[test]
    fn errors_through_ffi() {
        let field = CString::new("5").unwrap();
        let sextic = CString::new("1,0,0,0,0,0,1").unwrap();
        let mut handle: *mut MwlatSolutionSet = ptr::null_mut();
        let status = unsafe {
            mwlat_solve_open(field.as_ptr(), sextic.as_ptr(), 1_000_000, &mut handle)
        };
        assert_eq!(status, MwlatStatus::InvalidInput);
        let msg = unsafe { CStr::from_ptr(mwlat_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("cube root"));
        // null pointers
        assert_eq!(
            unsafe { mwlat_solve_open(ptr::null(), sextic.as_ptr(), 0, &mut handle) },
            MwlatStatus::NullPointer
        );
        // budget
        let field7 = CString::new("7").unwrap();
        let status =
            unsafe { mwlat_solve_open(field7.as_ptr(), sextic.as_ptr(), 10, &mut handle) };
        assert_eq!(status, MwlatStatus::InvalidInput);
    }

    #[test]
    fn covers_through_ffi() {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(mwlat_covers_census_json(6, &mut out), MwlatStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(json["orbits"], 40);
        let mut out2: *mut c_char = ptr::null_mut();
        assert_eq!(mwlat_covers_census_json(5, &mut out2), MwlatStatus::InvalidInput);
        assert!(out2.is_null());
    }

    #[test]
    fn header_was_generated() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("mwlat.h");
        let text = std::fs::read_to_string(header).expect("cbindgen header exists");
        assert!(text.contains("mwlat_solve_open"));
        assert!(text.contains("MwlatSolutionSet"));
        assert!(text.contains("MwlatStatus"));
    }
}
