//! C interface to the coxbrauer library.
//!
//! Every fallible call returns a `CbStatus` and writes its result through an
//! out pointer. On failure the message is available from `cb_last_error`
//! until the next call on the same thread. Strings returned by the library
//! must be released with `cb_string_free`; handles with their `_free`
//! function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxbrauer::brauer_tree::{build_star_tree, default_ell, from_json_str, to_dot, to_json, PlanarBrauerTree};
use coxbrauer::fixtures::{fixture_series, g2_tree, line_tree, G2_ELL, G2_QSQ};
use coxbrauer::homotopy::check_tilting;
use coxbrauer::report;
use coxbrauer::tree_algebra::TreeAlgebra;
use coxbrauer::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    BadRegime = 4,
    /// A mathematical check came out false.
    VerificationFailed = 5,
    Internal = 6,
}

/// A planar Brauer tree.
pub struct CbTree(PlanarBrauerTree);

/// A Brauer tree algebra over a prime field.
pub struct CbAlgebra(TreeAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CbStatus {
    match e {
        Error::Parse { .. } => CbStatus::Parse,
        Error::BadRegime { .. } => CbStatus::BadRegime,
        e if e.is_verification_failure() => CbStatus::VerificationFailed,
        _ => CbStatus::InvalidInput,
    }
}

/// Run `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (CbStatus, String)>) -> CbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            CbStatus::Internal
        }
    }
}

fn lib<T>(r: coxbrauer::Result<T>) -> Result<T, (CbStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (CbStatus, String) {
    (CbStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (CbStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CbStatus::InvalidInput, "string is not UTF-8".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (CbStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn cb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn cb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a fixture tree: `2g2` (with `qsq`, `ell`, or 0 for the defaults)
/// or `lineN` (with `r` and `mu` as given, `ell` unused).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_fixture(
    name: *const c_char,
    qsq: u64,
    ell: u64,
    r: u64,
    mu: u64,
    out: *mut *mut CbTree,
) -> CbStatus {
    guard(|| {
        let name = str_arg(name)?;
        let tree = if name.eq_ignore_ascii_case("2g2") {
            let (q, l) = if qsq == 0 && ell == 0 { (G2_QSQ, G2_ELL) } else { (qsq, ell) };
            lib(g2_tree(q, l))?
        } else {
            let series = lib(fixture_series(name))?;
            lib(line_tree(series.h0, r, mu.max(1)))?
        };
        put(out, Box::into_raw(Box::new(CbTree(tree))))
    })
}

/// Parse a tree from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_from_json(json: *const c_char, out: *mut *mut CbTree) -> CbStatus {
    guard(|| {
        let tree = lib(from_json_str(str_arg(json)?))?;
        put(out, Box::into_raw(Box::new(CbTree(tree))))
    })
}

/// The star tree of `D⋊E` with `|D| = d`, `|E| = e` and action exponent `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_star(d: u64, e: u64, n: u64, out: *mut *mut CbTree) -> CbStatus {
    guard(|| {
        let tree = lib(build_star_tree(d, e, n))?;
        put(out, Box::into_raw(Box::new(CbTree(tree))))
    })
}

/// # Safety
/// `tree` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_free(tree: *mut CbTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of non-exceptional vertices, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_num_edges(tree: *const CbTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.n_edges())
}

/// Multiplicity of the exceptional node, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_multiplicity(tree: *const CbTree) -> u64 {
    tree.as_ref().map_or(0, |t| t.0.multiplicity)
}

/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_to_json(tree: *const CbTree, out: *mut *mut c_char) -> CbStatus {
    guard(|| {
        let t = tree.as_ref().ok_or_else(null)?;
        put(out, owned_string(report::render(&to_json(&t.0))))
    })
}

/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_tree_to_dot(tree: *const CbTree, out: *mut *mut c_char) -> CbStatus {
    guard(|| {
        let t = tree.as_ref().ok_or_else(null)?;
        put(out, owned_string(to_dot(&t.0)))
    })
}

/// The tree algebra over `F_ell`; `ell = 0` picks the tree's own prime or the
/// least prime congruent to 1 mod `h0·μ`.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_algebra_new(tree: *const CbTree, ell: u64, out: *mut *mut CbAlgebra) -> CbStatus {
    guard(|| {
        let t = tree.as_ref().ok_or_else(null)?;
        let ell = if ell == 0 { default_ell(&t.0) } else { ell };
        let alg = lib(TreeAlgebra::from_tree(&t.0, ell))?;
        put(out, Box::into_raw(Box::new(CbAlgebra(alg))))
    })
}

/// # Safety
/// `alg` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cb_algebra_free(alg: *mut CbAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cb_algebra_dim(alg: *const CbAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.dim())
}

/// Number of arrows `i → j` in the quiver.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_algebra_ext1(alg: *const CbAlgebra, i: usize, j: usize, out: *mut usize) -> CbStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(null)?;
        let n = a.0.n_vertices();
        if i >= n || j >= n {
            return Err((CbStatus::InvalidInput, format!("vertex out of range 0..{n}")));
        }
        put(out, a.0.ext1(i, j))
    })
}

/// Verify that the Rickard complexes form a tilting complex. Writes the
/// dimension of its endomorphism ring on success.
///
/// # Safety
/// `alg` must be a live handle and `end_dim` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_algebra_check_tilting(alg: *const CbAlgebra, end_dim: *mut usize) -> CbStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(null)?;
        let rep = lib(check_tilting(&a.0))?;
        put(end_dim, rep.end_dim)
    })
}

/// JSON report for the Rickard complex of vertex `j`.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_algebra_rickard_json(alg: *const CbAlgebra, j: usize, out: *mut *mut c_char) -> CbStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(null)?;
        let v = lib(report::rickard(&a.0, j, None))?;
        put(out, owned_string(report::render(&v)))
    })
}
