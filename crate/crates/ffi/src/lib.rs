//! C interface to `arithinv`.
//!
//! Groups are opaque handles created by [`ai_group_from_json`] and released
//! with [`ai_group_free`]. Every fallible call returns an [`AiStatus`]; on
//! failure, [`ai_last_error`] describes the most recent error on the calling
//! thread. Strings returned through `out` parameters are owned by the caller
//! and must be released with [`ai_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arithinv::group::{GroupDocument, MatrixGroup};
use arithinv::invariants::{algebra_generators, dade_hsop, invariant_basis, molien_series, DadeOptions};
use arithinv::report::{self, GeneratorsReport, HsopReport};
use arithinv::Error;

/// Opaque finite matrix group.
pub struct AiGroup(MatrixGroup);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Closure exceeded the element cap, or a generator is not invertible.
    Closure = 4,
    InvalidArgument = 5,
    /// No admissible linear forms for the parameter construction.
    SearchFailed = 6,
    /// The characteristic divides the group order.
    Modular = 7,
    BufferTooSmall = 8,
    Other = 9,
    Panic = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> AiStatus {
    match e {
        Error::Parse(_) => AiStatus::Parse,
        Error::CapExceeded(_) | Error::NotInvertibleOverRing(_) => AiStatus::Closure,
        Error::SearchBudgetExceeded | Error::ResidueFieldTooSmall(_) => AiStatus::SearchFailed,
        Error::ModularCharacteristic(_) => AiStatus::Modular,
        Error::InvalidArgument(_) | Error::NotPrime(_) => AiStatus::InvalidArgument,
        _ => AiStatus::Other,
    }
}

struct Failure(AiStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AiStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AiStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(AiStatus::NullArgument, format!("{what} is null"))
}

unsafe fn group<'a>(g: *const AiGroup) -> Result<&'a MatrixGroup, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("group"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(AiStatus::Other, "string contains NUL".into()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Builds a group from a JSON group document, closing it with at most
/// `cap` elements. On success `*out` receives a handle to free with
/// [`ai_group_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ai_group_from_json(json: *const c_char, cap: usize, out: *mut *mut AiGroup) -> AiStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(AiStatus::InvalidUtf8, e.to_string()))?;
        if cap == 0 {
            return Err(Failure(AiStatus::InvalidArgument, "cap must be at least 1".into()));
        }
        let g = GroupDocument::from_json(text)?.build(None, cap)?;
        write_out(out, Box::into_raw(Box::new(AiGroup(g))))
    })
}

/// Releases a group handle. Null is ignored.
///
/// # Safety
/// `g` must come from [`ai_group_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ai_group_free(g: *mut AiGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ai_group_order(g: *const AiGroup, out: *mut usize) -> AiStatus {
    guard(|| write_out(out, group(g)?.order()))
}

/// Number of variables the group acts on.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ai_group_dimension(g: *const AiGroup, out: *mut usize) -> AiStatus {
    guard(|| write_out(out, group(g)?.dimension()))
}

/// Rank of the invariants of the given degree.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ai_invariant_dimension(g: *const AiGroup, degree: u32, out: *mut usize) -> AiStatus {
    guard(|| write_out(out, invariant_basis(group(g)?, degree)?.dimension()))
}

/// Algebra generators as a JSON report. `bound == 0` uses the default
/// degree bound.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ai_generators_json(
    g: *const AiGroup,
    bound: u32,
    extra_sweep: u32,
    out: *mut *mut c_char,
) -> AiStatus {
    guard(|| {
        let g = group(g)?;
        let s = algebra_generators(g, (bound > 0).then_some(bound), extra_sweep)?;
        write_string(out, report::to_json(&GeneratorsReport::new(g, &s)))
    })
}

/// Orbit-product parameter system with its certificates, as a JSON report.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ai_hsop_json(g: *const AiGroup, seed: u64, out: *mut *mut c_char) -> AiStatus {
    guard(|| {
        let g = group(g)?;
        let h = dade_hsop(g, &DadeOptions { seed, ..DadeOptions::default() })?;
        write_string(out, report::to_json(&HsopReport::new(g, &h)))
    })
}

/// Writes the Molien series coefficients of degrees `0 ..= truncation`
/// into `coeffs`, which must hold `truncation + 1` values.
///
/// # Safety
/// `g` must be a live handle and `coeffs` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ai_molien(g: *const AiGroup, truncation: u32, coeffs: *mut u64, len: usize) -> AiStatus {
    guard(|| {
        let g = group(g)?;
        let need = truncation as usize + 1;
        if len < need {
            return Err(Failure(AiStatus::BufferTooSmall, format!("need {need} coefficients, got {len}")));
        }
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let m = molien_series(g, truncation)?;
        ptr::copy_nonoverlapping(m.coefficients.as_ptr(), coeffs, need);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ai_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ai_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGN: &str = r#"{"ring": "Z", "n": 2, "generators": [[[-1, 0], [0, -1]]]}"#;

    fn build(json: &str, cap: usize) -> (AiStatus, *mut AiGroup) {
        let c = CString::new(json).unwrap();
        let mut g = ptr::null_mut();
        let st = unsafe { ai_group_from_json(c.as_ptr(), cap, &mut g) };
        (st, g)
    }

    fn last_error() -> String {
        let p = ai_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn order_dimension_and_molien() {
        let (st, g) = build(SIGN, 100);
        assert_eq!(st, AiStatus::Ok);
        let mut n = 0usize;
        unsafe {
            assert_eq!(ai_group_order(g, &mut n), AiStatus::Ok);
            assert_eq!(n, 2);
            assert_eq!(ai_group_dimension(g, &mut n), AiStatus::Ok);
            assert_eq!(n, 2);
            assert_eq!(ai_invariant_dimension(g, 2, &mut n), AiStatus::Ok);
            assert_eq!(n, 3);
            let mut coeffs = [0u64; 5];
            assert_eq!(ai_molien(g, 4, coeffs.as_mut_ptr(), 5), AiStatus::Ok);
            assert_eq!(coeffs, [1, 0, 3, 0, 5]);
            assert!(ai_last_error().is_null());
            assert_eq!(ai_molien(g, 5, coeffs.as_mut_ptr(), 5), AiStatus::BufferTooSmall);
            assert!(last_error().contains("need 6"));
            ai_group_free(g);
        }
    }

    #[test]
    fn json_reports() {
        let (_, g) = build(SIGN, 100);
        unsafe {
            let mut s = ptr::null_mut();
            assert_eq!(ai_generators_json(g, 0, 1, &mut s), AiStatus::Ok);
            let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
            ai_string_free(s);
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["schema"], "arithinv/1");
            assert_eq!(v["beta"], 2);

            assert_eq!(ai_hsop_json(g, 3, &mut s), AiStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
            ai_string_free(s);
            assert_eq!(v["kind"], "hsop");
            ai_group_free(g);
        }
    }

    #[test]
    fn errors_are_reported() {
        let (st, g) = build("{", 100);
        assert_eq!(st, AiStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("parse"));

        let (st, _) = build(r#"{"ring": "Z", "n": 2, "generators": [[[1, 1], [0, 1]]]}"#, 20);
        assert_eq!(st, AiStatus::Closure);

        let (st, _) = build(SIGN, 0);
        assert_eq!(st, AiStatus::InvalidArgument);

        let mut n = 0usize;
        assert_eq!(unsafe { ai_group_order(ptr::null(), &mut n) }, AiStatus::NullArgument);
        assert_eq!(unsafe { ai_group_from_json(ptr::null(), 10, ptr::null_mut()) }, AiStatus::NullArgument);

        let (_, g) = build(r#"{"ring": "F2", "n": 2, "generators": [[[0, 1], [1, 0]]]}"#, 10);
        let mut c = [0u64; 3];
        assert_eq!(unsafe { ai_molien(g, 2, c.as_mut_ptr(), 3) }, AiStatus::Modular);
        assert!(last_error().contains("divides"));
        unsafe {
            ai_group_free(g);
            ai_group_free(ptr::null_mut());
            ai_string_free(ptr::null_mut());
        }
    }
}
