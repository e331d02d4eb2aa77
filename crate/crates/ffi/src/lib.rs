//! C ABI for coxinv.
//!
//! Diagrams are opaque handles created by `coxinv_diagram_from_*` and
//! released with `coxinv_diagram_free`. Every call returns a
//! [`CoxinvStatus`]; on failure `coxinv_last_error_message` describes the
//! most recent error on the calling thread. Strings handed out by the
//! library must be released with `coxinv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxinv::diagram::{parse_document, parse_edge_list, parse_name, Diagram};
use coxinv::oddgraph::{self, export_dot};
use coxinv::{oracle, Error};

/// Opaque diagram handle.
pub struct CoxinvDiagram {
    inner: Diagram,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxinvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    OutOfRange = 5,
    CapExceeded = 6,
    VerifyMismatch = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CoxinvBounds {
    pub omega_lower: u64,
    pub maximal_spherical_upper: u64,
    pub numeric_upper: u64,
    pub is_finite: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> CoxinvStatus {
    match e {
        Error::Parse(_) | Error::BadName { .. } => CoxinvStatus::ParseError,
        Error::IndexOutOfRange { .. } | Error::RankOutOfRange { .. } | Error::RankLimit { .. } => {
            CoxinvStatus::OutOfRange
        }
        Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => CoxinvStatus::CapExceeded,
        Error::HashCollision { .. } | Error::NumericDegeneracy { .. } => CoxinvStatus::Internal,
        Error::Validation(_) | Error::NonSpherical(_) | Error::Precondition(_) => {
            CoxinvStatus::ValidationError
        }
    }
}

type Outcome = Result<(), CoxinvStatus>;

fn fail(status: CoxinvStatus, msg: impl Into<String>) -> CoxinvStatus {
    set_error(msg);
    status
}

fn lib(e: Error) -> CoxinvStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `body`, converting panics into `Internal`.
fn guard(body: impl FnOnce() -> Outcome) -> CoxinvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CoxinvStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(CoxinvStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CoxinvStatus> {
    if p.is_null() {
        return Err(fail(CoxinvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CoxinvStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn diagram<'a>(d: *const CoxinvDiagram) -> Result<&'a Diagram, CoxinvStatus> {
    d.as_ref()
        .map(|d| &d.inner)
        .ok_or_else(|| fail(CoxinvStatus::NullPointer, "null diagram handle"))
}

unsafe fn put<T>(dst: *mut T, value: T) -> Outcome {
    if dst.is_null() {
        return Err(fail(CoxinvStatus::NullPointer, "null output pointer"));
    }
    dst.write(value);
    Ok(())
}

unsafe fn put_string(dst: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| fail(CoxinvStatus::Internal, "output contains NUL"))?;
    put(dst, c.into_raw())
}

unsafe fn make_diagram(out: *mut *mut CoxinvDiagram, d: Diagram) -> Outcome {
    if out.is_null() {
        return Err(fail(CoxinvStatus::NullPointer, "null output pointer"));
    }
    out.write(Box::into_raw(Box::new(CoxinvDiagram { inner: d })));
    Ok(())
}

/// Builds a diagram from a type name such as `"~E7"` or `"B3+A1"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxinv_diagram_from_name(
    name: *const c_char,
    out: *mut *mut CoxinvDiagram,
) -> CoxinvStatus {
    guard(|| {
        let name = read_str(name)?;
        let m = parse_name(name).map_err(lib)?;
        make_diagram(out, Diagram::unlabeled(m))
    })
}

/// Builds a diagram from a JSON matrix document (`{"matrix": ...}`) or,
/// if the text does not start with `{`, from the edge-list format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxinv_diagram_from_text(
    text: *const c_char,
    out: *mut *mut CoxinvDiagram,
) -> CoxinvStatus {
    guard(|| {
        let text = read_str(text)?;
        let d = if text.trim_start().starts_with('{') {
            parse_document(text).map_err(lib)?
        } else {
            Diagram::unlabeled(parse_edge_list(text).map_err(lib)?)
        };
        make_diagram(out, d)
    })
}

/// # Safety
/// `d` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn coxinv_diagram_free(d: *mut CoxinvDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxinv_diagram_rank(
    d: *const CoxinvDiagram,
    out: *mut usize,
) -> CoxinvStatus {
    guard(|| put(out, diagram(d)?.matrix.rank()))
}

/// Total number of involution classes.
///
/// # Safety
/// `d` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxinv_cc2_total(d: *const CoxinvDiagram, out: *mut u64) -> CoxinvStatus {
    guard(|| {
        let r = oddgraph::cc2(&diagram(d)?.matrix).map_err(lib)?;
        put(out, r.total as u64)
    })
}

/// Class counts by rank `1..=n`, written to `buf[0..n]`. `len` receives `n`
/// in every case; if `cap < n` nothing is written and `BUFFER_TOO_SMALL` is
/// returned.
///
/// # Safety
/// `d` must be a live handle, `len` a valid pointer and `buf` valid for
/// `cap` writes (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn coxinv_cc2_per_rank(
    d: *const CoxinvDiagram,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> CoxinvStatus {
    guard(|| {
        let r = oddgraph::cc2(&diagram(d)?.matrix).map_err(lib)?;
        put(len, r.per_rank.len())?;
        if cap < r.per_rank.len() {
            return Err(fail(
                CoxinvStatus::BufferTooSmall,
                format!("need room for {} entries", r.per_rank.len()),
            ));
        }
        if !r.per_rank.is_empty() && buf.is_null() {
            return Err(fail(CoxinvStatus::NullPointer, "null buffer"));
        }
        for (i, &c) in r.per_rank.iter().enumerate() {
            buf.add(i).write(c as u64);
        }
        Ok(())
    })
}

/// Full class report with bounds, as JSON.
///
/// # Safety
/// `d` must be a live handle; `out` a valid pointer. Release the string
/// with `coxinv_string_free`.
#[no_mangle]
pub unsafe extern "C" fn coxinv_cc2_report_json(
    d: *const CoxinvDiagram,
    out: *mut *mut c_char,
) -> CoxinvStatus {
    guard(|| {
        let m = &diagram(d)?.matrix;
        let report = oddgraph::cc2(m).map_err(lib)?;
        let bounds = oddgraph::bounds(m).map_err(lib)?;
        let v = coxinv::cli::report_json(&report, &bounds);
        put_string(out, v.to_string())
    })
}

/// DOT text for the rank-`k` odd graph, or the isomorphism graph when
/// `omega` is set.
///
/// # Safety
/// `d` must be a live handle; `out` a valid pointer. Release the string
/// with `coxinv_string_free`.
#[no_mangle]
pub unsafe extern "C" fn coxinv_graph_dot(
    d: *const CoxinvDiagram,
    k: usize,
    omega: bool,
    out: *mut *mut c_char,
) -> CoxinvStatus {
    guard(|| {
        let d = diagram(d)?;
        let g = if omega {
            oddgraph::omega_k(&d.matrix, k)
        } else {
            oddgraph::gamma_k(&d.matrix, k)
        }
        .map_err(lib)?;
        put_string(out, export_dot(&g, d.labels.as_deref()))
    })
}

/// # Safety
/// `d` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxinv_bounds(
    d: *const CoxinvDiagram,
    out: *mut CoxinvBounds,
) -> CoxinvStatus {
    guard(|| {
        let b = oddgraph::bounds(&diagram(d)?.matrix).map_err(lib)?;
        put(
            out,
            CoxinvBounds {
                omega_lower: b.omega_lower as u64,
                maximal_spherical_upper: b.maximal_spherical_upper as u64,
                numeric_upper: u64::try_from(b.numeric_upper).unwrap_or(u64::MAX),
                is_finite: b.is_finite,
            },
        )
    })
}

/// Compares the class count by rank with brute-force enumeration of the
/// group (at most `cap` elements). `matches` receives the outcome; a
/// mismatch also returns `VERIFY_MISMATCH`.
///
/// # Safety
/// `d` must be a live handle; `matches` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxinv_verify(
    d: *const CoxinvDiagram,
    cap: usize,
    matches: *mut bool,
) -> CoxinvStatus {
    guard(|| {
        let m = &diagram(d)?.matrix;
        if matches.is_null() {
            return Err(fail(CoxinvStatus::NullPointer, "null output pointer"));
        }
        if !coxinv::decompose(m, m.vertices()).is_spherical() {
            return Err(lib(Error::NonSpherical("diagram".into())));
        }
        let report = oddgraph::cc2(m).map_err(lib)?;
        let table = oracle::enumerate(m, cap).map_err(lib)?;
        let classes = oracle::involution_classes(&table, m).map_err(lib)?;
        let ok = classes.per_rank(m.rank()) == report.per_rank;
        matches.write(ok);
        if ok {
            Ok(())
        } else {
            Err(fail(CoxinvStatus::VerifyMismatch, "class counts differ"))
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn coxinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn coxinv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
