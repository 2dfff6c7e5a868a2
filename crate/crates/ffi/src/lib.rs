//! C ABI over `repcheck`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` and
//! released by the matching `*_free`. Every fallible call returns an
//! [`RcStatus`]; on failure `rc_last_error` describes the most recent error
//! on the calling thread. Strings returned through out-parameters are owned
//! by the caller and must be released with `rc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use repcheck::character::char_table;
use repcheck::classifier::{full_report, ReportDocument};
use repcheck::group::builtin_group;
use repcheck::{BuiltinGroup, CharTable, Error, GroupTable};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    UnknownGroup = 4,
    VerificationFailed = 5,
    Internal = 6,
    Panic = 7,
}

/// A built-in finite group.
pub struct RcGroup(Arc<GroupTable>);

/// A verified character table.
pub struct RcCharTable(Arc<CharTable>);

/// The classification report for all seven families.
pub struct RcReport(ReportDocument);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RcStatus {
    match e {
        Error::UnknownGroup(_) => RcStatus::UnknownGroup,
        Error::InvalidInput(_) | Error::DimensionMismatch(_) => RcStatus::InvalidArgument,
        Error::TableVerificationFailed { .. } | Error::Inconsistent { .. } => {
            RcStatus::VerificationFailed
        }
        _ => RcStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (RcStatus, String)>) -> RcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside repcheck");
            RcStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (RcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (RcStatus, String) {
    (RcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (RcStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (RcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn parse_group(name: *const c_char) -> Result<BuiltinGroup, (RcStatus, String)> {
    read_str(name, "name")?
        .parse::<BuiltinGroup>()
        .map_err(lib_err)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (RcStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (RcStatus, String)> {
    let c = CString::new(s).map_err(|_| (RcStatus::Internal, "string contains NUL".to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RcStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a built-in group by name (`K4`, `Z4`, `D4`, `D8`, `Pauli1`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_group_new(name: *const c_char, out: *mut *mut RcGroup) -> RcStatus {
    guard(|| {
        let g = parse_group(name)?;
        write_out(out, Box::into_raw(Box::new(RcGroup(builtin_group(g)))))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_group_order(g: *const RcGroup, out: *mut usize) -> RcStatus {
    guard(|| write_out(out, handle(g, "group")?.0.order()))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_group_class_count(g: *const RcGroup, out: *mut usize) -> RcStatus {
    guard(|| write_out(out, handle(g, "group")?.0.classes().len()))
}

/// Index of `a·b`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_group_mul(
    g: *const RcGroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> RcStatus {
    guard(|| {
        let g = &handle(g, "group")?.0;
        if a >= g.order() || b >= g.order() {
            return Err((
                RcStatus::InvalidArgument,
                format!("element index out of range 0..{}", g.order()),
            ));
        }
        write_out(out, g.mul(a, b))
    })
}

/// Multiplication table dump as text.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_group_dump(g: *const RcGroup, out: *mut *mut c_char) -> RcStatus {
    guard(|| write_string(out, handle(g, "group")?.0.dump()))
}

/// # Safety
/// `g` must come from `rc_group_new` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rc_group_free(g: *mut RcGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Verified character table of a built-in group.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_char_table_new(
    name: *const c_char,
    out: *mut *mut RcCharTable,
) -> RcStatus {
    guard(|| {
        let t = char_table(parse_group(name)?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RcCharTable(t))))
    })
}

/// Number of irreducible characters.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_char_table_len(t: *const RcCharTable, out: *mut usize) -> RcStatus {
    guard(|| write_out(out, handle(t, "table")?.0.len()))
}

/// Table as JSON with exact `{num, den}` coefficients.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_char_table_json(
    t: *const RcCharTable,
    out: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let json = serde_json::to_string(&handle(t, "table")?.0.to_json())
            .map_err(|e| (RcStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// # Safety
/// `t` must come from `rc_char_table_new` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rc_char_table_free(t: *mut RcCharTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Classifies all seven families.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_report_new(out: *mut *mut RcReport) -> RcStatus {
    guard(|| {
        let r = full_report().map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RcReport(r))))
    })
}

/// Number of families in the report.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_report_family_count(r: *const RcReport, out: *mut usize) -> RcStatus {
    guard(|| write_out(out, handle(r, "report")?.0.families.len()))
}

/// Writes 1 to `out` if the family at `index` is realizable, else 0.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_report_is_realizable(
    r: *const RcReport,
    index: usize,
    out: *mut i32,
) -> RcStatus {
    guard(|| {
        let r = &handle(r, "report")?.0;
        let e = r.families.get(index).ok_or_else(|| {
            (
                RcStatus::InvalidArgument,
                format!("family index {index} out of range"),
            )
        })?;
        write_out(out, i32::from(e.realizable))
    })
}

/// Name of the family at `index`.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_report_family_name(
    r: *const RcReport,
    index: usize,
    out: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let r = &handle(r, "report")?.0;
        let e = r.families.get(index).ok_or_else(|| {
            (
                RcStatus::InvalidArgument,
                format!("family index {index} out of range"),
            )
        })?;
        write_string(out, e.family.as_str().to_string())
    })
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_report_json(r: *const RcReport, out: *mut *mut c_char) -> RcStatus {
    guard(|| write_string(out, handle(r, "report")?.0.to_json()))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_report_text(r: *const RcReport, out: *mut *mut c_char) -> RcStatus {
    guard(|| write_string(out, handle(r, "report")?.0.render()))
}

/// # Safety
/// `r` must come from `rc_report_new` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rc_report_free(r: *mut RcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs the full verification battery. Writes the number of failed checks to
/// `failed` (may be NULL) and returns `VerificationFailed` if any failed.
///
/// # Safety
/// `failed` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_verify_all(failed: *mut usize) -> RcStatus {
    guard(|| {
        let checks = repcheck::cli::verify_all();
        let bad: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        if !failed.is_null() {
            failed.write(bad.len());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err((
                RcStatus::VerificationFailed,
                format!("failed: {}", bad.join(", ")),
            ))
        }
    })
}

/// Seeded chain of `rounds` entanglement swaps as JSON:
/// `{"path": [...], "chsh": [...]}` with exact CHSH values.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_swap_chain_json(
    rounds: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let (path, values) = repcheck::quantum::iterate_swap(rounds, seed).map_err(lib_err)?;
        let json = serde_json::json!({ "path": path, "chsh": values });
        write_string(out, json.to_string())
    })
}
