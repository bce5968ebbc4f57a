//! C ABI for the meshperm engine.
//!
//! Patterns and tables cross the boundary as opaque handles. Every fallible
//! call returns a [`MeshpermStatus`]; on failure a message for the calling
//! thread is available from [`meshperm_last_error`]. Strings returned by the
//! library are owned by the caller and released with [`meshperm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use meshperm::catalog::{builtin_catalog, find};
use meshperm::dist::joint_distribution;
use meshperm::mesh::count_occurrences;
use meshperm::{Error, JointTable, MeshPattern, Permutation};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshpermStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Capacity = 4,
    InvalidInput = 5,
    NotFound = 6,
    Internal = 7,
}

/// Opaque mesh pattern.
pub struct MeshpermPattern(MeshPattern);

/// Opaque joint distribution table.
pub struct MeshpermTable(JointTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> MeshpermStatus {
    match e {
        Error::Capacity { .. } => MeshpermStatus::Capacity,
        Error::Parse(_) | Error::ParseLine { .. } => MeshpermStatus::Parse,
        Error::Unknown { .. } => MeshpermStatus::NotFound,
        Error::InvalidInput(_) | Error::Domain(_) | Error::MismatchedN { .. } => MeshpermStatus::InvalidInput,
        Error::Invariant { .. } | Error::Internal(_) => MeshpermStatus::Internal,
    }
}

struct Failure(MeshpermStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MeshpermStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MeshpermStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside meshperm".into());
            MeshpermStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MeshpermStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(MeshpermStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(MeshpermStatus::Internal, e.to_string()))
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn meshperm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn meshperm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `tau|c,r;c,r;...` into a new pattern handle.
///
/// # Safety
/// `text` must be a nul-terminated string; `out_pattern` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_pattern_parse(
    text: *const c_char,
    out_pattern: *mut *mut MeshpermPattern,
) -> MeshpermStatus {
    guard(|| {
        let slot = out(out_pattern, "out_pattern")?;
        let q: MeshPattern = read_str(text, "text")?.parse()?;
        *slot = Box::into_raw(Box::new(MeshpermPattern(q)));
        Ok(())
    })
}

/// Canonical text of a pattern, to be released with `meshperm_string_free`.
///
/// # Safety
/// `pattern` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_pattern_to_string(
    pattern: *const MeshpermPattern,
    out_text: *mut *mut c_char,
) -> MeshpermStatus {
    guard(|| {
        let q = borrow(pattern, "pattern")?;
        let slot = out(out_text, "out_text")?;
        *slot = into_c_string(q.0.to_string())?;
        Ok(())
    })
}

/// Releases a pattern handle. Null is ignored.
///
/// # Safety
/// `pattern` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn meshperm_pattern_free(pattern: *mut MeshpermPattern) {
    if !pattern.is_null() {
        drop(Box::from_raw(pattern));
    }
}

/// Looks up a catalog pair such as `"S9"` and returns new handles for both
/// of its patterns.
///
/// # Safety
/// `id` must be a nul-terminated string; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_catalog_pair(
    id: *const c_char,
    out_q1: *mut *mut MeshpermPattern,
    out_q2: *mut *mut MeshpermPattern,
) -> MeshpermStatus {
    guard(|| {
        let id = read_str(id, "id")?;
        let (s1, s2) = (out(out_q1, "out_q1")?, out(out_q2, "out_q2")?);
        let catalog = builtin_catalog();
        let pair = find(&catalog, id)?;
        *s1 = Box::into_raw(Box::new(MeshpermPattern(pair.q1.clone())));
        *s2 = Box::into_raw(Box::new(MeshpermPattern(pair.q2.clone())));
        Ok(())
    })
}

/// Number of occurrences of `pattern` in the one-line permutation `perm`
/// (e.g. `"23154"`, or comma separated for n > 9).
///
/// # Safety
/// `perm` must be a nul-terminated string; `pattern` a live handle;
/// `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_count(
    perm: *const c_char,
    pattern: *const MeshpermPattern,
    out_count: *mut u64,
) -> MeshpermStatus {
    guard(|| {
        let pi: Permutation = read_str(perm, "perm")?.parse()?;
        let q = borrow(pattern, "pattern")?;
        *out(out_count, "out_count")? = count_occurrences(&pi, &q.0);
        Ok(())
    })
}

/// Joint distribution of `(q1, q2)` over all of S_n.
///
/// # Safety
/// Both patterns must be live handles; `out_table` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_joint_table(
    n: usize,
    q1: *const MeshpermPattern,
    q2: *const MeshpermPattern,
    out_table: *mut *mut MeshpermTable,
) -> MeshpermStatus {
    guard(|| {
        let (a, b) = (borrow(q1, "q1")?, borrow(q2, "q2")?);
        let slot = out(out_table, "out_table")?;
        let table = joint_distribution(n, &a.0, &b.0)?;
        *slot = Box::into_raw(Box::new(MeshpermTable(table)));
        Ok(())
    })
}

/// Number of rows and columns after trimming trailing zeros.
///
/// # Safety
/// `table` must be a live handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_table_dims(
    table: *const MeshpermTable,
    out_rows: *mut usize,
    out_cols: *mut usize,
) -> MeshpermStatus {
    guard(|| {
        let t = borrow(table, "table")?;
        *out(out_rows, "out_rows")? = t.0.row_count();
        *out(out_cols, "out_cols")? = t.0.col_count();
        Ok(())
    })
}

/// Entry `T[k][l]`; zero outside the stored range.
///
/// # Safety
/// `table` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_table_get(
    table: *const MeshpermTable,
    k: usize,
    l: usize,
    out_value: *mut u64,
) -> MeshpermStatus {
    guard(|| {
        let t = borrow(table, "table")?;
        *out(out_value, "out_value")? = t.0.get(k, l);
        Ok(())
    })
}

/// Whether `T[k][l] == T[l][k]` for all cells.
///
/// # Safety
/// `table` must be a live handle; `out_symmetric` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_table_is_symmetric(
    table: *const MeshpermTable,
    out_symmetric: *mut bool,
) -> MeshpermStatus {
    guard(|| {
        let t = borrow(table, "table")?;
        *out(out_symmetric, "out_symmetric")? = t.0.is_jointly_symmetric();
        Ok(())
    })
}

/// The generating polynomial as text, e.g. `"x + y + 4"`, to be released
/// with `meshperm_string_free`.
///
/// # Safety
/// `table` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meshperm_table_polynomial(
    table: *const MeshpermTable,
    out_text: *mut *mut c_char,
) -> MeshpermStatus {
    guard(|| {
        let t = borrow(table, "table")?;
        let slot = out(out_text, "out_text")?;
        *slot = into_c_string(t.0.to_polynomial().to_string())?;
        Ok(())
    })
}

/// Releases a table handle. Null is ignored.
///
/// # Safety
/// `table` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn meshperm_table_free(table: *mut MeshpermTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}
