//! C interface to the `forkless` engine.
//!
//! Quivers cross the boundary as opaque `ForklessQuiver` handles. Every
//! function returns a `ForklessStatus`; on failure a message for the calling
//! thread is available from `forkless_last_error`. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released
//! with `forkless_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use forkless::format;
use forkless::{forkless_part, mutation_finiteness, preforkless_part, Budget, ExplorationResult, PartStatus, Quiver};

/// Opaque quiver handle.
pub struct ForklessQuiver(Quiver);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForklessStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    Overflow = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

/// Exploration limits. `max_depth == 0` means unlimited.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ForklessBudget {
    pub max_nodes: usize,
    pub max_arrow_weight: u64,
    pub max_depth: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForklessPartKind {
    Finite = 0,
    Empty = 1,
    BudgetExceeded = 2,
}

/// Summary of a forkless or pre-forkless part.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ForklessPart {
    pub kind: ForklessPartKind,
    /// Member count; 0 unless `kind` is `Finite`.
    pub count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(ForklessStatus, String);

impl Failure {
    fn new(status: ForklessStatus, msg: impl Into<String>) -> Self {
        Failure(status, msg.into())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ForklessStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ForklessStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ForklessStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure::new(ForklessStatus::NullPointer, "null pointer argument")
}

unsafe fn quiver<'a>(q: *const ForklessQuiver) -> Result<&'a Quiver, Failure> {
    q.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_handle(out: *mut *mut ForklessQuiver, q: Quiver) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(ForklessQuiver(q))))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(ForklessStatus::InvalidArgument, "string contains NUL"))?;
    put(out, c.into_raw())
}

unsafe fn read_budget(b: *const ForklessBudget) -> Result<Budget, Failure> {
    let Some(b) = b.as_ref() else {
        return Ok(Budget::default());
    };
    let budget = Budget {
        max_nodes: b.max_nodes,
        max_arrow_weight: b.max_arrow_weight,
        max_depth: (b.max_depth > 0).then_some(b.max_depth),
    };
    budget.validate().map_err(|e| Failure::new(ForklessStatus::InvalidArgument, e.to_string()))?;
    Ok(budget)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Message describing the last failure on this thread, or NULL. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn forkless_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn forkless_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Default budget: 100000 nodes, weights up to 10^15, no depth limit.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_budget_default(out: *mut ForklessBudget) -> ForklessStatus {
    guard(|| {
        let b = Budget::default();
        put(out, ForklessBudget { max_nodes: b.max_nodes, max_arrow_weight: b.max_arrow_weight, max_depth: 0 })
    })
}

/// Builds a quiver from an `n * n` row-major skew-symmetric matrix.
///
/// # Safety
/// `matrix` must point to `n * n` readable values; `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_new(n: usize, matrix: *const i64, out: *mut *mut ForklessQuiver) -> ForklessStatus {
    guard(|| {
        if matrix.is_null() && n > 0 {
            return Err(null());
        }
        let cells = n.checked_mul(n).ok_or_else(|| Failure::new(ForklessStatus::InvalidArgument, "n too large"))?;
        let flat: &[i64] = if cells == 0 { &[] } else { std::slice::from_raw_parts(matrix, cells) };
        let rows: Vec<Vec<i64>> = flat.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        let q = Quiver::from_matrix(&rows).map_err(|e| Failure::new(ForklessStatus::InvalidArgument, e.to_string()))?;
        put_handle(out, q)
    })
}

/// Parses a quiver in the JSON or text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_parse(text: *const c_char, out: *mut *mut ForklessQuiver) -> ForklessStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure::new(ForklessStatus::ParseError, "input is not UTF-8"))?;
        let named = format::parse_auto(text).map_err(|e| Failure::new(ForklessStatus::ParseError, e.to_string()))?;
        put_handle(out, named.quiver)
    })
}

/// Releases a quiver handle. NULL is ignored.
///
/// # Safety
/// `q` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_free(q: *mut ForklessQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_vertex_count(q: *const ForklessQuiver, out: *mut usize) -> ForklessStatus {
    guard(|| put(out, quiver(q)?.vertex_count()))
}

/// Signed multiplicity `q_ij`.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_multiplicity(
    q: *const ForklessQuiver,
    i: usize,
    j: usize,
    out: *mut i64,
) -> ForklessStatus {
    guard(|| {
        let q = quiver(q)?;
        let n = q.vertex_count();
        if i >= n || j >= n {
            return Err(Failure::new(ForklessStatus::InvalidArgument, format!("vertex out of range for {n} vertices")));
        }
        put(out, q.mult(i, j))
    })
}

/// Writes the mutation of `q` at `v` to a new handle.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_mutate(
    q: *const ForklessQuiver,
    v: usize,
    out: *mut *mut ForklessQuiver,
) -> ForklessStatus {
    guard(|| {
        let p = quiver(q)?.mutate(v).map_err(|e| {
            let status = match e {
                forkless::QuiverError::MultiplicityOverflow { .. } => ForklessStatus::Overflow,
                _ => ForklessStatus::InvalidArgument,
            };
            Failure::new(status, e.to_string())
        })?;
        put_handle(out, p)
    })
}

/// Canonical JSON form of `q`.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_quiver_to_json(q: *const ForklessQuiver, out: *mut *mut c_char) -> ForklessStatus {
    guard(|| put_string(out, to_json(quiver(q)?)))
}

/// Classification report as JSON.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_classify_json(q: *const ForklessQuiver, out: *mut *mut c_char) -> ForklessStatus {
    guard(|| {
        let report = forkless::classify(quiver(q)?);
        let doc = serde_json::json!({ "class": report.class(), "plain": report.is_plain(), "report": report });
        put_string(out, doc.to_string())
    })
}

type PartFn = fn(&Quiver, &Budget) -> Result<ExplorationResult, forkless::GraphError>;

unsafe fn part(
    f: PartFn,
    q: *const ForklessQuiver,
    b: *const ForklessBudget,
    summary: *mut ForklessPart,
    json: *mut *mut c_char,
) -> ForklessStatus {
    guard(|| {
        let r = f(quiver(q)?, &read_budget(b)?).map_err(|e| Failure::new(ForklessStatus::InvalidArgument, e.to_string()))?;
        let s = match &r.status {
            PartStatus::Finite { count, .. } => ForklessPart { kind: ForklessPartKind::Finite, count: *count },
            PartStatus::Empty => ForklessPart { kind: ForklessPartKind::Empty, count: 0 },
            PartStatus::BudgetExceeded(_) => ForklessPart { kind: ForklessPartKind::BudgetExceeded, count: 0 },
        };
        if !summary.is_null() {
            summary.write(s);
        }
        if !json.is_null() {
            put_string(json, to_json(&r))?;
        }
        if s.kind == ForklessPartKind::BudgetExceeded {
            return Err(Failure::new(ForklessStatus::BudgetExceeded, "budget exceeded"));
        }
        Ok(())
    })
}

/// Forkless part of `q`. `budget` may be NULL for the default; either of
/// `summary` and `json` may be NULL. Returns `BudgetExceeded` (after
/// filling the outputs) when the budget runs out.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn forkless_forkless_part(
    q: *const ForklessQuiver,
    budget: *const ForklessBudget,
    summary: *mut ForklessPart,
    json: *mut *mut c_char,
) -> ForklessStatus {
    part(forkless_part, q, budget, summary, json)
}

/// Pre-forkless part of `q`; same conventions as `forkless_forkless_part`.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn forkless_preforkless_part(
    q: *const ForklessQuiver,
    budget: *const ForklessBudget,
    summary: *mut ForklessPart,
    json: *mut *mut c_char,
) -> ForklessStatus {
    part(preforkless_part, q, budget, summary, json)
}

/// Mutation-finiteness verdict as JSON (`kind` is `finite`, `infinite` or
/// `unknown`).
///
/// # Safety
/// `q` must be a live handle; `budget` NULL or valid; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn forkless_mutation_finiteness_json(
    q: *const ForklessQuiver,
    budget: *const ForklessBudget,
    out: *mut *mut c_char,
) -> ForklessStatus {
    guard(|| {
        let f = mutation_finiteness(quiver(q)?, &read_budget(budget)?)
            .map_err(|e| Failure::new(ForklessStatus::InvalidArgument, e.to_string()))?;
        put_string(out, to_json(&f))
    })
}
