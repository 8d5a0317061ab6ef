//! C ABI for `kneser-det`.
//!
//! Every function returns a [`KneserStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be read with
//! [`kneser_last_error_message`]. Families are opaque [`KneserFamily`]
//! handles released with [`kneser_family_free`]; strings returned by the
//! library are released with [`kneser_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use kneser_det::bounds::bounds_report;
use kneser_det::census::f_count;
use kneser_det::constructions::{aux_set, construct_triangular, det_set_odd, determine, extend_n, lift_nk, reduce_n};
use kneser_det::records::{from_json_line, to_json_line};
use kneser_det::{Error, Family, KneserInstance, Regime, SearchBudget};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KneserStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    BudgetExceeded = 3,
    Internal = 4,
    Panic = 5,
}

/// Opaque family handle.
pub struct KneserFamily(Family);

/// Search limits. Zero in a field means "use the default" for `max_nodes`
/// and "no limit" for the others.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KneserBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub max_r: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KneserBounds {
    pub lower: u32,
    pub upper: u32,
    /// Meaningful only when `has_exact` is set.
    pub exact: u32,
    pub has_exact: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KneserCensus {
    pub f: u64,
    pub cumulative: u64,
    /// Pairs left unclassified by the budget; non-zero means partial counts.
    pub unresolved: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KneserStatus {
    match e {
        Error::BudgetExceeded => KneserStatus::BudgetExceeded,
        Error::InternalInconsistency(_) => KneserStatus::Internal,
        _ => KneserStatus::InvalidArgument,
    }
}

fn fail(e: Error) -> KneserStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

fn null(what: &str) -> KneserStatus {
    set_error(format!("{what} is null"));
    KneserStatus::NullPointer
}

/// Runs `f`, turning panics into [`KneserStatus::Panic`].
fn guard(f: impl FnOnce() -> KneserStatus) -> KneserStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            KneserStatus::Panic
        }
    }
}

fn budget_from(b: *const KneserBudget) -> Result<SearchBudget, Error> {
    let mut budget = SearchBudget::default();
    // SAFETY: caller passes null or a valid pointer
    let Some(b) = (unsafe { b.as_ref() }) else {
        return Ok(budget);
    };
    if b.max_nodes > 0 {
        budget.node_limit = Some(b.max_nodes);
    }
    if b.max_seconds.is_nan() || b.max_seconds < 0.0 || b.max_seconds.is_infinite() {
        return Err(Error::InvalidInput(format!("max_seconds must be finite and non-negative, got {}", b.max_seconds)));
    }
    if b.max_seconds > 0.0 {
        budget.time_limit = Some(Duration::from_secs_f64(b.max_seconds));
    }
    if b.max_r > 0 {
        budget.max_r = Some(b.max_r);
    }
    Ok(budget)
}

fn emit(f: Family, out: *mut *mut KneserFamily) {
    // SAFETY: checked non-null by callers
    unsafe { *out = Box::into_raw(Box::new(KneserFamily(f))) };
}

fn with_family(f: *const KneserFamily, body: impl FnOnce(&Family) -> KneserStatus) -> KneserStatus {
    // SAFETY: caller passes null or a handle from this library
    match unsafe { f.as_ref() } {
        Some(h) => body(&h.0),
        None => null("family"),
    }
}

/// Builds a family from `num_sets * k` elements laid out set after set.
/// Instances with `n == 2k` are auxiliary, all others determining.
///
/// # Safety
/// `elements` must point to `num_sets * k` readable values (it may be null
/// when `num_sets` is 0), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_new(
    n: u32,
    k: u32,
    elements: *const u32,
    num_sets: usize,
    out: *mut *mut KneserFamily,
) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        if elements.is_null() && num_sets > 0 {
            return null("elements");
        }
        let regime = if n == 2 * k { Regime::Auxiliary } else { Regime::Determining };
        let inst = match KneserInstance::with_regime(n, k, regime) {
            Ok(i) => i,
            Err(e) => return fail(e),
        };
        let Some(total) = num_sets.checked_mul(k as usize) else {
            return fail(Error::InvalidInput("num_sets * k overflows".into()));
        };
        let flat: &[u32] = if total == 0 { &[] } else { std::slice::from_raw_parts(elements, total) };
        match Family::new(inst, flat.chunks(k as usize).map(|c| c.iter().copied())) {
            Ok(f) => {
                emit(f, out);
                KneserStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_free(f: *mut KneserFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of sets; 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_len(f: *const KneserFamily) -> usize {
    f.as_ref().map_or(0, |h| h.0.len())
}

/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_n(f: *const KneserFamily) -> u32 {
    f.as_ref().map_or(0, |h| h.0.instance().n())
}

/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_k(f: *const KneserFamily) -> u32 {
    f.as_ref().map_or(0, |h| h.0.instance().k())
}

/// Copies the sorted elements of set `index` into `out`, which must hold `k` values.
///
/// # Safety
/// `f` must be a live handle and `out` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_copy_set(
    f: *const KneserFamily,
    index: usize,
    out: *mut u32,
    capacity: usize,
) -> KneserStatus {
    guard(|| {
        with_family(f, |fam| {
            if out.is_null() {
                return null("out");
            }
            let Some(set) = fam.sets().get(index) else {
                return fail(Error::InvalidInput(format!("set index {index} out of range (family has {})", fam.len())));
            };
            let elems = set.elements();
            if capacity < elems.len() {
                return fail(Error::InvalidInput(format!("buffer holds {capacity} values, need {}", elems.len())));
            }
            ptr::copy_nonoverlapping(elems.as_ptr(), out, elems.len());
            KneserStatus::Ok
        })
    })
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_is_determining(f: *const KneserFamily, out: *mut bool) -> KneserStatus {
    guard(|| {
        with_family(f, |fam| {
            if out.is_null() {
                return null("out");
            }
            *out = fam.is_determining();
            KneserStatus::Ok
        })
    })
}

/// Separation plus coverage of `[n]`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_is_auxiliary(f: *const KneserFamily, out: *mut bool) -> KneserStatus {
    guard(|| {
        with_family(f, |fam| {
            if out.is_null() {
                return null("out");
            }
            *out = fam.is_determining() && fam.uncovered().is_empty();
            KneserStatus::Ok
        })
    })
}

/// Lexicographically first pair of elements with equal signatures. `found` is
/// false when the family is determining.
///
/// # Safety
/// `f` must be a live handle; `found`, `a` and `b` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_first_unseparated_pair(
    f: *const KneserFamily,
    found: *mut bool,
    a: *mut u32,
    b: *mut u32,
) -> KneserStatus {
    guard(|| {
        with_family(f, |fam| {
            if found.is_null() || a.is_null() || b.is_null() {
                return null("out");
            }
            match fam.first_unseparated_pair() {
                Some((x, y)) => {
                    *found = true;
                    *a = x;
                    *b = y;
                }
                None => *found = false,
            }
            KneserStatus::Ok
        })
    })
}

/// One-line JSON record; free with [`kneser_string_free`].
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_to_json(f: *const KneserFamily, out: *mut *mut c_char) -> KneserStatus {
    guard(|| {
        with_family(f, |fam| {
            if out.is_null() {
                return null("out");
            }
            let s = CString::new(to_json_line(fam)).expect("json has no nul bytes");
            *out = s.into_raw();
            KneserStatus::Ok
        })
    })
}

/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_from_json(json: *const c_char, out: *mut *mut KneserFamily) -> KneserStatus {
    guard(|| {
        if json.is_null() {
            return null("json");
        }
        if out.is_null() {
            return null("out");
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(Error::Parse("input is not UTF-8".into()));
        };
        match from_json_line(text) {
            Ok(f) => {
                emit(f, out);
                KneserStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kneser_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn kneser_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Determining number of `K(n,k)`. Closed forms are used when they apply.
/// `budget` may be null. `witness` may be null; otherwise it receives a
/// minimum family, or null if none could be produced within budget.
/// Returns `BudgetExceeded` when the value itself is unresolved.
///
/// # Safety
/// `value` must be writable; `witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_det(
    n: u32,
    k: u32,
    budget: *const KneserBudget,
    value: *mut u32,
    witness: *mut *mut KneserFamily,
) -> KneserStatus {
    guard(|| {
        if value.is_null() {
            return null("value");
        }
        if !witness.is_null() {
            *witness = ptr::null_mut();
        }
        let res = KneserInstance::new(n, k).and_then(|inst| budget_from(budget).and_then(|b| determine(&inst, &b)));
        let res = match res {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let Some(v) = res.value else {
            set_error(format!("search budget exceeded for K({n},{k})"));
            return KneserStatus::BudgetExceeded;
        };
        *value = v;
        if let (false, Some(w)) = (witness.is_null(), res.witness) {
            emit(w, witness);
        }
        KneserStatus::Ok
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_bounds(n: u32, k: u32, out: *mut KneserBounds) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match KneserInstance::new(n, k).and_then(|i| bounds_report(&i)) {
            Ok(r) => {
                *out = KneserBounds {
                    lower: r.lower.value,
                    upper: r.upper.value,
                    exact: r.exact.as_ref().map_or(0, |b| b.value),
                    has_exact: r.exact.is_some(),
                };
                KneserStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

unsafe fn produce(out: *mut *mut KneserFamily, f: impl FnOnce() -> kneser_det::Result<Family>) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match f() {
            Ok(fam) => {
                emit(fam, out);
                KneserStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

unsafe fn transform(
    f: *const KneserFamily,
    out: *mut *mut KneserFamily,
    op: fn(&Family) -> kneser_det::Result<Family>,
) -> KneserStatus {
    match f.as_ref() {
        Some(h) => produce(out, || op(&h.0)),
        None => guard(|| null("family")),
    }
}

/// `r` sets of size `r` on `r(r+1)/2 + 1` points, pairwise meeting in one point.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_construct_triangular(r: u32, out: *mut *mut KneserFamily) -> KneserStatus {
    produce(out, || construct_triangular(r))
}

/// Auxiliary family of `K(2k,k)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_construct_aux(k: u32, out: *mut *mut KneserFamily) -> KneserStatus {
    produce(out, || aux_set(k).map(|t| t.family))
}

/// Minimum determining family of `K(2k+1,k)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_construct_det_odd(k: u32, out: *mut *mut KneserFamily) -> KneserStatus {
    produce(out, || det_set_odd(k))
}

/// `K(n,k)` to `K(n+1,k)`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_extend_n(f: *const KneserFamily, out: *mut *mut KneserFamily) -> KneserStatus {
    transform(f, out, extend_n)
}

/// `K(n+1,k)` to `K(n,k)`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_reduce_n(f: *const KneserFamily, out: *mut *mut KneserFamily) -> KneserStatus {
    transform(f, out, reduce_n)
}

/// `K(n,k)` to `K(n+1,k+1)`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_lift_nk(f: *const KneserFamily, out: *mut *mut KneserFamily) -> KneserStatus {
    transform(f, out, lift_nk)
}

/// `f(r)` and `F(r)`. A partial census still fills `out` and returns `BudgetExceeded`.
///
/// # Safety
/// `budget` null or valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kneser_census(r: u32, budget: *const KneserBudget, out: *mut KneserCensus) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match budget_from(budget).and_then(|b| f_count(r, &b)) {
            Ok(rec) => {
                *out = KneserCensus { f: rec.f, cumulative: rec.cumulative, unresolved: rec.unresolved.len() as u64 };
                if rec.is_complete() {
                    KneserStatus::Ok
                } else {
                    set_error(format!("census for r={r} is partial"));
                    KneserStatus::BudgetExceeded
                }
            }
            Err(e) => fail(e),
        }
    })
}
