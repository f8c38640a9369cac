//! C ABI over `farey_odd`.
//!
//! Every fallible call returns a [`FareyStatus`]; on anything but
//! `FAREY_STATUS_OK` a message is available from [`farey_last_error`] on the
//! same thread until the next failing call. Objects are opaque handles
//! released with their matching `*_free`. Strings returned through `char**`
//! are owned by the caller and released with [`farey_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_rational::BigRational;

use farey_odd::density::RhoConfig;
use farey_odd::geometry::ConvexRegion;
use farey_odd::parity::Parity;
use farey_odd::rational::{fmt_ratio, ratio, to_f64};
use farey_odd::{
    build_region, count_lattice, count_lattice_interval, stabilized_quadrangle, unimodular_image, DeltaTuple,
    Endpoints, Error, IndexTuple, ParityClass, Point, RhoResult, TupleCounter, UnitInterval,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FareyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    OutOfRegime = 4,
    Precondition = 5,
    Overflow = 6,
    Parse = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FareyParity {
    Odd = 0,
    Even = 1,
    Any = 2,
}

impl From<FareyParity> for Parity {
    fn from(p: FareyParity) -> Parity {
        match p {
            FareyParity::Odd => Parity::Odd,
            FareyParity::Even => Parity::Even,
            FareyParity::Any => Parity::Any,
        }
    }
}

/// How a window whose start sits exactly on the left end of `[α, β]` is
/// treated.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FareyEndpoints {
    Closed = 0,
    LeftOpen = 1,
}

impl From<FareyEndpoints> for Endpoints {
    fn from(e: FareyEndpoints) -> Endpoints {
        match e {
            FareyEndpoints::Closed => Endpoints::Closed,
            FareyEndpoints::LeftOpen => Endpoints::LeftOpen,
        }
    }
}

/// Convex region of the unit square with exact rational vertices.
pub struct FareyRegion(ConvexRegion);

/// Certified enclosure of a limiting frequency.
pub struct FareyEnclosure(RhoResult);

/// Largest `Q` accepted by counting calls.
pub const FAREY_MAX_Q: u64 = 100_000;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FareyStatus {
    match e {
        Error::CapExceeded { .. } => FareyStatus::CapExceeded,
        Error::OutOfRegime { .. } => FareyStatus::OutOfRegime,
        Error::Precondition(_) => FareyStatus::Precondition,
        Error::Overflow => FareyStatus::Overflow,
        Error::Parse(_) => FareyStatus::Parse,
        _ => FareyStatus::InvalidArgument,
    }
}

struct Fail(FareyStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(FareyStatus::NullPointer, format!("{what} is NULL"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(FareyStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> FareyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FareyStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            FareyStatus::Internal
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a>(p: *const u64, len: usize, what: &str) -> Result<&'a [u64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn region<'a>(r: *const FareyRegion) -> Result<&'a ConvexRegion, Fail> {
    r.as_ref().map(|r| &r.0).ok_or_else(|| null("region"))
}

unsafe fn enclosure<'a>(e: *const FareyEnclosure) -> Result<&'a RhoResult, Fail> {
    e.as_ref().map(|e| &e.0).ok_or_else(|| null("enclosure"))
}

fn check_q(q: u64) -> Result<(), Fail> {
    if q == 0 {
        return Err(invalid("Q must be positive"));
    }
    if q > FAREY_MAX_Q {
        return Err(Error::CapExceeded { q, cap: FAREY_MAX_Q }.into());
    }
    Ok(())
}

fn rational(num: i64, den: i64) -> Result<BigRational, Fail> {
    if den <= 0 {
        return Err(invalid(format!("denominator must be positive, got {den}")));
    }
    Ok(ratio(num, den))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let out = unsafe { out_ref(out, "out")? };
    *out = CString::new(s).map_err(|_| invalid("string contains NUL"))?.into_raw();
    Ok(())
}

fn give<T>(v: T, out: *mut *mut T) -> Result<(), Fail> {
    let out = unsafe { out_ref(out, "out")? };
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

/// Message of the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn farey_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Forgets the last error message of this thread.
#[no_mangle]
pub extern "C" fn farey_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn farey_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn farey_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of fractions in `F_Q` (or `F_{Q,odd}` when `odd_only`).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_count_fractions(q: u64, odd_only: bool, out: *mut u64) -> FareyStatus {
    guard(|| {
        check_q(q)?;
        *out_ref(out, "out")? = farey_odd::farey::count_fractions(q, odd_only);
        Ok(())
    })
}

/// Windows of `len + 1` consecutive fractions of `F_{Q,odd}` whose
/// determinants equal `delta`. `windows` receives the number of windows
/// inspected and may be NULL.
///
/// # Safety
/// `delta` must point to `len` values; `count` must be valid for writes;
/// `windows` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_count_delta_tuples(
    q: u64,
    delta: *const u64,
    len: usize,
    cyclic: bool,
    count: *mut u64,
    windows: *mut u64,
) -> FareyStatus {
    guard(|| {
        check_q(q)?;
        let d = DeltaTuple::new(slice(delta, len, "delta")?.to_vec())?;
        let count = out_ref(count, "count")?;
        let c = TupleCounter::new(q).cyclic(cyclic).count(&d)?;
        *count = c.matches;
        if let Some(w) = windows.as_mut() {
            *w = c.windows;
        }
        Ok(())
    })
}

/// Tile `T_{k_1,…,k_len}`; `len = 0` gives the Farey triangle.
///
/// # Safety
/// `ks` must point to `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_tile(ks: *const u64, len: usize, out: *mut *mut FareyRegion) -> FareyStatus {
    guard(|| {
        let t = IndexTuple::new(slice(ks, len, "ks")?.to_vec())?;
        give(FareyRegion(build_region(&t)), out)
    })
}

/// The explicit quadrangle for `m ≥ 4r + 2`, `1 ≤ i ≤ r`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_quadrangle(m: u64, i: u64, r: u64, out: *mut *mut FareyRegion) -> FareyStatus {
    guard(|| give(FareyRegion(stabilized_quadrangle(m, i, r)?), out))
}

/// Image of a region lying in `T_k` under `(x, y) ↦ (y, k·y − x)`.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_image(r: *const FareyRegion, k: u64, out: *mut *mut FareyRegion) -> FareyStatus {
    guard(|| give(FareyRegion(unimodular_image(region(r)?, k)?), out))
}

/// # Safety
/// `r` must be NULL or a region not yet freed.
#[no_mangle]
pub unsafe extern "C" fn farey_region_free(r: *mut FareyRegion) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Area as a double.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_area(r: *const FareyRegion, out: *mut f64) -> FareyStatus {
    guard(|| {
        *out_ref(out, "out")? = to_f64(&region(r)?.area());
        Ok(())
    })
}

/// Exact area as `"p/q"`.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_area_string(r: *const FareyRegion, out: *mut *mut c_char) -> FareyStatus {
    guard(|| give_string(fmt_ratio(&region(r)?.area()), out))
}

/// Vertices, constraints and area as JSON.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_json(r: *const FareyRegion, out: *mut *mut c_char) -> FareyStatus {
    guard(|| {
        let s = serde_json::to_string(&region(r)?.dump()).map_err(|e| invalid(e.to_string()))?;
        give_string(s, out)
    })
}

/// Number of polygon vertices (0 for an empty region).
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_vertex_count(r: *const FareyRegion, out: *mut usize) -> FareyStatus {
    guard(|| {
        *out_ref(out, "out")? = region(r)?.vertices().len();
        Ok(())
    })
}

/// Whether `(xn/xd, yn/yd)` satisfies every constraint, strictness included.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_region_contains(
    r: *const FareyRegion,
    xn: i64,
    xd: i64,
    yn: i64,
    yd: i64,
    out: *mut bool,
) -> FareyStatus {
    guard(|| {
        let p = Point::new(rational(xn, xd)?, rational(yn, yd)?);
        *out_ref(out, "out")? = region(r)?.contains(&p);
        Ok(())
    })
}

/// Integer points `(a, b)` with `(a/Q, b/Q)` in the region and the given
/// parities, coprime when `primitive`.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_count_lattice(
    r: *const FareyRegion,
    q: u64,
    x_parity: FareyParity,
    y_parity: FareyParity,
    primitive: bool,
    out: *mut u64,
) -> FareyStatus {
    guard(|| {
        check_q(q)?;
        let p = ParityClass::new(x_parity.into(), y_parity.into());
        *out_ref(out, "out")? = count_lattice(region(r)?, q, p, primitive)?.count;
        Ok(())
    })
}

/// Primitive points additionally restricted to `b̄ ∈ I_a` for
/// `I = [an/ad, bn/bd]`, `b·b̄ ≡ 1 (mod a)`.
///
/// # Safety
/// `r` must be a live region; `out` must be valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn farey_count_lattice_interval(
    r: *const FareyRegion,
    q: u64,
    x_parity: FareyParity,
    y_parity: FareyParity,
    alpha_num: i64,
    alpha_den: i64,
    beta_num: i64,
    beta_den: i64,
    endpoints: FareyEndpoints,
    out: *mut u64,
) -> FareyStatus {
    guard(|| {
        check_q(q)?;
        let iv = UnitInterval::new(rational(alpha_num, alpha_den)?, rational(beta_num, beta_den)?)?;
        let p = ParityClass::new(x_parity.into(), y_parity.into());
        *out_ref(out, "out")? = count_lattice_interval(region(r)?, q, p, &iv, endpoints.into())?.count;
        Ok(())
    })
}

/// Enclosure of the limiting frequency of `delta`, refined until its width
/// is at most `tol_num/tol_den` or the label cutoff reaches `k_max`
/// (0 keeps the default).
///
/// # Safety
/// `delta` must point to `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_rho_odd(
    delta: *const u64,
    len: usize,
    tol_num: i64,
    tol_den: i64,
    k_max: u64,
    out: *mut *mut FareyEnclosure,
) -> FareyStatus {
    guard(|| {
        let d = DeltaTuple::new(slice(delta, len, "delta")?.to_vec())?;
        let mut cfg = RhoConfig::with_tol(rational(tol_num, tol_den)?);
        if k_max > 0 {
            cfg.k_max = k_max;
        }
        give(FareyEnclosure(farey_odd::rho_odd(&d, &cfg)?), out)
    })
}

/// # Safety
/// `e` must be NULL or an enclosure not yet freed.
#[no_mangle]
pub unsafe extern "C" fn farey_enclosure_free(e: *mut FareyEnclosure) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Bounds rounded to doubles.
///
/// # Safety
/// `e` must be a live enclosure; `lo` and `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_enclosure_bounds(e: *const FareyEnclosure, lo: *mut f64, hi: *mut f64) -> FareyStatus {
    guard(|| {
        let r = enclosure(e)?;
        let (lo, hi) = (out_ref(lo, "lo")?, out_ref(hi, "hi")?);
        *lo = to_f64(&r.enclosure.lo);
        *hi = to_f64(&r.enclosure.hi);
        Ok(())
    })
}

/// Exact bounds as `"p/q"` strings.
///
/// # Safety
/// `e` must be a live enclosure; `lo` and `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_enclosure_strings(
    e: *const FareyEnclosure,
    lo: *mut *mut c_char,
    hi: *mut *mut c_char,
) -> FareyStatus {
    guard(|| {
        let r = enclosure(e)?;
        out_ref(hi, "hi")?;
        give_string(fmt_ratio(&r.enclosure.lo), lo)?;
        give_string(fmt_ratio(&r.enclosure.hi), hi)
    })
}

/// Flags of an enclosure: whether it is a single point, whether it met the
/// tolerance, and the label cutoff used. Any output may be NULL.
///
/// # Safety
/// `e` must be a live enclosure; non-NULL outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_enclosure_info(
    e: *const FareyEnclosure,
    exact: *mut bool,
    converged: *mut bool,
    k_used: *mut u64,
) -> FareyStatus {
    guard(|| {
        let r = enclosure(e)?;
        if let Some(x) = exact.as_mut() {
            *x = r.exact;
        }
        if let Some(c) = converged.as_mut() {
            *c = r.converged;
        }
        if let Some(k) = k_used.as_mut() {
            *k = r.k_used;
        }
        Ok(())
    })
}

/// Compares the cyclic window count for `delta` at `Q` with the lattice
/// point sum over its path families.
///
/// # Safety
/// `delta` must point to `len` values; `pass` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn farey_verify_identity(q: u64, delta: *const u64, len: usize, pass: *mut bool) -> FareyStatus {
    guard(|| {
        check_q(q)?;
        let d = DeltaTuple::new(slice(delta, len, "delta")?.to_vec())?;
        *out_ref(pass, "pass")? = farey_odd::lattice::verify_prop_2_1(q, &d)?.pass;
        Ok(())
    })
}
