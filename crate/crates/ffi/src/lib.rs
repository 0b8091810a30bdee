//! C ABI over `modcont`.
//!
//! Every fallible function returns an [`McStatus`] and writes its result
//! through an out-pointer. On failure a human-readable message is kept per
//! thread and can be copied out with [`mc_last_error_message`]. Functions and
//! modulus tables are opaque handles released with their `_free` function.
//! Panics never cross the boundary; they surface as `MC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modcont::analysis::{increment_sum, singular_cover};
use modcont::modulus::{self, ModulusTable};
use modcont::real_fn::{NamedFn, PiecewiseFn};
use modcont::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Precondition = 3,
    Consistency = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// The functions of the construction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McFunctionKind {
    F = 0,
    G = 1,
    H = 2,
    F1 = 3,
    F2 = 4,
    F3 = 5,
}

impl From<McFunctionKind> for NamedFn {
    fn from(kind: McFunctionKind) -> Self {
        match kind {
            McFunctionKind::F => NamedFn::F,
            McFunctionKind::G => NamedFn::G,
            McFunctionKind::H => NamedFn::H,
            McFunctionKind::F1 => NamedFn::F1,
            McFunctionKind::F2 => NamedFn::F2,
            McFunctionKind::F3 => NamedFn::F3,
        }
    }
}

/// Opaque piecewise function.
pub struct McFunction(PiecewiseFn);

/// Opaque modulus-of-continuity table.
pub struct McModulusTable(ModulusTable);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

struct Failure(McStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain { .. } => McStatus::Domain,
            Error::Precondition(_) => McStatus::Precondition,
            Error::Consistency { .. } => McStatus::Consistency,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(McStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> McStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            McStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {message}"));
            McStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(handle: *const T, what: &str) -> Result<&'a T, Failure> {
    handle.as_ref().ok_or_else(|| null(what))
}

fn scalar(out: *mut f64, compute: impl FnOnce() -> modcont::Result<f64>) -> McStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let value = compute()?;
        unsafe { write(out, value, "out") }
    })
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn mc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let message = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = message.len().min(len - 1);
            ptr::copy_nonoverlapping(message.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        message.len()
    })
}

/// `α = log 2 / log 3`.
#[no_mangle]
pub extern "C" fn mc_alpha() -> f64 {
    modcont::alpha()
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_cantor_eval(x: f64, digits: u32, out: *mut f64) -> McStatus {
    scalar(out, || modcont::cantor_eval(x, digits))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_f2_eval(x: f64, out: *mut f64) -> McStatus {
    scalar(out, || modcont::f2_eval(x))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_f3_eval(x: f64, out: *mut f64) -> McStatus {
    scalar(out, || modcont::f3_eval(x))
}

/// `φ(x, δ) = g(x + δ) − g(x)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_phi(x: f64, delta: f64, out: *mut f64) -> McStatus {
    scalar(out, || modulus::phi(x, delta))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_psi(delta: f64, out: *mut f64) -> McStatus {
    scalar(out, || modulus::psi(delta))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_find_delta_star(tol: f64, out: *mut f64) -> McStatus {
    scalar(out, || modulus::find_delta_star(tol))
}

/// Closed-form `ω_g(δ)` for `δ ∈ [0, 7]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_omega_g_closed(delta: f64, out: *mut f64) -> McStatus {
    scalar(out, || modulus::omega_g_closed(delta))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_max_phi_boundary(delta: f64, out: *mut f64) -> McStatus {
    scalar(out, || modulus::max_phi_boundary(delta))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_max_phi_critical(delta: f64, out: *mut f64) -> McStatus {
    scalar(out, || modulus::max_phi_critical(delta))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_function_new(
    kind: McFunctionKind,
    out: *mut *mut McFunction,
) -> McStatus {
    guard(|| {
        let handle = Box::into_raw(Box::new(McFunction(NamedFn::from(kind).build())));
        write(out, handle, "out").inspect_err(|_| drop(Box::from_raw(handle)))
    })
}

/// Continuous piecewise-linear function through `n ≥ 2` knots with strictly increasing `xs`.
///
/// # Safety
/// `xs` and `ys` must be valid for `n` reads; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_function_piecewise_linear(
    xs: *const f64,
    ys: *const f64,
    n: usize,
    out: *mut *mut McFunction,
) -> McStatus {
    guard(|| {
        if xs.is_null() || ys.is_null() {
            return Err(null("knot array"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let (xs, ys) = (
            std::slice::from_raw_parts(xs, n),
            std::slice::from_raw_parts(ys, n),
        );
        let knots: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let fun = PiecewiseFn::piecewise_linear(&knots)?;
        write(out, Box::into_raw(Box::new(McFunction(fun))), "out")
    })
}

/// # Safety
/// `fun` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mc_function_free(fun: *mut McFunction) {
    if !fun.is_null() {
        drop(Box::from_raw(fun));
    }
}

/// # Safety
/// `fun` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_function_eval(
    fun: *const McFunction,
    x: f64,
    out: *mut f64,
) -> McStatus {
    guard(|| {
        let fun = borrow(fun, "function")?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, fun.0.eval(x)?, "out")
    })
}

/// # Safety
/// `fun` must be a live handle; `lo` and `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_function_domain(
    fun: *const McFunction,
    lo: *mut f64,
    hi: *mut f64,
) -> McStatus {
    guard(|| {
        let domain = borrow(fun, "function")?.0.domain();
        if lo.is_null() || hi.is_null() {
            return Err(null("out"));
        }
        write(lo, domain.lo(), "lo")?;
        write(hi, domain.hi(), "hi")
    })
}

/// Sum of `|fun(b) − fun(a)|` over the `2^level` intervals of the Cantor
/// construction stage `level`, placed in `[2, 3]`; `total_length` receives the
/// cover's length `(2/3)^level`. Either out-pointer may be null.
///
/// # Safety
/// `fun` must be a live handle whose domain contains `[2, 3]`.
#[no_mangle]
pub unsafe extern "C" fn mc_singular_cover_increment(
    fun: *const McFunction,
    level: u32,
    sum: *mut f64,
    total_length: *mut f64,
) -> McStatus {
    guard(|| {
        let fun = borrow(fun, "function")?;
        let cover = singular_cover(level)?;
        let s = increment_sum(&fun.0, &cover)?;
        if !sum.is_null() {
            write(sum, s, "sum")?;
        }
        if !total_length.is_null() {
            write(total_length, cover.total_length(), "total_length")?;
        }
        Ok(())
    })
}

unsafe fn new_table(
    out: *mut *mut McModulusTable,
    build: impl FnOnce() -> Result<ModulusTable, Failure>,
) -> McStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = build()?;
        write(out, Box::into_raw(Box::new(McModulusTable(table))), "out")
    })
}

/// Grid-oracle modulus of `fun` on `grid_n ≥ 2` equally spaced points.
///
/// # Safety
/// `fun` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_grid(
    fun: *const McFunction,
    grid_n: usize,
    out: *mut *mut McModulusTable,
) -> McStatus {
    new_table(out, || {
        Ok(modulus::modulus_grid(&borrow(fun, "function")?.0, grid_n)?)
    })
}

/// Closed-form `ω_g` tabulated on `grid_n` points of `[0, 7]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_omega_g_table(
    grid_n: usize,
    out: *mut *mut McModulusTable,
) -> McStatus {
    new_table(out, || Ok(modulus::omega_g_table(grid_n)?))
}

/// Least concave majorant of `table`.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_concave_majorant(
    table: *const McModulusTable,
    out: *mut *mut McModulusTable,
) -> McStatus {
    new_table(out, || {
        Ok(modulus::concave_majorant(&borrow(table, "table")?.0)?)
    })
}

/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_free(table: *mut McModulusTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_len(table: *const McModulusTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// Copies the δ and ω columns into caller buffers of capacity `cap`.
/// Either buffer may be null to skip that column.
///
/// # Safety
/// `table` must be a live handle; non-null buffers must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_copy(
    table: *const McModulusTable,
    deltas: *mut f64,
    values: *mut f64,
    cap: usize,
) -> McStatus {
    guard(|| {
        let table = &borrow(table, "table")?.0;
        if cap < table.len() {
            return Err(Failure(
                McStatus::BufferTooSmall,
                format!("buffer holds {cap} rows, table has {}", table.len()),
            ));
        }
        if !deltas.is_null() {
            ptr::copy_nonoverlapping(table.deltas().as_ptr(), deltas, table.len());
        }
        if !values.is_null() {
            ptr::copy_nonoverlapping(table.values().as_ptr(), values, table.len());
        }
        Ok(())
    })
}

/// Linear interpolation of the table at `delta`, constant beyond its ends.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_value_at(
    table: *const McModulusTable,
    delta: f64,
    out: *mut f64,
) -> McStatus {
    guard(|| {
        let table = borrow(table, "table")?;
        write(out, table.0.value_at(delta), "out")
    })
}

/// Whether the table's values are nondecreasing in δ; false for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mc_modulus_is_nondecreasing(table: *const McModulusTable) -> bool {
    table.as_ref().is_some_and(|t| t.0.is_nondecreasing())
}
