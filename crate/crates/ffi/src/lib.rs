//! C ABI for `kxcount`.
//!
//! Every function returns a [`KxStatus`]; results go through out-pointers.
//! Objects are opaque handles freed by their `*_free` function. After a
//! failure, `kx_last_error` copies a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kxcount::graphs::{deck_group_order, minimize, validate, AdequateGraph};
use kxcount::psh::{counts_by_degree, cuspidal_census, hilbert, HilbertMethod};
use kxcount::series::IntSeries;
use kxcount::subgroups::{bs_count, klein_count, oracle_count, Presentation};
use kxcount::{Error, Limits, Perm, PermTuple};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KxStatus {
    Ok = 0,
    InvalidInput = 1,
    CapExceeded = 2,
    ConsistencyFailure = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KxHilbertMethod {
    Kronecker = 0,
    Coverings = 1,
    Cuspidal = 2,
}

pub struct KxLimits {
    inner: Limits,
}

pub struct KxGraph {
    inner: AdequateGraph,
}

pub struct KxTuple {
    inner: PermTuple,
}

pub struct KxSeries {
    inner: IntSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> KxStatus {
    match e {
        Error::DegreeMismatch { .. } | Error::Invalid(_) => KxStatus::InvalidInput,
        Error::CapExceeded { .. } | Error::Overflow(_) => KxStatus::CapExceeded,
        Error::Logic(_) => KxStatus::ConsistencyFailure,
    }
}

fn guard(f: impl FnOnce() -> Result<(), KxStatus>) -> KxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KxStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            KxStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, KxStatus>;
}

impl<T> OrStatus<T> for kxcount::Result<T> {
    fn or_status(self) -> Result<T, KxStatus> {
        self.map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })
    }
}

fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, KxStatus> {
    // SAFETY: non-null pointers passed in are handles created by this library
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error(format!("{what} is null"));
        KxStatus::NullPointer
    })
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), KxStatus> {
    if out.is_null() {
        set_error("output pointer is null");
        return Err(KxStatus::NullPointer);
    }
    // SAFETY: checked non-null; the caller provides a writable location
    unsafe { out.write(value) };
    Ok(())
}

fn live_limits<'a>(l: *mut KxLimits) -> Result<&'a mut KxLimits, KxStatus> {
    // SAFETY: non-null pointers passed in are handles from kx_limits_new
    unsafe { l.as_mut() }.ok_or_else(|| {
        set_error("limits is null");
        KxStatus::NullPointer
    })
}

fn limits_or_default(l: *const KxLimits) -> Limits {
    // SAFETY: null means defaults, otherwise a handle from kx_limits_new
    unsafe { l.as_ref() }.map_or_else(Limits::default, |l| l.inner.clone())
}

fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, KxStatus> {
    if s.is_null() {
        set_error(format!("{what} is null"));
        return Err(KxStatus::NullPointer);
    }
    // SAFETY: the caller passes a NUL-terminated string
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        KxStatus::InvalidInput
    })
}

fn to_u64(x: impl TryInto<u64>) -> Result<u64, KxStatus> {
    x.try_into().map_err(|_| {
        set_error("value does not fit in 64 bits");
        KxStatus::CapExceeded
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn kx_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: n + 1 <= len bytes are writable
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Default caps. Free with `kx_limits_free`.
#[no_mangle]
pub extern "C" fn kx_limits_new() -> *mut KxLimits {
    Box::into_raw(Box::new(KxLimits {
        inner: Limits::default(),
    }))
}

/// # Safety
/// `limits` must be null or a handle from `kx_limits_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kx_limits_free(limits: *mut KxLimits) {
    if !limits.is_null() {
        // SAFETY: created by Box::into_raw in kx_limits_new
        drop(unsafe { Box::from_raw(limits) });
    }
}

/// Sets the degree cap of exhaustive searches, of transitive enumeration and of the oracle.
///
/// # Safety
/// `limits` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kx_limits_set_max_degree(limits: *mut KxLimits, n: usize) -> KxStatus {
    guard(|| {
        let l = live_limits(limits)?;
        l.inner.max_degree = n;
        l.inner.max_transitive_n = Some(n);
        l.inner.oracle_max_n = n;
        Ok(())
    })
}

/// # Safety
/// `limits` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn kx_limits_set_group_order_cap(limits: *mut KxLimits, cap: usize) -> KxStatus {
    guard(|| {
        let l = live_limits(limits)?;
        l.inner.group_order_cap = cap;
        Ok(())
    })
}

/// Parses a graph from JSON. Malformed JSON fails; an adequacy violation does
/// not (see `kx_graph_violation_count`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_from_json(json: *const c_char, out: *mut *mut KxGraph) -> KxStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let g = AdequateGraph::from_json_str(text).or_status()?;
        write_out(out, Box::into_raw(Box::new(KxGraph { inner: g })))
    })
}

/// # Safety
/// `graph` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_free(graph: *mut KxGraph) {
    if !graph.is_null() {
        // SAFETY: created by Box::into_raw in this library
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// # Safety
/// `graph` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_num_vertices(graph: *const KxGraph, out: *mut usize) -> KxStatus {
    guard(|| write_out(out, non_null(graph, "graph")?.inner.num_vertices()))
}

/// Number of adequacy violations; zero for a valid graph.
///
/// # Safety
/// `graph` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_violation_count(graph: *const KxGraph, out: *mut usize) -> KxStatus {
    guard(|| write_out(out, validate(&non_null(graph, "graph")?.inner).len()))
}

/// The irreducible base of a connected graph, as a new handle.
///
/// # Safety
/// `graph` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_minimize(graph: *const KxGraph, out: *mut *mut KxGraph) -> KxStatus {
    guard(|| {
        let m = minimize(&non_null(graph, "graph")?.inner).or_status()?;
        write_out(out, Box::into_raw(Box::new(KxGraph { inner: m.base })))
    })
}

/// # Safety
/// `graph` must be a live handle, `limits` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_deck_order(
    graph: *const KxGraph,
    limits: *const KxLimits,
    out: *mut usize,
) -> KxStatus {
    guard(|| {
        let g = non_null(graph, "graph")?;
        write_out(out, deck_group_order(&g.inner, &limits_or_default(limits)).or_status()?)
    })
}

/// Whether two connected graphs are isomorphic.
///
/// # Safety
/// Both graphs must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_isomorphic(a: *const KxGraph, b: *const KxGraph, out: *mut bool) -> KxStatus {
    guard(|| {
        let ka = non_null(a, "graph a")?.inner.canonical_key().or_status()?;
        let kb = non_null(b, "graph b")?.inner.canonical_key().or_status()?;
        write_out(out, ka == kb)
    })
}

/// The graph as JSON. Free the string with `kx_string_free`.
///
/// # Safety
/// `graph` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_graph_to_json(graph: *const KxGraph, out: *mut *mut c_char) -> KxStatus {
    guard(|| {
        let g = non_null(graph, "graph")?;
        let text = serde_json::to_string(&g.inner).map_err(|e| {
            set_error(e.to_string());
            KxStatus::ConsistencyFailure
        })?;
        let c = CString::new(text).map_err(|_| KxStatus::ConsistencyFailure)?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kx_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw
        drop(unsafe { CString::from_raw(s) });
    }
}

/// A tuple of `rank` permutations of `{0..degree-1}`; `images` holds
/// `rank * degree` entries, one permutation after another.
///
/// # Safety
/// `images` must point to `rank * degree` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_tuple_new(
    degree: usize,
    rank: usize,
    images: *const usize,
    out: *mut *mut KxTuple,
) -> KxStatus {
    guard(|| {
        let total = degree.checked_mul(rank).ok_or(KxStatus::InvalidInput)?;
        let data: &[usize] = if total == 0 {
            &[]
        } else {
            if images.is_null() {
                set_error("images is null");
                return Err(KxStatus::NullPointer);
            }
            // SAFETY: caller provides rank * degree readable values
            unsafe { std::slice::from_raw_parts(images, total) }
        };
        let perms = (0..rank)
            .map(|i| Perm::new(data[i * degree..(i + 1) * degree].to_vec()))
            .collect::<kxcount::Result<Vec<_>>>()
            .or_status()?;
        let t = if rank == 0 {
            PermTuple::identity(degree, 0)
        } else {
            PermTuple::new(perms).or_status()?
        };
        write_out(out, Box::into_raw(Box::new(KxTuple { inner: t })))
    })
}

/// # Safety
/// `tuple` must be null or a live tuple handle.
#[no_mangle]
pub unsafe extern "C" fn kx_tuple_free(tuple: *mut KxTuple) {
    if !tuple.is_null() {
        // SAFETY: created by Box::into_raw in this library
        drop(unsafe { Box::from_raw(tuple) });
    }
}

/// Copies the images, as in `kx_tuple_new`, into `buf` of length `len`.
///
/// # Safety
/// `tuple` must be live; `buf` must have `len` writable slots.
#[no_mangle]
pub unsafe extern "C" fn kx_tuple_images(tuple: *const KxTuple, buf: *mut usize, len: usize) -> KxStatus {
    guard(|| {
        let t = &non_null(tuple, "tuple")?.inner;
        let data: Vec<usize> = t.perms().iter().flat_map(|p| p.images().iter().copied()).collect();
        if len < data.len() {
            set_error(format!("buffer holds {len} values, {} needed", data.len()));
            return Err(KxStatus::InvalidInput);
        }
        for (i, x) in data.into_iter().enumerate() {
            // SAFETY: i < len
            unsafe { buf.add(i).write(x) };
        }
        Ok(())
    })
}

/// The canonical representative of the tuple's conjugacy class, as a new handle.
///
/// # Safety
/// `tuple` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_tuple_canonical(tuple: *const KxTuple, out: *mut *mut KxTuple) -> KxStatus {
    guard(|| {
        let c = non_null(tuple, "tuple")?.inner.canonical_form();
        write_out(out, Box::into_raw(Box::new(KxTuple { inner: c })))
    })
}

/// `‖Γ‖²`: the order of the centralizer of the tuple.
///
/// # Safety
/// `tuple` must be live, `limits` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_tuple_norm_squared(
    tuple: *const KxTuple,
    limits: *const KxLimits,
    out: *mut u64,
) -> KxStatus {
    guard(|| {
        let t = non_null(tuple, "tuple")?;
        let n = kxcount::psh::norm_squared(&t.inner, &limits_or_default(limits)).or_status()?;
        write_out(out, to_u64(n)?)
    })
}

/// # Safety
/// `tuple` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_tuple_is_transitive(tuple: *const KxTuple, out: *mut bool) -> KxStatus {
    guard(|| write_out(out, non_null(tuple, "tuple")?.inner.is_transitive()))
}

/// The Hilbert series truncated at `X^n`.
///
/// # Safety
/// `limits` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_hilbert(
    m: usize,
    n: usize,
    method: KxHilbertMethod,
    limits: *const KxLimits,
    out: *mut *mut KxSeries,
) -> KxStatus {
    guard(|| {
        let method = match method {
            KxHilbertMethod::Kronecker => HilbertMethod::Kronecker,
            KxHilbertMethod::Coverings => HilbertMethod::Coverings,
            KxHilbertMethod::Cuspidal => HilbertMethod::Cuspidal,
        };
        let s = hilbert(m, n, method, &limits_or_default(limits)).or_status()?;
        write_out(out, Box::into_raw(Box::new(KxSeries { inner: s })))
    })
}

/// # Safety
/// `series` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn kx_series_free(series: *mut KxSeries) {
    if !series.is_null() {
        // SAFETY: created by Box::into_raw in this library
        drop(unsafe { Box::from_raw(series) });
    }
}

/// Number of coefficients (precision + 1).
///
/// # Safety
/// `series` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_series_len(series: *const KxSeries, out: *mut usize) -> KxStatus {
    guard(|| write_out(out, non_null(series, "series")?.inner.coefficients().len()))
}

/// # Safety
/// `series` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_series_coefficient(series: *const KxSeries, i: usize, out: *mut i64) -> KxStatus {
    guard(|| {
        let s = &non_null(series, "series")?.inner;
        if i >= s.coefficients().len() {
            set_error(format!("coefficient {i} is beyond the precision"));
            return Err(KxStatus::InvalidInput);
        }
        let c = i64::try_from(s.coeff(i)).map_err(|_| {
            set_error("coefficient does not fit in 64 bits");
            KxStatus::CapExceeded
        })?;
        write_out(out, c)
    })
}

/// Number of transitive `F_m`-sets of size `n` up to isomorphism.
///
/// # Safety
/// `limits` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_transitive_count(m: usize, n: usize, limits: *const KxLimits, out: *mut u64) -> KxStatus {
    guard(|| {
        let c = kxcount::fm::enumerate_transitive(m, n, &limits_or_default(limits)).or_status()?;
        write_out(out, to_u64(c.len())?)
    })
}

/// Cuspidal counts in degrees `0..=max_degree`, written to `buf[0..=max_degree]`.
///
/// # Safety
/// `limits` null or live; `buf` must have `len` writable slots.
#[no_mangle]
pub unsafe extern "C" fn kx_cuspidal_counts(
    m: usize,
    max_degree: usize,
    limits: *const KxLimits,
    buf: *mut u64,
    len: usize,
) -> KxStatus {
    guard(|| {
        if buf.is_null() {
            set_error("buffer is null");
            return Err(KxStatus::NullPointer);
        }
        if len < max_degree + 1 {
            set_error(format!("buffer holds {len} values, {} needed", max_degree + 1));
            return Err(KxStatus::InvalidInput);
        }
        let census = cuspidal_census(m, max_degree, &limits_or_default(limits)).or_status()?;
        for (i, c) in counts_by_degree(&census, max_degree).into_iter().enumerate() {
            // SAFETY: i <= max_degree < len
            unsafe { buf.add(i).write(c) };
        }
        Ok(())
    })
}

/// Index-`n` subgroups of `F_m` by Hall's recurrence.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_hall_count(m: usize, n: usize, out: *mut u64) -> KxStatus {
    guard(|| {
        let c = kxcount::fm::count_subgroups_hall(m, n).or_status()?;
        write_out(out, to_u64(c)?)
    })
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_klein_count(n: u64, out: *mut u64) -> KxStatus {
    guard(|| write_out(out, klein_count(n).or_status()?))
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_bs_count(d: u64, n: u64, out: *mut u64) -> KxStatus {
    guard(|| write_out(out, bs_count(d, n).or_status()?))
}

/// Conjugacy classes of index-`n` subgroups of the group with the given
/// relators (letters `a, b, …`, a trailing `-` inverts, `,` separates).
///
/// # Safety
/// `relators` NUL-terminated; `limits` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_oracle_count(
    relators: *const c_char,
    n: usize,
    limits: *const KxLimits,
    out: *mut u64,
) -> KxStatus {
    guard(|| {
        let p: Presentation = str_arg(relators, "relators")?.parse().or_status()?;
        let c = oracle_count(&p, n, &limits_or_default(limits)).or_status()?;
        write_out(out, to_u64(c)?)
    })
}

/// Runs one numbered self-check (1 to 10).
///
/// # Safety
/// `limits` null or live; `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn kx_selftest(criterion: usize, seed: u64, limits: *const KxLimits, passed: *mut bool) -> KxStatus {
    guard(|| {
        let r = kxcount::selftest::run_criterion(criterion, seed, &limits_or_default(limits));
        write_out(passed, r.passed)
    })
}
