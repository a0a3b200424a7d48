//! C ABI over `simplex_orbits`.
//!
//! Objects are opaque handles created by `so_*_new`/`so_*_run` functions and
//! released with the matching `so_*_free`. Every fallible function returns an
//! [`SoStatus`]; on failure a message is available from
//! [`so_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`so_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use simplex_orbits::cli::{orbit_document, Decimal, OutputFormat};
use simplex_orbits::dynamics::{run_orbit, run_orbit_with, Orbit, OrbitOptions, OrbitState, TrapezoidState};
use simplex_orbits::limits::{self, LimitPrediction, LimitRegime};
use simplex_orbits::numerics::{PrecisionPolicy, Real};
use simplex_orbits::simplex::{self, EdgeParams, TriangleParams};
use simplex_orbits::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullArgument = 1,
    InvalidInput = 2,
    PlanarInput = 3,
    NonPlanarInput = 4,
    NonConvexLabeling = 5,
    /// The iteration is undefined at this configuration.
    Degenerate = 6,
    InsufficientData = 7,
    ConsistencyFault = 8,
    RejectionExhausted = 9,
    IndexOutOfRange = 10,
    Panic = 11,
}

impl From<&Error> for SoStatus {
    fn from(e: &Error) -> Self {
        match e.root() {
            Error::PlanarInput => SoStatus::PlanarInput,
            Error::NonPlanarInput => SoStatus::NonPlanarInput,
            Error::NonConvexLabeling => SoStatus::NonConvexLabeling,
            Error::DegenerateRay | Error::NonPositiveG { .. } | Error::VanishingPower | Error::Domain(_) => {
                SoStatus::Degenerate
            }
            Error::InsufficientData(_) | Error::UnderflowTail => SoStatus::InsufficientData,
            Error::ConsistencyFault(_) => SoStatus::ConsistencyFault,
            Error::RejectionExhausted { .. } => SoStatus::RejectionExhausted,
            _ => SoStatus::InvalidInput,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

struct Failure(SoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SoStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> SoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SoStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SoStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SoStatus::NullArgument, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SoStatus::NullArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Working precision and tolerances.
pub struct SoContext {
    policy: PrecisionPolicy,
}

/// Squared edge lengths of a tetrahedron or cyclic quadrilateral.
pub struct SoParams {
    params: EdgeParams,
}

/// A computed orbit.
pub struct SoOrbit {
    orbit: Orbit,
    regime: &'static str,
}

/// Closed-form limit of an edge-parameter orbit.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SoLimit {
    /// 0 for tetrahedra, 1 for quadrilaterals.
    pub regime: i32,
    pub d12_inf: f64,
    pub d13_inf: f64,
    pub d14_inf: f64,
    pub l_factor: f64,
    pub rate_r: f64,
}

impl From<&LimitPrediction> for SoLimit {
    fn from(l: &LimitPrediction) -> Self {
        SoLimit {
            regime: match l.regime {
                LimitRegime::Tetra => 0,
                LimitRegime::Quad => 1,
            },
            d12_inf: l.d12_inf.to_f64(),
            d13_inf: l.d13_inf.to_f64(),
            d14_inf: l.d14_inf.to_f64(),
            l_factor: l.l_factor.to_f64(),
            rate_r: l.rate_r.to_f64(),
        }
    }
}

/// Fitted convergence order of `|OG_n|`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SoOrderEstimate {
    pub order: f64,
    pub constant: f64,
    /// Meaningful only when `has_lambda` is nonzero.
    pub lambda: f64,
    pub has_lambda: i32,
    pub residual: f64,
    pub points: usize,
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn so_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Free with
/// `so_string_free`.
#[no_mangle]
pub extern "C" fn so_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| slot.borrow().clone().map_or(ptr::null_mut(), into_c_string))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn so_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn so_context_new(significand_bits: u32, out: *mut *mut SoContext) -> SoStatus {
    guard(|| {
        let policy = PrecisionPolicy::new(significand_bits)?;
        write_out(out, Box::into_raw(Box::new(SoContext { policy })), "out")
    })
}

/// # Safety
/// `ctx` must be null or a handle from `so_context_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn so_context_free(ctx: *mut SoContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Validated edge parameters `(d12, d13, d14, d23, d24, d34)` from six decimal
/// strings.
///
/// # Safety
/// `values` must point to six valid C strings; `ctx` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_params_from_strings(
    ctx: *const SoContext,
    values: *const *const c_char,
    out: *mut *mut SoParams,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        if values.is_null() {
            return Err(null("values"));
        }
        let mut parsed = Vec::with_capacity(6);
        for i in 0..6 {
            parsed.push(ctx.policy.parse(text(*values.add(i), "value")?)?);
        }
        let d: [Real; 6] = parsed.try_into().expect("six values");
        let params = EdgeParams::new(d, &ctx.policy)?;
        write_out(out, Box::into_raw(Box::new(SoParams { params })), "out")
    })
}

/// Validated edge parameters from six doubles (converted exactly).
///
/// # Safety
/// `values` must point to six doubles; `ctx` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_params_from_doubles(
    ctx: *const SoContext,
    values: *const f64,
    out: *mut *mut SoParams,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        if values.is_null() {
            return Err(null("values"));
        }
        let raw = std::slice::from_raw_parts(values, 6);
        if raw.iter().any(|x| !x.is_finite()) {
            return Err(Failure(SoStatus::InvalidInput, "non-finite edge parameter".into()));
        }
        let d: [Real; 6] = std::array::from_fn(|i| ctx.policy.from_f64(raw[i]));
        let params = EdgeParams::new(d, &ctx.policy)?;
        write_out(out, Box::into_raw(Box::new(SoParams { params })), "out")
    })
}

/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn so_params_free(params: *mut SoParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Entry `index` (0..6, storage order `d12, d13, d14, d23, d24, d34`).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_params_get(params: *const SoParams, index: usize, out: *mut f64) -> SoStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let v = p
            .params
            .values()
            .get(index)
            .ok_or_else(|| Failure(SoStatus::IndexOutOfRange, format!("index {index} out of range")))?;
        write_out(out, v.to_f64(), "out")
    })
}

/// `|OG|²`, the Cayley-Menger determinant and the Ptolemy quantity.
///
/// # Safety
/// Pointers must be valid; any of the outputs may be null to skip it.
#[no_mangle]
pub unsafe extern "C" fn so_params_quantities(
    params: *const SoParams,
    og_squared: *mut f64,
    gamma: *mut f64,
    ptolemy: *mut f64,
) -> SoStatus {
    guard(|| {
        let p = &deref(params, "params")?.params;
        if !og_squared.is_null() {
            og_squared.write(simplex::og_squared(p).to_f64());
        }
        if !gamma.is_null() {
            gamma.write(simplex::gamma(p).to_f64());
        }
        if !ptolemy.is_null() {
            ptolemy.write(simplex::ptolemy(p).to_f64());
        }
        Ok(())
    })
}

/// Limit of a non-planar tetrahedron.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_tetra_limit(ctx: *const SoContext, params: *const SoParams, out: *mut SoLimit) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let lim = limits::tetra_limit(&deref(params, "params")?.params, &ctx.policy)?;
        write_out(out, SoLimit::from(&lim), "out")
    })
}

/// Limit rectangle of a convex cyclic quadrilateral.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_quad_limit(ctx: *const SoContext, params: *const SoParams, out: *mut SoLimit) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let lim = limits::quad_limit(&deref(params, "params")?.params, &ctx.policy)?;
        write_out(out, SoLimit::from(&lim), "out")
    })
}

/// Writes 1 when the limit is regular (tetrahedron) or a square
/// (quadrilateral), else 0.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_is_isodynamic(ctx: *const SoContext, params: *const SoParams, out: *mut i32) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let yes = limits::is_isodynamic(&deref(params, "params")?.params, &ctx.policy);
        write_out(out, i32::from(yes), "out")
    })
}

unsafe fn finish_orbit(
    ctx: &SoContext,
    state: OrbitState,
    regime: &'static str,
    steps: usize,
    stop_when_converged: i32,
    out: *mut *mut SoOrbit,
) -> FfiResult<()> {
    let orbit = if stop_when_converged != 0 {
        run_orbit(state, steps, &ctx.policy)?
    } else {
        run_orbit_with(state, steps, &ctx.policy, OrbitOptions { stop_when_converged: false })?
    };
    write_out(out, Box::into_raw(Box::new(SoOrbit { orbit, regime })), "out")
}

/// Orbit of the edge-parameter map.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_run_params(
    ctx: *const SoContext,
    params: *const SoParams,
    steps: usize,
    stop_when_converged: i32,
    out: *mut *mut SoOrbit,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let p = deref(params, "params")?.params.clone();
        let regime = if simplex::gamma(&p) > *ctx.policy.tolerance() { "tetra" } else { "quad" };
        finish_orbit(ctx, OrbitState::Params(p), regime, steps, stop_when_converged, out)
    })
}

/// Orbit of the triangle map from decimal strings `s`, `t` (`u = 4t - s²`).
///
/// # Safety
/// Pointers must be valid C strings / handles.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_run_triangle(
    ctx: *const SoContext,
    s: *const c_char,
    t: *const c_char,
    steps: usize,
    stop_when_converged: i32,
    out: *mut *mut SoOrbit,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let s = ctx.policy.parse(text(s, "s")?)?;
        let t = ctx.policy.parse(text(t, "t")?)?;
        let tp = TriangleParams::from_st(s, t, &ctx.policy)?;
        finish_orbit(ctx, OrbitState::Triangle(tp), "triangle", steps, stop_when_converged, out)
    })
}

/// Orbit of the isosceles-trapezoid abscissa map from decimal strings.
///
/// # Safety
/// Pointers must be valid C strings / handles.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_run_trapezoid(
    ctx: *const SoContext,
    a: *const c_char,
    b: *const c_char,
    steps: usize,
    stop_when_converged: i32,
    out: *mut *mut SoOrbit,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let a = ctx.policy.parse(text(a, "a")?)?;
        let b = ctx.policy.parse(text(b, "b")?)?;
        let st = TrapezoidState::new(a, b, &ctx.policy)?;
        finish_orbit(ctx, OrbitState::Trapezoid(st), "trapezoid", steps, stop_when_converged, out)
    })
}

/// # Safety
/// `orbit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_free(orbit: *mut SoOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Number of records (the initial state included).
///
/// # Safety
/// `orbit` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn so_orbit_len(orbit: *const SoOrbit) -> usize {
    orbit.as_ref().map_or(0, |o| o.orbit.records.len())
}

/// `og2` and `p` of record `index`; either output may be null.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_record(orbit: *const SoOrbit, index: usize, og2: *mut f64, p: *mut f64) -> SoStatus {
    guard(|| {
        let o = deref(orbit, "orbit")?;
        let r = o
            .orbit
            .records
            .get(index)
            .ok_or_else(|| Failure(SoStatus::IndexOutOfRange, format!("record {index} out of range")))?;
        if !og2.is_null() {
            og2.write(r.og2.to_f64());
        }
        if !p.is_null() {
            p.write(r.p.to_f64());
        }
        Ok(())
    })
}

/// Full orbit as a JSON (`json != 0`) or CSV document with decimal strings.
/// Free with `so_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_document(
    ctx: *const SoContext,
    orbit: *const SoOrbit,
    json: i32,
    out: *mut *mut c_char,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let o = deref(orbit, "orbit")?;
        let format = if json != 0 { OutputFormat::Json } else { OutputFormat::Csv };
        let dec = Decimal { digits: ctx.policy.output_digits() };
        let doc = orbit_document(o.regime, ctx.policy.bits(), &o.orbit, format, dec);
        write_out(out, into_c_string(doc), "out")
    })
}

/// Fits `|OG_{n+1}| ≈ C |OG_n|^q` on the orbit tail.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn so_orbit_estimate_order(
    ctx: *const SoContext,
    orbit: *const SoOrbit,
    out: *mut SoOrderEstimate,
) -> SoStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let o = deref(orbit, "orbit")?;
        let est = limits::estimate_order(&o.orbit.og_distances(&ctx.policy), &ctx.policy)?;
        let value = SoOrderEstimate {
            order: est.order.to_f64(),
            constant: est.constant.to_f64(),
            lambda: est.lambda.as_ref().map_or(0.0, Real::to_f64),
            has_lambda: i32::from(est.lambda.is_some()),
            residual: est.residual.to_f64(),
            points: est.points,
        };
        write_out(out, value, "out")
    })
}
