//! C ABI for `cyclic_wonderful`.
//!
//! Every function returns a [`CwStatus`]. On failure a message is kept per
//! thread and can be read with [`cw_last_error_message`]. Strings handed out
//! by the library are owned by the caller and released with
//! [`cw_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use cyclic_wonderful::chow::{betti_closed_form, betti_oracle};
use cyclic_wonderful::exact::parse_point;
use cyclic_wonderful::fan::{build_fan, build_fan_stellar, Fan};
use cyclic_wonderful::guard::Guards;
use cyclic_wonderful::io::{fan_to_json, normal_complex_to_json, parse_fan_json};
use cyclic_wonderful::lattice::{ArrangementSpec, BuildingSet};
use cyclic_wonderful::normal::{complex_cells, in_delta, NormalComplex};
use cyclic_wonderful::tropical::{combinatorial_type, TropicalCurve};
use cyclic_wonderful::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Feasibility = 4,
    NotFound = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A complete fan built from the maximal building set.
pub struct CwFan {
    fan: Fan,
}

/// The normal complex of the maximal building set.
pub struct CwNormalComplex {
    complex: NormalComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(CwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Feasibility { .. } => CwStatus::Feasibility,
            Error::Parse(_) => CwStatus::Parse,
            Error::Internal(_) => CwStatus::Internal,
            _ => CwStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: CwStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> CwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CwStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            CwStatus::Internal
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(CwStatus::NullPointer, format!("{name} is null")))
}

unsafe fn in_ref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| fail(CwStatus::NullPointer, format!("{name} is null")))
}

unsafe fn in_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(CwStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CwStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings have no nul bytes").into_raw()
}

fn spec_of(r: u32, n: usize) -> Result<ArrangementSpec, Failure> {
    Ok(ArrangementSpec::new(r, n)?)
}

fn guards() -> Result<Guards, Failure> {
    Ok(Guards::from_env()?)
}

fn point_for(spec: &ArrangementSpec, text: &str) -> Result<Vec<cyclic_wonderful::exact::Rational>, Failure> {
    let p = parse_point(text)?;
    if p.len() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            got: p.len(),
        }
        .into());
    }
    Ok(p)
}

fn copy_out(values: &[u64], buf: *mut u64, capacity: usize, len: *mut usize) -> Result<(), Failure> {
    let len = unsafe { out_ref(len, "len")? };
    *len = values.len();
    if capacity < values.len() {
        return Err(fail(
            CwStatus::BufferTooSmall,
            format!("need {} entries, capacity is {capacity}", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(fail(CwStatus::NullPointer, "buf is null"));
    }
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len()) };
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn cw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the fan of the maximal building set, directly or by stellar
/// subdivision when `via_stellar` is nonzero.
///
/// # Safety
/// `out` must be a valid pointer. The handle is released with [`cw_fan_free`].
#[no_mangle]
pub unsafe extern "C" fn cw_fan_build(r: u32, n: usize, via_stellar: i32, out: *mut *mut CwFan) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let spec = spec_of(r, n)?;
        guards()?.check_fan(&spec)?;
        let g = BuildingSet::maximal(&spec);
        let fan = if via_stellar != 0 {
            build_fan_stellar(&spec, &g)?
        } else {
            build_fan(&spec, &g)?
        };
        *out = Box::into_raw(Box::new(CwFan { fan }));
        Ok(())
    })
}

/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_fan_from_json(json: *const c_char, out: *mut *mut CwFan) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let fan = parse_fan_json(in_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(CwFan { fan }));
        Ok(())
    })
}

/// # Safety
/// `fan` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cw_fan_free(fan: *mut CwFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// # Safety
/// `fan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_fan_ray_count(fan: *const CwFan, out: *mut usize) -> CwStatus {
    guarded(|| {
        let fan = in_ref(fan, "fan")?;
        *out_ref(out, "out")? = fan.fan.rays().len();
        Ok(())
    })
}

/// # Safety
/// `fan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_fan_maximal_cone_count(fan: *const CwFan, out: *mut usize) -> CwStatus {
    guarded(|| {
        let fan = in_ref(fan, "fan")?;
        *out_ref(out, "out")? = fan.fan.maximal_cones().count();
        Ok(())
    })
}

/// JSON encoding of the fan; free the result with [`cw_string_free`].
///
/// # Safety
/// `fan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_fan_to_json(fan: *const CwFan, out: *mut *mut c_char) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let fan = in_ref(fan, "fan")?;
        let text =
            serde_json::to_string(&fan_to_json(&fan.fan)).map_err(|e| fail(CwStatus::Internal, e.to_string()))?;
        *out = out_string(text);
        Ok(())
    })
}

/// Chain of the smallest cone containing `point` (text such as
/// `"(1,-1/2)"`). Returns `CW_STATUS_NOT_FOUND` when the point lies outside
/// the support.
///
/// # Safety
/// `fan` must be a live handle, `point` a nul-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_fan_locate_point(
    fan: *const CwFan,
    point: *const c_char,
    out: *mut *mut c_char,
) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let fan = in_ref(fan, "fan")?;
        let p = point_for(fan.fan.spec(), in_str(point, "point")?)?;
        let chain = fan
            .fan
            .locate_point(&p)
            .ok_or_else(|| fail(CwStatus::NotFound, "point is not in the support of the fan"))?;
        *out = out_string(chain.to_string());
        Ok(())
    })
}

/// Betti numbers b_0..b_{n} from the closed form. `len` receives the number
/// of entries even when the buffer is too small.
///
/// # Safety
/// `buf` must hold `capacity` entries and `len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_betti_closed_form(
    r: u32,
    n: usize,
    buf: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> CwStatus {
    guarded(|| {
        let spec = spec_of(r, n)?;
        let dims = betti_closed_form(&spec)
            .as_u64()
            .ok_or_else(|| fail(CwStatus::InvalidArgument, "a Betti number exceeds 64 bits"))?;
        copy_out(&dims, buf, capacity, len)
    })
}

/// Betti numbers computed by linear algebra on the presentation. Subject to
/// the feasibility guard.
///
/// # Safety
/// `buf` must hold `capacity` entries and `len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_betti_oracle(
    r: u32,
    n: usize,
    buf: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> CwStatus {
    guarded(|| {
        let spec = spec_of(r, n)?;
        let dims = betti_oracle(&spec, &guards()?)?
            .as_u64()
            .ok_or_else(|| fail(CwStatus::Internal, "a Betti number exceeds 64 bits"))?;
        copy_out(&dims, buf, capacity, len)
    })
}

/// Combinatorial type of a tropical curve written `i:spoke:length,...`.
///
/// # Safety
/// `curve` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_locate_curve(r: u32, n: usize, curve: *const c_char, out: *mut *mut c_char) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let spec = spec_of(r, n)?;
        let curve = TropicalCurve::parse(in_str(curve, "curve")?, &spec)?;
        *out = out_string(combinatorial_type(&curve, &spec).to_string());
        Ok(())
    })
}

/// Sets `out` to 1 if the point lies in the normal complex region, else 0.
///
/// # Safety
/// `point` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_in_delta(r: u32, n: usize, point: *const c_char, out: *mut i32) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let spec = spec_of(r, n)?;
        let p = point_for(&spec, in_str(point, "point")?)?;
        *out = i32::from(in_delta(&p, &spec));
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer. The handle is released with
/// [`cw_normal_complex_free`].
#[no_mangle]
pub unsafe extern "C" fn cw_normal_complex_build(r: u32, n: usize, out: *mut *mut CwNormalComplex) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let spec = spec_of(r, n)?;
        let complex = complex_cells(&spec, &guards()?)?;
        *out = Box::into_raw(Box::new(CwNormalComplex { complex }));
        Ok(())
    })
}

/// # Safety
/// `complex` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cw_normal_complex_free(complex: *mut CwNormalComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// # Safety
/// `complex` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_normal_complex_cell_count(complex: *const CwNormalComplex, out: *mut usize) -> CwStatus {
    guarded(|| {
        let complex = in_ref(complex, "complex")?;
        *out_ref(out, "out")? = complex.complex.cells().len();
        Ok(())
    })
}

/// JSON with every cell's H- and V-representation; rationals are `"p/q"`
/// strings. Free the result with [`cw_string_free`].
///
/// # Safety
/// `complex` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_normal_complex_to_json(complex: *const CwNormalComplex, out: *mut *mut c_char) -> CwStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let complex = in_ref(complex, "complex")?;
        let text = serde_json::to_string(&normal_complex_to_json(&complex.complex, None))
            .map_err(|e| fail(CwStatus::Internal, e.to_string()))?;
        *out = out_string(text);
        Ok(())
    })
}
