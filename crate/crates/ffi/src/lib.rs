//! C interface to `wildmckay`.
//!
//! Every function returns a [`WmStatus`]; on failure a message is available
//! from [`wm_last_error`] on the calling thread. Handles are opaque and must
//! be released with their `_free` function. Strings returned through out
//! parameters are owned by the caller and released with [`wm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wildmckay::groups::{
    conjugacy_classes_bruteforce, conjugacy_count_formula, enumerate_group, validated_h, GroupKind,
    GroupSpec, GroupTable,
};
use wildmckay::pipeline::verify_case;
use wildmckay::toric::{
    euler_characteristic, export_fan, orbit_classify, triangulate, FanFormat, LatticeGamma,
    OrbitClassification, Triangulation,
};
use wildmckay::Error;

pub const WM_KIND_C3: u32 = 0;
pub const WM_KIND_S3: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WmStatus {
    Ok = 0,
    InvalidInput = 1,
    CheckFailed = 2,
    NullPointer = 3,
    Internal = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(e: Error) -> WmStatus {
    set_error(e.to_string());
    if e.is_input_error() {
        WmStatus::InvalidInput
    } else {
        WmStatus::Internal
    }
}

fn guard(f: impl FnOnce() -> WmStatus) -> WmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            WmStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(concat!("`", stringify!($p), "` is null"));
            return WmStatus::NullPointer;
        })+
    };
}

/// Reads `ngens` triples from `gens`. With `ngens == 0` the S₃ kind gets the
/// full diagonal group.
unsafe fn read_spec(kind: u32, r: u64, gens: *const u64, ngens: usize) -> Result<GroupSpec, Error> {
    let kind = match kind {
        WM_KIND_C3 => GroupKind::C3,
        WM_KIND_S3 => GroupKind::S3,
        k => return Err(Error::InvalidSpec(format!("unknown kind {k}"))),
    };
    if ngens == 0 {
        return match kind {
            GroupKind::S3 => Ok(GroupSpec::s3_full(r)),
            GroupKind::C3 => Err(Error::InvalidSpec("kind c3 needs generators".into())),
        };
    }
    if gens.is_null() {
        return Err(Error::InvalidSpec("generator array is null".into()));
    }
    // SAFETY: the caller guarantees `3 * ngens` readable values.
    let flat = unsafe { std::slice::from_raw_parts(gens, 3 * ngens) };
    let hgens = flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    Ok(GroupSpec::new(kind, r, hgens))
}

fn into_c_string(s: String, out: *mut *mut c_char) -> WmStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: `out` was checked non-null by the caller of this helper.
            unsafe { *out = c.into_raw() };
            WmStatus::Ok
        }
        Err(_) => {
            set_error("output contained a nul byte");
            WmStatus::Internal
        }
    }
}

/// A validated group `G = H ⋊ G′` with its element table.
pub struct WmGroup {
    spec: GroupSpec,
    table: GroupTable,
}

/// Triangulated junior simplex with its orbit classification.
pub struct WmFan {
    tri: Triangulation,
    cls: OrbitClassification,
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds and validates a group. `gens` holds `ngens` triples.
///
/// # Safety
/// `gens` must point to `3 * ngens` readable values when `ngens > 0`, and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wm_group_new(
    kind: u32,
    r: u64,
    gens: *const u64,
    ngens: usize,
    out: *mut *mut WmGroup,
) -> WmStatus {
    guard(|| {
        non_null!(out);
        let built = unsafe { read_spec(kind, r, gens, ngens) }.and_then(|spec| {
            spec.check()?;
            let h = validated_h(&spec)?;
            let table = enumerate_group(&spec, &h)?;
            Ok(WmGroup { spec, table })
        });
        match built {
            Ok(g) => {
                unsafe { *out = Box::into_raw(Box::new(g)) };
                WmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `group` must be null or a handle from [`wm_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wm_group_free(group: *mut WmGroup) {
    if !group.is_null() {
        drop(unsafe { Box::from_raw(group) });
    }
}

/// # Safety
/// `group` must be a live handle and `order` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_group_order(group: *const WmGroup, order: *mut u64) -> WmStatus {
    guard(|| {
        non_null!(group, order);
        unsafe { *order = (*group).table.order() as u64 };
        WmStatus::Ok
    })
}

/// # Safety
/// `group` must be a live handle and `hsize` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_group_hsize(group: *const WmGroup, hsize: *mut u64) -> WmStatus {
    guard(|| {
        non_null!(group, hsize);
        unsafe { *hsize = (*group).table.hsize() as u64 };
        WmStatus::Ok
    })
}

/// Class count by exhaustive conjugation and by the closed form.
///
/// # Safety
/// `group` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn wm_group_conjugacy_counts(
    group: *const WmGroup,
    bruteforce: *mut u64,
    formula: *mut u64,
) -> WmStatus {
    guard(|| {
        non_null!(group, bruteforce, formula);
        let g = unsafe { &*group };
        let brute = conjugacy_classes_bruteforce(&g.table).count() as u64;
        match conjugacy_count_formula(&g.spec, g.table.hsize()) {
            Ok(f) => {
                unsafe {
                    *bruteforce = brute;
                    *formula = f;
                }
                WmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Triangulates the junior simplex for a validated group.
///
/// # Safety
/// As for [`wm_group_new`].
#[no_mangle]
pub unsafe extern "C" fn wm_fan_new(
    kind: u32,
    r: u64,
    gens: *const u64,
    ngens: usize,
    out: *mut *mut WmFan,
) -> WmStatus {
    guard(|| {
        non_null!(out);
        let built = unsafe { read_spec(kind, r, gens, ngens) }.and_then(|spec| {
            spec.check()?;
            let h = validated_h(&spec)?;
            let tri = triangulate(spec.kind, &LatticeGamma::from_h(&h))?;
            let cls = orbit_classify(&tri)?;
            Ok(WmFan { tri, cls })
        });
        match built {
            Ok(f) => {
                unsafe { *out = Box::into_raw(Box::new(f)) };
                WmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `fan` must be null or a handle from [`wm_fan_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wm_fan_free(fan: *mut WmFan) {
    if !fan.is_null() {
        drop(unsafe { Box::from_raw(fan) });
    }
}

/// # Safety
/// `fan` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_fan_triangle_count(fan: *const WmFan, count: *mut u64) -> WmStatus {
    guard(|| {
        non_null!(fan, count);
        unsafe { *count = (*fan).tri.len() as u64 };
        WmStatus::Ok
    })
}

/// Euler characteristic of the crepant resolution.
///
/// # Safety
/// `fan` must be a live handle and `chi` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_fan_euler_characteristic(fan: *const WmFan, chi: *mut i64) -> WmStatus {
    guard(|| {
        non_null!(fan, chi);
        unsafe { *chi = euler_characteristic(&(*fan).cls) };
        WmStatus::Ok
    })
}

/// Fan as JSON; free the result with [`wm_string_free`].
///
/// # Safety
/// `fan` must be a live handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_fan_json(fan: *const WmFan, json: *mut *mut c_char) -> WmStatus {
    guard(|| {
        non_null!(fan, json);
        let f = unsafe { &*fan };
        match export_fan(&f.tri, &f.cls, FanFormat::Json) {
            Ok(s) => into_c_string(s, json),
            Err(e) => fail(e),
        }
    })
}

/// Runs the full verification of one group and returns the JSON report.
/// A report whose checks fail yields [`WmStatus::CheckFailed`] and still
/// sets `json`.
///
/// # Safety
/// As for [`wm_group_new`]; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wm_verify_json(
    kind: u32,
    r: u64,
    gens: *const u64,
    ngens: usize,
    samples: usize,
    json: *mut *mut c_char,
) -> WmStatus {
    guard(|| {
        non_null!(json);
        let rep = unsafe { read_spec(kind, r, gens, ngens) }.and_then(|s| verify_case(&s, samples));
        match rep {
            Ok(rep) => {
                let st = into_c_string(rep.to_json(), json);
                if st == WmStatus::Ok && !rep.passed {
                    set_error(format!("failed checks: {}", rep.failed_checks().join(", ")));
                    return WmStatus::CheckFailed;
                }
                st
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Copies the last error message, for callers in Rust.
pub fn last_error_message() -> Option<String> {
    let p = wm_last_error();
    // SAFETY: non-null pointers come from the thread-local CString.
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}
