//! C interface to the half-plane colouring library.
//!
//! Instances and colourings live behind opaque handles created and released
//! by this library. Every fallible call returns an [`HpStatus`]; outputs are
//! written through pointer arguments only on [`HpStatus::Ok`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hpcolor::engine::solve;
use hpcolor::io::{coloring_to_json, instance_to_json, parse_instance};
use hpcolor::kernel::Scalar;
use hpcolor::model::{Color, Coloring, HalfPlane, Instance, Side};
use hpcolor::verify::{oracle, verify, Verdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    LengthMismatch = 3,
    IndexOutOfRange = 4,
    SolveFailed = 5,
    TooLarge = 6,
    /// The oracle proved that no good colouring exists.
    NoColoring = 7,
    /// The colouring leaves a deep point monochromatic.
    Violation = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpColor {
    Blue = 0,
    Red = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpSide {
    /// `y <= a x + b`
    Upper = 0,
    /// `y >= a x + b`
    Lower = 1,
}

/// Opaque list of half-planes.
pub struct HpInstance(Instance);

/// Opaque colouring, one colour per half-plane.
pub struct HpColoring(Coloring);

impl From<Color> for HpColor {
    fn from(c: Color) -> Self {
        match c {
            Color::Blue => HpColor::Blue,
            Color::Red => HpColor::Red,
        }
    }
}

impl From<HpColor> for Color {
    fn from(c: HpColor) -> Self {
        match c {
            HpColor::Blue => Color::Blue,
            HpColor::Red => Color::Red,
        }
    }
}

fn guard(f: impl FnOnce() -> HpStatus) -> HpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(HpStatus::Panic)
}

fn ratio(num: i64, den: i64) -> Option<Scalar> {
    (den != 0).then(|| Scalar::new(num.into(), den.into()))
}

fn into_cstring(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn hp_status_message(status: HpStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        HpStatus::Ok => c"ok",
        HpStatus::NullPointer => c"null pointer argument",
        HpStatus::InvalidInput => c"invalid input",
        HpStatus::LengthMismatch => c"coloring length differs from instance length",
        HpStatus::IndexOutOfRange => c"index out of range",
        HpStatus::SolveFailed => c"no valid coloring found",
        HpStatus::TooLarge => c"instance too large for the oracle",
        HpStatus::NoColoring => c"no good coloring exists",
        HpStatus::Violation => c"coloring is not good",
        HpStatus::Panic => c"internal panic",
    };
    msg.as_ptr()
}

/// A new empty instance. Release with [`hp_instance_free`].
#[no_mangle]
pub extern "C" fn hp_instance_new() -> *mut HpInstance {
    Box::into_raw(Box::new(HpInstance(Instance::default())))
}

/// Parses the JSON instance format into `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hp_instance_from_json(json: *const c_char, out: *mut *mut HpInstance) -> HpStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return HpStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else { return HpStatus::InvalidInput };
        match parse_instance(text) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(HpInstance(inst)));
                HpStatus::Ok
            }
            Err(_) => HpStatus::InvalidInput,
        }
    })
}

/// Appends the half-plane with boundary `y = (a_num/a_den) x + b_num/b_den`.
///
/// # Safety
/// `inst` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn hp_instance_push(
    inst: *mut HpInstance,
    a_num: i64,
    a_den: i64,
    b_num: i64,
    b_den: i64,
    side: HpSide,
) -> HpStatus {
    guard(|| {
        let Some(inst) = inst.as_mut() else { return HpStatus::NullPointer };
        let (Some(a), Some(b)) = (ratio(a_num, a_den), ratio(b_num, b_den)) else {
            return HpStatus::InvalidInput;
        };
        let side = match side {
            HpSide::Upper => Side::Upper,
            HpSide::Lower => Side::Lower,
        };
        inst.0.halfplanes.push(HalfPlane::new(a, b, side));
        HpStatus::Ok
    })
}

/// Number of half-planes, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn hp_instance_len(inst: *const HpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.len())
}

/// The instance as JSON. Release with [`hp_string_free`]; null on failure.
///
/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn hp_instance_to_json(inst: *const HpInstance) -> *mut c_char {
    match inst.as_ref() {
        Some(i) => into_cstring(instance_to_json(&i.0)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `inst` must be null or come from this library, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hp_instance_free(inst: *mut HpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Colours `inst` so that every point covered three times sees both colours.
///
/// # Safety
/// `inst` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hp_solve(inst: *const HpInstance, out: *mut *mut HpColoring) -> HpStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else { return HpStatus::NullPointer };
        if out.is_null() {
            return HpStatus::NullPointer;
        }
        match solve(&inst.0) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(HpColoring(c)));
                HpStatus::Ok
            }
            Err(_) => HpStatus::SolveFailed,
        }
    })
}

/// First good colouring for threshold `k` by exhaustive search, at most 20
/// half-planes. [`HpStatus::NoColoring`] when none exists.
///
/// # Safety
/// `inst` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hp_oracle(inst: *const HpInstance, k: usize, out: *mut *mut HpColoring) -> HpStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else { return HpStatus::NullPointer };
        if out.is_null() {
            return HpStatus::NullPointer;
        }
        match oracle(&inst.0, k) {
            Ok(Some(c)) => {
                *out = Box::into_raw(Box::new(HpColoring(c)));
                HpStatus::Ok
            }
            Ok(None) => HpStatus::NoColoring,
            Err(_) => HpStatus::TooLarge,
        }
    })
}

/// [`HpStatus::Ok`] when every point covered at least `k` times sees both
/// colours, [`HpStatus::Violation`] otherwise.
///
/// # Safety
/// Both handles must come from this library.
#[no_mangle]
pub unsafe extern "C" fn hp_verify(inst: *const HpInstance, coloring: *const HpColoring, k: usize) -> HpStatus {
    guard(|| {
        let (Some(inst), Some(c)) = (inst.as_ref(), coloring.as_ref()) else { return HpStatus::NullPointer };
        match verify(&inst.0, &c.0, k) {
            Ok(Verdict::Good) => HpStatus::Ok,
            Ok(Verdict::Violation(_)) => HpStatus::Violation,
            Err(_) => HpStatus::LengthMismatch,
        }
    })
}

/// A colouring built from `len` colours.
///
/// # Safety
/// `colors` must point to `len` valid [`HpColor`] values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn hp_coloring_new(colors: *const HpColor, len: usize, out: *mut *mut HpColoring) -> HpStatus {
    guard(|| {
        if out.is_null() || (colors.is_null() && len > 0) {
            return HpStatus::NullPointer;
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(colors, len) };
        *out = Box::into_raw(Box::new(HpColoring(Coloring::new(slice.iter().map(|&c| c.into()).collect()))));
        HpStatus::Ok
    })
}

/// # Safety
/// `c` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn hp_coloring_len(c: *const HpColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// Colour of half-plane `i`.
///
/// # Safety
/// `c` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hp_coloring_get(c: *const HpColoring, i: usize, out: *mut HpColor) -> HpStatus {
    let Some(c) = c.as_ref() else { return HpStatus::NullPointer };
    if out.is_null() {
        return HpStatus::NullPointer;
    }
    match c.0.colors.get(i) {
        Some(&col) => {
            *out = col.into();
            HpStatus::Ok
        }
        None => HpStatus::IndexOutOfRange,
    }
}

/// The colouring as JSON. Release with [`hp_string_free`]; null on failure.
///
/// # Safety
/// `c` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn hp_coloring_to_json(c: *const HpColoring) -> *mut c_char {
    match c.as_ref() {
        Some(c) => into_cstring(coloring_to_json(&c.0)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `c` must be null or come from this library, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hp_coloring_free(c: *mut HpColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
