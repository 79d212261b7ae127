// Copyright 2026 The quasiprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! C ABI for the quasiprob toolkit.
//!
//! Representations are passed as opaque handles created by the
//! `qpr_*_from_json` or `qpr_sic_baseline` constructors and released with
//! the matching `*_free`. Every function returns a [`QprStatus`]; on failure
//! the message is available from [`qpr_last_error_message`] on the same
//! thread. Strings returned through `out_json` parameters are owned by the
//! caller and must be released with [`qpr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quasiprob::affine::{translated_linear_extend, PointValueSet};
use quasiprob::counterexamples::sic_baseline;
use quasiprob::nogo;
use quasiprob::ontic::{negativity, AffineEffectRep, AffineStateRep, StateRep};
use quasiprob::pauli::{born_probability, DensityOp, PovmElement};
use quasiprob::Error;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QprStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Impossible = 4,
    Panic = 5,
}

/// Opaque affine state representation.
pub struct QprStateRep(AffineStateRep);

/// Opaque affine effect representation.
pub struct QprEffectRep(AffineEffectRep);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("NULs removed"));
}

struct Fail(QprStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ExtensionImpossible { .. } => QprStatus::Impossible,
            _ => QprStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QprStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QprStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QprStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QprStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(QprStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_vec3(p: *const f64, what: &str) -> Result<[f64; 3], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok([*p, *p.add(1), *p.add(2)])
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Fail> {
    let text = serde_json::to_string(value).map_err(Error::from)?;
    let c = CString::new(text).map_err(|e| Fail(QprStatus::InvalidInput, e.to_string()))?;
    write(out, c.into_raw(), "out_json")
}

fn json_error(e: serde_json::Error) -> Fail {
    Error::from(e).into()
}

/// Message of the last failure on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn qpr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates the tetrahedral baseline representation.
///
/// # Safety
/// Both output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qpr_sic_baseline(
    out_state: *mut *mut QprStateRep,
    out_effect: *mut *mut QprEffectRep,
) -> QprStatus {
    guard(|| {
        if out_state.is_null() || out_effect.is_null() {
            return Err(null("output pointer"));
        }
        let (s, e) = sic_baseline();
        write(out_state, Box::into_raw(Box::new(QprStateRep(s))), "out_state")?;
        write(out_effect, Box::into_raw(Box::new(QprEffectRep(e))), "out_effect")
    })
}

/// Parses `{"space"?, "A", "C"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qpr_state_rep_from_json(
    json: *const c_char,
    out: *mut *mut QprStateRep,
) -> QprStatus {
    guard(|| {
        let rep: AffineStateRep = serde_json::from_str(read_str(json, "json")?).map_err(json_error)?;
        write(out, Box::into_raw(Box::new(QprStateRep(rep))), "out")
    })
}

/// Parses `{"space"?, "B", "D", "F"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qpr_effect_rep_from_json(
    json: *const c_char,
    out: *mut *mut QprEffectRep,
) -> QprStatus {
    guard(|| {
        let rep: AffineEffectRep = serde_json::from_str(read_str(json, "json")?).map_err(json_error)?;
        write(out, Box::into_raw(Box::new(QprEffectRep(rep))), "out")
    })
}

/// # Safety
/// `rep` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn qpr_state_rep_free(rep: *mut QprStateRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn qpr_effect_rep_free(rep: *mut QprEffectRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Number of ontic points.
///
/// # Safety
/// `rep` must be a live handle; `out_len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qpr_state_rep_size(rep: *const QprStateRep, out_len: *mut usize) -> QprStatus {
    guard(|| {
        let rep = rep.as_ref().ok_or_else(|| null("rep"))?;
        write(out_len, rep.0.space().len(), "out_len")
    })
}

/// `Tr(ρE) = m + x·p` for Bloch vector `bloch` and effect `(m, p)`.
///
/// # Safety
/// `bloch` and `p` must point to 3 doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qpr_born_probability(
    bloch: *const f64,
    m: f64,
    p: *const f64,
    out: *mut f64,
) -> QprStatus {
    guard(|| {
        let rho = DensityOp::new(read_vec3(bloch, "bloch")?)?;
        let e = PovmElement::new(m, read_vec3(p, "p")?)?;
        write(out, born_probability(&rho, &e), "out")
    })
}

/// Writes `μ_ρ` for Bloch vector `bloch` into `out_values[0..len]`; `len`
/// must equal the number of ontic points.
///
/// # Safety
/// `rep` must be a live handle, `bloch` must point to 3 doubles and
/// `out_values` to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qpr_mu_eval(
    rep: *const QprStateRep,
    bloch: *const f64,
    out_values: *mut f64,
    len: usize,
) -> QprStatus {
    guard(|| {
        let rep = rep.as_ref().ok_or_else(|| null("rep"))?;
        let rho = DensityOp::new(read_vec3(bloch, "bloch")?)?;
        let mu = rep.0.mu(&rho)?;
        if len != mu.len() {
            return Err(Error::DimensionMismatch { expected: mu.len(), found: len }.into());
        }
        if out_values.is_null() {
            return Err(null("out_values"));
        }
        ptr::copy_nonoverlapping(mu.values().as_ptr(), out_values, len);
        Ok(())
    })
}

/// Minimum of `μ_ρ(λ)` over all states and points, the point attaining it
/// and (if `out_bloch` is non-null) the minimizing Bloch vector.
///
/// # Safety
/// `rep` must be a live handle; `out_min` and `out_point` valid for writes;
/// `out_bloch` null or valid for 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn qpr_negativity(
    rep: *const QprStateRep,
    out_min: *mut f64,
    out_point: *mut usize,
    out_bloch: *mut f64,
) -> QprStatus {
    guard(|| {
        let rep = rep.as_ref().ok_or_else(|| null("rep"))?;
        let n = negativity(&rep.0);
        write(out_min, n.min_value, "out_min")?;
        write(out_point, n.point, "out_point")?;
        if !out_bloch.is_null() {
            ptr::copy_nonoverlapping(n.state.bloch().as_ptr(), out_bloch, 3);
        }
        Ok(())
    })
}

/// Certifies a candidate and returns the certificate as JSON.
///
/// # Safety
/// Handles must be live; `out_json` valid for writes. Release the string
/// with [`qpr_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qpr_certify_json(
    state: *const QprStateRep,
    effect: *const QprEffectRep,
    tol: f64,
    with_chain: bool,
    out_json: *mut *mut c_char,
) -> QprStatus {
    guard(|| {
        let s = state.as_ref().ok_or_else(|| null("state"))?;
        let e = effect.as_ref().ok_or_else(|| null("effect"))?;
        check_tol(tol)?;
        let cert = if with_chain {
            nogo::certify_with_chain(&s.0, &e.0, tol)?
        } else {
            nogo::certify(&s.0, &e.0, tol)?
        };
        write_json(out_json, &serde_json::to_value(&cert).map_err(Error::from)?)
    })
}

/// Certifies `trials` seeded random nonnegative candidates and returns the
/// battery report as JSON.
///
/// # Safety
/// `out_json` must be valid for writes. Release the string with
/// [`qpr_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qpr_random_battery_json(
    trials: usize,
    seed: u64,
    tol: f64,
    out_json: *mut *mut c_char,
) -> QprStatus {
    guard(|| {
        check_tol(tol)?;
        let report = nogo::run_battery(trials, seed, tol)?;
        write_json(out_json, &serde_json::to_value(&report).map_err(Error::from)?)
    })
}

/// Translated-linear extension of `{"points", "values"}` data. Returns
/// [`QprStatus::Impossible`] when the data are not convex-linear.
///
/// # Safety
/// `pvs_json` must be a NUL-terminated string; `out_json` valid for writes.
/// Release the string with [`qpr_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qpr_extend_json(
    pvs_json: *const c_char,
    tol: f64,
    out_json: *mut *mut c_char,
) -> QprStatus {
    guard(|| {
        check_tol(tol)?;
        let pvs: PointValueSet = serde_json::from_str(read_str(pvs_json, "pvs_json")?).map_err(json_error)?;
        let map = translated_linear_extend(&pvs, tol)?;
        write_json(out_json, &serde_json::to_value(&map).map_err(Error::from)?)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn qpr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn check_tol(tol: f64) -> Result<(), Fail> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Fail(QprStatus::InvalidInput, format!("tolerance {tol} must be positive and finite")))
    }
}
