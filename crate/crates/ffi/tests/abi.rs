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

use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use quasiprob_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(qpr_last_error_message()) }.to_string_lossy().into_owned()
}

unsafe fn take_json(p: *mut c_char) -> serde_json::Value {
    let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
    qpr_string_free(p);
    v
}

#[test]
fn sic_baseline_round_trip() {
    unsafe {
        let (mut s, mut e) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(qpr_sic_baseline(&mut s, &mut e), QprStatus::Ok);
        let mut n = 0usize;
        assert_eq!(qpr_state_rep_size(s, &mut n), QprStatus::Ok);
        assert_eq!(n, 4);

        let mut mu = [0.0; 4];
        assert_eq!(qpr_mu_eval(s, [0.0; 3].as_ptr(), mu.as_mut_ptr(), 4), QprStatus::Ok);
        assert!(mu.iter().all(|v| (v - 0.25).abs() < 1e-15));
        assert_eq!(qpr_mu_eval(s, [0.0; 3].as_ptr(), mu.as_mut_ptr(), 3), QprStatus::InvalidInput);
        assert!(last_error().contains("dimension mismatch"));

        let (mut min, mut point, mut bloch) = (0.0, 9usize, [0.0; 3]);
        assert_eq!(qpr_negativity(s, &mut min, &mut point, bloch.as_mut_ptr()), QprStatus::Ok);
        assert!((min + 0.5).abs() < 1e-12);
        assert!((bloch.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);

        let mut out = ptr::null_mut();
        assert_eq!(qpr_certify_json(s, e, 1e-9, true, &mut out), QprStatus::Ok);
        let cert = take_json(out);
        assert_eq!(cert["kind"], "StateNegativity");
        assert!(cert["chain"].is_object());

        qpr_state_rep_free(s);
        qpr_effect_rep_free(e);
    }
}

#[test]
fn reps_from_json() {
    let state = CString::new(r#"{"A":[[0,0],[0,0],[0,0]],"C":[0.5,0.5]}"#).unwrap();
    let effect = CString::new(r#"{"B":[[1,-1],[0,0],[0,0]],"D":[1,1],"F":[0,0]}"#).unwrap();
    unsafe {
        let (mut s, mut e) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(qpr_state_rep_from_json(state.as_ptr(), &mut s), QprStatus::Ok);
        assert_eq!(qpr_effect_rep_from_json(effect.as_ptr(), &mut e), QprStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(qpr_certify_json(s, e, 1e-9, false, &mut out), QprStatus::Ok);
        assert_eq!(take_json(out)["kind"], "FrameCondition");
        qpr_state_rep_free(s);
        qpr_effect_rep_free(e);
    }
}

#[test]
fn malformed_input_reports_errors() {
    let bad = CString::new(r#"{"A":[[0],[0],[0]],"C":[-1"#).unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qpr_state_rep_from_json(bad.as_ptr(), &mut s), QprStatus::InvalidInput);
        assert!(s.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(qpr_state_rep_from_json(ptr::null(), &mut s), QprStatus::NullPointer);
        let mut n = 0usize;
        assert_eq!(qpr_state_rep_size(ptr::null(), &mut n), QprStatus::NullPointer);
        let mut out = ptr::null_mut();
        assert_eq!(qpr_random_battery_json(1, 0, -1.0, &mut out), QprStatus::InvalidInput);
        qpr_state_rep_free(ptr::null_mut());
        qpr_string_free(ptr::null_mut());
    }
}

#[test]
fn born_probability_matches_formula() {
    unsafe {
        let mut out = 0.0;
        let st = qpr_born_probability([0.0, 0.0, 1.0].as_ptr(), 0.5, [0.0, 0.0, 0.5].as_ptr(), &mut out);
        assert_eq!(st, QprStatus::Ok);
        assert_eq!(out, 1.0);
        let st = qpr_born_probability([0.0, 0.0, 2.0].as_ptr(), 0.5, [0.0; 3].as_ptr(), &mut out);
        assert_eq!(st, QprStatus::InvalidInput);
        assert!(last_error().contains("density"));
    }
}

#[test]
fn battery_and_extension() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(qpr_random_battery_json(20, 7, 1e-9, &mut out), QprStatus::Ok);
        let report = take_json(out);
        assert_eq!(report["escapes"], 0);
        assert_eq!(report["outcomes"].as_array().unwrap().len(), 20);

        let line = CString::new(r#"{"points":[[0,1],[1,0]],"values":[5,7]}"#).unwrap();
        assert_eq!(qpr_extend_json(line.as_ptr(), 1e-9, &mut out), QprStatus::Ok);
        let map = take_json(out);
        assert!((map["w0"][0].as_f64().unwrap() - 5.0).abs() < 1e-12);

        let bad = CString::new(r#"{"points":[[0],[1],[2]],"values":[0,1,5]}"#).unwrap();
        assert_eq!(qpr_extend_json(bad.as_ptr(), 1e-9, &mut out), QprStatus::Impossible);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/quasiprob.h");
    for sym in [
        "qpr_last_error_message",
        "qpr_sic_baseline",
        "qpr_state_rep_from_json",
        "qpr_effect_rep_from_json",
        "qpr_state_rep_free",
        "qpr_effect_rep_free",
        "qpr_state_rep_size",
        "qpr_born_probability",
        "qpr_mu_eval",
        "qpr_negativity",
        "qpr_certify_json",
        "qpr_random_battery_json",
        "qpr_extend_json",
        "qpr_string_free",
        "typedef struct QprStateRep QprStateRep",
        "QPR_STATUS_IMPOSSIBLE = 4",
    ] {
        assert!(header.contains(sym), "header lacks {sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        "#include \"quasiprob.h\"\nint main(void) { QprStatus s = QPR_STATUS_OK; return (int)s; }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    match Command::new(&cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include]).arg(&src).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler found; skipping"),
    }
}
