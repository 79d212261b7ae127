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

use serde::Serialize;
use serde_json::Value;

/// Outcome of a pass/fail check: `{"pass", "worst_defect", "witness"}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub worst_defect: f64,
    pub witness: Value,
}

impl CheckReport {
    pub fn new(worst_defect: f64, tol: f64, witness: Value) -> Self {
        Self {
            pass: worst_defect <= tol,
            worst_defect,
            witness,
        }
    }

    pub fn vacuous() -> Self {
        Self {
            pass: true,
            worst_defect: 0.0,
            witness: Value::Null,
        }
    }
}

/// Tracks the largest defect seen and the witness that produced it.
#[derive(Debug, Default)]
pub(crate) struct Worst {
    pub defect: f64,
    pub witness: Option<Value>,
}

impl Worst {
    pub fn offer(&mut self, defect: f64, witness: impl FnOnce() -> Value) {
        if self.witness.is_none() || defect > self.defect || defect.is_nan() {
            self.defect = defect;
            self.witness = Some(witness());
        }
    }

    pub fn into_report(self, tol: f64) -> CheckReport {
        match self.witness {
            Some(w) => CheckReport::new(self.defect, tol, w),
            None => CheckReport::vacuous(),
        }
    }
}
