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

//! Verification toolkit for quasiprobability representations of a qubit.
//!
//! The crate covers exact qubit algebra in the Pauli basis ([`pauli`]),
//! representations over finite weighted ontic spaces ([`ontic`]), affine
//! hulls and translated-linear extension ([`affine`]), restriction from
//! higher-dimensional systems ([`reduction`]), a certifier that convicts
//! nonnegative candidates ([`nogo`]) and the standard fixtures
//! ([`counterexamples`]).

// index loops mirror the component formulas
#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod cli;
pub mod counterexamples;
pub mod error;
pub mod nogo;
pub mod ontic;
pub mod pauli;
pub mod reduction;
pub mod report;

pub use error::{Error, Result};

/// Tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-9;
