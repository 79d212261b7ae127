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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid POVM element: {0}")]
    InvalidEffect(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("invalid ontic space: {0}")]
    InvalidSpace(String),

    #[error("ontic space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("state with Bloch vector {0:?} is not in the catalog")]
    UncatalogedState([f64; 3]),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),

    #[error("frame is not informationally complete (rank {rank}, need {required})")]
    RankDeficientFrame { rank: usize, required: usize },

    #[error("invalid point/value set: {0}")]
    InvalidPointSet(String),

    #[error("no translated-linear extension exists (residual {residual:.3e})")]
    ExtensionImpossible { residual: f64, witness: Vec<f64> },

    #[error("representation query failed: {0}")]
    Query(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
