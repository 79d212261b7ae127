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

//! Reference constructions: the tetrahedral baseline representation, the
//! duplicated ontic space with a `σ` perturbation, and the constant-one data
//! set that has no linear extension.

use crate::affine::PointValueSet;
use crate::error::Result;
use crate::ontic::{
    AffineEffectRep, AffineStateRep, CatalogEntry, OnticFunction, OnticSpace, StateRep,
    TabulatedStateRep,
};
use crate::pauli::{axis, dot, norm, scale, DensityOp, Vec3};

/// Four unit Bloch vectors forming a regular tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SicFrame {
    pub bloch_vectors: [Vec3; 4],
}

impl SicFrame {
    pub fn tetrahedron() -> Self {
        let s = 1.0 / 3f64.sqrt();
        Self {
            bloch_vectors: [
                [s, s, s],
                [s, -s, -s],
                [-s, s, -s],
                [-s, -s, s],
            ],
        }
    }

    /// `∑ₖ aₖaₖᵀ`, which is `(4/3)·I` for a regular tetrahedron.
    pub fn outer_sum(&self) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for a in &self.bloch_vectors {
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += a[i] * a[j];
                }
            }
        }
        m
    }
}

/// Four unit-weight points with `A(λₖ) = ¾aₖ`, `C ≡ ¼`, `B(λₖ) = aₖ`,
/// `D ≡ 1`, `F ≡ 0`. Reproduces the Born rule exactly; the effect side is
/// nonnegative and the state side reaches −½.
pub fn sic_baseline() -> (AffineStateRep, AffineEffectRep) {
    let frame = SicFrame::tetrahedron();
    let space = OnticSpace::uniform(4).expect("four points");
    let a: Vec<Vec3> = frame.bloch_vectors.iter().map(|v| scale(0.75, v)).collect();
    let srep = AffineStateRep::from_points(space.clone(), &a, vec![0.25; 4]).expect("lengths");
    let erep = AffineEffectRep::from_points(space, &frame.bloch_vectors, vec![1.0; 4], vec![0.0; 4])
        .expect("lengths");
    (srep, erep)
}

fn doubled<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().chain(v.iter()).cloned().collect()
}

/// Two copies of the ontic space, each with half the weight, functions
/// copied to both. Returns `σ = +1` on the first copy and `−1` on the second,
/// which is orthogonal to every effect function of the new representation.
pub fn duplicate_ontic_space(
    srep: &AffineStateRep,
    erep: &AffineEffectRep,
) -> Result<(AffineStateRep, AffineEffectRep, OnticFunction)> {
    let space = srep.space();
    space.ensure_same(&erep.space)?;
    let labels = space
        .labels()
        .iter()
        .map(|l| format!("{l}.1"))
        .chain(space.labels().iter().map(|l| format!("{l}.2")))
        .collect();
    let weights = doubled(&space.weights().iter().map(|w| w / 2.0).collect::<Vec<_>>());
    let dup_space = OnticSpace::new(labels, weights)?;
    let n = space.len();
    let s2 = AffineStateRep::new(
        dup_space.clone(),
        std::array::from_fn(|i| doubled(&srep.a[i])),
        doubled(&srep.c),
    )?;
    let e2 = AffineEffectRep::new(
        dup_space,
        std::array::from_fn(|i| doubled(&erep.b[i])),
        doubled(&erep.d),
        doubled(&erep.f),
    )?;
    let sigma = OnticFunction((0..2 * n).map(|k| if k < n { 1.0 } else { -1.0 }).collect());
    Ok((s2, e2, sigma))
}

/// Tabulates `μ′_ρ = μ_ρ + c(ρ)·σ` on the given catalog.
pub fn perturb_mu<S, F>(
    srep: &S,
    sigma: &OnticFunction,
    rule: F,
    catalog: &[DensityOp],
) -> Result<TabulatedStateRep>
where
    S: StateRep + ?Sized,
    F: Fn(&DensityOp) -> f64,
{
    let space = srep.space().clone();
    space.expect_len("sigma", sigma.len())?;
    let entries = catalog
        .iter()
        .map(|rho| {
            let c = rule(rho);
            let mu = srep.mu(rho)?;
            Ok(CatalogEntry {
                state: *rho,
                mu: OnticFunction(
                    mu.values()
                        .iter()
                        .zip(sigma.values())
                        .map(|(m, s)| m + c * s)
                        .collect(),
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TabulatedStateRep::new(space, entries)
}

/// `c(ρ) = ‖x‖²`, the default non-affine perturbation.
pub fn bloch_norm_squared(rho: &DensityOp) -> f64 {
    let x = rho.bloch();
    dot(&x, &x)
}

/// `x = 0` and `±eᵢ`.
pub fn probe_states() -> Vec<DensityOp> {
    let mut out = vec![DensityOp::maximally_mixed()];
    for i in 0..3 {
        out.push(DensityOp::new(axis(i)).expect("unit"));
        out.push(DensityOp::new(scale(-1.0, &axis(i))).expect("unit"));
    }
    out
}

/// The duplicated tetrahedral representation perturbed by `‖x‖²·σ`,
/// tabulated on the probe states.
#[derive(Debug, Clone)]
pub struct DuplicationFixture {
    pub state_rep: TabulatedStateRep,
    pub effect_rep: AffineEffectRep,
    pub unperturbed: AffineStateRep,
    pub sigma: OnticFunction,
}

pub fn duplication_fixture() -> DuplicationFixture {
    let (srep, erep) = sic_baseline();
    let (dup_s, dup_e, sigma) = duplicate_ontic_space(&srep, &erep).expect("same space");
    let state_rep =
        perturb_mu(&dup_s, &sigma, bloch_norm_squared, &probe_states()).expect("total rep");
    DuplicationFixture {
        state_rep,
        effect_rep: dup_e,
        unperturbed: dup_s,
        sigma,
    }
}

/// `{diag(1,0), diag(0,1), I, ½(I+X), ½(I+Y)}` in `(w, x, y, z)` Pauli
/// coordinates, all mapped to 1. Spans the Hermitian 2×2 operators and
/// omits the zero operator.
pub fn constant_one_example() -> PointValueSet {
    let points = vec![
        vec![0.5, 0.0, 0.0, 0.5],
        vec![0.5, 0.0, 0.0, -0.5],
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.5, 0.5, 0.0, 0.0],
        vec![0.5, 0.0, 0.5, 0.0],
    ];
    PointValueSet::scalar(points, vec![1.0; 5]).expect("well-formed")
}

/// Norm of the largest Bloch vector among the frame, for sanity checks.
pub fn max_bloch_norm(frame: &SicFrame) -> f64 {
    frame.bloch_vectors.iter().map(norm).fold(0.0, f64::max)
}
