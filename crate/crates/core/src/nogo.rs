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

//! Certification of candidate qubit representations.
//!
//! A candidate is probed on a fixed set of states and effects, its
//! coefficient functions `A, C, B, D, F` are extracted, and the necessary
//! conditions are checked in a fixed order. The first failing condition is
//! returned as a certificate whose defect can be recomputed from the raw
//! representation alone.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counterexamples::SicFrame;
use crate::error::Result;
use crate::ontic::{
    effect_relation_defect, state_relation_defect, AffineEffectRep, AffineStateRep,
    ConvexRelation, EffectRep, OnticFunction, OnticSpace, StateRep, Term,
};
use crate::pauli::{axis, norm, random_ball, scale, DensityOp, PovmElement, Vec3, ZERO3};

/// Value of `Tr(δ)` that the biorthogonality condition demands of the overlap.
pub const REQUIRED_OVERLAP: f64 = 3.0;

/// Coefficient functions of the affine ansatz `μ = x·A + C`,
/// `ξ = p·B + m·D + F`, read off from probe queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientExtract {
    pub space: OnticSpace,
    #[serde(rename = "A")]
    pub a: [Vec<f64>; 3],
    #[serde(rename = "C")]
    pub c: Vec<f64>,
    #[serde(rename = "B")]
    pub b: [Vec<f64>; 3],
    #[serde(rename = "D")]
    pub d: Vec<f64>,
    #[serde(rename = "F")]
    pub f: Vec<f64>,
    pub fit_residual: f64,
    /// Relation responsible for `fit_residual`, if any was tested.
    #[serde(skip)]
    worst_relation: Option<Witness>,
}

impl CoefficientExtract {
    pub fn a_at(&self, l: usize) -> Vec3 {
        [self.a[0][l], self.a[1][l], self.a[2][l]]
    }

    pub fn b_at(&self, l: usize) -> Vec3 {
        [self.b[0][l], self.b[1][l], self.b[2][l]]
    }

    pub fn state_rep(&self) -> AffineStateRep {
        AffineStateRep {
            space: self.space.clone(),
            a: self.a.clone(),
            c: self.c.clone(),
        }
    }

    pub fn effect_rep(&self) -> AffineEffectRep {
        AffineEffectRep {
            space: self.space.clone(),
            b: self.b.clone(),
            d: self.d.clone(),
            f: self.f.clone(),
        }
    }

    /// Relation with the largest defect found while fitting.
    pub fn worst_relation(&self) -> Option<&Witness> {
        self.worst_relation.as_ref()
    }
}

fn density(x: Vec3) -> DensityOp {
    DensityOp::with_tolerance(x, 1e-12).expect("probe state in the Bloch ball")
}

fn effect(m: f64, p: Vec3) -> PovmElement {
    PovmElement::with_tolerance(m, p, 1e-12).expect("probe effect in the cone")
}

/// The probe states `0, ±eᵢ`.
pub fn probe_states() -> Vec<DensityOp> {
    let mut out = vec![density(ZERO3)];
    for i in 0..3 {
        out.push(density(axis(i)));
        out.push(density(scale(-1.0, &axis(i))));
    }
    out
}

/// The probe effects `E(0, 0)`, `E(1, 0)`, `E(½, ±½eᵢ)`.
pub fn probe_effects() -> Vec<PovmElement> {
    let mut out = vec![PovmElement::zero(), PovmElement::identity()];
    for i in 0..3 {
        out.push(effect(0.5, scale(0.5, &axis(i))));
        out.push(effect(0.5, scale(-0.5, &axis(i))));
    }
    out
}

/// Extra states checked against the ansatz when a representation has no
/// catalog of its own.
fn consistency_states() -> Vec<DensityOp> {
    let sic = SicFrame::tetrahedron().bloch_vectors;
    let mut out = Vec::new();
    for a in sic {
        out.push(density(a));
        out.push(density(scale(-1.0, &a)));
        out.push(density(scale(0.5, &a)));
    }
    out
}

fn consistency_effects() -> Vec<PovmElement> {
    let sic = SicFrame::tetrahedron().bloch_vectors;
    let mut out = Vec::new();
    for a in sic {
        out.push(effect(0.5, scale(0.5, &a)));
        out.push(effect(0.5, scale(-0.5, &a)));
        out.push(effect(0.75, scale(0.25, &a)));
        out.push(effect(0.25, scale(0.125, &a)));
    }
    out
}

/// `½·ρ(eᵢ) + ½·ρ(−eᵢ) = ρ(0)`.
fn symmetric_state_relations() -> Vec<ConvexRelation<DensityOp>> {
    (0..3)
        .map(|i| ConvexRelation {
            left: vec![Term::new(1.0, density(ZERO3))],
            right: vec![
                Term::new(0.5, density(axis(i))),
                Term::new(0.5, density(scale(-1.0, &axis(i)))),
            ],
        })
        .collect()
}

/// `½E(½, ½eᵢ) + ½E(½, −½eᵢ) = ½E(1, 0) + ½E(0, 0)`.
fn symmetric_effect_relations() -> Vec<ConvexRelation<PovmElement>> {
    (0..3)
        .map(|i| ConvexRelation {
            left: vec![
                Term::new(0.5, effect(0.5, scale(0.5, &axis(i)))),
                Term::new(0.5, effect(0.5, scale(-0.5, &axis(i)))),
            ],
            right: vec![
                Term::new(0.5, PovmElement::identity()),
                Term::new(0.5, PovmElement::zero()),
            ],
        })
        .collect()
}

fn push_term<T>(side: &mut Vec<Term<T>>, weight: f64, operand: T) {
    if weight > 0.0 {
        side.push(Term::new(weight, operand));
    }
}

/// Mixture relation expressing `ρ(x)` through the probes:
/// `t·ρ(x) + (1−t)·ρ(0) = ∑ t|xᵢ|·ρ(sgn(xᵢ)eᵢ) + (1 − t∑|xᵢ|)·ρ(0)`.
pub fn state_probe_relation(x: Vec3) -> ConvexRelation<DensityOp> {
    let s: f64 = x.iter().map(|v| v.abs()).sum();
    let t = 1.0 / s.max(1.0);
    let mut left = Vec::new();
    push_term(&mut left, t, density(x));
    push_term(&mut left, 1.0 - t, density(ZERO3));
    let mut right = Vec::new();
    for (i, xi) in x.iter().enumerate() {
        push_term(&mut right, t * xi.abs(), density(scale(xi.signum(), &axis(i))));
    }
    push_term(&mut right, 1.0 - t * s, density(ZERO3));
    ConvexRelation { left, right }
}

/// Mixture relation expressing `E(m, p)` through the probes. With
/// `s = ∑|pᵢ|` and `v = t(m − s)`, the operator `t·E(m, p) + max(0, −v)·I`
/// equals `∑ 2t|pᵢ|·E(½, ±½eᵢ) + max(0, v)·I`, both sides padded with `0`.
pub fn effect_probe_relation(e: &PovmElement) -> ConvexRelation<PovmElement> {
    let (m, p) = (e.m(), e.p());
    let s: f64 = p.iter().map(|v| v.abs()).sum();
    let t = 1.0 / (1.0 + m + 3.0 * s);
    let v = t * (m - s);
    let mut left = Vec::new();
    push_term(&mut left, t, *e);
    push_term(&mut left, (-v).max(0.0), PovmElement::identity());
    let used: f64 = left.iter().map(|t| t.weight).sum();
    push_term(&mut left, 1.0 - used, PovmElement::zero());
    let mut right = Vec::new();
    for (i, pi) in p.iter().enumerate() {
        push_term(
            &mut right,
            2.0 * t * pi.abs(),
            effect(0.5, scale(0.5 * pi.signum(), &axis(i))),
        );
    }
    push_term(&mut right, v.max(0.0), PovmElement::identity());
    let used: f64 = right.iter().map(|t| t.weight).sum();
    push_term(&mut right, 1.0 - used, PovmElement::zero());
    ConvexRelation { left, right }
}

fn sub(a: &OnticFunction, b: &OnticFunction) -> Vec<f64> {
    a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()
}

/// Reads `A, C, B, D, F` off the probes and measures how far the candidate
/// is from the affine ansatz.
pub fn extract_coefficients<S, E>(srep: &S, erep: &E) -> Result<CoefficientExtract>
where
    S: StateRep + ?Sized,
    E: EffectRep + ?Sized,
{
    let space = srep.space().clone();
    space.ensure_same(erep.space())?;
    let c = srep.mu(&density(ZERO3))?;
    let mut a: [Vec<f64>; 3] = Default::default();
    let mut b: [Vec<f64>; 3] = Default::default();
    for i in 0..3 {
        let plus = srep.mu(&density(axis(i)))?;
        let minus = srep.mu(&density(scale(-1.0, &axis(i))))?;
        a[i] = sub(&plus, &minus).iter().map(|v| v / 2.0).collect();
        let plus = erep.xi(&effect(0.5, scale(0.5, &axis(i))))?;
        let minus = erep.xi(&effect(0.5, scale(-0.5, &axis(i))))?;
        b[i] = sub(&plus, &minus);
    }
    let f = erep.xi(&PovmElement::zero())?;
    let d = sub(&erep.xi(&PovmElement::identity())?, &f);

    let mut worst: Option<(f64, Witness)> = None;
    let mut offer = |defect: f64, w: Witness| {
        if worst.as_ref().is_none_or(|(d, _)| defect > *d) {
            worst = Some((defect, w));
        }
    };
    let extra_states = srep.catalog().unwrap_or_else(consistency_states);
    let state_rels = symmetric_state_relations()
        .into_iter()
        .chain(extra_states.iter().map(|r| state_probe_relation(r.bloch())));
    for rel in state_rels {
        let d = state_relation_defect(srep, &rel)?;
        offer(
            d.defect,
            Witness::StateMixture {
                relation: rel,
                point: space.label(d.point).to_string(),
                left_value: d.left_value,
                right_value: d.right_value,
            },
        );
    }
    let effect_rels = symmetric_effect_relations()
        .into_iter()
        .chain(consistency_effects().iter().map(effect_probe_relation).collect::<Vec<_>>());
    for rel in effect_rels {
        let d = effect_relation_defect(erep, &rel)?;
        offer(
            d.defect,
            Witness::EffectMixture {
                relation: rel,
                point: space.label(d.point).to_string(),
                left_value: d.left_value,
                right_value: d.right_value,
            },
        );
    }
    let (fit_residual, worst_relation) = match worst {
        Some((d, w)) => (d, Some(w)),
        None => (0.0, None),
    };
    Ok(CoefficientExtract {
        space,
        a,
        c: c.0,
        b,
        d,
        f: f.0,
        fit_residual,
        worst_relation,
    })
}

fn max_abs_at(values: impl Iterator<Item = f64>) -> (f64, usize) {
    values
        .enumerate()
        .fold((0.0, 0), |(best, at), (l, v)| if v.abs() > best { (v.abs(), l) } else { (best, at) })
}

/// `F ≡ 0` and `D ≡ 1`, the values forced by `ξ₀ = 0` and `ξ_I = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub pass: bool,
    pub f_defect: f64,
    pub f_point: String,
    pub d_defect: f64,
    pub d_point: String,
}

pub fn check_axioms(ex: &CoefficientExtract, tol: f64) -> AxiomReport {
    let (f_defect, fl) = max_abs_at(ex.f.iter().copied());
    let (d_defect, dl) = max_abs_at(ex.d.iter().map(|d| d - 1.0));
    AxiomReport {
        pass: f_defect <= tol && d_defect <= tol,
        f_defect,
        f_point: ex.space.label(fl).to_string(),
        d_defect,
        d_point: ex.space.label(dl).to_string(),
    }
}

/// Names of the frame conditions, in checking order:
/// `∑w BᵢAⱼ = δᵢⱼ`, `∑w BᵢC = 0`, `∑w Aᵢ = 0`, `∑w C = 1`.
pub const FRAME_CONDITIONS: [&str; 4] =
    ["biorthogonality", "offset_orthogonality", "zero_mean_slope", "normalization"];

/// The integrals entering the frame conditions and their defects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub pass: bool,
    pub biorthogonality: [[f64; 3]; 3],
    pub b_c: [f64; 3],
    pub a_integral: [f64; 3],
    pub c_integral: f64,
    /// Largest defect of each of the four conditions, in the order above.
    pub defects: [f64; 4],
}

impl FrameReport {
    /// Index into [`FRAME_CONDITIONS`] of the first failing condition.
    pub fn first_failure(&self, tol: f64) -> Option<usize> {
        self.defects.iter().position(|d| *d > tol)
    }

    /// Entry indices and value of the worst entry of condition `k`.
    fn worst_entry(&self, k: usize) -> (Vec<usize>, f64, f64) {
        match k {
            0 => {
                let mut best = (vec![0, 0], self.biorthogonality[0][0], 1.0);
                let mut gap = -1.0;
                for i in 0..3 {
                    for j in 0..3 {
                        let want = if i == j { 1.0 } else { 0.0 };
                        let g = (self.biorthogonality[i][j] - want).abs();
                        if g > gap {
                            gap = g;
                            best = (vec![i, j], self.biorthogonality[i][j], want);
                        }
                    }
                }
                best
            }
            1 | 2 => {
                let v = if k == 1 { self.b_c } else { self.a_integral };
                let (_, i) = max_abs_at(v.iter().copied());
                (vec![i], v[i], 0.0)
            }
            _ => (vec![], self.c_integral, 1.0),
        }
    }
}

pub fn check_frame_conditions(ex: &CoefficientExtract, tol: f64) -> FrameReport {
    let sp = &ex.space;
    let mut bio = [[0.0; 3]; 3];
    let mut b_c = [0.0; 3];
    let mut a_integral = [0.0; 3];
    let mut d2 = 0.0f64;
    let mut d3 = 0.0f64;
    let mut d4 = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            bio[i][j] = sp.inner(&ex.b[i], &ex.a[j]);
            let want = if i == j { 1.0 } else { 0.0 };
            d2 = d2.max((bio[i][j] - want).abs());
        }
        b_c[i] = sp.inner(&ex.b[i], &ex.c);
        d3 = d3.max(b_c[i].abs());
        a_integral[i] = sp.integrate(&ex.a[i]);
        d4 = d4.max(a_integral[i].abs());
    }
    let c_integral = sp.integrate(&ex.c);
    let defects = [d2, d3, d4, (c_integral - 1.0).abs()];
    FrameReport {
        pass: defects.iter().all(|d| *d <= tol),
        biorthogonality: bio,
        b_c,
        a_integral,
        c_integral,
        defects,
    }
}

/// Pointwise `‖B‖ ≤ 1` and `‖A‖ ≤ C`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub pass: bool,
    pub b_max_norm: f64,
    pub b_point: String,
    /// `max_λ ‖A(λ)‖ − C(λ)`.
    pub a_excess: f64,
    pub a_point: String,
}

pub fn check_norm_bounds(ex: &CoefficientExtract, tol: f64) -> NormReport {
    let n = ex.space.len();
    let (mut b_max, mut bl) = (f64::NEG_INFINITY, 0);
    let (mut a_exc, mut al) = (f64::NEG_INFINITY, 0);
    for l in 0..n {
        let nb = norm(&ex.b_at(l));
        if nb > b_max {
            (b_max, bl) = (nb, l);
        }
        let e = norm(&ex.a_at(l)) - ex.c[l];
        if e > a_exc {
            (a_exc, al) = (e, l);
        }
    }
    NormReport {
        pass: b_max <= 1.0 + tol && a_exc <= tol,
        b_max_norm: b_max,
        b_point: ex.space.label(bl).to_string(),
        a_excess: a_exc,
        a_point: ex.space.label(al).to_string(),
    }
}

/// `T = ∑ᵢ ∑_λ w Bᵢ Aᵢ`. Biorthogonality demands 3; nonnegativity together
/// with `∑w C = 1` forces `T ≤ 1`.
pub fn overlap_score(ex: &CoefficientExtract) -> f64 {
    (0..3).map(|i| ex.space.inner(&ex.b[i], &ex.a[i])).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    StateNegativity,
    EffectNegativity,
    AxiomViolation,
    FrameCondition,
    NormBound,
    OverlapGap,
    ConvexLinearityViolation,
    NoViolation,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::StateNegativity => "StateNegativity",
            Self::EffectNegativity => "EffectNegativity",
            Self::AxiomViolation => "AxiomViolation",
            Self::FrameCondition => "FrameCondition",
            Self::NormBound => "NormBound",
            Self::OverlapGap => "OverlapGap",
            Self::ConvexLinearityViolation => "ConvexLinearityViolation",
            Self::NoViolation => "NoViolation",
        }
    }
}

/// Data needed to recheck a certificate against the raw representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `μ_state(point) = value < 0`.
    State {
        point: String,
        state: DensityOp,
        value: f64,
    },
    /// `ξ_effect(point) = value < 0`.
    Effect {
        point: String,
        effect: PovmElement,
        value: f64,
    },
    /// `coefficient` is `"F"` (should be 0) or `"D"` (should be 1).
    Axiom {
        coefficient: String,
        point: String,
        value: f64,
        required: f64,
    },
    /// `condition` is one of [`FRAME_CONDITIONS`]; `entry` indexes the
    /// component(s) involved.
    Frame {
        condition: String,
        entry: Vec<usize>,
        value: f64,
        required: f64,
    },
    /// `bound` is `"B"` (`‖B‖ ≤ 1`) or `"A"` (`‖A‖ ≤ C`).
    Norm {
        bound: String,
        point: String,
        norm: f64,
        limit: f64,
    },
    Overlap {
        score: f64,
        required: f64,
    },
    StateMixture {
        relation: ConvexRelation<DensityOp>,
        point: String,
        left_value: f64,
        right_value: f64,
    },
    EffectMixture {
        relation: ConvexRelation<PovmElement>,
        point: String,
        left_value: f64,
        right_value: f64,
    },
    None {
        overlap: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoGoCertificate {
    pub kind: CertificateKind,
    pub defect: f64,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainReport>,
}

impl NoGoCertificate {
    pub fn is_violation(&self) -> bool {
        self.kind != CertificateKind::NoViolation
    }
}

/// Stages of the certification pipeline, in their default order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Residual,
    Axioms,
    Negativity,
    Frame,
    Norms,
    Overlap,
}

pub const DEFAULT_ORDER: [Stage; 6] = [
    Stage::Residual,
    Stage::Axioms,
    Stage::Negativity,
    Stage::Frame,
    Stage::Norms,
    Stage::Overlap,
];

fn stage_certificate(ex: &CoefficientExtract, stage: Stage, tol: f64) -> Option<NoGoCertificate> {
    let cert = |kind, defect, witness| NoGoCertificate {
        kind,
        defect,
        witness,
        chain: None,
    };
    match stage {
        Stage::Residual => (ex.fit_residual > tol).then(|| {
            let w = ex.worst_relation.clone().expect("positive residual has a relation");
            cert(CertificateKind::ConvexLinearityViolation, ex.fit_residual, w)
        }),
        Stage::Axioms => {
            let r = check_axioms(ex, tol);
            if r.f_defect > tol {
                let l = ex.space.labels().iter().position(|s| *s == r.f_point).unwrap_or(0);
                Some(cert(
                    CertificateKind::AxiomViolation,
                    r.f_defect,
                    Witness::Axiom { coefficient: "F".into(), point: r.f_point, value: ex.f[l], required: 0.0 },
                ))
            } else if r.d_defect > tol {
                let l = ex.space.labels().iter().position(|s| *s == r.d_point).unwrap_or(0);
                Some(cert(
                    CertificateKind::AxiomViolation,
                    r.d_defect,
                    Witness::Axiom { coefficient: "D".into(), point: r.d_point, value: ex.d[l], required: 1.0 },
                ))
            } else {
                None
            }
        }
        Stage::Negativity => {
            let s = crate::ontic::negativity(&ex.state_rep());
            if s.min_value < -tol {
                return Some(cert(
                    CertificateKind::StateNegativity,
                    -s.min_value,
                    Witness::State {
                        point: ex.space.label(s.point).to_string(),
                        state: s.state,
                        value: s.min_value,
                    },
                ));
            }
            let e = crate::ontic::effect_negativity(&ex.effect_rep());
            (e.min_value < -tol).then(|| {
                cert(
                    CertificateKind::EffectNegativity,
                    -e.min_value,
                    Witness::Effect {
                        point: ex.space.label(e.point).to_string(),
                        effect: e.effect,
                        value: e.min_value,
                    },
                )
            })
        }
        Stage::Frame => {
            let r = check_frame_conditions(ex, tol);
            r.first_failure(tol).map(|k| {
                let (entry, value, required) = r.worst_entry(k);
                cert(
                    CertificateKind::FrameCondition,
                    r.defects[k],
                    Witness::Frame { condition: FRAME_CONDITIONS[k].into(), entry, value, required },
                )
            })
        }
        Stage::Norms => {
            let r = check_norm_bounds(ex, tol);
            if r.b_max_norm > 1.0 + tol {
                Some(cert(
                    CertificateKind::NormBound,
                    r.b_max_norm - 1.0,
                    Witness::Norm { bound: "B".into(), point: r.b_point, norm: r.b_max_norm, limit: 1.0 },
                ))
            } else if r.a_excess > tol {
                let l = ex.space.labels().iter().position(|s| *s == r.a_point).unwrap_or(0);
                Some(cert(
                    CertificateKind::NormBound,
                    r.a_excess,
                    Witness::Norm {
                        bound: "A".into(),
                        point: r.a_point,
                        norm: norm(&ex.a_at(l)),
                        limit: ex.c[l],
                    },
                ))
            } else {
                None
            }
        }
        Stage::Overlap => {
            let t = overlap_score(ex);
            ((t - REQUIRED_OVERLAP).abs() > tol).then(|| {
                cert(
                    CertificateKind::OverlapGap,
                    REQUIRED_OVERLAP - t,
                    Witness::Overlap { score: t, required: REQUIRED_OVERLAP },
                )
            })
        }
    }
}

/// Runs the stages in `order` on an extraction and returns the first
/// violation, or `NoViolation`.
pub fn certify_extract(ex: &CoefficientExtract, order: &[Stage], tol: f64) -> NoGoCertificate {
    order
        .iter()
        .find_map(|s| stage_certificate(ex, *s, tol))
        .unwrap_or_else(|| NoGoCertificate {
            kind: CertificateKind::NoViolation,
            defect: 0.0,
            witness: Witness::None { overlap: overlap_score(ex) },
            chain: None,
        })
}

pub fn certify_with_order<S, E>(srep: &S, erep: &E, order: &[Stage], tol: f64) -> Result<NoGoCertificate>
where
    S: StateRep + ?Sized,
    E: EffectRep + ?Sized,
{
    Ok(certify_extract(&extract_coefficients(srep, erep)?, order, tol))
}

/// Full pipeline in the default order: residual, axioms, negativity, frame
/// conditions, norm bounds, overlap.
pub fn certify<S, E>(srep: &S, erep: &E, tol: f64) -> Result<NoGoCertificate>
where
    S: StateRep + ?Sized,
    E: EffectRep + ?Sized,
{
    certify_with_order(srep, erep, &DEFAULT_ORDER, tol)
}

/// Like [`certify`], with the contradiction chain attached.
pub fn certify_with_chain<S, E>(srep: &S, erep: &E, tol: f64) -> Result<NoGoCertificate>
where
    S: StateRep + ?Sized,
    E: EffectRep + ?Sized,
{
    let ex = extract_coefficients(srep, erep)?;
    let mut cert = certify_extract(&ex, &DEFAULT_ORDER, tol);
    cert.chain = Some(contradiction_chain_report(&ex, tol));
    Ok(cert)
}

/// One component of `1 = ∑w BᵢAᵢ ≤ ∑w |Bᵢ||Aᵢ| ≤ ∑w C = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainComponent {
    pub index: usize,
    pub overlap: f64,
    pub absolute_bound: f64,
    pub c_integral: f64,
    /// All three quantities equal 1, so every inequality is tight.
    pub equality_forced: bool,
    /// `max ||Bᵢ(λ)| − 1|` over the support of `C`.
    pub unit_deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainConclusion {
    /// `∑w C ≠ 1` outright.
    NormalizationConflict,
    /// `|Bᵢ| = 1` for every `i` on the support, so `‖B‖ = √3 > 1`.
    NormConflict,
    /// The chain's hypotheses fail, so nonnegativity is already broken.
    NonnegativityFails,
    /// Hypotheses hold; the chain caps each overlap below 1.
    FrameConditionFails,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub c_integral: f64,
    pub support: Vec<String>,
    pub components: Vec<ChainComponent>,
    pub hypotheses_hold: bool,
    pub max_b_norm: f64,
    pub implied_b_norm: Option<f64>,
    pub conclusion: ChainConclusion,
    pub narrative: Vec<String>,
}

/// Numerical walk through the inequality chain behind the no-go argument.
pub fn contradiction_chain_report(ex: &CoefficientExtract, tol: f64) -> ChainReport {
    let sp = &ex.space;
    let w = sp.weights();
    let n = sp.len();
    let c_integral = sp.integrate(&ex.c);
    let support: Vec<usize> = (0..n).filter(|&l| ex.c[l] > tol && w[l] > 0.0).collect();
    let components: Vec<ChainComponent> = (0..3)
        .map(|i| {
            let overlap = sp.inner(&ex.b[i], &ex.a[i]);
            let absolute_bound: f64 = (0..n).map(|l| w[l] * (ex.b[i][l] * ex.a[i][l]).abs()).sum();
            let unit_deviation = support
                .iter()
                .map(|&l| (ex.b[i][l].abs() - 1.0).abs())
                .fold(0.0, f64::max);
            ChainComponent {
                index: i,
                overlap,
                absolute_bound,
                c_integral,
                equality_forced: [overlap, absolute_bound, c_integral].iter().all(|v| (v - 1.0).abs() <= tol),
                unit_deviation,
            }
        })
        .collect();
    let norms = check_norm_bounds(ex, tol);
    let hypotheses_hold = norms.pass && (c_integral - 1.0).abs() <= tol;
    let all_unit = !support.is_empty() && components.iter().all(|c| c.unit_deviation <= tol);
    let implied_b_norm = all_unit.then(|| 3f64.sqrt());

    let mut narrative = vec![format!("integral of C over the ontic space is {c_integral:.12}")];
    for c in &components {
        narrative.push(format!(
            "component {}: sum w B A = {:.12}, sum w |B||A| = {:.12}, bound sum w C = {:.12}{}",
            c.index + 1,
            c.overlap,
            c.absolute_bound,
            c.c_integral,
            if c.equality_forced { " (all tight)" } else { "" }
        ));
    }
    let conclusion = if (c_integral - 1.0).abs() > tol {
        narrative.push(format!("C integrates to {c_integral:.12}, not 1: the normalization condition fails directly"));
        ChainConclusion::NormalizationConflict
    } else if all_unit {
        narrative.push(format!(
            "|B_i| = 1 for every component on the support of C, so |B| = sqrt(3) = {:.12} exceeds the bound 1",
            3f64.sqrt()
        ));
        ChainConclusion::NormConflict
    } else if !hypotheses_hold {
        narrative.push(format!(
            "max |B| = {:.12} and max |A| - C = {:.12}: the bounds needed for the chain fail, so the candidate is already negative somewhere",
            norms.b_max_norm, norms.a_excess
        ));
        ChainConclusion::NonnegativityFails
    } else {
        narrative.push(
            "bounds hold, so each overlap is at most 1 and the chain cannot be tight in all three components at once".into(),
        );
        ChainConclusion::FrameConditionFails
    };
    ChainReport {
        c_integral,
        support: support.iter().map(|&l| sp.label(l).to_string()).collect(),
        components,
        hypotheses_hold,
        max_b_norm: norms.b_max_norm,
        implied_b_norm,
        conclusion,
        narrative,
    }
}

/// Seeded nonnegative candidate: `n` uniform in `1..=64`, weights in
/// `(0.05, 2)`, `C ≥ 0` normalized, `A = C·(ball point)`, `B` in the unit
/// ball, `D ≡ 1`, `F ≡ 0`.
pub fn random_nonnegative_candidate<R: Rng + ?Sized>(rng: &mut R) -> (AffineStateRep, AffineEffectRep) {
    let n = rng.random_range(1..=64usize);
    let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..2.0)).collect();
    let labels = (0..n).map(|l| l.to_string()).collect();
    let space = OnticSpace::new(labels, weights).expect("positive weights");
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let mut total = space.integrate(&raw);
    let raw = if total > 0.0 {
        raw
    } else {
        total = space.integrate(&vec![1.0; n]);
        vec![1.0; n]
    };
    let c: Vec<f64> = raw.iter().map(|v| v / total).collect();
    let a: Vec<Vec3> = c.iter().map(|cl| scale(*cl, &random_ball(rng, 1.0))).collect();
    let b: Vec<Vec3> = (0..n).map(|_| random_ball(rng, 1.0)).collect();
    (
        AffineStateRep::from_points(space.clone(), &a, c).expect("consistent lengths"),
        AffineEffectRep::from_points(space, &b, vec![1.0; n], vec![0.0; n]).expect("consistent lengths"),
    )
}

/// Independent generator for trial `k` of a seeded battery.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub points: usize,
    pub kind: CertificateKind,
    pub defect: f64,
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub trials: usize,
    pub seed: u64,
    pub escapes: usize,
    pub kind_counts: BTreeMap<String, usize>,
    pub max_overlap: f64,
    pub outcomes: Vec<TrialOutcome>,
}

/// Certifies `trials` seeded nonnegative candidates. Outcomes are ordered
/// by trial index and depend only on `(seed, tol)`.
pub fn run_battery(trials: usize, seed: u64, tol: f64) -> Result<BatteryReport> {
    let mut outcomes = Vec::with_capacity(trials);
    let mut kind_counts = BTreeMap::new();
    let mut escapes = 0;
    let mut max_overlap = f64::NEG_INFINITY;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let (s, e) = random_nonnegative_candidate(&mut rng);
        let ex = extract_coefficients(&s, &e)?;
        let cert = certify_extract(&ex, &DEFAULT_ORDER, tol);
        let overlap = overlap_score(&ex);
        max_overlap = max_overlap.max(overlap);
        if !cert.is_violation() {
            escapes += 1;
        }
        *kind_counts.entry(cert.kind.as_str().to_string()).or_insert(0) += 1;
        outcomes.push(TrialOutcome {
            trial,
            points: s.space().len(),
            kind: cert.kind,
            defect: cert.defect,
            overlap,
        });
    }
    Ok(BatteryReport {
        trials,
        seed,
        escapes,
        kind_counts,
        max_overlap: if trials == 0 { 0.0 } else { max_overlap },
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::{duplication_fixture, sic_baseline};
    use crate::ontic::{mu_eval, xi_eval};
    use proptest::prelude::*;

    fn candidate(a: &[Vec3], c: Vec<f64>, b: &[Vec3], d: Vec<f64>, f: Vec<f64>) -> (AffineStateRep, AffineEffectRep) {
        let space = OnticSpace::uniform(c.len()).unwrap();
        (
            AffineStateRep::from_points(space.clone(), a, c).unwrap(),
            AffineEffectRep::from_points(space, b, d, f).unwrap(),
        )
    }

    fn sic_nonnegative() -> (AffineStateRep, AffineEffectRep) {
        let sic = SicFrame::tetrahedron().bloch_vectors;
        candidate(&[ZERO3; 4], vec![0.25; 4], &sic, vec![1.0; 4], vec![0.0; 4])
    }

    #[test]
    fn extraction_of_sic_baseline() {
        let (s, e) = sic_baseline();
        let ex = extract_coefficients(&s, &e).unwrap();
        let sic = SicFrame::tetrahedron().bloch_vectors;
        for (l, a) in sic.iter().enumerate() {
            for i in 0..3 {
                assert!((ex.a[i][l] - 0.75 * a[i]).abs() < 1e-15);
                assert!((ex.b[i][l] - a[i]).abs() < 1e-15);
            }
            assert!((ex.c[l] - 0.25).abs() < 1e-15);
            assert!((ex.d[l] - 1.0).abs() < 1e-15);
            assert_eq!(ex.f[l], 0.0);
        }
        assert!(ex.fit_residual < 1e-15);
    }

    #[test]
    fn state_independent_rep_extracts_zero_a() {
        let (s, e) = sic_nonnegative();
        let ex = extract_coefficients(&s, &e).unwrap();
        assert!(ex.a.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn perturbed_rep_has_residual() {
        let fx = duplication_fixture();
        let ex = extract_coefficients(&fx.state_rep, &fx.effect_rep).unwrap();
        assert!((ex.fit_residual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn axiom_examples() {
        let (s, e) = sic_baseline();
        assert!(check_axioms(&extract_coefficients(&s, &e).unwrap(), 1e-12).pass);
        let sic = SicFrame::tetrahedron().bloch_vectors;
        let (s, e) = candidate(&[ZERO3; 4], vec![0.25; 4], &sic, vec![1.0; 4], vec![0.1; 4]);
        let r = check_axioms(&extract_coefficients(&s, &e).unwrap(), 1e-9);
        assert!(!r.pass);
        assert!((r.f_defect - 0.1).abs() < 1e-15);
        let (s, e) = candidate(&[ZERO3; 4], vec![0.25; 4], &sic, vec![0.9; 4], vec![0.0; 4]);
        let cert = certify(&s, &e, 1e-9).unwrap();
        assert_eq!(cert.kind, CertificateKind::AxiomViolation);
        assert!((cert.defect - 0.1).abs() < 1e-12);
        assert!(matches!(cert.witness, Witness::Axiom { ref coefficient, .. } if coefficient == "D"));
    }

    #[test]
    fn frame_condition_examples() {
        let (s, e) = sic_baseline();
        let r = check_frame_conditions(&extract_coefficients(&s, &e).unwrap(), 1e-12);
        assert!(r.pass, "{r:?}");
        assert!(r.defects.iter().all(|d| *d <= 1e-12));

        let (s, e) = sic_nonnegative();
        let r = check_frame_conditions(&extract_coefficients(&s, &e).unwrap(), 1e-9);
        assert_eq!(r.first_failure(1e-9), Some(0));
        for i in 0..3 {
            assert_eq!(r.biorthogonality[i][i], 0.0);
        }
        assert_eq!(r.defects[0], 1.0);

        let (s0, e0) = sic_baseline();
        let half: Vec<f64> = s0.c().iter().map(|c| c / 2.0).collect();
        let s = AffineStateRep::new(s0.space().clone(), s0.a().clone(), half).unwrap();
        let r = check_frame_conditions(&extract_coefficients(&s, &e0).unwrap(), 1e-9);
        assert!((r.defects[3] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn norm_bound_examples() {
        let (s, e) = sic_baseline();
        let r = check_norm_bounds(&extract_coefficients(&s, &e).unwrap(), 1e-12);
        assert!((r.b_max_norm - 1.0).abs() < 1e-15);
        assert!((r.a_excess - 0.5).abs() < 1e-15);
        assert!(!r.pass);

        let sic = SicFrame::tetrahedron().bloch_vectors;
        let (s, e) = candidate(&[ZERO3; 4], vec![0.25; 4], &sic, vec![1.0; 4], vec![0.0; 4]);
        assert!(check_norm_bounds(&extract_coefficients(&s, &e).unwrap(), 1e-12).pass);

        let (s, e) = candidate(&[ZERO3], vec![1.0], &[[1.0, 1.0, 1.0]], vec![1.0], vec![0.0]);
        let r = check_norm_bounds(&extract_coefficients(&s, &e).unwrap(), 1e-12);
        assert!((r.b_max_norm - 3f64.sqrt()).abs() < 1e-15);
        let cert = certify_with_order(&s, &e, &[Stage::Norms], 1e-9).unwrap();
        assert_eq!(cert.kind, CertificateKind::NormBound);
        assert!((cert.defect - (3f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn overlap_examples() {
        let (s, e) = sic_baseline();
        assert!((overlap_score(&extract_coefficients(&s, &e).unwrap()) - 3.0).abs() < 1e-12);
        let (s, e) = sic_nonnegative();
        assert_eq!(overlap_score(&extract_coefficients(&s, &e).unwrap()), 0.0);
    }

    #[test]
    fn certify_examples() {
        let (s, e) = sic_baseline();
        let cert = certify(&s, &e, 1e-9).unwrap();
        assert_eq!(cert.kind, CertificateKind::StateNegativity);
        assert!((cert.defect - 0.5).abs() < 1e-12);

        let (s, e) = sic_nonnegative();
        let cert = certify(&s, &e, 1e-9).unwrap();
        assert_eq!(cert.kind, CertificateKind::FrameCondition);
        assert!(matches!(cert.witness, Witness::Frame { ref condition, .. } if condition == "biorthogonality"));

        let fx = duplication_fixture();
        let cert = certify(&fx.state_rep, &fx.effect_rep, 1e-9).unwrap();
        assert_eq!(cert.kind, CertificateKind::ConvexLinearityViolation);
        assert!((cert.defect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_json_shape() {
        let (s, e) = sic_baseline();
        let v = serde_json::to_value(certify(&s, &e, 1e-9).unwrap()).unwrap();
        assert_eq!(v["kind"], "StateNegativity");
        assert_eq!(v["witness"]["type"], "state");
        assert!(v.get("chain").is_none());
        let v = serde_json::to_value(certify_with_chain(&s, &e, 1e-9).unwrap()).unwrap();
        assert_eq!(v["chain"]["conclusion"], "NonnegativityFails");
    }

    #[test]
    fn chain_examples() {
        let (s, e) = sic_baseline();
        let r = contradiction_chain_report(&extract_coefficients(&s, &e).unwrap(), 1e-9);
        assert_eq!(r.conclusion, ChainConclusion::NonnegativityFails);
        assert!((r.max_b_norm - 1.0).abs() < 1e-12);
        assert!(r.implied_b_norm.is_none());

        let signs = [[1.0, 1.0, 1.0], [-1.0, 1.0, -1.0]];
        let (s, e) = candidate(&[ZERO3; 2], vec![0.5; 2], &signs, vec![1.0; 2], vec![0.0; 2]);
        let r = contradiction_chain_report(&extract_coefficients(&s, &e).unwrap(), 1e-9);
        assert_eq!(r.conclusion, ChainConclusion::NormConflict);
        assert_eq!(r.implied_b_norm, Some(3f64.sqrt()));

        let (s, e) = candidate(&[ZERO3; 2], vec![0.0; 2], &[ZERO3; 2], vec![1.0; 2], vec![0.0; 2]);
        let r = contradiction_chain_report(&extract_coefficients(&s, &e).unwrap(), 1e-9);
        assert_eq!(r.conclusion, ChainConclusion::NormalizationConflict);
        assert!(r.support.is_empty());
    }

    #[test]
    fn probe_relations_are_operator_identities() {
        let check_state = |rel: &ConvexRelation<DensityOp>| {
            let side = |t: &[Term<DensityOp>]| {
                let w: f64 = t.iter().map(|t| t.weight).sum();
                (w, crate::ontic::weighted_bloch(t))
            };
            let (wl, xl) = side(&rel.left);
            let (wr, xr) = side(&rel.right);
            assert!((wl - 1.0).abs() < 1e-15 && (wr - 1.0).abs() < 1e-15);
            assert!(norm(&crate::pauli::sub(&xl, &xr)) < 1e-15);
        };
        for x in [[0.3, -0.4, 0.5], [1.0, 0.0, 0.0], [0.0; 3], [-0.577, 0.577, 0.577]] {
            check_state(&state_probe_relation(x));
        }
        let side = |t: &[Term<PovmElement>]| {
            let w: f64 = t.iter().map(|t| t.weight).sum();
            let m: f64 = t.iter().map(|t| t.weight * t.operand.m()).sum();
            let p = t.iter().fold(ZERO3, |acc, t| crate::pauli::add(&acc, &scale(t.weight, &t.operand.p())));
            (w, m, p)
        };
        for e in consistency_effects().into_iter().chain([PovmElement::zero(), PovmElement::identity()]) {
            let rel = effect_probe_relation(&e);
            assert!(rel.left.iter().chain(&rel.right).all(|t| t.weight > 0.0));
            let (wl, ml, pl) = side(&rel.left);
            let (wr, mr, pr) = side(&rel.right);
            assert!((wl - 1.0).abs() < 1e-15 && (wr - 1.0).abs() < 1e-15);
            assert!((ml - mr).abs() < 1e-15);
            assert!(norm(&crate::pauli::sub(&pl, &pr)) < 1e-15);
        }
    }

    /// Recomputes a certificate's defect from raw queries only.
    fn recheck<S: StateRep, E: EffectRep>(s: &S, e: &E, cert: &NoGoCertificate) -> f64 {
        let sp = s.space();
        let at = |label: &str| sp.labels().iter().position(|l| l == label).unwrap();
        let mu = |x: Vec3| mu_eval(s, &density(x)).unwrap().0;
        let xi = |m: f64, p: Vec3| xi_eval(e, &effect(m, p)).unwrap().0;
        let a_fn = |j: usize| -> Vec<f64> {
            mu(axis(j)).iter().zip(mu(scale(-1.0, &axis(j)))).map(|(p, m)| (p - m) / 2.0).collect()
        };
        let b_fn = |i: usize| -> Vec<f64> {
            xi(0.5, scale(0.5, &axis(i))).iter().zip(xi(0.5, scale(-0.5, &axis(i)))).map(|(p, m)| p - m).collect()
        };
        match &cert.witness {
            Witness::State { point, state, .. } => -mu_eval(s, state).unwrap().0[at(point)],
            Witness::Effect { point, effect, .. } => -xi_eval(e, effect).unwrap().0[at(point)],
            Witness::Axiom { coefficient, point, .. } => {
                let f = xi(0.0, ZERO3)[at(point)];
                if coefficient == "F" { f.abs() } else { (xi(1.0, ZERO3)[at(point)] - f - 1.0).abs() }
            }
            Witness::Frame { condition, entry, .. } => match condition.as_str() {
                "biorthogonality" => {
                    let want = if entry[0] == entry[1] { 1.0 } else { 0.0 };
                    (sp.inner(&b_fn(entry[0]), &a_fn(entry[1])) - want).abs()
                }
                "offset_orthogonality" => sp.inner(&b_fn(entry[0]), &mu(ZERO3)).abs(),
                "zero_mean_slope" => sp.integrate(&a_fn(entry[0])).abs(),
                _ => (sp.integrate(&mu(ZERO3)) - 1.0).abs(),
            },
            Witness::Norm { bound, point, .. } => {
                let l = at(point);
                let b = [b_fn(0)[l], b_fn(1)[l], b_fn(2)[l]];
                let a = [a_fn(0)[l], a_fn(1)[l], a_fn(2)[l]];
                if bound == "B" { norm(&b) - 1.0 } else { norm(&a) - mu(ZERO3)[l] }
            }
            Witness::Overlap { .. } => {
                3.0 - (0..3).map(|i| sp.inner(&b_fn(i), &a_fn(i))).sum::<f64>()
            }
            Witness::StateMixture { relation, .. } => state_relation_defect(s, relation).unwrap().defect,
            Witness::EffectMixture { relation, .. } => effect_relation_defect(e, relation).unwrap().defect,
            Witness::None { .. } => 0.0,
        }
    }

    #[test]
    fn fixed_certificates_recheck() {
        let (s, e) = sic_baseline();
        let cert = certify(&s, &e, 1e-9).unwrap();
        assert!((recheck(&s, &e, &cert) - cert.defect).abs() < 1e-9);
        let fx = duplication_fixture();
        let cert = certify(&fx.state_rep, &fx.effect_rep, 1e-9).unwrap();
        assert!((recheck(&fx.state_rep, &fx.effect_rep, &cert) - cert.defect).abs() < 1e-9);
    }

    const ORDERS: [[Stage; 6]; 3] = [
        DEFAULT_ORDER,
        [Stage::Overlap, Stage::Norms, Stage::Frame, Stage::Negativity, Stage::Axioms, Stage::Residual],
        [Stage::Norms, Stage::Negativity, Stage::Overlap, Stage::Axioms, Stage::Residual, Stage::Frame],
    ];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn nonnegative_candidates_are_convicted(seed in any::<u64>()) {
            let (s, e) = random_nonnegative_candidate(&mut ChaCha8Rng::seed_from_u64(seed));
            let ex = extract_coefficients(&s, &e).unwrap();
            let cert = certify_extract(&ex, &DEFAULT_ORDER, 1e-9);
            prop_assert!(matches!(cert.kind, CertificateKind::FrameCondition | CertificateKind::OverlapGap));
            prop_assert!(overlap_score(&ex) <= 1.0 + 1e-9);
            prop_assert!((recheck(&s, &e, &cert) - cert.defect).abs() <= 1e-9);
        }

        #[test]
        fn some_violation_in_every_order(seed in any::<u64>(), which in 0usize..3) {
            let (s, e) = random_nonnegative_candidate(&mut ChaCha8Rng::seed_from_u64(seed));
            let cert = certify_with_order(&s, &e, &ORDERS[which], 1e-9).unwrap();
            prop_assert!(cert.is_violation());
            prop_assert!(cert.defect > 1e-9);
        }

        #[test]
        fn perturbed_candidates_recheck(seed in any::<u64>(), shift in -0.3f64..0.3, which in 0usize..3) {
            // negative shifts make C or ξ negative somewhere
            let (s, e) = random_nonnegative_candidate(&mut ChaCha8Rng::seed_from_u64(seed));
            let c: Vec<f64> = s.c().iter().map(|v| v + shift).collect();
            let s = AffineStateRep::new(s.space().clone(), s.a().clone(), c).unwrap();
            let f = vec![shift / 2.0; e.space().len()];
            let e = AffineEffectRep::new(e.space().clone(), e.b().clone(), e.d().to_vec(), f).unwrap();
            let cert = certify_with_order(&s, &e, &ORDERS[which], 1e-9).unwrap();
            prop_assert!((recheck(&s, &e, &cert) - cert.defect).abs() <= 1e-9);
        }

        #[test]
        fn chain_matches_other_checkers(seed in any::<u64>()) {
            let (s, e) = random_nonnegative_candidate(&mut ChaCha8Rng::seed_from_u64(seed));
            let ex = extract_coefficients(&s, &e).unwrap();
            let chain = contradiction_chain_report(&ex, 1e-9);
            let frame = check_frame_conditions(&ex, 1e-9);
            prop_assert!(chain.hypotheses_hold);
            prop_assert_eq!(chain.conclusion, ChainConclusion::FrameConditionFails);
            prop_assert!((chain.c_integral - frame.c_integral).abs() < 1e-15);
            for c in &chain.components {
                prop_assert!((c.overlap - frame.biorthogonality[c.index][c.index]).abs() < 1e-15);
                prop_assert!(c.overlap <= c.absolute_bound + 1e-12);
                prop_assert!(c.absolute_bound <= c.c_integral + 1e-12);
            }
        }
    }

    #[test]
    fn battery_is_deterministic() {
        let a = run_battery(50, 7, 1e-9).unwrap();
        let b = run_battery(50, 7, 1e-9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.escapes, 0);
        assert!(a.max_overlap <= 1.0 + 1e-9);
        assert_eq!(a.kind_counts.values().sum::<usize>(), 50);
    }
}
