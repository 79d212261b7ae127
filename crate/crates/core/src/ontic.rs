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

//! Finite ontic spaces and quasiprobability representations over them.
//!
//! An ontic space is a finite list of labelled points with strictly positive
//! weights; integrals are weighted sums. A state representation maps each
//! qubit density to a real function on the space, an effect representation
//! maps each POVM element to one. The checks in this module test the three
//! defining axioms (normalization, unit sum, Born-rule reproduction), the
//! convex-linearity hypothesis, and nonnegativity.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::pauli::{
    add, born_probability, dot, mix, norm, random_density, scale, DensityOp, Povm,
    PovmElement, Vec3, ZERO3,
};
use crate::report::{CheckReport, Worst};

/// Finite measure space: labelled points with strictly positive weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct OnticSpace {
    labels: Vec<String>,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSpace {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl TryFrom<RawSpace> for OnticSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        OnticSpace::new(raw.labels, raw.weights)
    }
}

impl OnticSpace {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidSpace("no points".into()));
        }
        if labels.len() != weights.len() {
            return Err(Error::InvalidSpace(format!(
                "{} labels but {} weights",
                labels.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSpace(format!(
                "weight {w} is not strictly positive"
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidSpace(format!("duplicate label {dup:?}")));
        }
        Ok(Self { labels, weights })
    }

    /// `n` points labelled `"0"..` with unit weight.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// `∑_λ w_λ f(λ)`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.weights.iter().zip(f).map(|(w, v)| w * v).sum()
    }

    /// `∑_λ w_λ f(λ) g(λ)`.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(f.iter().zip(g))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    pub(crate) fn expect_len(&self, what: &str, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::InvalidSpace(format!(
                "{what} has {len} values, space has {} points",
                self.len()
            )));
        }
        Ok(())
    }

    pub(crate) fn ensure_same(&self, other: &OnticSpace) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch(format!(
                "{} points vs {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

/// Real function on an ontic space, one value per point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OnticFunction(pub Vec<f64>);

impl OnticFunction {
    pub fn constant(n: usize, v: f64) -> Self {
        Self(vec![v; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest value and its index.
    pub fn min(&self) -> (f64, usize) {
        self.0
            .iter()
            .enumerate()
            .fold((f64::INFINITY, 0), |(best, bi), (i, &v)| {
                if v < best {
                    (v, i)
                } else {
                    (best, bi)
                }
            })
    }
}

/// State side of a representation: `ρ ↦ μ_ρ`.
pub trait StateRep {
    fn space(&self) -> &OnticSpace;

    fn mu(&self, rho: &DensityOp) -> Result<OnticFunction>;

    /// States on which the representation is defined, when it is not total.
    fn catalog(&self) -> Option<Vec<DensityOp>> {
        None
    }
}

/// Effect side of a representation: `E ↦ ξ_E`.
pub trait EffectRep {
    fn space(&self) -> &OnticSpace;

    fn xi(&self, e: &PovmElement) -> Result<OnticFunction>;
}

impl<T: StateRep + ?Sized> StateRep for &T {
    fn space(&self) -> &OnticSpace {
        (**self).space()
    }

    fn mu(&self, rho: &DensityOp) -> Result<OnticFunction> {
        (**self).mu(rho)
    }

    fn catalog(&self) -> Option<Vec<DensityOp>> {
        (**self).catalog()
    }
}

impl<T: EffectRep + ?Sized> EffectRep for &T {
    fn space(&self) -> &OnticSpace {
        (**self).space()
    }

    fn xi(&self, e: &PovmElement) -> Result<OnticFunction> {
        (**self).xi(e)
    }
}

/// `μ_{ρ(x)}(λ) = x·A(λ) + C(λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAffineState")]
pub struct AffineStateRep {
    pub(crate) space: OnticSpace,
    #[serde(rename = "A")]
    pub(crate) a: [Vec<f64>; 3],
    #[serde(rename = "C")]
    pub(crate) c: Vec<f64>,
}

#[derive(Deserialize)]
struct RawAffineState {
    space: Option<OnticSpace>,
    #[serde(rename = "A")]
    a: [Vec<f64>; 3],
    #[serde(rename = "C")]
    c: Vec<f64>,
}

impl TryFrom<RawAffineState> for AffineStateRep {
    type Error = Error;

    fn try_from(raw: RawAffineState) -> Result<Self> {
        let space = match raw.space {
            Some(s) => s,
            None => OnticSpace::uniform(raw.c.len())?,
        };
        AffineStateRep::new(space, raw.a, raw.c)
    }
}

impl AffineStateRep {
    pub fn new(space: OnticSpace, a: [Vec<f64>; 3], c: Vec<f64>) -> Result<Self> {
        for (i, ai) in a.iter().enumerate() {
            space.expect_len(&format!("A{}", i + 1), ai.len())?;
        }
        space.expect_len("C", c.len())?;
        Ok(Self { space, a, c })
    }

    /// Builds from per-point `A(λ)` vectors.
    pub fn from_points(space: OnticSpace, a: &[Vec3], c: Vec<f64>) -> Result<Self> {
        let cols = std::array::from_fn(|i| a.iter().map(|v| v[i]).collect());
        Self::new(space, cols, c)
    }

    pub fn a_at(&self, lambda: usize) -> Vec3 {
        [self.a[0][lambda], self.a[1][lambda], self.a[2][lambda]]
    }

    pub fn a(&self) -> &[Vec<f64>; 3] {
        &self.a
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn eval(&self, rho: &DensityOp) -> OnticFunction {
        let x = rho.bloch();
        OnticFunction(
            (0..self.space.len())
                .map(|l| dot(&x, &self.a_at(l)) + self.c[l])
                .collect(),
        )
    }
}

impl StateRep for AffineStateRep {
    fn space(&self) -> &OnticSpace {
        &self.space
    }

    fn mu(&self, rho: &DensityOp) -> Result<OnticFunction> {
        Ok(self.eval(rho))
    }
}

/// `ξ_{E(m,p)}(λ) = p·B(λ) + m·D(λ) + F(λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAffineEffect")]
pub struct AffineEffectRep {
    pub(crate) space: OnticSpace,
    #[serde(rename = "B")]
    pub(crate) b: [Vec<f64>; 3],
    #[serde(rename = "D")]
    pub(crate) d: Vec<f64>,
    #[serde(rename = "F")]
    pub(crate) f: Vec<f64>,
}

#[derive(Deserialize)]
struct RawAffineEffect {
    space: Option<OnticSpace>,
    #[serde(rename = "B")]
    b: [Vec<f64>; 3],
    #[serde(rename = "D")]
    d: Vec<f64>,
    #[serde(rename = "F")]
    f: Vec<f64>,
}

impl TryFrom<RawAffineEffect> for AffineEffectRep {
    type Error = Error;

    fn try_from(raw: RawAffineEffect) -> Result<Self> {
        let space = match raw.space {
            Some(s) => s,
            None => OnticSpace::uniform(raw.d.len())?,
        };
        AffineEffectRep::new(space, raw.b, raw.d, raw.f)
    }
}

impl AffineEffectRep {
    pub fn new(space: OnticSpace, b: [Vec<f64>; 3], d: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        for (i, bi) in b.iter().enumerate() {
            space.expect_len(&format!("B{}", i + 1), bi.len())?;
        }
        space.expect_len("D", d.len())?;
        space.expect_len("F", f.len())?;
        Ok(Self { space, b, d, f })
    }

    pub fn from_points(space: OnticSpace, b: &[Vec3], d: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        let cols = std::array::from_fn(|i| b.iter().map(|v| v[i]).collect());
        Self::new(space, cols, d, f)
    }

    pub fn b_at(&self, lambda: usize) -> Vec3 {
        [self.b[0][lambda], self.b[1][lambda], self.b[2][lambda]]
    }

    pub fn b(&self) -> &[Vec<f64>; 3] {
        &self.b
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn eval(&self, e: &PovmElement) -> OnticFunction {
        let (m, p) = (e.m(), e.p());
        OnticFunction(
            (0..self.space.len())
                .map(|l| dot(&p, &self.b_at(l)) + m * self.d[l] + self.f[l])
                .collect(),
        )
    }
}

impl EffectRep for AffineEffectRep {
    fn space(&self) -> &OnticSpace {
        &self.space
    }

    fn xi(&self, e: &PovmElement) -> Result<OnticFunction> {
        Ok(self.eval(e))
    }
}

/// Bloch vectors closer than this are the same catalog entry.
const CATALOG_MATCH: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub state: DensityOp,
    pub mu: OnticFunction,
}

/// State representation given by an explicit table; undefined elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTabulated")]
pub struct TabulatedStateRep {
    space: OnticSpace,
    catalog: Vec<CatalogEntry>,
}

#[derive(Deserialize)]
struct RawTabulated {
    space: OnticSpace,
    catalog: Vec<CatalogEntry>,
}

impl TryFrom<RawTabulated> for TabulatedStateRep {
    type Error = Error;

    fn try_from(raw: RawTabulated) -> Result<Self> {
        TabulatedStateRep::new(raw.space, raw.catalog)
    }
}

impl TabulatedStateRep {
    pub fn new(space: OnticSpace, catalog: Vec<CatalogEntry>) -> Result<Self> {
        for entry in &catalog {
            space.expect_len("catalog entry", entry.mu.len())?;
        }
        Ok(Self { space, catalog })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.catalog
    }
}

impl StateRep for TabulatedStateRep {
    fn space(&self) -> &OnticSpace {
        &self.space
    }

    fn mu(&self, rho: &DensityOp) -> Result<OnticFunction> {
        let x = rho.bloch();
        self.catalog
            .iter()
            .find(|e| norm(&crate::pauli::sub(&e.state.bloch(), &x)) <= CATALOG_MATCH)
            .map(|e| e.mu.clone())
            .ok_or(Error::UncatalogedState(x))
    }

    fn catalog(&self) -> Option<Vec<DensityOp>> {
        Some(self.catalog.iter().map(|e| e.state).collect())
    }
}

/// Free-function form of [`StateRep::mu`].
pub fn mu_eval<R: StateRep + ?Sized>(rep: &R, rho: &DensityOp) -> Result<OnticFunction> {
    rep.mu(rho)
}

/// Free-function form of [`EffectRep::xi`].
pub fn xi_eval<R: EffectRep + ?Sized>(rep: &R, e: &PovmElement) -> Result<OnticFunction> {
    rep.xi(e)
}

/// Born-rule reproduction: `|⟨μ_ρ, ξ_E⟩_w − Tr(ρE)| ≤ tol` on every sample.
pub fn check_qpr3<S, E>(
    srep: &S,
    erep: &E,
    samples: &[(DensityOp, PovmElement)],
    tol: f64,
) -> Result<CheckReport>
where
    S: StateRep + ?Sized,
    E: EffectRep + ?Sized,
{
    let space = srep.space();
    space.ensure_same(erep.space())?;
    let mut worst = Worst::default();
    for (k, (rho, e)) in samples.iter().enumerate() {
        let mu = srep.mu(rho)?;
        let xi = erep.xi(e)?;
        let integral = space.inner(mu.values(), xi.values());
        let born = born_probability(rho, e);
        worst.offer((integral - born).abs(), || {
            json!({"sample": k, "state": rho, "effect": e, "integral": integral, "born": born})
        });
    }
    Ok(worst.into_report(tol))
}

/// The probe pairs whose success implies Born-rule reproduction everywhere
/// for affine representations.
pub fn qpr3_probe_pairs() -> Vec<(DensityOp, PovmElement)> {
    let mut states = vec![DensityOp::maximally_mixed()];
    let mut effects = vec![PovmElement::zero(), PovmElement::identity()];
    for i in 0..3 {
        let e = crate::pauli::axis(i);
        states.push(DensityOp::new(e).expect("unit vector"));
        effects.push(PovmElement::new(0.5, scale(0.5, &e)).expect("probe"));
        effects.push(PovmElement::new(0.5, scale(-0.5, &e)).expect("probe"));
    }
    states
        .iter()
        .flat_map(|r| effects.iter().map(move |e| (*r, *e)))
        .collect()
}

/// `∑_λ w_λ μ_ρ(λ) = 1` for each state.
pub fn check_normalization<S: StateRep + ?Sized>(
    srep: &S,
    states: &[DensityOp],
    tol: f64,
) -> Result<CheckReport> {
    let mut worst = Worst::default();
    for rho in states {
        let total = srep.space().integrate(srep.mu(rho)?.values());
        worst.offer((total - 1.0).abs(), || json!({"state": rho, "integral": total}));
    }
    Ok(worst.into_report(tol))
}

/// `∑_k ξ_{E_k}(λ) = 1` at every point.
pub fn check_unit_sum<E: EffectRep + ?Sized>(
    erep: &E,
    povm: &Povm,
    tol: f64,
) -> Result<CheckReport> {
    let space = erep.space();
    let mut total = vec![0.0; space.len()];
    for e in &povm.elements {
        for (t, v) in total.iter_mut().zip(erep.xi(e)?.0) {
            *t += v;
        }
    }
    let mut worst = Worst::default();
    for (l, t) in total.iter().enumerate() {
        worst.offer((t - 1.0).abs(), || {
            json!({"point": space.label(l), "sum": t})
        });
    }
    Ok(worst.into_report(tol))
}

/// A weighted operand in a convex combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term<T> {
    pub weight: f64,
    #[serde(flatten)]
    pub operand: T,
}

impl<T> Term<T> {
    pub fn new(weight: f64, operand: T) -> Self {
        Self { weight, operand }
    }
}

/// Two convex combinations that denote the same operator. Convex-linearity
/// requires the represented functions of both sides to agree pointwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRelation<T> {
    pub left: Vec<Term<T>>,
    pub right: Vec<Term<T>>,
}

/// Largest pointwise gap across a relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationDefect {
    pub defect: f64,
    pub point: usize,
    pub left_value: f64,
    pub right_value: f64,
}

fn combine_functions<T>(
    n: usize,
    terms: &[Term<T>],
    eval: &impl Fn(&T) -> Result<OnticFunction>,
) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; n];
    for t in terms {
        for (a, v) in acc.iter_mut().zip(eval(&t.operand)?.0) {
            *a += t.weight * v;
        }
    }
    Ok(acc)
}

fn relation_defect_with<T>(
    n: usize,
    rel: &ConvexRelation<T>,
    eval: impl Fn(&T) -> Result<OnticFunction>,
) -> Result<RelationDefect> {
    let left = combine_functions(n, &rel.left, &eval)?;
    let right = combine_functions(n, &rel.right, &eval)?;
    let mut best = RelationDefect {
        defect: 0.0,
        point: 0,
        left_value: left.first().copied().unwrap_or(0.0),
        right_value: right.first().copied().unwrap_or(0.0),
    };
    for (l, (a, b)) in left.iter().zip(&right).enumerate() {
        let d = (a - b).abs();
        if d > best.defect {
            best = RelationDefect {
                defect: d,
                point: l,
                left_value: *a,
                right_value: *b,
            };
        }
    }
    Ok(best)
}

pub fn state_relation_defect<S: StateRep + ?Sized>(
    rep: &S,
    rel: &ConvexRelation<DensityOp>,
) -> Result<RelationDefect> {
    relation_defect_with(rep.space().len(), rel, |r| rep.mu(r))
}

pub fn effect_relation_defect<E: EffectRep + ?Sized>(
    rep: &E,
    rel: &ConvexRelation<PovmElement>,
) -> Result<RelationDefect> {
    relation_defect_with(rep.space().len(), rel, |e| rep.xi(e))
}

/// Mixture relations available inside a catalog: `x_k = t·x_i + (1−t)·x_j`
/// with `t ∈ [0, 1]`.
pub fn catalog_mixtures(catalog: &[DensityOp]) -> Vec<ConvexRelation<DensityOp>> {
    let mut out = Vec::new();
    for i in 0..catalog.len() {
        for j in (i + 1)..catalog.len() {
            let (xi, xj) = (catalog[i].bloch(), catalog[j].bloch());
            let d = crate::pauli::sub(&xi, &xj);
            let dd = dot(&d, &d);
            if dd <= CATALOG_MATCH {
                continue;
            }
            for (k, rho) in catalog.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let rel = crate::pauli::sub(&rho.bloch(), &xj);
                let t = dot(&rel, &d) / dd;
                let off = norm(&crate::pauli::sub(&rel, &scale(t, &d)));
                if off <= CATALOG_MATCH && (-CATALOG_MATCH..=1.0 + CATALOG_MATCH).contains(&t) {
                    out.push(ConvexRelation {
                        left: vec![Term::new(1.0, *rho)],
                        right: vec![Term::new(t, catalog[i]), Term::new(1.0 - t, catalog[j])],
                    });
                }
            }
        }
    }
    out
}

/// Seeded random mixtures of two or three random states.
pub fn random_mixtures(seed: u64, trials: usize) -> Vec<ConvexRelation<DensityOp>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let k = rng.random_range(2..=3);
            let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..1.0) + 1e-3).collect();
            let total: f64 = raw.iter().sum();
            let terms: Vec<Term<DensityOp>> = raw
                .iter()
                .map(|w| Term::new(w / total, random_density(&mut rng)))
                .collect();
            let items: Vec<(f64, DensityOp)> =
                terms.iter().map(|t| (t.weight, t.operand)).collect();
            let target = mix(&items, 1e-9).expect("normalized weights");
            ConvexRelation {
                left: vec![Term::new(1.0, target)],
                right: terms,
            }
        })
        .collect()
}

/// Convex-linearity on the state side. Catalog-backed representations are
/// checked on every mixture relation inside their catalog; total ones on
/// `trials` seeded random mixtures.
pub fn check_convex_linearity<S: StateRep + ?Sized>(
    rep: &S,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    let relations = match rep.catalog() {
        Some(cat) => catalog_mixtures(&cat),
        None => random_mixtures(seed, trials),
    };
    check_relations(rep, &relations, tol)
}

pub fn check_relations<S: StateRep + ?Sized>(
    rep: &S,
    relations: &[ConvexRelation<DensityOp>],
    tol: f64,
) -> Result<CheckReport> {
    let mut worst = Worst::default();
    for rel in relations {
        let d = state_relation_defect(rep, rel)?;
        worst.offer(d.defect, || {
            json!({
                "relation": rel,
                "point": rep.space().label(d.point),
                "left_value": d.left_value,
                "right_value": d.right_value,
            })
        });
    }
    Ok(worst.into_report(tol))
}

/// Minimum of `μ_ρ(λ)` over all densities and points, with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateNegativity {
    pub min_value: f64,
    pub point: usize,
    pub state: DensityOp,
}

/// `min_λ C(λ) − ‖A(λ)‖`, attained at `x = −A(λ)/‖A(λ)‖` (or `x = 0`).
pub fn negativity(srep: &AffineStateRep) -> StateNegativity {
    let mut best: Option<StateNegativity> = None;
    for l in 0..srep.space.len() {
        let a = srep.a_at(l);
        let r = norm(&a);
        let x = if r > 0.0 { scale(-1.0 / r, &a) } else { ZERO3 };
        let value = srep.c[l] - r;
        if best.is_none_or(|b| value < b.min_value) {
            best = Some(StateNegativity {
                min_value: value,
                point: l,
                state: DensityOp::with_tolerance(x, 1e-12).expect("unit or zero vector"),
            });
        }
    }
    best.expect("ontic spaces are nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectNegativity {
    pub min_value: f64,
    pub point: usize,
    pub effect: PovmElement,
}

/// Minimum of `ξ_E(λ)` over the effect double cone. The value is piecewise
/// linear in `m` once `p = −min(m, 1−m)·B/‖B‖`, so `m ∈ {0, ½, 1}` suffice.
pub fn effect_negativity(erep: &AffineEffectRep) -> EffectNegativity {
    let mut best: Option<EffectNegativity> = None;
    for l in 0..erep.space.len() {
        let b = erep.b_at(l);
        let r = norm(&b);
        let dir = if r > 0.0 { scale(-1.0 / r, &b) } else { ZERO3 };
        for m in [0.0, 0.5, 1.0] {
            let radius = f64::min(m, 1.0 - m);
            let p = if radius > 0.0 { scale(radius, &dir) } else { ZERO3 };
            let value = m * erep.d[l] + erep.f[l] - radius * r;
            if best.is_none_or(|bst| value < bst.min_value) {
                best = Some(EffectNegativity {
                    min_value: value,
                    point: l,
                    effect: PovmElement::with_tolerance(m, p, 1e-12)
                        .expect("cone boundary"),
                });
            }
        }
    }
    best.expect("ontic spaces are nonempty")
}

/// Sum of Bloch vectors, used when checking mixtures by hand.
pub fn weighted_bloch(terms: &[Term<DensityOp>]) -> Vec3 {
    terms
        .iter()
        .fold(ZERO3, |acc, t| add(&acc, &scale(t.weight, &t.operand.bloch())))
}
