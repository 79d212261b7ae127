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

//! Affine hulls and translated-linear extensions.
//!
//! A map that is convex-linear on a point set `S` extends uniquely to a
//! translated-linear map `v ↦ w₀ + h(v − u₀)` on the affine hull of `S`,
//! where `h` is linear on the subspace parallel to the hull. A purely linear
//! extension exists only when the data admit one; when they do not, a linear
//! dependency `∑cᵢsᵢ = 0` with `∑cᵢf(sᵢ) ≠ 0` witnesses the failure.
//!
//! Rank decisions use singular values relative to the largest one.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Relative singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-9;

/// Sample of a vector-valued map: `points[i] ↦ values[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPvs")]
pub struct PointValueSet {
    points: Vec<Vec<f64>>,
    values: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawPvs {
    points: Vec<Vec<f64>>,
    values: Vec<RawValue>,
}

/// Values may be given as scalars or as vectors.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl TryFrom<RawPvs> for PointValueSet {
    type Error = Error;

    fn try_from(raw: RawPvs) -> Result<Self> {
        let values = raw
            .values
            .into_iter()
            .map(|v| match v {
                RawValue::Scalar(x) => vec![x],
                RawValue::Vector(v) => v,
            })
            .collect();
        PointValueSet::new(raw.points, values)
    }
}

fn uniform_dim(rows: &[Vec<f64>], what: &str) -> Result<usize> {
    let n = rows[0].len();
    if n == 0 {
        return Err(Error::InvalidPointSet(format!("{what} have dimension 0")));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::InvalidPointSet(format!(
            "{what}[{bad}] has dimension {}, expected {n}",
            rows[bad].len()
        )));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidPointSet(format!("{what} contain non-finite entries")));
    }
    Ok(n)
}

impl PointValueSet {
    pub fn new(points: Vec<Vec<f64>>, values: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPointSet("no points".into()));
        }
        if points.len() != values.len() {
            return Err(Error::InvalidPointSet(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        uniform_dim(&points, "points")?;
        uniform_dim(&values, "values")?;
        Ok(Self { points, values })
    }

    /// Scalar-valued convenience constructor.
    pub fn scalar(points: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        Self::new(points, values.into_iter().map(|v| vec![v]).collect())
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn domain_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.values[0].len()
    }

    fn value_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.len(), self.codomain_dim(), |i, j| self.values[i][j])
    }

    fn value_scale(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dotv(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normv(a: &[f64]) -> f64 {
    dotv(a, a).sqrt()
}

/// `base + span(basis)` with an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub base: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Coordinates of `v − base` in the basis.
    pub fn coords(&self, v: &[f64]) -> Vec<f64> {
        let d = sub(v, &self.base);
        self.basis.iter().map(|q| dotv(q, &d)).collect()
    }

    /// Norm of the component of `v − base` orthogonal to the basis.
    pub fn residual(&self, v: &[f64]) -> f64 {
        let mut d = sub(v, &self.base);
        for q in &self.basis {
            let t = dotv(q, &d);
            d.iter_mut().zip(q).for_each(|(x, qi)| *x -= t * qi);
        }
        normv(&d)
    }

    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        v.len() == self.ambient_dim()
            && self.residual(v) <= tol * (1.0 + normv(&sub(v, &self.base)))
    }
}

fn numerical_rank(m: &DMatrix<f64>, rank_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let smax = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * smax).count()
}

pub fn affine_hull(points: &[Vec<f64>]) -> Result<AffineSubspace> {
    affine_hull_with(points, RANK_TOL)
}

/// Affine hull with base at the first point and an orthonormal basis built
/// by pivoted Gram–Schmidt on the differences `vᵢ − v₀`.
pub fn affine_hull_with(points: &[Vec<f64>], rank_tol: f64) -> Result<AffineSubspace> {
    if points.is_empty() {
        return Err(Error::InvalidPointSet("no points".into()));
    }
    let n = uniform_dim(points, "points")?;
    let base = points[0].clone();
    let mut diffs: Vec<Vec<f64>> = Vec::new();
    for p in &points[1..] {
        let d = sub(p, &base);
        if normv(&d) > 0.0 && !diffs.iter().any(|q| q == &d) {
            diffs.push(d);
        }
    }
    let m = DMatrix::from_fn(n, diffs.len(), |i, j| diffs[j][i]);
    let rank = numerical_rank(&m, rank_tol);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(rank);
    let mut residuals = diffs;
    while basis.len() < rank {
        let (best, _) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, normv(r)))
            .fold((0, -1.0), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
        let mut q = residuals.swap_remove(best);
        // second pass against accumulated rounding
        for _ in 0..2 {
            for b in &basis {
                let t = dotv(b, &q);
                q.iter_mut().zip(b).for_each(|(x, bi)| *x -= t * bi);
            }
        }
        let r = normv(&q);
        q.iter_mut().for_each(|x| *x /= r);
        for res in residuals.iter_mut() {
            let t = dotv(&q, res);
            res.iter_mut().zip(&q).for_each(|(x, qi)| *x -= t * qi);
        }
        basis.push(q);
    }
    Ok(AffineSubspace { base, basis })
}

/// `v ↦ w₀ + h·coords(v − u₀)` on `u₀ + span(basis)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatedLinearMap {
    pub u0: Vec<f64>,
    pub w0: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
    /// `codomain × hull-dim`, acting on basis coordinates.
    pub h: Vec<Vec<f64>>,
}

/// Linear map on the whole ambient space, `v ↦ linear·v + offset`. Unique
/// only when the hull is the whole space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmbientExtension {
    pub linear: Vec<Vec<f64>>,
    pub offset: Vec<f64>,
    pub unique: bool,
}

impl TranslatedLinearMap {
    pub fn hull(&self) -> AffineSubspace {
        AffineSubspace {
            base: self.u0.clone(),
            basis: self.basis.clone(),
        }
    }

    /// Evaluates at `v`, which must lie in the affine hull.
    pub fn eval(&self, v: &[f64], tol: f64) -> Result<Vec<f64>> {
        if v.len() != self.u0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.u0.len(),
                found: v.len(),
            });
        }
        let hull = self.hull();
        if !hull.contains(v, tol) {
            return Err(Error::InvalidPointSet(format!(
                "query point lies off the affine hull (residual {:.3e})",
                hull.residual(v)
            )));
        }
        let c = hull.coords(v);
        Ok(self
            .w0
            .iter()
            .zip(&self.h)
            .map(|(w, row)| w + dotv(row, &c))
            .collect())
    }

    /// Extends `h` by zero on the orthogonal complement of the hull.
    pub fn extend_to_ambient(&self) -> AmbientExtension {
        let n = self.u0.len();
        let linear: Vec<Vec<f64>> = self
            .h
            .iter()
            .map(|row| {
                (0..n)
                    .map(|k| row.iter().zip(&self.basis).map(|(hr, q)| hr * q[k]).sum())
                    .collect()
            })
            .collect();
        let offset = self
            .w0
            .iter()
            .zip(&linear)
            .map(|(w, row)| w - dotv(row, &self.u0))
            .collect();
        AmbientExtension {
            linear,
            offset,
            unique: self.basis.len() == n,
        }
    }
}

/// Dependency `∑cᵢsᵢ = 0` whose image `∑cᵢf(sᵢ)` is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DependencyWitness {
    pub coefficients: Vec<f64>,
    /// `∑cᵢ f(sᵢ)`.
    pub value_gap: Vec<f64>,
}

struct Fit {
    coef: DMatrix<f64>,
    residual: DMatrix<f64>,
    worst: f64,
}

/// Least squares through a relative-threshold SVD.
fn least_squares(design: &DMatrix<f64>, y: &DMatrix<f64>) -> Fit {
    let cols = design.ncols();
    let coef = if cols == 0 {
        DMatrix::zeros(0, y.ncols())
    } else {
        let svd = design.clone().svd(true, true);
        let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
        let eps = (RANK_TOL * smax).max(f64::MIN_POSITIVE);
        svd.solve(y, eps).expect("SVD computed with U and V")
    };
    let residual = if cols == 0 { y.clone() } else { y - design * &coef };
    let worst = residual
        .row_iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    Fit {
        coef,
        residual,
        worst,
    }
}

/// The residual column with the largest norm is orthogonal to the design's
/// columns, so it is a dependency among the rows; scaled to max-abs 1.
fn dependency_from_residual(residual: &DMatrix<f64>, pvs: &PointValueSet) -> DependencyWitness {
    let j = (0..residual.ncols())
        .max_by(|&a, &b| {
            residual
                .column(a)
                .norm()
                .total_cmp(&residual.column(b).norm())
        })
        .unwrap_or(0);
    let col = residual.column(j);
    let amax = col.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let coefficients: Vec<f64> = if amax > 0.0 {
        col.iter().map(|c| c / amax).collect()
    } else {
        vec![0.0; col.len()]
    };
    let value_gap = (0..pvs.codomain_dim())
        .map(|k| {
            coefficients
                .iter()
                .zip(&pvs.values)
                .map(|(c, v)| c * v[k])
                .sum()
        })
        .collect();
    DependencyWitness {
        coefficients,
        value_gap,
    }
}

fn affine_fit(pvs: &PointValueSet) -> Result<(AffineSubspace, Fit)> {
    let hull = affine_hull(&pvs.points)?;
    let r = hull.dim();
    let design = DMatrix::from_fn(pvs.len(), r + 1, |i, j| {
        if j == 0 {
            1.0
        } else {
            let d = sub(&pvs.points[i], &hull.base);
            dotv(&hull.basis[j - 1], &d)
        }
    });
    Ok((hull, least_squares(&design, &pvs.value_matrix())))
}

fn residual_tol(pvs: &PointValueSet, tol: f64) -> f64 {
    tol * (1.0 + pvs.value_scale())
}

/// Passes iff the affine hull of the graph is the graph of a function, i.e.
/// every affine dependency among the points carries over to the values.
pub fn convex_linearity_check(pvs: &PointValueSet, tol: f64) -> Result<CheckReport> {
    let (_, fit) = affine_fit(pvs)?;
    let threshold = residual_tol(pvs, tol);
    let witness = if fit.worst > threshold {
        json!(dependency_from_residual(&fit.residual, pvs))
    } else {
        serde_json::Value::Null
    };
    Ok(CheckReport {
        pass: fit.worst <= threshold,
        worst_defect: fit.worst,
        witness,
    })
}

/// The unique translated-linear extension of convex-linear data to the
/// affine hull of the points.
pub fn translated_linear_extend(pvs: &PointValueSet, tol: f64) -> Result<TranslatedLinearMap> {
    let (hull, fit) = affine_fit(pvs)?;
    if fit.worst > residual_tol(pvs, tol) {
        let witness = dependency_from_residual(&fit.residual, pvs);
        return Err(Error::ExtensionImpossible {
            residual: fit.worst,
            witness: witness.coefficients,
        });
    }
    let m = pvs.codomain_dim();
    let w0 = (0..m).map(|k| fit.coef[(0, k)]).collect();
    let h = (0..m)
        .map(|k| (1..=hull.dim()).map(|j| fit.coef[(j, k)]).collect())
        .collect();
    Ok(TranslatedLinearMap {
        u0: hull.base,
        w0,
        basis: hull.basis,
        h,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearExtension {
    pub exists: bool,
    pub residual: f64,
    /// `codomain × domain` minimum-norm linear fit.
    pub linear: Vec<Vec<f64>>,
    pub witness: Option<DependencyWitness>,
}

/// Whether one linear map (no translation) reproduces every pair.
pub fn linear_extension_exists(pvs: &PointValueSet, tol: f64) -> LinearExtension {
    let n = pvs.domain_dim();
    let design = DMatrix::from_fn(pvs.len(), n, |i, j| pvs.points[i][j]);
    let fit = least_squares(&design, &pvs.value_matrix());
    let exists = fit.worst <= residual_tol(pvs, tol);
    let linear = (0..pvs.codomain_dim())
        .map(|k| (0..n).map(|j| fit.coef[(j, k)]).collect())
        .collect();
    LinearExtension {
        exists,
        residual: fit.worst,
        linear,
        witness: (!exists).then(|| dependency_from_residual(&fit.residual, pvs)),
    }
}

/// `∑cᵢsᵢ` for a witness, for independent re-checking.
pub fn combine_points(points: &[Vec<f64>], coefficients: &[f64]) -> Vec<f64> {
    let n = points.first().map_or(0, Vec::len);
    let acc = points
        .iter()
        .zip(coefficients)
        .fold(DVector::zeros(n), |acc, (p, c)| {
            acc + DVector::from_column_slice(p) * *c
        });
    acc.iter().copied().collect()
}
