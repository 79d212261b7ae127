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

//! Restriction of representations from a `d`-dimensional Hilbert space to a
//! subspace.
//!
//! Densities on the subspace lift by `ρ ↦ VρV†`. Effects lift by
//! `E ↦ VEV† + ⟨α|E|α⟩(I − VV†)`, which keeps identity and zero fixed and
//! maps POVMs to POVMs. Traces `Tr(ρ̄Ē) = Tr(ρE)` are preserved, so any
//! representation on the big space restricts to one on the subspace over the
//! same ontic space.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ontic::{EffectRep, OnticFunction, OnticSpace, StateRep};
use crate::pauli::{Complex64, DensityOp, PovmElement};
use crate::report::CheckReport;

type CMatrix = DMatrix<Complex64>;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// JSON form of a complex matrix: rows of `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct ComplexRows(Vec<Vec<[f64; 2]>>);

fn rows_to_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch {
            expected: ncols,
            found: rows[bad].len(),
        });
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Hermitian `d × d` operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRows", into = "ComplexRows")]
pub struct MatrixOp {
    entries: CMatrix,
}

impl TryFrom<ComplexRows> for MatrixOp {
    type Error = Error;

    fn try_from(rows: ComplexRows) -> Result<Self> {
        MatrixOp::new(rows_to_matrix(&rows.0)?, crate::DEFAULT_TOL)
    }
}

impl From<MatrixOp> for ComplexRows {
    fn from(m: MatrixOp) -> Self {
        ComplexRows(matrix_to_rows(&m.entries))
    }
}

impl MatrixOp {
    /// Accepts a square matrix Hermitian to `tol` and stores its Hermitian part.
    pub fn new(entries: CMatrix, tol: f64) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        let asym = max_abs(&(&entries - entries.adjoint()));
        if asym > tol {
            return Err(Error::NotHermitian(asym));
        }
        let entries = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self { entries })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            entries: CMatrix::identity(d, d),
        }
    }

    pub fn zero(d: usize) -> Self {
        Self {
            entries: CMatrix::zeros(d, d),
        }
    }

    /// Real diagonal operator.
    pub fn diagonal(values: &[f64]) -> Self {
        let d = values.len();
        Self {
            entries: CMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    Complex64::new(values[i], 0.0)
                } else {
                    czero()
                }
            }),
        }
    }

    pub fn from_density(rho: &DensityOp) -> Self {
        Self::from_qubit(rho.to_hermitian().to_matrix())
    }

    pub fn from_effect(e: &PovmElement) -> Self {
        Self::from_qubit(e.to_hermitian().to_matrix())
    }

    fn from_qubit(m: nalgebra::Matrix2<Complex64>) -> Self {
        Self {
            entries: CMatrix::from_fn(2, 2, |i, j| m[(i, j)]),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Trace one and minimum eigenvalue `≥ −tol`.
    pub fn check_density(&self, tol: f64) -> Result<()> {
        let tr = self.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let lo = self.eigenvalues()[0];
        if lo < -tol {
            return Err(Error::InvalidDensity(format!("eigenvalue {lo} is negative")));
        }
        Ok(())
    }

    /// Spectrum within `[−tol, 1 + tol]`.
    pub fn check_effect(&self, tol: f64) -> Result<()> {
        let ev = self.eigenvalues();
        let (lo, hi) = (ev[0], ev[ev.len() - 1]);
        if lo < -tol || hi > 1.0 + tol {
            return Err(Error::InvalidEffect(format!(
                "spectrum [{lo}, {hi}] leaves [0, 1]"
            )));
        }
        Ok(())
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            entries: &self.entries * Complex64::new(s, 0.0),
        }
    }

    pub fn plus(&self, other: &MatrixOp) -> Self {
        Self {
            entries: &self.entries + &other.entries,
        }
    }
}

/// `Tr(AB)` for Hermitian `A`, `B`.
pub fn trace_product(a: &MatrixOp, b: &MatrixOp) -> f64 {
    (&a.entries * &b.entries).trace().re
}

/// Real coordinates of a Hermitian matrix in an orthonormal basis for the
/// Hilbert–Schmidt inner product: `Tr(AB) = vec(A)·vec(B)`.
pub fn hermitian_vec(m: &MatrixOp) -> Vec<f64> {
    let d = m.dim();
    let e = &m.entries;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(e[(i, i)].re);
    }
    let r2 = std::f64::consts::SQRT_2;
    for i in 0..d {
        for j in (i + 1)..d {
            out.push(r2 * e[(i, j)].re);
            out.push(r2 * e[(i, j)].im);
        }
    }
    out
}

/// Isometric inclusion of a `k`-dimensional subspace into `C^d`, plus the
/// anchor vector used when lifting effects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEmbedding", into = "RawEmbedding")]
pub struct Embedding {
    v: CMatrix,
    alpha: DVector<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawEmbedding {
    #[serde(rename = "V")]
    v: Vec<Vec<[f64; 2]>>,
    alpha: Option<Vec<[f64; 2]>>,
}

impl TryFrom<RawEmbedding> for Embedding {
    type Error = Error;

    fn try_from(raw: RawEmbedding) -> Result<Self> {
        let v = rows_to_matrix(&raw.v)?;
        match raw.alpha {
            Some(a) => {
                let alpha =
                    DVector::from_iterator(a.len(), a.iter().map(|z| Complex64::new(z[0], z[1])));
                Embedding::new(v, alpha, crate::DEFAULT_TOL)
            }
            None => Embedding::with_default_anchor(v, crate::DEFAULT_TOL),
        }
    }
}

impl From<Embedding> for RawEmbedding {
    fn from(e: Embedding) -> Self {
        RawEmbedding {
            v: matrix_to_rows(&e.v),
            alpha: Some(e.alpha.iter().map(|z| [z.re, z.im]).collect()),
        }
    }
}

impl Embedding {
    pub fn new(v: CMatrix, alpha: DVector<Complex64>, tol: f64) -> Result<Self> {
        let (d, k) = v.shape();
        if k == 0 || k > d {
            return Err(Error::InvalidIsometry(format!("{d}×{k} is not a valid isometry shape")));
        }
        let gram = v.adjoint() * &v;
        let defect = max_abs(&(gram - CMatrix::identity(k, k)));
        if defect > tol {
            return Err(Error::InvalidIsometry(format!(
                "columns are not orthonormal (V†V − I max {defect:.3e})"
            )));
        }
        if alpha.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: alpha.len(),
            });
        }
        let an = alpha.norm();
        if (an - 1.0).abs() > tol {
            return Err(Error::InvalidIsometry(format!("anchor has norm {an}, not 1")));
        }
        Ok(Self { v, alpha })
    }

    /// Anchor at the first subspace basis vector.
    pub fn with_default_anchor(v: CMatrix, tol: f64) -> Result<Self> {
        let k = v.ncols();
        let mut alpha = DVector::zeros(k.max(1));
        alpha[0] = Complex64::new(1.0, 0.0);
        Self::new(v, alpha, tol)
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(d: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= d) {
            return Err(Error::InvalidIsometry(format!("basis index {} exceeds dimension {d}", bad + 1)));
        }
        let v = CMatrix::from_fn(d, indices.len(), |i, j| {
            if indices[j] == i {
                Complex64::new(1.0, 0.0)
            } else {
                czero()
            }
        });
        Self::with_default_anchor(v, 1e-12)
    }

    pub fn big_dim(&self) -> usize {
        self.v.nrows()
    }

    pub fn small_dim(&self) -> usize {
        self.v.ncols()
    }

    pub fn isometry(&self) -> &CMatrix {
        &self.v
    }

    pub fn anchor(&self) -> &DVector<Complex64> {
        &self.alpha
    }

    fn expect_small(&self, op: &MatrixOp) -> Result<()> {
        if op.dim() != self.small_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.small_dim(),
                found: op.dim(),
            });
        }
        Ok(())
    }
}

/// `ρ̄ = VρV†`.
pub fn lift_density(rho: &MatrixOp, emb: &Embedding) -> Result<MatrixOp> {
    emb.expect_small(rho)?;
    Ok(MatrixOp {
        entries: &emb.v * &rho.entries * emb.v.adjoint(),
    })
}

/// `Ē = VEV† + ⟨α|E|α⟩(I − VV†)`.
pub fn lift_effect(e: &MatrixOp, emb: &Embedding) -> Result<MatrixOp> {
    emb.expect_small(e)?;
    let d = emb.big_dim();
    let vv = &emb.v * emb.v.adjoint();
    let expect = (emb.alpha.adjoint() * &e.entries * &emb.alpha)[(0, 0)].re;
    let complement = CMatrix::identity(d, d) - vv;
    let lifted = &emb.v * &e.entries * emb.v.adjoint() + complement * Complex64::new(expect, 0.0);
    // rounding can leave a tiny anti-Hermitian part
    Ok(MatrixOp {
        entries: (&lifted + lifted.adjoint()) * Complex64::new(0.5, 0.0),
    })
}

/// `|Tr(ρ̄Ē) − Tr(ρE)| ≤ tol`.
pub fn trace_preservation_check(
    rho: &MatrixOp,
    e: &MatrixOp,
    emb: &Embedding,
    tol: f64,
) -> Result<CheckReport> {
    let small = trace_product(rho, e);
    let big = trace_product(&lift_density(rho, emb)?, &lift_effect(e, emb)?);
    let defect = (big - small).abs();
    Ok(CheckReport::new(
        defect,
        tol,
        json!({"small_trace": small, "lifted_trace": big}),
    ))
}

/// Query-based representation of a `d`-dimensional system. Implementations
/// must be stateless so checkers may call them concurrently.
pub trait OperatorRep: Sync {
    fn dim(&self) -> usize;

    fn space(&self) -> &OnticSpace;

    fn mu(&self, rho: &MatrixOp) -> Result<OnticFunction>;

    fn xi(&self, e: &MatrixOp) -> Result<OnticFunction>;
}

impl<T: OperatorRep + ?Sized> OperatorRep for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn space(&self) -> &OnticSpace {
        (**self).space()
    }

    fn mu(&self, rho: &MatrixOp) -> Result<OnticFunction> {
        (**self).mu(rho)
    }

    fn xi(&self, e: &MatrixOp) -> Result<OnticFunction> {
        (**self).xi(e)
    }
}

/// Representation built from an informationally complete POVM `{Fₖ}` and
/// its canonical dual frame `{Gₖ}`, on unit-weight points:
/// `μ_ρ(k) = Tr(Fₖ)·Tr(Gₖρ)` and `ξ_E(k) = Tr(FₖE)/Tr(Fₖ)`.
#[derive(Debug, Clone)]
pub struct FrameRep {
    dim: usize,
    space: OnticSpace,
    frame: Vec<MatrixOp>,
    frame_vecs: Vec<Vec<f64>>,
    dual_vecs: Vec<Vec<f64>>,
    traces: Vec<f64>,
}

pub fn frame_representation(d: usize, frame: Vec<MatrixOp>, tol: f64) -> Result<FrameRep> {
    let n = frame.len();
    let dim2 = d * d;
    if n == 0 {
        return Err(Error::RankDeficientFrame { rank: 0, required: dim2 });
    }
    let mut sum = MatrixOp::zero(d);
    for f in &frame {
        if f.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: f.dim() });
        }
        f.check_effect(tol)?;
        sum = sum.plus(f);
    }
    let defect = max_abs(&(sum.entries - CMatrix::identity(d, d)));
    if defect > tol {
        return Err(Error::InvalidPovm(format!(
            "frame elements do not sum to the identity (max deviation {defect:.3e})"
        )));
    }
    let frame_vecs: Vec<Vec<f64>> = frame.iter().map(hermitian_vec).collect();
    let synthesis = DMatrix::from_fn(dim2, n, |i, k| frame_vecs[k][i]);
    let svd = synthesis.svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > crate::affine::RANK_TOL * smax)
        .count();
    if rank < dim2 {
        return Err(Error::RankDeficientFrame { rank, required: dim2 });
    }
    let pinv = svd
        .pseudo_inverse(crate::affine::RANK_TOL * smax)
        .map_err(|e| Error::Query(e.to_string()))?;
    let dual_vecs = (0..n)
        .map(|k| pinv.row(k).iter().copied().collect())
        .collect();
    let traces: Vec<f64> = frame.iter().map(MatrixOp::trace).collect();
    if let Some(t) = traces.iter().find(|t| **t <= tol) {
        return Err(Error::InvalidPovm(format!("frame element with trace {t}")));
    }
    Ok(FrameRep {
        dim: d,
        space: OnticSpace::uniform(n)?,
        frame,
        frame_vecs,
        dual_vecs,
        traces,
    })
}

impl FrameRep {
    pub fn frame(&self) -> &[MatrixOp] {
        &self.frame
    }

    fn expect_dim(&self, op: &MatrixOp) -> Result<()> {
        if op.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: op.dim() });
        }
        Ok(())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl OperatorRep for FrameRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn space(&self) -> &OnticSpace {
        &self.space
    }

    fn mu(&self, rho: &MatrixOp) -> Result<OnticFunction> {
        self.expect_dim(rho)?;
        let r = hermitian_vec(rho);
        Ok(OnticFunction(
            self.dual_vecs
                .iter()
                .zip(&self.traces)
                .map(|(g, t)| t * dot(g, &r))
                .collect(),
        ))
    }

    fn xi(&self, e: &MatrixOp) -> Result<OnticFunction> {
        self.expect_dim(e)?;
        let v = hermitian_vec(e);
        Ok(OnticFunction(
            self.frame_vecs
                .iter()
                .zip(&self.traces)
                .map(|(f, t)| dot(f, &v) / t)
                .collect(),
        ))
    }
}

/// `μ′_ρ = μ_{ρ̄}` and `ξ′_E = ξ_{Ē}` over the big representation's space.
#[derive(Debug, Clone)]
pub struct RestrictedRep<R> {
    big: R,
    emb: Embedding,
}

pub fn restrict_representation<R: OperatorRep>(big: R, emb: Embedding) -> Result<RestrictedRep<R>> {
    if big.dim() != emb.big_dim() {
        return Err(Error::DimensionMismatch {
            expected: big.dim(),
            found: emb.big_dim(),
        });
    }
    Ok(RestrictedRep { big, emb })
}

impl<R> RestrictedRep<R> {
    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }
}

impl<R: OperatorRep> OperatorRep for RestrictedRep<R> {
    fn dim(&self) -> usize {
        self.emb.small_dim()
    }

    fn space(&self) -> &OnticSpace {
        self.big.space()
    }

    fn mu(&self, rho: &MatrixOp) -> Result<OnticFunction> {
        self.big.mu(&lift_density(rho, &self.emb)?)
    }

    fn xi(&self, e: &MatrixOp) -> Result<OnticFunction> {
        self.big.xi(&lift_effect(e, &self.emb)?)
    }
}

impl<R: OperatorRep> StateRep for RestrictedRep<R> {
    fn space(&self) -> &OnticSpace {
        self.big.space()
    }

    fn mu(&self, rho: &DensityOp) -> Result<OnticFunction> {
        OperatorRep::mu(self, &MatrixOp::from_density(rho))
    }
}

impl<R: OperatorRep> EffectRep for RestrictedRep<R> {
    fn space(&self) -> &OnticSpace {
        self.big.space()
    }

    fn xi(&self, e: &PovmElement) -> Result<OnticFunction> {
        OperatorRep::xi(self, &MatrixOp::from_effect(e))
    }
}

/// Qubit queries against a `d = 2` operator representation.
#[derive(Debug, Clone)]
pub struct QubitView<R>(pub R);

impl<R: OperatorRep> StateRep for QubitView<R> {
    fn space(&self) -> &OnticSpace {
        self.0.space()
    }

    fn mu(&self, rho: &DensityOp) -> Result<OnticFunction> {
        self.0.mu(&MatrixOp::from_density(rho))
    }
}

impl<R: OperatorRep> EffectRep for QubitView<R> {
    fn space(&self) -> &OnticSpace {
        self.0.space()
    }

    fn xi(&self, e: &PovmElement) -> Result<OnticFunction> {
        self.0.xi(&MatrixOp::from_effect(e))
    }
}

/// The tetrahedral qubit POVM `Fₖ = ¼(I + aₖ·σ)`.
pub fn sic_qubit_frame() -> Vec<MatrixOp> {
    crate::counterexamples::SicFrame::tetrahedron()
        .bloch_vectors
        .iter()
        .map(|a| {
            let e = PovmElement::new(0.25, crate::pauli::scale(0.25, a)).expect("SIC element");
            MatrixOp::from_effect(&e)
        })
        .collect()
}

fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let m = CMatrix::from_fn(d, d, |_, _| random_complex(rng));
    &m + m.adjoint()
}

/// Random unitary from the eigenvectors of a random Hermitian matrix.
fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    random_hermitian(rng, d).symmetric_eigen().eigenvectors
}

fn with_spectrum(u: &CMatrix, spectrum: &[f64]) -> MatrixOp {
    let d = spectrum.len();
    let diag = CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::new(spectrum[i], 0.0)
        } else {
            czero()
        }
    });
    let m = u * diag * u.adjoint();
    MatrixOp {
        entries: (&m + m.adjoint()) * Complex64::new(0.5, 0.0),
    }
}

pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize) -> MatrixOp {
    let raw: Vec<f64> = (0..d).map(|_| -rng.random_range(f64::EPSILON..1.0).ln()).collect();
    let total: f64 = raw.iter().sum();
    let spectrum: Vec<f64> = raw.iter().map(|x| x / total).collect();
    with_spectrum(&random_unitary(rng, d), &spectrum)
}

pub fn random_effect_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize) -> MatrixOp {
    let spectrum: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..=1.0)).collect();
    with_spectrum(&random_unitary(rng, d), &spectrum)
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DVector<Complex64> {
    loop {
        let v = DVector::from_fn(k, |_, _| random_complex(rng));
        let n = v.norm();
        if n > 1e-3 {
            return v / Complex64::new(n, 0.0);
        }
    }
}

/// Random `d × k` isometry with a random anchor.
pub fn random_embedding<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize) -> Embedding {
    let m = CMatrix::from_fn(d, k, |_, _| random_complex(rng));
    let q = m.qr().q();
    let alpha = random_unit_vector(rng, k);
    Embedding::new(q, alpha, 1e-9).expect("QR factor is an isometry")
}

/// Random `n`-outcome POVM: `Fⱼ = S^{-½} Aⱼ S^{-½}` with `Aⱼ` random positive
/// and `S = ∑Aⱼ`. Informationally complete almost surely when `n ≥ d²`.
pub fn random_povm<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize) -> Vec<MatrixOp> {
    let parts: Vec<CMatrix> = (0..n)
        .map(|_| {
            let m = CMatrix::from_fn(d, d, |_, _| random_complex(rng));
            &m * m.adjoint()
        })
        .collect();
    let total = parts.iter().fold(CMatrix::zeros(d, d), |acc, p| acc + p);
    let eig = total.symmetric_eigen();
    let inv_sqrt: Vec<f64> = eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect();
    let s = with_spectrum(&eig.eigenvectors, &inv_sqrt).entries;
    parts
        .iter()
        .map(|p| {
            let f = &s * p * &s;
            MatrixOp {
                entries: (&f + f.adjoint()) * Complex64::new(0.5, 0.0),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::sic_baseline;
    use crate::nogo::extract_coefficients;
    use crate::ontic::check_qpr3;
    use crate::pauli::{random_density, random_effect};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &MatrixOp, b: &MatrixOp, eps: f64) -> bool {
        max_abs(&(&a.entries - &b.entries)) <= eps
    }

    #[test]
    fn lift_density_examples() {
        let emb = Embedding::coordinate(3, &[0, 1]).unwrap();
        let rho = MatrixOp::diagonal(&[1.0, 0.0]);
        assert!(close(&lift_density(&rho, &emb).unwrap(), &MatrixOp::diagonal(&[1.0, 0.0, 0.0]), 0.0));
        let mixed = MatrixOp::diagonal(&[0.5, 0.5]);
        let lifted = lift_density(&mixed, &emb).unwrap();
        assert!(close(&lifted, &MatrixOp::diagonal(&[0.5, 0.5, 0.0]), 0.0));
        lifted.check_density(1e-12).unwrap();
    }

    #[test]
    fn lift_effect_examples() {
        let emb = Embedding::coordinate(3, &[0, 1]).unwrap();
        let id = lift_effect(&MatrixOp::identity(2), &emb).unwrap();
        assert!(close(&id, &MatrixOp::identity(3), 0.0));
        let zero = lift_effect(&MatrixOp::zero(2), &emb).unwrap();
        assert!(close(&zero, &MatrixOp::zero(3), 0.0));
        let proj = lift_effect(&MatrixOp::diagonal(&[1.0, 0.0]), &emb).unwrap();
        assert!(close(&proj, &MatrixOp::diagonal(&[1.0, 0.0, 1.0]), 0.0));
        let half = lift_effect(&MatrixOp::diagonal(&[0.5, 0.5]), &emb).unwrap();
        assert!(close(&half, &MatrixOp::diagonal(&[0.5, 0.5, 0.5]), 0.0));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let emb = Embedding::coordinate(3, &[0, 1]).unwrap();
        assert!(matches!(
            lift_density(&MatrixOp::identity(3), &emb),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(lift_effect(&MatrixOp::identity(1), &emb).is_err());
    }

    #[test]
    fn non_orthonormal_isometry_is_rejected() {
        let v = CMatrix::from_fn(3, 2, |i, j| Complex64::new(if i == j || (i == 0 && j == 1) { 1.0 } else { 0.0 }, 0.0));
        assert!(matches!(
            Embedding::with_default_anchor(v, 1e-9),
            Err(Error::InvalidIsometry(_))
        ));
        let bad_alpha = DVector::from_element(2, Complex64::new(1.0, 0.0));
        let v = Embedding::coordinate(3, &[0, 1]).unwrap().isometry().clone();
        assert!(Embedding::new(v, bad_alpha, 1e-9).is_err());
    }

    #[test]
    fn trace_preservation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let emb = random_embedding(&mut rng, 3, 2);
        let r = trace_preservation_check(
            &MatrixOp::diagonal(&[1.0, 0.0]),
            &MatrixOp::diagonal(&[0.5, 0.5]),
            &emb,
            1e-12,
        )
        .unwrap();
        assert!(r.pass);
        assert!((r.witness["small_trace"].as_f64().unwrap() - 0.5).abs() < 1e-15);
        let z = trace_preservation_check(&MatrixOp::diagonal(&[0.3, 0.7]), &MatrixOp::zero(2), &emb, 0.0)
            .unwrap();
        assert!(z.pass);
    }

    #[test]
    fn lifts_respect_mixtures_and_povms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 3..=5 {
            let emb = random_embedding(&mut rng, d, 2);
            let (r1, r2) = (random_density_matrix(&mut rng, 2), random_density_matrix(&mut rng, 2));
            let w = 0.3;
            let mixed = r1.scaled(w).plus(&r2.scaled(1.0 - w));
            let lhs = lift_density(&mixed, &emb).unwrap();
            let rhs = lift_density(&r1, &emb).unwrap().scaled(w).plus(&lift_density(&r2, &emb).unwrap().scaled(1.0 - w));
            assert!(close(&lhs, &rhs, 1e-12));

            let (e1, e2) = (random_effect_matrix(&mut rng, 2), random_effect_matrix(&mut rng, 2));
            let mixed = e1.scaled(w).plus(&e2.scaled(1.0 - w));
            let lhs = lift_effect(&mixed, &emb).unwrap();
            let rhs = lift_effect(&e1, &emb).unwrap().scaled(w).plus(&lift_effect(&e2, &emb).unwrap().scaled(1.0 - w));
            assert!(close(&lhs, &rhs, 1e-12));
            lhs.check_effect(1e-12).unwrap();

            let povm = random_povm(&mut rng, 2, 5);
            let sum = povm
                .iter()
                .map(|e| lift_effect(e, &emb).unwrap())
                .fold(MatrixOp::zero(d), |a, b| a.plus(&b));
            assert!(close(&sum, &MatrixOp::identity(d), 1e-12));
        }
    }

    #[test]
    fn sic_frame_reproduces_baseline() {
        let rep = frame_representation(2, sic_qubit_frame(), 1e-9).unwrap();
        let view = QubitView(&rep);
        let ex = extract_coefficients(&view, &view).unwrap();
        let (srep, erep) = sic_baseline();
        for l in 0..4 {
            for i in 0..3 {
                assert!((ex.a[i][l] - srep.a()[i][l]).abs() < 1e-12);
                assert!((ex.b[i][l] - erep.b()[i][l]).abs() < 1e-12);
            }
            assert!((ex.c[l] - 0.25).abs() < 1e-12);
            assert!((ex.d[l] - 1.0).abs() < 1e-12);
            assert!(ex.f[l].abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_mixed_state_is_uniform_for_equal_traces() {
        let rep = frame_representation(2, sic_qubit_frame(), 1e-9).unwrap();
        let mu = OperatorRep::mu(&rep, &MatrixOp::diagonal(&[0.5, 0.5])).unwrap();
        assert!(mu.values().iter().all(|v| (v - 0.25).abs() < 1e-12));

        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let frame = random_povm(&mut rng, 3, 9);
        let rep = frame_representation(3, frame, 1e-9).unwrap();
        let mu = OperatorRep::mu(&rep, &MatrixOp::diagonal(&[1.0 / 3.0; 3])).unwrap();
        let spread = mu.values().iter().fold(0.0f64, |a, b| a.max(*b)) - mu.min().0;
        assert!(spread > 1e-6, "unequal traces should give a non-uniform μ");
    }

    #[test]
    fn frame_rep_satisfies_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (d, n) in [(2, 4), (2, 7), (3, 9), (3, 12)] {
            let rep = frame_representation(d, random_povm(&mut rng, d, n), 1e-9).unwrap();
            let xi_i = OperatorRep::xi(&rep, &MatrixOp::identity(d)).unwrap();
            assert!(xi_i.values().iter().all(|v| (v - 1.0).abs() < 1e-12));
            let xi_0 = OperatorRep::xi(&rep, &MatrixOp::zero(d)).unwrap();
            assert!(xi_0.values().iter().all(|v| *v == 0.0));
            for _ in 0..20 {
                let rho = random_density_matrix(&mut rng, d);
                let e = random_effect_matrix(&mut rng, d);
                let mu = OperatorRep::mu(&rep, &rho).unwrap();
                let xi = OperatorRep::xi(&rep, &e).unwrap();
                assert!((rep.space().integrate(mu.values()) - 1.0).abs() < 1e-9);
                let integral = rep.space().inner(mu.values(), xi.values());
                assert!((integral - trace_product(&rho, &e)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rank_deficient_frame_is_rejected() {
        let frame = vec![MatrixOp::diagonal(&[1.0, 0.0]), MatrixOp::diagonal(&[0.0, 1.0])];
        assert!(matches!(
            frame_representation(2, frame, 1e-9),
            Err(Error::RankDeficientFrame { rank: 2, required: 4 })
        ));
    }

    #[test]
    fn restricted_frame_rep_passes_qpr3() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let rep = frame_representation(3, random_povm(&mut rng, 3, 9), 1e-9).unwrap();
        let restricted = restrict_representation(&rep, Embedding::coordinate(3, &[0, 1]).unwrap()).unwrap();
        let samples: Vec<_> = (0..200)
            .map(|_| (random_density(&mut rng), random_effect(&mut rng)))
            .collect();
        assert!(check_qpr3(&restricted, &restricted, &samples, 1e-9).unwrap().pass);
    }

    #[test]
    fn identity_restriction_is_the_original() {
        let rep = frame_representation(2, sic_qubit_frame(), 1e-9).unwrap();
        let restricted = restrict_representation(&rep, Embedding::coordinate(2, &[0, 1]).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let rho = random_density(&mut rng);
            let e = random_effect(&mut rng);
            assert_eq!(
                StateRep::mu(&restricted, &rho).unwrap(),
                StateRep::mu(&QubitView(&rep), &rho).unwrap()
            );
            assert_eq!(
                EffectRep::xi(&restricted, &e).unwrap(),
                EffectRep::xi(&QubitView(&rep), &e).unwrap()
            );
        }
    }

    /// Answers only the two operators fixed by the axioms.
    struct AxiomOnly {
        space: OnticSpace,
    }

    impl OperatorRep for AxiomOnly {
        fn dim(&self) -> usize {
            3
        }
        fn space(&self) -> &OnticSpace {
            &self.space
        }
        fn mu(&self, _: &MatrixOp) -> Result<OnticFunction> {
            Ok(OnticFunction::constant(self.space.len(), 1.0 / self.space.len() as f64))
        }
        fn xi(&self, e: &MatrixOp) -> Result<OnticFunction> {
            let n = self.space.len();
            if close(e, &MatrixOp::identity(3), 1e-12) {
                Ok(OnticFunction::constant(n, 1.0))
            } else if close(e, &MatrixOp::zero(3), 1e-12) {
                Ok(OnticFunction::constant(n, 0.0))
            } else {
                Err(Error::Query("only I and 0 are answered".into()))
            }
        }
    }

    #[test]
    fn restriction_preserves_identity_and_zero_axioms() {
        let big = AxiomOnly { space: OnticSpace::uniform(3).unwrap() };
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let r = restrict_representation(&big, random_embedding(&mut rng, 3, 2)).unwrap();
        assert_eq!(EffectRep::xi(&r, &PovmElement::identity()).unwrap().0, vec![1.0; 3]);
        assert_eq!(EffectRep::xi(&r, &PovmElement::zero()).unwrap().0, vec![0.0; 3]);
        assert!(EffectRep::xi(&r, &PovmElement::new(0.5, [0.0, 0.0, 0.5]).unwrap()).is_err());
    }

    #[test]
    fn json_matrix_format() {
        let m: MatrixOp = serde_json::from_str("[[[1,0],[0,-1]],[[0,1],[0,0]]]").unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[[1.0,0.0],[0.0,-1.0]],[[0.0,1.0],[0.0,0.0]]]");
        assert!(serde_json::from_str::<MatrixOp>("[[[1,0],[1,0]],[[0,0],[0,0]]]").is_err());
        let e: Embedding = serde_json::from_str(r#"{"V":[[[1,0],[0,0]],[[0,0],[1,0]],[[0,0],[0,0]]]}"#).unwrap();
        assert_eq!((e.big_dim(), e.small_dim()), (3, 2));
        assert_eq!(e.anchor()[0], Complex64::new(1.0, 0.0));
    }
}
