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

//! Qubit operators in the Pauli coefficient basis.
//!
//! A Hermitian 2×2 operator is stored as `w·I + x·(X, Y, Z)`. Densities are
//! the trace-one positive operators `½(I + x·σ)` with `‖x‖ ≤ 1`; POVM
//! elements are `m·I + p·σ` with `‖p‖ ≤ m ≤ 1 − ‖p‖`. Dense complex matrices
//! exist only as a derived view.

use nalgebra::{Complex, Matrix2};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

pub type Complex64 = Complex<f64>;
pub type Vec3 = [f64; 3];

pub const ZERO3: Vec3 = [0.0; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(s: f64, a: &Vec3) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Unit vector along axis `i` (0-based).
pub fn axis(i: usize) -> Vec3 {
    let mut e = ZERO3;
    e[i] = 1.0;
    e
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity2() -> Matrix2<Complex64> {
    Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
}

/// The Pauli matrices `(X, Y, Z)`.
pub fn pauli_matrices() -> [Matrix2<Complex64>; 3] {
    [
        Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    ]
}

/// `w·I + x·σ` for real `w` and real 3-vector `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitianOp {
    pub w: f64,
    pub x: Vec3,
}

impl HermitianOp {
    pub fn new(w: f64, x: Vec3) -> Self {
        Self { w, x }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    /// `(w + ‖x‖, w − ‖x‖)`, largest first.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = norm(&self.x);
        (self.w + r, self.w - r)
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.eigenvalues().1 >= -tol
    }

    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        let [x, y, z] = self.x;
        Matrix2::new(
            c(self.w + z, 0.0),
            c(x, -y),
            c(x, y),
            c(self.w - z, 0.0),
        )
    }
}

/// Decompose a Hermitian 2×2 matrix in the basis `{I, X, Y, Z}`.
pub fn pauli_decompose(m: &Matrix2<Complex64>, tol: f64) -> Result<HermitianOp> {
    let asym = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if asym > tol {
        return Err(Error::NotHermitian(asym));
    }
    let w = m.trace().re / 2.0;
    let sigma = pauli_matrices();
    let mut x = ZERO3;
    for (xi, s) in x.iter_mut().zip(sigma.iter()) {
        *xi = (m * s).trace().re / 2.0;
    }
    Ok(HermitianOp { w, x })
}

/// Alias for [`HermitianOp::eigenvalues`].
pub fn eigenvalues(op: &HermitianOp) -> (f64, f64) {
    op.eigenvalues()
}

/// Qubit density operator `½(I + x·σ)`, `‖x‖ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDensity")]
pub struct DensityOp {
    bloch: Vec3,
}

#[derive(Deserialize)]
struct RawDensity {
    bloch: Vec3,
}

impl TryFrom<RawDensity> for DensityOp {
    type Error = Error;

    fn try_from(raw: RawDensity) -> Result<Self> {
        DensityOp::new(raw.bloch)
    }
}

impl DensityOp {
    pub fn new(bloch: Vec3) -> Result<Self> {
        Self::with_tolerance(bloch, DEFAULT_TOL)
    }

    pub fn with_tolerance(bloch: Vec3, tol: f64) -> Result<Self> {
        if bloch.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDensity("non-finite Bloch vector".into()));
        }
        let r = norm(&bloch);
        if r > 1.0 + tol {
            return Err(Error::InvalidDensity(format!(
                "Bloch vector norm {r} exceeds 1"
            )));
        }
        Ok(Self { bloch })
    }

    /// The maximally mixed state `I/2`.
    pub fn maximally_mixed() -> Self {
        Self { bloch: ZERO3 }
    }

    pub fn bloch(&self) -> Vec3 {
        self.bloch
    }

    pub fn to_hermitian(&self) -> HermitianOp {
        HermitianOp::new(0.5, scale(0.5, &self.bloch))
    }

    pub fn from_hermitian(op: &HermitianOp, tol: f64) -> Result<Self> {
        if (op.trace() - 1.0).abs() > tol {
            return Err(Error::InvalidDensity(format!(
                "trace {} is not 1",
                op.trace()
            )));
        }
        Self::with_tolerance(scale(2.0, &op.x), tol)
    }
}

/// Qubit POVM element `m·I + p·σ` with `‖p‖ ≤ m ≤ 1 − ‖p‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEffect")]
pub struct PovmElement {
    m: f64,
    p: Vec3,
}

#[derive(Deserialize)]
struct RawEffect {
    m: f64,
    p: Vec3,
}

impl TryFrom<RawEffect> for PovmElement {
    type Error = Error;

    fn try_from(raw: RawEffect) -> Result<Self> {
        PovmElement::new(raw.m, raw.p)
    }
}

fn effect_cone_defect(m: f64, p: &Vec3) -> f64 {
    let r = norm(p);
    (r - m).max(r - (1.0 - m))
}

impl PovmElement {
    pub fn new(m: f64, p: Vec3) -> Result<Self> {
        Self::with_tolerance(m, p, DEFAULT_TOL)
    }

    pub fn with_tolerance(m: f64, p: Vec3, tol: f64) -> Result<Self> {
        if !m.is_finite() || p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidEffect("non-finite coefficients".into()));
        }
        let defect = effect_cone_defect(m, &p);
        if defect > tol {
            return Err(Error::InvalidEffect(format!(
                "(m={m}, ‖p‖={}) violates ‖p‖ ≤ m ≤ 1 − ‖p‖ by {defect:.3e}",
                norm(&p)
            )));
        }
        Ok(Self { m, p })
    }

    pub fn zero() -> Self {
        Self { m: 0.0, p: ZERO3 }
    }

    pub fn identity() -> Self {
        Self { m: 1.0, p: ZERO3 }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn p(&self) -> Vec3 {
        self.p
    }

    /// `I − E`.
    pub fn complement(&self) -> Self {
        Self {
            m: 1.0 - self.m,
            p: scale(-1.0, &self.p),
        }
    }

    pub fn to_hermitian(&self) -> HermitianOp {
        HermitianOp::new(self.m, self.p)
    }

    pub fn from_hermitian(op: &HermitianOp, tol: f64) -> Result<Self> {
        Self::with_tolerance(op.w, op.x, tol)
    }
}

/// `Tr(ρ(x) E(m, p)) = m + x·p`.
pub fn born_probability(rho: &DensityOp, e: &PovmElement) -> f64 {
    e.m + dot(&rho.bloch, &e.p)
}

/// An ordered list of POVM elements; see [`validate_povm`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Povm {
    pub elements: Vec<PovmElement>,
}

impl Povm {
    pub fn new(elements: Vec<PovmElement>) -> Self {
        Self { elements }
    }

    pub fn trivial() -> Self {
        Self::new(vec![PovmElement::identity()])
    }

    /// Projective measurement along `axis` (unit vector).
    pub fn projective(axis: Vec3) -> Self {
        let half = scale(0.5, &axis);
        Self::new(vec![
            PovmElement { m: 0.5, p: half },
            PovmElement {
                m: 0.5,
                p: scale(-1.0, &half),
            },
        ])
    }
}

/// Checks that every element lies in the effect cone and that the elements
/// sum to the identity (`∑m = 1`, `∑p = 0`).
pub fn validate_povm(povm: &Povm, tol: f64) -> Result<()> {
    if povm.elements.is_empty() {
        return Err(Error::InvalidPovm("no elements".into()));
    }
    for (k, e) in povm.elements.iter().enumerate() {
        let defect = effect_cone_defect(e.m, &e.p);
        if defect > tol {
            return Err(Error::InvalidPovm(format!(
                "element {k} is not a POVM element (cone defect {defect:.3e})"
            )));
        }
    }
    let m_sum: f64 = povm.elements.iter().map(|e| e.m).sum();
    if (m_sum - 1.0).abs() > tol {
        return Err(Error::InvalidPovm(format!(
            "identity coefficients sum to {m_sum}, not 1"
        )));
    }
    let p_sum = povm
        .elements
        .iter()
        .fold(ZERO3, |acc, e| add(&acc, &e.p));
    if norm(&p_sum) > tol {
        return Err(Error::InvalidPovm(format!(
            "Pauli coefficients sum to {p_sum:?}, not 0"
        )));
    }
    Ok(())
}

/// Values closed under convex combination of their Pauli coefficients.
pub trait Mixable: Sized {
    fn combine(items: &[(f64, Self)]) -> Self;
}

impl Mixable for DensityOp {
    fn combine(items: &[(f64, Self)]) -> Self {
        let bloch = items
            .iter()
            .fold(ZERO3, |acc, (w, r)| add(&acc, &scale(*w, &r.bloch)));
        DensityOp { bloch }
    }
}

impl Mixable for PovmElement {
    fn combine(items: &[(f64, Self)]) -> Self {
        let m = items.iter().map(|(w, e)| w * e.m).sum();
        let p = items
            .iter()
            .fold(ZERO3, |acc, (w, e)| add(&acc, &scale(*w, &e.p)));
        PovmElement { m, p }
    }
}

/// Convex combination of densities or of POVM elements.
///
/// The element type is fixed by `T`, so heterogeneous mixtures are rejected
/// at compile time.
pub fn mix<T: Mixable>(items: &[(f64, T)], tol: f64) -> Result<T> {
    if items.is_empty() {
        return Err(Error::InvalidMixture("empty mixture".into()));
    }
    if let Some((w, _)) = items.iter().find(|(w, _)| w.is_nan() || *w < -tol) {
        return Err(Error::InvalidMixture(format!("negative weight {w}")));
    }
    let total: f64 = items.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::InvalidMixture(format!(
            "weights sum to {total}, not 1"
        )));
    }
    Ok(T::combine(items))
}

/// Uniform sample from the closed ball of the given radius.
pub fn random_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Vec3 {
    loop {
        let v: Vec3 = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        if dot(&v, &v) <= 1.0 {
            return scale(radius, &v);
        }
    }
}

/// Uniform sample from the unit sphere.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let v = random_ball(rng, 1.0);
        let r = norm(&v);
        if r > 1e-3 {
            return scale(1.0 / r, &v);
        }
    }
}

pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityOp {
    DensityOp {
        bloch: random_ball(rng, 1.0),
    }
}

/// `p` uniform in the radius-½ ball, then `m` uniform in `[‖p‖, 1 − ‖p‖]`.
pub fn random_effect<R: Rng + ?Sized>(rng: &mut R) -> PovmElement {
    let p = random_ball(rng, 0.5);
    let r = norm(&p);
    let m = if 1.0 - 2.0 * r > 0.0 {
        rng.random_range(r..=1.0 - r)
    } else {
        0.5
    };
    PovmElement { m, p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trace_product(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Complex64 {
        // explicit index sum, independent of nalgebra's trace
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for k in 0..2 {
                t += a[(i, k)] * b[(k, i)];
            }
        }
        t
    }

    #[test]
    fn decompose_examples() {
        let id = pauli_decompose(&identity2(), 1e-12).unwrap();
        assert_eq!(id, HermitianOp::new(1.0, ZERO3));

        let diag = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let d = pauli_decompose(&diag, 1e-12).unwrap();
        assert_eq!(d, HermitianOp::new(0.5, [0.0, 0.0, 0.5]));

        let x = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(
            pauli_decompose(&x, 1e-12).unwrap(),
            HermitianOp::new(0.0, [1.0, 0.0, 0.0])
        );
    }

    #[test]
    fn decompose_rejects_non_hermitian() {
        let m = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            pauli_decompose(&m, 1e-9),
            Err(Error::NotHermitian(a)) if (a - 1.0).abs() < 1e-15
        ));
    }

    #[test]
    fn pauli_multiplication_table() {
        let [x, y, z] = pauli_matrices();
        let i = Complex64::new(0.0, 1.0);
        let id = identity2();
        let close = |a: Matrix2<Complex64>, b: Matrix2<Complex64>| {
            (a - b).iter().all(|v| v.norm() <= 1e-15)
        };
        assert!(close(x * y, z * i));
        assert!(close(y * x, -z * i));
        assert!(close(y * z, x * i));
        assert!(close(z * y, -x * i));
        assert!(close(z * x, y * i));
        assert!(close(x * z, -y * i));
        for s in [x, y, z] {
            assert!(close(s * s, id));
            assert_eq!(s.trace(), Complex64::new(0.0, 0.0));
        }
        assert_eq!(id.trace(), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(HermitianOp::new(1.0, ZERO3).eigenvalues(), (1.0, 1.0));
        let pure = DensityOp::new([0.0, 0.6, 0.8]).unwrap().to_hermitian();
        let (hi, lo) = pure.eigenvalues();
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lo, 0.0, epsilon = 1e-15);
        assert_eq!(HermitianOp::new(0.5, [0.0, 0.0, 0.5]).eigenvalues(), (1.0, 0.0));
    }

    #[test]
    fn eigenvalues_match_dense_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let op = HermitianOp::new(rng.random_range(-2.0..2.0), random_ball(&mut rng, 2.0));
            let dense = op.to_matrix().symmetric_eigenvalues();
            let (mut a, mut b) = (dense[0], dense[1]);
            if a < b {
                std::mem::swap(&mut a, &mut b);
            }
            let (hi, lo) = op.eigenvalues();
            assert_abs_diff_eq!(hi, a, epsilon = 1e-12);
            assert_abs_diff_eq!(lo, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn born_examples() {
        let mixed = DensityOp::maximally_mixed();
        assert_eq!(born_probability(&mixed, &PovmElement::identity()), 1.0);
        let up = PovmElement::new(0.5, [0.0, 0.0, 0.5]).unwrap();
        let z = DensityOp::new([0.0, 0.0, 1.0]).unwrap();
        let x = DensityOp::new([1.0, 0.0, 0.0]).unwrap();
        assert_eq!(born_probability(&z, &up), 1.0);
        assert_eq!(born_probability(&x, &up), 0.5);
    }

    #[test]
    fn born_matches_dense_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let rho = random_density(&mut rng);
            let e = random_effect(&mut rng);
            let t = trace_product(&rho.to_hermitian().to_matrix(), &e.to_hermitian().to_matrix());
            let p = born_probability(&rho, &e);
            assert!((p - t.re).abs() <= 1e-12 && t.im.abs() <= 1e-12);
            assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        }
    }

    #[test]
    fn validate_povm_examples() {
        validate_povm(&Povm::trivial(), 1e-12).unwrap();
        validate_povm(&Povm::projective([0.0, 0.0, 1.0]), 1e-12).unwrap();
        let up = PovmElement::new(0.5, [0.0, 0.0, 0.5]).unwrap();
        let err = validate_povm(&Povm::new(vec![up, up]), 1e-12).unwrap_err();
        assert!(err.to_string().contains("Pauli coefficients"));
    }

    #[test]
    fn validate_povm_reports_element_index() {
        let bad = PovmElement { m: 0.2, p: [0.0, 0.0, 0.4] };
        let err = validate_povm(&Povm::new(vec![PovmElement::identity(), bad]), 1e-9).unwrap_err();
        assert!(err.to_string().contains("element 1"));
    }

    #[test]
    fn zero_operator_is_an_effect() {
        assert!(PovmElement::new(0.0, ZERO3).is_ok());
        assert!(PovmElement::new(0.1, [0.2, 0.0, 0.0]).is_err());
        assert!(PovmElement::new(0.9, [0.2, 0.0, 0.0]).is_err());
    }

    #[test]
    fn mix_examples() {
        let up = DensityOp::new([0.0, 0.0, 1.0]).unwrap();
        let down = DensityOp::new([0.0, 0.0, -1.0]).unwrap();
        assert_eq!(mix(&[(0.5, up), (0.5, down)], 1e-12).unwrap().bloch(), ZERO3);
        assert_eq!(mix(&[(1.0, up)], 1e-12).unwrap(), up);

        let e_up = PovmElement::new(0.5, [0.0, 0.0, 0.5]).unwrap();
        let e_down = PovmElement::new(0.5, [0.0, 0.0, -0.5]).unwrap();
        let avg = mix(&[(0.5, e_up), (0.5, e_down)], 1e-12).unwrap();
        assert_eq!(avg, PovmElement::new(0.5, ZERO3).unwrap());

        assert!(mix(&[(0.7, up), (0.7, down)], 1e-9).is_err());
        assert!(mix(&[(1.5, up), (-0.5, down)], 1e-9).is_err());
    }

    #[test]
    fn json_encodings() {
        let rho: DensityOp = serde_json::from_str(r#"{"bloch":[0.0,0.0,1.0]}"#).unwrap();
        assert_eq!(rho.bloch(), [0.0, 0.0, 1.0]);
        assert!(serde_json::from_str::<DensityOp>(r#"{"bloch":[1.0,1.0,0.0]}"#).is_err());
        let e: PovmElement = serde_json::from_str(r#"{"m":0.5,"p":[0.5,0.0,0.0]}"#).unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"m":0.5,"p":[0.5,0.0,0.0]}"#);
        let h: HermitianOp = serde_json::from_str(r#"{"w":1.0,"x":[0.0,2.0,0.0]}"#).unwrap();
        assert_eq!(h.trace(), 2.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
            prop::array::uniform3(-r..r)
        }

        proptest! {
            #[test]
            fn decompose_inverts_dense_view(w in -3.0..3.0f64, x in vec3(3.0)) {
                let op = HermitianOp::new(w, x);
                let back = pauli_decompose(&op.to_matrix(), 1e-12).unwrap();
                prop_assert!((back.w - w).abs() <= 1e-12);
                for i in 0..3 {
                    prop_assert!((back.x[i] - x[i]).abs() <= 1e-12);
                }
            }

            #[test]
            fn effect_iff_both_spectra_nonnegative(m in -0.2..1.2f64, p in vec3(0.7)) {
                let valid = PovmElement::with_tolerance(m, p, 1e-12).is_ok();
                let e = HermitianOp::new(m, p);
                let comp = HermitianOp::new(1.0 - m, scale(-1.0, &p));
                prop_assert_eq!(valid, e.is_positive(1e-12) && comp.is_positive(1e-12));
            }
        }
    }
}
