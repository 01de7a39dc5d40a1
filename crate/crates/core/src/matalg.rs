//! 2×2 complex matrix algebra: Pauli basis, determinant identities and the
//! eigendecomposition of unitaries.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{cis, lit, re, tol, to_f64, wrap_phase, Cx, Real};

/// Complex 2-vector.
pub type Vec2<T> = [Cx<T>; 2];

/// `⟨a|b⟩`, antilinear in the first slot.
pub fn inner<T: Real>(a: &Vec2<T>, b: &Vec2<T>) -> Cx<T> {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

pub fn norm2<T: Real>(a: &Vec2<T>) -> T {
    (a[0].norm_sqr() + a[1].norm_sqr()).sqrt()
}

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T: Real> {
    pub m: [[Cx<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        let z = Cx::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        Self::scalar(Cx::new(T::one(), T::zero()))
    }

    pub fn scalar(s: Cx<T>) -> Self {
        let z = Cx::new(T::zero(), T::zero());
        Self::new(s, z, z, s)
    }

    pub fn sigma_x() -> Self {
        let (o, z) = (re(T::one()), re(T::zero()));
        Self::new(z, o, o, z)
    }

    pub fn sigma_y() -> Self {
        let z = re(T::zero());
        let i = Cx::new(T::zero(), T::one());
        Self::new(z, -i, i, z)
    }

    pub fn sigma_z() -> Self {
        let (o, z) = (re(T::one()), re(T::zero()));
        Self::new(o, z, z, -o)
    }

    /// `[I, σx, σy, σz]`
    pub fn pauli_basis() -> [Self; 4] {
        [Self::identity(), Self::sigma_x(), Self::sigma_y(), Self::sigma_z()]
    }

    /// Builds a matrix from 8 reals, row-major `(re, im)` pairs.
    pub fn from_reals(v: [T; 8]) -> Self {
        Self::new(
            Cx::new(v[0], v[1]),
            Cx::new(v[2], v[3]),
            Cx::new(v[4], v[5]),
            Cx::new(v[6], v[7]),
        )
    }

    pub fn det(&self) -> Cx<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Cx<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Self::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    /// Inverse via the adjugate; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm_sqr() == T::zero() {
            return None;
        }
        let inv = d.inv();
        Some(Self::new(self.m[1][1] * inv, -self.m[0][1] * inv, -self.m[1][0] * inv, self.m[0][0] * inv))
    }

    pub fn apply(&self, v: &Vec2<T>) -> Vec2<T> {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// `|a⟩⟨b|`
    pub fn outer(a: &Vec2<T>, b: &Vec2<T>) -> Self {
        Self::new(a[0] * b[0].conj(), a[0] * b[1].conj(), a[1] * b[0].conj(), a[1] * b[1].conj())
    }

    pub fn frobenius(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `‖W†W − I‖_F`
    pub fn unitarity_residual(&self) -> T {
        (self.adjoint() * *self - Self::identity()).frobenius()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Entries as 8 reals, row-major `(re, im)` pairs.
    pub fn to_reals(&self) -> [T; 8] {
        let m = &self.m;
        [
            m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im, m[1][0].re, m[1][0].im, m[1][1].re, m[1][1].im,
        ]
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.m[0][0] + o.m[0][0], self.m[0][1] + o.m[0][1], self.m[1][0] + o.m[1][0], self.m[1][1] + o.m[1][1])
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.m[0][0] - o.m[0][0], self.m[0][1] - o.m[0][1], self.m[1][0] - o.m[1][0], self.m[1][1] - o.m[1][1])
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(re(-T::one()))
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Mul<Cx<T>> for Mat2<T> {
    type Output = Self;
    fn mul(self, s: Cx<T>) -> Self {
        self.scale(s)
    }
}

/// `det(M − N)` assembled as `det M + det N + tr(MN) − tr M · tr N`.
pub fn det2x2_difference<T: Real>(m: &Mat2<T>, n: &Mat2<T>) -> Cx<T> {
    m.det() + n.det() + (*m * *n).trace() - m.trace() * n.trace()
}

/// Coefficients `(c0, c1, c2, c3)` with `M = c0 I + c1 σx + c2 σy + c3 σz`.
pub fn pauli_decompose<T: Real>(m: &Mat2<T>) -> [Cx<T>; 4] {
    let half = re(lit::<T>(0.5));
    Mat2::pauli_basis().map(|p| (*m * p).trace() * half)
}

pub fn pauli_compose<T: Real>(c: &[Cx<T>; 4]) -> Mat2<T> {
    let basis = Mat2::pauli_basis();
    (0..4).fold(Mat2::zero(), |acc, k| acc + basis[k].scale(c[k]))
}

/// Eigendecomposition of a 2×2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryEigen<T: Real> {
    /// Eigenphases in `(-π, π]`.
    pub phases: [T; 2],
    /// Orthonormal eigenvectors, `vectors[j]` belongs to `phases[j]`.
    pub vectors: [Vec2<T>; 2],
}

impl<T: Real> UnitaryEigen<T> {
    /// `Σ e^{iθ_j} |v_j⟩⟨v_j|`
    pub fn reconstruct(&self) -> Mat2<T> {
        (0..2).fold(Mat2::zero(), |acc, j| {
            acc + Mat2::outer(&self.vectors[j], &self.vectors[j]).scale(cis(self.phases[j]))
        })
    }
}

/// Eigenphases and eigenvectors of a unitary `W = e^{iδ}(w0 I + i w·σ)`.
///
/// Phases are `δ ± atan2(|w|, w0)`; the `atan2` form stays well conditioned
/// when both phases approach the same value.
pub fn unitary_eigen<T: Real>(w: &Mat2<T>) -> Result<UnitaryEigen<T>> {
    let residual = w.unitarity_residual();
    if !(residual < tol::<T>(1e-10)) {
        return Err(Error::NotUnitary { residual: to_f64(residual) });
    }
    let delta = w.det().arg() / lit(2.0);
    let reduced = w.scale(cis(-delta));
    let c = pauli_decompose(&reduced);
    let w0 = c[0].re;
    let axis = [c[1].im, c[2].im, c[3].im];
    let len = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let half_split = len.atan2(w0);
    let phases = [wrap_phase(delta + half_split), wrap_phase(delta - half_split)];

    let zero = re(T::zero());
    let one = re(T::one());
    if len <= T::epsilon() * lit(64.0) {
        return Ok(UnitaryEigen { phases, vectors: [[one, zero], [zero, one]] });
    }
    let n = axis.map(|a| a / len);
    // +1 eigenvector of n·σ; pick the better-conditioned of the two column forms.
    let up = if n[2] >= T::zero() {
        [re(T::one() + n[2]), Cx::new(n[0], n[1])]
    } else {
        [Cx::new(n[0], -n[1]), re(T::one() - n[2])]
    };
    let s = norm2(&up);
    let up = [up[0] / s, up[1] / s];
    let down = [-up[1].conj(), up[0].conj()];
    Ok(UnitaryEigen { phases, vectors: [up, down] })
}
