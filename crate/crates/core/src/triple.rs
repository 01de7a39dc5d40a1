//! Boundary triples for the Dirac operator in an arbitrary Clifford
//! representation `(α, β)`, in units `ħ = c = L = 1` on `x ∈ [−½, ½]`.
//!
//! The outward normal at `s = ±½` gives `α_n(s) = ±α`; its eigenvectors `e±(s)`
//! define `Γ±Ψ = (⟨e±(−½)|Ψ(−½)⟩, ⟨e±(½)|Ψ(½)⟩)` and the boundary form
//!
//! ```text
//! (⟨HΨ₁|Ψ₂⟩ − ⟨Ψ₁|HΨ₂⟩) / (−i) = ⟨Γ₋Ψ₁|Γ₋Ψ₂⟩ − ⟨Γ₊Ψ₁|Γ₊Ψ₂⟩.
//! ```

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::bc::UnitaryBc;
use crate::error::{Error, Result};
use crate::kernel::{SpectralKernel, Theory};
use crate::matalg::{inner, norm2, Mat2, Vec2};
use crate::scalar::{imag_unit, lit, re, to_f64, tol, Cx, Real};

/// A pair of Hermitian, anticommuting involutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordRep<T: Real> {
    alpha: Mat2<T>,
    beta: Mat2<T>,
}

impl<T: Real> CliffordRep<T> {
    pub fn new(alpha: Mat2<T>, beta: Mat2<T>) -> Result<Self> {
        let rep = Self { alpha, beta };
        rep.validate(tol(1e-12))?;
        Ok(rep)
    }

    /// `(σx, σz)`
    pub fn dirac() -> Self {
        Self { alpha: Mat2::sigma_x(), beta: Mat2::sigma_z() }
    }

    pub fn alpha(&self) -> &Mat2<T> {
        &self.alpha
    }

    pub fn beta(&self) -> &Mat2<T> {
        &self.beta
    }

    /// `γ = −iαβ`, completing `{I, α, β, γ}` to a trace-orthogonal basis.
    pub fn gamma(&self) -> Mat2<T> {
        (self.alpha * self.beta).scale(-imag_unit::<T>())
    }

    pub fn validate(&self, eps: T) -> Result<()> {
        let id = Mat2::identity();
        let checks = [
            ("alpha is not Hermitian", (self.alpha - self.alpha.adjoint()).frobenius()),
            ("beta is not Hermitian", (self.beta - self.beta.adjoint()).frobenius()),
            ("alpha^2 != I", (self.alpha * self.alpha - id).frobenius()),
            ("beta^2 != I", (self.beta * self.beta - id).frobenius()),
            ("alpha and beta do not anticommute", (self.alpha * self.beta + self.beta * self.alpha).frobenius()),
        ];
        for (msg, r) in checks {
            if !(r < eps) {
                return Err(Error::InvalidRep(format!("{msg} (residual {:e})", to_f64(r))));
            }
        }
        Ok(())
    }

    /// `(VαV†, VβV†)`
    pub fn conjugated(&self, v: &Mat2<T>) -> Result<Self> {
        let vd = v.adjoint();
        Self::new(*v * self.alpha * vd, *v * self.beta * vd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x = −½`
    Left,
    /// `x = +½`
    Right,
}

impl Side {
    pub fn position<T: Real>(&self) -> T {
        match self {
            Side::Left => lit(-0.5),
            Side::Right => lit(0.5),
        }
    }
}

/// Rescales `v` so its first non-negligible component is real positive.
fn fix_phase<T: Real>(v: Vec2<T>) -> Vec2<T> {
    let lead = if v[0].norm() > lit(1e-12) { v[0] } else { v[1] };
    let ph = lead.conj() / re(lead.norm());
    [v[0] * ph, v[1] * ph]
}

/// Unit eigenvectors `(e₊, e₋)` of `α_n(side)` for eigenvalues `±1`.
pub fn boundary_eigvecs<T: Real>(rep: &CliffordRep<T>, side: Side) -> (Vec2<T>, Vec2<T>) {
    let an = match side {
        Side::Right => rep.alpha,
        Side::Left => -rep.alpha,
    };
    let half = re(lit::<T>(0.5));
    let id = Mat2::identity();
    let pick = |p: Mat2<T>| {
        let c0 = [p.m[0][0], p.m[1][0]];
        let c1 = [p.m[0][1], p.m[1][1]];
        let c = if norm2(&c0) >= norm2(&c1) { c0 } else { c1 };
        let n = norm2(&c);
        fix_phase([c[0] / re(n), c[1] / re(n)])
    };
    (pick((id + an).scale(half)), pick((id - an).scale(half)))
}

/// Composite Gauss–Legendre rule on `[−½, ½]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature<T: Real> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> Quadrature<T> {
    pub fn composite(panels: usize, per_panel: usize) -> Self {
        let panels = panels.max(1);
        let rule = GaussLegendre::new(NonZeroUsize::new(per_panel.max(1)).expect("nonzero"));
        let h = 1.0 / panels as f64;
        let mut nodes = Vec::with_capacity(panels * per_panel);
        let mut weights = Vec::with_capacity(panels * per_panel);
        for p in 0..panels {
            let a = -0.5 + h * p as f64;
            let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
            pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite nodes"));
            for (x, w) in pairs {
                nodes.push(lit(a + h * 0.5 * (x + 1.0)));
                weights.push(lit(h * 0.5 * w));
            }
        }
        Self { nodes, weights }
    }
}

impl<T: Real> Default for Quadrature<T> {
    /// 256 nodes: 8 panels of 32.
    fn default() -> Self {
        Self::composite(8, 32)
    }
}

/// A spinor and its derivative sampled at the quadrature nodes and at `±½`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorSample<T: Real> {
    /// `−½`, the interior nodes, `½`.
    pub grid: Vec<T>,
    /// Zero at the two endpoints.
    pub weights: Vec<T>,
    pub psi: Vec<Vec2<T>>,
    pub dpsi: Vec<Vec2<T>>,
}

impl<T: Real> SpinorSample<T> {
    /// Samples `f(x) = (Ψ(x), Ψ'(x))`.
    pub fn from_fn(quad: &Quadrature<T>, f: impl Fn(T) -> (Vec2<T>, Vec2<T>)) -> Self {
        let mut grid = vec![lit(-0.5)];
        grid.extend(quad.nodes.iter().copied());
        grid.push(lit(0.5));
        let mut weights = vec![T::zero()];
        weights.extend(quad.weights.iter().copied());
        weights.push(T::zero());
        let (psi, dpsi) = grid.iter().map(|&x| f(x)).unzip();
        Self { grid, weights, psi, dpsi }
    }

    pub fn left(&self) -> &Vec2<T> {
        &self.psi[0]
    }

    pub fn right(&self) -> &Vec2<T> {
        self.psi.last().expect("non-empty sample")
    }
}

/// `(Γ₋Ψ, Γ₊Ψ)` from the boundary values `Ψ(−½)`, `Ψ(½)`.
pub fn gamma_from_boundary<T: Real>(rep: &CliffordRep<T>, left: &Vec2<T>, right: &Vec2<T>) -> (Vec2<T>, Vec2<T>) {
    let (lp, lm) = boundary_eigvecs(rep, Side::Left);
    let (rp, rm) = boundary_eigvecs(rep, Side::Right);
    ([inner(&lm, left), inner(&rm, right)], [inner(&lp, left), inner(&rp, right)])
}

pub fn gamma_maps<T: Real>(rep: &CliffordRep<T>, psi: &SpinorSample<T>) -> (Vec2<T>, Vec2<T>) {
    gamma_from_boundary(rep, psi.left(), psi.right())
}

/// `|Λ/(−i) − (⟨Γ₋Ψ₁|Γ₋Ψ₂⟩ − ⟨Γ₊Ψ₁|Γ₊Ψ₂⟩)|` with `H = −iα∂ + μ₀β` and `Λ`
/// integrated on the samples' quadrature.
pub fn boundary_form_residual<T: Real>(
    rep: &CliffordRep<T>,
    mu0: T,
    psi1: &SpinorSample<T>,
    psi2: &SpinorSample<T>,
) -> Result<T> {
    if psi1.grid != psi2.grid {
        return Err(Error::InvalidConfig("spinor samples use different grids".into()));
    }
    let i = imag_unit::<T>();
    let h = |p: &Vec2<T>, dp: &Vec2<T>| -> Vec2<T> {
        let a = rep.alpha.apply(dp);
        let b = rep.beta.apply(p);
        [-i * a[0] + b[0] * mu0, -i * a[1] + b[1] * mu0]
    };
    let mut lambda = Cx::new(T::zero(), T::zero());
    for k in 0..psi1.grid.len() {
        let w = psi1.weights[k];
        if w == T::zero() {
            continue;
        }
        let h1 = h(&psi1.psi[k], &psi1.dpsi[k]);
        let h2 = h(&psi2.psi[k], &psi2.dpsi[k]);
        lambda += (inner(&h1, &psi2.psi[k]) - inner(&psi1.psi[k], &h2)) * w;
    }
    let (m1, p1) = gamma_maps(rep, psi1);
    let (m2, p2) = gamma_maps(rep, psi2);
    let boundary = inner(&m1, &m2) - inner(&p1, &p2);
    Ok((lambda / (-i) - boundary).norm())
}

/// [`boundary_form_residual`] at `μ₀ = 1`; the mass term cancels identically.
pub fn boundary_form_check<T: Real>(rep: &CliffordRep<T>, psi1: &SpinorSample<T>, psi2: &SpinorSample<T>) -> Result<T> {
    boundary_form_residual(rep, T::one(), psi1, psi2)
}

/// Unitary `V` with `VαV† = α̃`, `VβV† = β̃`; the global phase makes the
/// largest entry real positive.
pub fn representation_transform<T: Real>(from: &CliffordRep<T>, to: &CliffordRep<T>) -> Result<Mat2<T>> {
    let tau = [Mat2::identity(), from.alpha, from.beta, from.gamma()];
    let tau_t = [Mat2::identity(), to.alpha, to.beta, to.gamma()];
    // Σ τ̃ₖ Q τₖ = 2 tr(V†Q) V for any Q; take the best-conditioned probe
    let mut best = Mat2::zero();
    for q in Mat2::<T>::pauli_basis() {
        let n = tau_t.iter().zip(&tau).fold(Mat2::zero(), |acc, (t, s)| acc + *t * q * *s);
        if n.frobenius() > best.frobenius() {
            best = n;
        }
    }
    let v = best.scale(re(lit::<T>(2.0).sqrt() / best.frobenius()));
    let mut lead = v.m[0][0];
    let mut lead_norm = T::zero();
    for row in &v.m {
        for z in row {
            if z.norm() > lead_norm + lit(1e-12) {
                lead = *z;
                lead_norm = z.norm();
            }
        }
    }
    let v = v.scale(lead.conj() / re(lead_norm));
    let eps = tol::<T>(1e-10);
    let ok = v.unitarity_residual() < eps
        && (v * from.alpha * v.adjoint() - to.alpha).frobenius() < eps
        && (v * from.beta * v.adjoint() - to.beta).frobenius() < eps;
    if !ok {
        return Err(Error::InvalidRep("no unitary intertwines the two representations".into()));
    }
    Ok(v)
}

/// Diagonal phases relating `Γ±` in the two representations: `Γ̃± = D± Γ±`.
fn gamma_phases<T: Real>(from: &CliffordRep<T>, to: &CliffordRep<T>, v: &Mat2<T>) -> (Mat2<T>, Mat2<T>) {
    let (lp, lm) = boundary_eigvecs(from, Side::Left);
    let (rp, rm) = boundary_eigvecs(from, Side::Right);
    let (tlp, tlm) = boundary_eigvecs(to, Side::Left);
    let (trp, trm) = boundary_eigvecs(to, Side::Right);
    let p = |e: &Vec2<T>, et: &Vec2<T>| inner(&v.apply(e), et).conj();
    let z = re(T::zero());
    (
        Mat2::new(p(&lm, &tlm), z, z, p(&rm, &trm)),
        Mat2::new(p(&lp, &tlp), z, z, p(&rp, &trp)),
    )
}

/// The boundary condition `Γ₋Ψ = UΓ₊Ψ` of `from`, rewritten for spinors
/// `VΨ` in `to`: `Ũ = D₋ U D₊†`.
pub fn transformed_bc<T: Real>(from: &CliffordRep<T>, to: &CliffordRep<T>, u: &UnitaryBc<T>) -> Result<UnitaryBc<T>> {
    let v = representation_transform(from, to)?;
    let (dm, dp) = gamma_phases(from, to, &v);
    UnitaryBc::from_matrix(&(dm * *u.matrix() * dp.adjoint()))
}

/// `cos(kx)` and `sin(kx)/k` as functions of `k²`, continued to `k² < 0`.
fn transfer_coefficients<T: Real>(k2: T, x: T) -> (T, T) {
    let z = k2 * x * x;
    if z.abs() < lit(1e-3) {
        // Taylor series to O(z⁴)
        let c = T::one() - z / lit(2.0) + z * z / lit(24.0) - z * z * z / lit(720.0) + z * z * z * z / lit(40320.0);
        let s = T::one() - z / lit(6.0) + z * z / lit(120.0) - z * z * z / lit(5040.0) + z * z * z * z / lit(362880.0);
        (c, s * x)
    } else if k2 > T::zero() {
        let k = k2.sqrt();
        ((k * x).cos(), (k * x).sin() / k)
    } else {
        let k = (-k2).sqrt();
        ((k * x).cosh(), (k * x).sinh() / k)
    }
}

/// Dirac kernel built in any representation from the transfer matrix
/// `Ψ(x) = exp(xM)Ψ(0)`, `M = iα(μ − μ₀β)`, and the `Γ±` maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepKernel<T: Real> {
    rep: CliffordRep<T>,
    mu0: T,
    ends: [(Vec2<T>, Vec2<T>); 2],
}

impl<T: Real> RepKernel<T> {
    pub fn new(rep: CliffordRep<T>, mu0: T) -> Result<Self> {
        if !(mu0 >= T::zero() && mu0.is_finite()) {
            return Err(Error::InvalidConfig("mu0 must be finite and non-negative".into()));
        }
        let ends = [boundary_eigvecs(&rep, Side::Left), boundary_eigvecs(&rep, Side::Right)];
        Ok(Self { rep, mu0, ends })
    }

    pub fn rep(&self) -> &CliffordRep<T> {
        &self.rep
    }

    /// `(A₊, A₋)` acting on `Ψ(0)`.
    pub fn boundary_map(&self, mu: T) -> (Mat2<T>, Mat2<T>) {
        let i = imag_unit::<T>();
        let m = (self.rep.alpha * (Mat2::scalar(re(mu)) - self.rep.beta.scale(re(self.mu0)))).scale(i);
        let k2 = (mu - self.mu0) * (mu + self.mu0);
        let t = |x: T| {
            let (c, s) = transfer_coefficients(k2, x);
            Mat2::scalar(re(c)) + m.scale(re(s))
        };
        let (tl, tr) = (t(lit(-0.5)), t(lit(0.5)));
        let row = |e: &Vec2<T>, t: &Mat2<T>| {
            let r = [e[0].conj(), e[1].conj()];
            [r[0] * t.m[0][0] + r[1] * t.m[1][0], r[0] * t.m[0][1] + r[1] * t.m[1][1]]
        };
        let build = |l: &Vec2<T>, r: &Vec2<T>| {
            let (a, b) = (row(l, &tl), row(r, &tr));
            Mat2::new(a[0], a[1], b[0], b[1])
        };
        let [(lp, lm), (rp, rm)] = &self.ends;
        (build(lp, rp), build(lm, rm))
    }
}

impl<T: Real> SpectralKernel<T> for RepKernel<T> {
    fn theory(&self) -> Theory {
        Theory::Dirac
    }

    fn b_matrix(&self, mu: T) -> Result<Mat2<T>> {
        let (ap, am) = self.boundary_map(mu);
        let inv = ap.inverse().ok_or(Error::Pole { mu: to_f64(mu) })?;
        Ok(am * inv)
    }

    fn mandatory_nodes(&self) -> Vec<T> {
        if self.mu0 > T::zero() {
            vec![-self.mu0, self.mu0]
        } else {
            vec![T::zero()]
        }
    }
}

/// Random representation `(Vσx V†, Vσz V†)` with `V` drawn like a boundary condition.
pub fn random_rep<T: Real, R: rand::Rng + ?Sized>(rng: &mut R) -> CliffordRep<T> {
    let v = *UnitaryBc::<T>::sample(rng).matrix();
    CliffordRep::dirac().conjugated(&v).expect("conjugated representation")
}
