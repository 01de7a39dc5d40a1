//! Dirac spectral kernel in the dimensionless variables `μ = εL` (energy) and
//! `μ₀ = ε₀L` (mass), with `ε = E/(ħc)` and `ε₀ = mc/ħ`.
//!
//! For `μ ≠ ±μ₀` the boundary matrix is `B = a I + b σx` with
//!
//! ```text
//! D = μ sin(kL) − i kL cos(kL)
//! a = μ₀ sin(kL) / D,   b = −i kL / D,   c = det B = (μ sin(kL) + i kL cos(kL)) / D
//! ```
//!
//! Inside the gap `kL = iκ` and everything is evaluated in a form divided by
//! `cosh κ`, which stays finite for any `κ`. The mass modes `μ = ±μ₀` use the
//! closed-form matrices `B(±μ₀)`.

use crate::bc::UnitaryBc;
use crate::error::{Error, Result};
use crate::kernel::{SpectralKernel, Theory};
use crate::matalg::{det2x2_difference, Mat2, Vec2};
use crate::scalar::{cx, imag_unit, lit, re, tol, to_f64, Cx, Real};

/// Physical constants of the ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig<T: Real> {
    pub length: T,
    pub mass: T,
    pub hbar: T,
    pub c: T,
}

impl<T: Real> PhysicalConfig<T> {
    pub fn new(length: T, mass: T, hbar: T, c: T) -> Result<Self> {
        let positive = |x: T| x.is_finite() && x > T::zero();
        if !positive(length) || !positive(hbar) || !positive(c) {
            return Err(Error::InvalidConfig("L, hbar and c must be finite and positive".into()));
        }
        if !(mass.is_finite() && mass >= T::zero()) {
            return Err(Error::InvalidConfig("mass must be finite and non-negative".into()));
        }
        Ok(Self { length, mass, hbar, c })
    }

    /// `μ₀ = mcL/ħ`
    pub fn mu0(&self) -> T {
        self.mass * self.c * self.length / self.hbar
    }

    /// `μ = EL/(ħc)`
    pub fn energy_to_mu(&self, energy: T) -> T {
        energy * self.length / (self.hbar * self.c)
    }

    pub fn mu_to_energy(&self, mu: T) -> T {
        mu * self.hbar * self.c / self.length
    }

    /// Schrödinger scale `e = 2mEL²/ħ²`; needs `mass > 0`.
    pub fn energy_to_e(&self, energy: T) -> Result<T> {
        let s = self.schrod_scale()?;
        Ok(energy * s)
    }

    pub fn e_to_energy(&self, e: T) -> Result<T> {
        let s = self.schrod_scale()?;
        Ok(e / s)
    }

    fn schrod_scale(&self) -> Result<T> {
        if self.mass <= T::zero() {
            return Err(Error::InvalidConfig("Schrödinger units need mass > 0".into()));
        }
        Ok(lit::<T>(2.0) * self.mass * self.length * self.length / (self.hbar * self.hbar))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    AboveGap,
    BelowGap,
    InsideGap,
    MassModePlus,
    MassModeMinus,
}

/// A dimensionless energy together with its regime relative to the mass gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracPoint<T: Real> {
    mu: T,
    mu0: T,
    regime: Regime,
}

impl<T: Real> DiracPoint<T> {
    /// Energies within `1e-12·max(1, μ₀)` of `±μ₀` snap onto the mass mode.
    pub fn new(mu: T, mu0: T) -> Result<Self> {
        if !mu.is_finite() || !(mu0.is_finite() && mu0 >= T::zero()) {
            return Err(Error::InvalidConfig(format!("bad Dirac point mu={}, mu0={}", to_f64(mu), to_f64(mu0))));
        }
        let snap = tol::<T>(1e-12) * mu0.max(T::one());
        let (mu, regime) = if mu0 > T::zero() && (mu - mu0).abs() < snap {
            (mu0, Regime::MassModePlus)
        } else if mu0 > T::zero() && (mu + mu0).abs() < snap {
            (-mu0, Regime::MassModeMinus)
        } else if mu.abs() < mu0 {
            (mu, Regime::InsideGap)
        } else if mu >= T::zero() {
            (mu, Regime::AboveGap)
        } else {
            (mu, Regime::BelowGap)
        };
        Ok(Self { mu, mu0, regime })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn mu0(&self) -> T {
        self.mu0
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    fn is_mass_mode(&self) -> bool {
        matches!(self.regime, Regime::MassModePlus | Regime::MassModeMinus)
    }
}

/// `(μ − μ₀)(μ + μ₀)`, factored to keep precision near the gap edges.
fn k_squared<T: Real>(mu: T, mu0: T) -> T {
    (mu - mu0) * (mu + mu0)
}

/// `kL`: real outside the gap, `+iκ` inside.
pub fn wavenumber<T: Real>(p: &DiracPoint<T>) -> Result<Cx<T>> {
    if p.is_mass_mode() {
        return Err(Error::MassMode { mu: to_f64(p.mu) });
    }
    let k2 = k_squared(p.mu, p.mu0);
    Ok(if p.regime == Regime::InsideGap { cx(T::zero(), (-k2).sqrt()) } else { re(k2.max(T::zero()).sqrt()) })
}

/// Kernel coefficients at a non-mass-mode energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue<T: Real> {
    pub a_d: Cx<T>,
    pub b_d: Cx<T>,
    pub c_d: Cx<T>,
    pub b: Mat2<T>,
}

impl<T: Real> KernelValue<T> {
    fn from_coefficients(a_d: Cx<T>, b_d: Cx<T>, c_d: Cx<T>) -> Self {
        let b = Mat2::scalar(a_d) + Mat2::sigma_x().scale(b_d);
        Self { a_d, b_d, c_d, b }
    }

    /// `det U − a tr U + b tr(Uσx) + c`
    pub fn spectral_value(&self, u: &UnitaryBc<T>) -> Cx<T> {
        let t = u.invariants();
        t.det_u - self.a_d * t.tr_u + self.b_d * t.tr_u_sx + self.c_d
    }
}

/// `sech κ` without overflow.
fn sech<T: Real>(kappa: T) -> T {
    let e = (-kappa).exp();
    lit::<T>(2.0) * e / (T::one() + e * e)
}

/// Coefficients `a_D, b_D, c_D` and `B`.
pub fn kernel_at<T: Real>(p: &DiracPoint<T>) -> Result<KernelValue<T>> {
    let (mu, mu0) = (p.mu, p.mu0);
    let i = imag_unit::<T>();
    match p.regime {
        Regime::MassModePlus | Regime::MassModeMinus => Err(Error::MassMode { mu: to_f64(mu) }),
        Regime::InsideGap => {
            let kappa = (-k_squared(mu, mu0)).sqrt();
            let t = kappa.tanh();
            // D / cosh κ
            let d = cx(kappa, mu * t);
            let a = i * mu0 * t / d;
            let b = re(kappa * sech(kappa)) / d;
            let c = cx(-kappa, mu * t) / d;
            Ok(KernelValue::from_coefficients(a, b, c))
        }
        Regime::AboveGap | Regime::BelowGap => {
            let k = k_squared(mu, mu0).max(T::zero()).sqrt();
            if k == T::zero() {
                // massless, μ = 0: removable limit B = σx
                return Ok(KernelValue::from_coefficients(re(T::zero()), re(T::one()), re(-T::one())));
            }
            let (s, c) = k.sin_cos();
            let d = cx(mu * s, -k * c);
            if d.norm() < tol::<T>(1e-13) * (mu.abs() + k) {
                return Err(Error::Pole { mu: to_f64(mu) });
            }
            let a = re(mu0 * s) / d;
            let b = cx(T::zero(), -k) / d;
            let cd = cx(mu * s, k * c) / d;
            Ok(KernelValue::from_coefficients(a, b, cd))
        }
    }
}

/// Boundary data `Ψ_D,± = (φ(−½) ∓ χ(−½), φ(½) ± χ(½))` of a spinor with
/// values `left = Ψ(−½)`, `right = Ψ(½)`; returned as `(Ψ₊, Ψ₋)`.
pub fn boundary_vectors<T: Real>(left: &Vec2<T>, right: &Vec2<T>) -> (Vec2<T>, Vec2<T>) {
    (
        [left[0] - left[1], right[0] + right[1]],
        [left[0] + left[1], right[0] - right[1]],
    )
}

/// `(A₊, A₋)` in the plane-wave basis. The spinor ratio is `kL/(μ + μ₀)`, the
/// branch of `√((μ − μ₀)/(μ + μ₀))` that solves the Dirac system in every regime.
pub fn build_apm<T: Real>(p: &DiracPoint<T>) -> Result<(Mat2<T>, Mat2<T>)> {
    if p.is_mass_mode() {
        return Err(Error::MassMode { mu: to_f64(p.mu) });
    }
    let sum = p.mu + p.mu0;
    if sum == T::zero() {
        return Err(Error::RatioSingular { mu: to_f64(p.mu) });
    }
    let k = wavenumber(p)?;
    let r = k / re(sum);
    let half = k * re(lit::<T>(0.5));
    let em = (-imag_unit::<T>() * half).exp();
    let ep = (imag_unit::<T>() * half).exp();
    let one = re(T::one());
    let build = |s: T| {
        let r = r * re(s);
        Mat2::new(em * (one - r), ep * (one + r), ep * (one + r), em * (one - r))
    };
    Ok((build(T::one()), build(-T::one())))
}

/// `det A± = −4i/(μ + μ₀) · [μ sin(kL) ∓ i kL cos(kL)]`, returned as `(det A₊, det A₋)`.
pub fn det_apm_closed_form<T: Real>(p: &DiracPoint<T>) -> Result<(Cx<T>, Cx<T>)> {
    let k = wavenumber(p)?;
    let i = imag_unit::<T>();
    let pre = cx(T::zero(), lit::<T>(-4.0)) / re(p.mu + p.mu0);
    let s = re(p.mu) * k.sin();
    let c = i * k * k.cos();
    Ok((pre * (s - c), pre * (s + c)))
}

/// `B(±μ₀) = ±1/(μ₀ ∓ i) · [[μ₀, −i], [−i, μ₀]]`
pub fn mass_mode_b<T: Real>(sign: i8, mu0: T) -> Result<Mat2<T>> {
    if !(mu0 > T::zero()) {
        return Err(Error::MasslessModes { mu0: to_f64(mu0) });
    }
    let s = if sign >= 0 { T::one() } else { -T::one() };
    let i = imag_unit::<T>();
    let pre = re(s) / cx(mu0, -s);
    Ok(Mat2::new(re(mu0), -i, -i, re(mu0)).scale(pre))
}

/// `B(μ)` for any real energy, routing mass modes to [`mass_mode_b`].
pub fn b_matrix<T: Real>(p: &DiracPoint<T>) -> Result<Mat2<T>> {
    match p.regime {
        Regime::MassModePlus => mass_mode_b(1, p.mu0),
        Regime::MassModeMinus => mass_mode_b(-1, p.mu0),
        _ => kernel_at(p).map(|k| k.b),
    }
}

/// `F_{D,U}(μ)`.
pub fn spectral_value<T: Real>(p: &DiracPoint<T>, u: &UnitaryBc<T>) -> Result<Cx<T>> {
    match p.regime {
        Regime::MassModePlus | Regime::MassModeMinus => Ok(det2x2_difference(&b_matrix(p)?, u.matrix())),
        _ => kernel_at(p).map(|k| k.spectral_value(u)),
    }
}

/// Whether `μ = sign·μ₀` belongs to the spectrum: `m₁ + sin η = μ₀(m₀ ∓ cos η)`.
pub fn mass_mode_membership<T: Real>(u: &UnitaryBc<T>, sign: i8, mu0: T, tol: T) -> bool {
    mass_mode_defect(u, sign, mu0).abs() < tol
}

/// `m₁ + sin η − μ₀(m₀ ∓ cos η)`
pub fn mass_mode_defect<T: Real>(u: &UnitaryBc<T>, sign: i8, mu0: T) -> T {
    let (s, c) = u.eta().sin_cos();
    let c = if sign >= 0 { c } else { -c };
    u.m()[0] + s - mu0 * (u.m0() - c)
}

/// Dirac kernel at a fixed dimensionless mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracKernel<T: Real> {
    pub mu0: T,
}

impl<T: Real> DiracKernel<T> {
    pub fn new(mu0: T) -> Result<Self> {
        if !(mu0.is_finite() && mu0 >= T::zero()) {
            return Err(Error::InvalidConfig(format!("mu0 must be finite and >= 0, got {}", to_f64(mu0))));
        }
        Ok(Self { mu0 })
    }

    pub fn point(&self, mu: T) -> Result<DiracPoint<T>> {
        DiracPoint::new(mu, self.mu0)
    }
}

impl<T: Real> SpectralKernel<T> for DiracKernel<T> {
    fn theory(&self) -> Theory {
        Theory::Dirac
    }

    fn b_matrix(&self, x: T) -> Result<Mat2<T>> {
        b_matrix(&self.point(x)?)
    }

    fn mandatory_nodes(&self) -> Vec<T> {
        if self.mu0 > T::zero() {
            vec![-self.mu0, self.mu0]
        } else {
            vec![T::zero()]
        }
    }

    fn spectral_value(&self, x: T, u: &UnitaryBc<T>) -> Result<Cx<T>> {
        spectral_value(&self.point(x)?, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bc::{named_family, UnitaryBc};
    use crate::scalar::cis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Cx<f64>;

    fn pt(mu: f64, mu0: f64) -> DiracPoint<f64> {
        DiracPoint::new(mu, mu0).unwrap()
    }

    /// Closed form evaluated with complex `kL` and complex trig, no hyperbolic rewrite.
    fn complex_k_coefficients(mu: f64, mu0: f64) -> (C, C, C) {
        let d2 = (mu - mu0) * (mu + mu0);
        let k = C::from_polar(d2.abs().sqrt(), C::new(d2, 0.0).arg() / 2.0);
        let i = C::new(0.0, 1.0);
        let d = k.sin() * mu - i * k * k.cos();
        (k.sin() * mu0 / d, -i * k / d, (k.sin() * mu + i * k * k.cos()) / d)
    }

    /// Mass-mode A± from the polynomial solutions at ε = ±ε₀, fed through
    /// Ψ_D,± = (φ(−½) ∓ χ(−½), φ(½) ± χ(½)).
    fn mass_mode_apm_oracle(sign: i8, mu0: f64) -> (Mat2<f64>, Mat2<f64>) {
        let i = C::new(0.0, 1.0);
        // columns: c1 = 1 and c2 = 1 solutions
        let sol = |col: usize, x: f64| -> (C, C) {
            match (sign, col) {
                (1, 0) => (C::new(1.0, 0.0), C::new(0.0, 0.0)),
                (1, _) => (C::new(x, 0.0), -i / (2.0 * mu0)),
                (_, 0) => (C::new(0.0, 0.0), C::new(1.0, 0.0)),
                (_, _) => (i / (2.0 * mu0), C::new(x, 0.0)),
            }
        };
        let build = |s: f64| {
            let entry = |row: usize, col: usize| {
                let (x, sg) = if row == 0 { (-0.5, -s) } else { (0.5, s) };
                let (phi, chi) = sol(col, x);
                phi + chi * sg
            };
            Mat2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
        };
        (build(1.0), build(-1.0))
    }

    #[test]
    fn regime_classification_and_snapping() {
        assert_eq!(pt(5.0, 3.0).regime(), Regime::AboveGap);
        assert_eq!(pt(-5.0, 3.0).regime(), Regime::BelowGap);
        assert_eq!(pt(0.2, 3.0).regime(), Regime::InsideGap);
        let p = pt(3.0 + 1e-13, 3.0);
        assert_eq!((p.regime(), p.mu()), (Regime::MassModePlus, 3.0));
        assert_eq!(pt(-3.0, 3.0).regime(), Regime::MassModeMinus);
        assert_eq!(pt(0.0, 0.0).regime(), Regime::AboveGap);
        assert!(DiracPoint::new(1.0, -1.0).is_err());
    }

    #[test]
    fn wavenumber_examples() {
        assert!((wavenumber(&pt(5.0, 3.0)).unwrap() - C::new(4.0, 0.0)).norm() < 1e-15);
        assert!((wavenumber(&pt(0.0, 1.0)).unwrap() - C::new(0.0, 1.0)).norm() < 1e-15);
        assert!((wavenumber(&pt(-5.0, 3.0)).unwrap() - C::new(4.0, 0.0)).norm() < 1e-15);
        assert!(matches!(wavenumber(&pt(3.0, 3.0)), Err(Error::MassMode { .. })));
    }

    #[test]
    fn massless_coefficients() {
        for mu in [-7.3, -1.0, 0.4, 2.0, 11.0] {
            let k = kernel_at(&pt(mu, 0.0)).unwrap();
            assert_eq!(k.a_d, C::new(0.0, 0.0));
            let s = mu.abs().sin();
            let c = mu.abs().cos();
            let want = C::new(mu * s, mu.abs() * c) / C::new(mu * s, -mu.abs() * c);
            assert!((k.c_d - want).norm() < 1e-14);
            assert!((k.c_d.norm() - 1.0).abs() < 1e-14);
            assert!((k.b_d - cis(-mu)).norm() < 1e-14);
        }
        let k = kernel_at(&pt(0.0, 0.0)).unwrap();
        assert!((k.b - Mat2::sigma_x()).frobenius() < 1e-15);
    }

    #[test]
    fn matrix_path_agrees_with_closed_form() {
        for &(mu, mu0) in &[(5.0, 3.0), (-5.0, 3.0), (0.3, 1.0), (-0.5, 1.0), (2.0 * std::f64::consts::PI, 0.0), (-20.0, 1.0)] {
            let p = pt(mu, mu0);
            let (ap, am) = build_apm(&p).unwrap();
            let b = am * ap.inverse().unwrap();
            assert!((b - kernel_at(&p).unwrap().b).frobenius() < 1e-12, "mu={mu} mu0={mu0}");
            let (dp, dm) = det_apm_closed_form(&p).unwrap();
            assert!((ap.det() - dp).norm() <= 1e-10 * dp.norm());
            assert!((am.det() - dm).norm() <= 1e-10 * dm.norm());
        }
    }

    #[test]
    fn det_apm_example() {
        // μ=5, μ₀=3: ratio 1/2, det A± = (−4i/8)[5 sin 4 ∓ 4i cos 4]
        let p = pt(5.0, 3.0);
        let (ap, am) = build_apm(&p).unwrap();
        let i = C::new(0.0, 1.0);
        let want_p = -i * 0.5 * (C::new(5.0 * 4f64.sin(), 0.0) - i * 4.0 * 4f64.cos());
        let want_m = -i * 0.5 * (C::new(5.0 * 4f64.sin(), 0.0) + i * 4.0 * 4f64.cos());
        assert!((ap.det() - want_p).norm() < 1e-13);
        assert!((am.det() - want_m).norm() < 1e-13);
        assert!(matches!(build_apm(&pt(0.0, 0.0)), Err(Error::RatioSingular { .. })));
    }

    #[test]
    fn hyperbolic_form_matches_complex_k() {
        for mu in [-0.99, -0.5, 0.0, 0.3, 0.9, 0.999] {
            let k = kernel_at(&pt(mu, 1.0)).unwrap();
            let (a, b, c) = complex_k_coefficients(mu, 1.0);
            assert!((k.a_d - a).norm() < 1e-12 && (k.b_d - b).norm() < 1e-12 && (k.c_d - c).norm() < 1e-12);
        }
        // outside the gap the same helper reproduces the real-k branch
        for mu in [-4.0, 1.5, 9.0] {
            let k = kernel_at(&pt(mu, 1.0)).unwrap();
            let (a, b, _) = complex_k_coefficients(mu, 1.0);
            assert!((k.a_d - a).norm() < 1e-12 && (k.b_d - b).norm() < 1e-12);
        }
    }

    #[test]
    fn deep_gap_is_finite_and_unitary() {
        for kappa_target in [50.0, 500.0, 2000.0] {
            let mu0 = kappa_target;
            for mu in [0.0, 0.5 * mu0, -0.9 * mu0] {
                let k = kernel_at(&pt(mu, mu0)).unwrap();
                assert!(k.b.is_finite());
                assert!(k.b.unitarity_residual() < 1e-10);
                assert!((k.c_d.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mass_mode_examples() {
        let b = mass_mode_b(1, 1.0).unwrap();
        let pre = C::new(1.0, 0.0) / C::new(1.0, -1.0);
        let want = Mat2::new(C::new(1.0, 0.0), C::new(0.0, -1.0), C::new(0.0, -1.0), C::new(1.0, 0.0)).scale(pre);
        assert!((b - want).frobenius() < 1e-15);
        let bm = mass_mode_b::<f64>(-1, 1.0).unwrap();
        assert!((bm.det().norm() - 1.0).abs() < 1e-15);
        let want_det = C::new(2.0, 0.0) / (C::new(1.0, 1.0) * C::new(1.0, 1.0));
        assert!((bm.det() - want_det).norm() < 1e-15);
        assert!(matches!(mass_mode_b(1, 0.0), Err(Error::MasslessModes { .. })));
        for mu0 in [0.1, 1.0, 7.0] {
            for s in [1, -1] {
                let b = mass_mode_b(s, mu0).unwrap();
                assert!(b.unitarity_residual() < 1e-12);
                let (ap, am) = mass_mode_apm_oracle(s, mu0);
                assert!((am * ap.inverse().unwrap() - b).frobenius() < 1e-13);
            }
        }
    }

    #[test]
    fn gap_edge_continuity() {
        for &mu0 in &[0.5, 1.0, 5.0] {
            for s in [1i8, -1] {
                let edge = mass_mode_b(s, mu0).unwrap();
                let mut prev = f64::INFINITY;
                for delta in [1e-2, 1e-3, 1e-5] {
                    for side in [1.0, -1.0] {
                        let mu = f64::from(s) * mu0 + side * delta;
                        let d = (kernel_at(&pt(mu, mu0)).unwrap().b - edge).frobenius();
                        assert!(d < 10.0 * delta, "mu0={mu0} s={s} delta={delta} d={d}");
                    }
                    let d = (kernel_at(&pt(f64::from(s) * mu0 + delta, mu0)).unwrap().b - edge).frobenius();
                    assert!(d < prev);
                    prev = d;
                }
            }
        }
    }

    #[test]
    fn gap_edges_are_approached_linearly_from_both_sides() {
        for &mu0 in &[0.5, 1.0, 5.0] {
            for s in [1i8, -1] {
                let edge = mass_mode_b(s, mu0).unwrap();
                for side in [1.0, -1.0] {
                    let d: Vec<f64> = [1e-3, 1e-4, 1e-5]
                        .iter()
                        .map(|h| (kernel_at(&pt(f64::from(s) * mu0 + side * h, mu0)).unwrap().b - edge).frobenius())
                        .collect();
                    for w in d.windows(2) {
                        assert!(((w[0] / w[1]).log10() - 1.0).abs() < 1e-2);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_invariants_on_grid() {
        for &mu0 in &[0.0f64, 0.5, 1.0, 5.0] {
            let span = 3.0 * (2.0 * mu0).max(1.0);
            for j in 0..10_000 {
                let mu = -span + 2.0 * span * (j as f64 + 0.5) / 10_000.0;
                let p = pt(mu, mu0);
                let b = b_matrix(&p).unwrap();
                assert!(b.unitarity_residual() < 1e-10);
                if let Ok(k) = kernel_at(&p) {
                    assert!((k.c_d - (k.a_d * k.a_d - k.b_d * k.b_d)).norm() < 1e-12);
                    assert!((k.c_d.norm() - 1.0).abs() < 1e-12);
                    assert!((k.b.det() - k.c_d).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spectral_value_examples() {
        let id = UnitaryBc::<f64>::from_matrix(&Mat2::identity()).unwrap();
        for mu0 in [0.3, 1.0, 4.0] {
            assert!(spectral_value(&pt(mu0, mu0), &id).unwrap().norm() < 1e-15);
        }
        assert!(spectral_value(&pt(-1.0, 1.0), &id).unwrap().norm() > 0.1);

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let u = UnitaryBc::<f64>::sample(&mut rng);
            let mu0: f64 = rng.gen_range(0.0..4.0);
            let mu: f64 = rng.gen_range(-12.0..12.0);
            let lambda: f64 = rng.gen_range(-4.0..4.0);
            let p = pt(mu, mu0);
            let f = spectral_value(&p, &u).unwrap();
            let direct = det2x2_difference(&b_matrix(&p).unwrap(), u.matrix());
            assert!((f - direct).norm() < 1e-11);
            assert!((f - (b_matrix(&p).unwrap() - *u.matrix()).det()).norm() < 1e-11);
            let g = spectral_value(&p, &u.conjugate_orbit(lambda)).unwrap();
            assert!((f - g).norm() < 1e-12);
        }
    }

    #[test]
    fn membership_examples() {
        let id = UnitaryBc::<f64>::from_matrix(&Mat2::identity()).unwrap();
        for mu0 in [0.0, 0.5, 3.0] {
            assert!(mass_mode_membership(&id, 1, mu0, 1e-10));
        }
        assert!(!mass_mode_membership(&id, -1, 1.0, 1e-10));
        let pp = named_family::<f64>("pp", &[0.0]).unwrap();
        for mu0 in [0.1, 1.0, 10.0] {
            assert!(!mass_mode_membership(&pp, 1, mu0, 1e-10));
        }
    }

    #[test]
    fn membership_matches_spectral_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for &mu0 in &[0.5, 1.0, 5.0] {
            for n in 0..200 {
                // half of the samples are forced onto the criterion surface
                let u = if n % 2 == 0 {
                    UnitaryBc::<f64>::sample(&mut rng)
                } else {
                    on_mass_mode_surface(&mut rng, if n % 4 == 1 { 1 } else { -1 }, mu0)
                };
                for s in [1i8, -1] {
                    let f = spectral_value(&pt(f64::from(s) * mu0, mu0), &u).unwrap().norm();
                    assert_eq!(f < 1e-9, mass_mode_membership(&u, s, mu0, 1e-10), "mu0={mu0} s={s} f={f}");
                }
            }
        }
    }

    /// Picks η, m₀, m₂ at random and solves the criterion for m₁, keeping |m|²+m₀²=1 via m₃.
    fn on_mass_mode_surface(rng: &mut ChaCha8Rng, s: i8, mu0: f64) -> UnitaryBc<f64> {
        loop {
            let eta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            let m0: f64 = rng.gen_range(-1.0..1.0);
            let c = if s > 0 { eta.cos() } else { -eta.cos() };
            let m1 = mu0 * (m0 - c) - eta.sin();
            let rest = 1.0 - m0 * m0 - m1 * m1;
            if rest > 0.0 {
                let m2 = rng.gen_range(-1.0..1.0) * rest.sqrt();
                let m3 = (rest - m2 * m2).max(0.0).sqrt();
                return UnitaryBc::from_chart(eta, m0, [m1, m2, m3]).unwrap();
            }
        }
    }

    #[test]
    fn physical_units() {
        let cfg = PhysicalConfig::<f64>::new(2.0, 3.0, 0.5, 4.0).unwrap();
        assert!((cfg.mu0() - 3.0 * 4.0 * 2.0 / 0.5).abs() < 1e-12);
        assert!((cfg.mu_to_energy(cfg.energy_to_mu(1.7)) - 1.7).abs() < 1e-14);
        assert!((cfg.energy_to_e(1.0).unwrap() - 2.0 * 3.0 * 4.0 / 0.25).abs() < 1e-12);
        assert!(PhysicalConfig::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalConfig::new(1.0, 0.0, 1.0, 1.0).unwrap().energy_to_e(1.0).is_err());
    }
}
