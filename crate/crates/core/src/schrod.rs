//! Non-relativistic kernel in the dimensionless energy `e = 2mEL²/ħ²`, on the
//! rescaled interval `x ∈ [−½, ½]` with boundary data
//! `Ψ± = (−ψ'(−½) ± iψ(−½), ψ'(½) ± iψ(½))`.
//!
//! `B(e)` commutes with `σx`, so it is fixed by its eigenvalues on even and odd
//! solutions. With `q = √e`:
//!
//! ```text
//! λ_even = (−cos(q/2) + i q sin(q/2)) / (cos(q/2) + i q sin(q/2))
//! λ_odd  = (q cos(q/2) − i sin(q/2)) / (q cos(q/2) + i sin(q/2))
//! a = (λ_even + λ_odd)/2,  b = (λ_even − λ_odd)/2,  c = λ_even λ_odd
//! ```
//!
//! and `F_U = det U − a tr U + b tr(Uσx) + c`. Negative energies use the
//! continuation `q = iκ` written with `tanh(κ/2)`.

use crate::bc::UnitaryBc;
use crate::error::{Error, Result};
use crate::kernel::{SpectralKernel, Theory};
use crate::matalg::Mat2;
use crate::scalar::{cx, lit, re, tol, to_f64, Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchrodRegime {
    Positive,
    Zero,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodPoint<T: Real> {
    e: T,
    regime: SchrodRegime,
}

impl<T: Real> SchrodPoint<T> {
    pub fn new(e: T) -> Result<Self> {
        if !e.is_finite() {
            return Err(Error::InvalidConfig(format!("non-finite energy {}", to_f64(e))));
        }
        let regime = if e > T::zero() {
            SchrodRegime::Positive
        } else if e < T::zero() {
            SchrodRegime::Negative
        } else {
            SchrodRegime::Zero
        };
        Ok(Self { e, regime })
    }

    pub fn e(&self) -> T {
        self.e
    }

    pub fn regime(&self) -> SchrodRegime {
        self.regime
    }
}

/// Boundary vector `Ψ±` of a solution given its values and slopes at `∓½`.
fn boundary_column<T: Real>(sign: T, left: (T, T), right: (T, T)) -> [Cx<T>; 2] {
    // left/right = (ψ, ψ') as real pairs scaled into complex below
    [cx(-left.1, sign * left.0), cx(right.1, sign * right.0)]
}

/// `(A₊, A₋)`: columns are `Ψ±` of the basis `{e^{iqx}, e^{−iqx}}` (e > 0),
/// `{1, x}` (e = 0) or `{cosh κx, sinh κx}/cosh(κ/2)` (e < 0).
pub fn schrod_boundary_map<T: Real>(p: &SchrodPoint<T>) -> (Mat2<T>, Mat2<T>) {
    let half = lit::<T>(0.5);
    let build = |sign: T| -> Mat2<T> {
        let i = cx(T::zero(), T::one());
        let s = re(sign);
        match p.regime {
            SchrodRegime::Positive => {
                let q = p.e.sqrt();
                // ψ = e^{±iqx}: Ψ rows are −ψ'(−½) ± iψ(−½), ψ'(½) ± iψ(½)
                let col = |dir: T| {
                    let psi = |x: T| Cx::from_polar(T::one(), dir * q * x);
                    let dpsi = |x: T| i * dir * q * psi(x);
                    [-dpsi(-half) + s * i * psi(-half), dpsi(half) + s * i * psi(half)]
                };
                let (c0, c1) = (col(T::one()), col(-T::one()));
                Mat2::new(c0[0], c1[0], c0[1], c1[1])
            }
            SchrodRegime::Zero => {
                let c0 = boundary_column(sign, (T::one(), T::zero()), (T::one(), T::zero()));
                let c1 = boundary_column(sign, (-half, T::one()), (half, T::one()));
                Mat2::new(c0[0], c1[0], c0[1], c1[1])
            }
            SchrodRegime::Negative => {
                let kappa = (-p.e).sqrt();
                let t = (kappa * half).tanh();
                // cosh(κx)/cosh(κ/2) and sinh(κx)/cosh(κ/2) at x = ±½
                let c0 = boundary_column(sign, (T::one(), -kappa * t), (T::one(), kappa * t));
                let c1 = boundary_column(sign, (-t, kappa), (t, kappa));
                Mat2::new(c0[0], c1[0], c0[1], c1[1])
            }
        }
    };
    (build(T::one()), build(-T::one()))
}

/// `B = A₋A₊⁻¹` from the basis construction.
pub fn b_matrix_path<T: Real>(p: &SchrodPoint<T>) -> Result<Mat2<T>> {
    let (ap, am) = schrod_boundary_map(p);
    let scale = ap.max_abs() * ap.max_abs();
    if ap.det().norm() < tol::<T>(1e-13) * scale {
        return Err(Error::Pole { mu: to_f64(p.e) });
    }
    Ok(am * ap.inverse().ok_or(Error::Pole { mu: to_f64(p.e) })?)
}

/// `sin(q/2)/q`, finite at `q = 0`.
fn half_sinc<T: Real>(q: T) -> T {
    if q < lit(1e-4) {
        lit::<T>(0.5) - q * q / lit(48.0)
    } else {
        (q * lit(0.5)).sin() / q
    }
}

/// `tanh(κ/2)/κ`, finite at `κ = 0`.
fn half_tanhc<T: Real>(kappa: T) -> T {
    if kappa < lit(1e-4) {
        lit::<T>(0.5) - kappa * kappa / lit(24.0)
    } else {
        (kappa * lit(0.5)).tanh() / kappa
    }
}

/// Eigenvalues of `B` on even and odd solutions.
pub fn parity_eigenvalues<T: Real>(p: &SchrodPoint<T>) -> (Cx<T>, Cx<T>) {
    let one = T::one();
    match p.regime {
        SchrodRegime::Positive | SchrodRegime::Zero => {
            let q = p.e.max(T::zero()).sqrt();
            let (s, c) = (q * lit(0.5)).sin_cos();
            let even = cx(-c, q * s) / cx(c, q * s);
            let h = half_sinc(q);
            let odd = cx(c, -h) / cx(c, h);
            (even, odd)
        }
        SchrodRegime::Negative => {
            let kappa = (-p.e).sqrt();
            let t = (kappa * lit(0.5)).tanh();
            let even = cx(-one, -kappa * t) / cx(one, -kappa * t);
            let h = half_tanhc(kappa);
            let odd = cx(h, one) / cx(-h, one);
            (even, odd)
        }
    }
}

/// Closed-form `(a, b, c)` with `B = aI + bσx`, `c = det B`.
pub fn coefficients<T: Real>(p: &SchrodPoint<T>) -> (Cx<T>, Cx<T>, Cx<T>) {
    let (even, odd) = parity_eigenvalues(p);
    let half = re(lit::<T>(0.5));
    ((even + odd) * half, (even - odd) * half, even * odd)
}

pub fn b_matrix<T: Real>(p: &SchrodPoint<T>) -> Mat2<T> {
    let (a, b, _) = coefficients(p);
    Mat2::scalar(a) + Mat2::sigma_x().scale(b)
}

/// `F_U(e) = det U − a tr U + b tr(Uσx) + c`.
pub fn schrod_spectral_value<T: Real>(p: &SchrodPoint<T>, u: &UnitaryBc<T>) -> Cx<T> {
    let (a, b, c) = coefficients(p);
    let t = u.invariants();
    t.det_u - a * t.tr_u + b * t.tr_u_sx + c
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SchrodKernel;

impl<T: Real> SpectralKernel<T> for SchrodKernel {
    fn theory(&self) -> Theory {
        Theory::Schrod
    }

    fn b_matrix(&self, x: T) -> Result<Mat2<T>> {
        Ok(b_matrix(&SchrodPoint::new(x)?))
    }

    fn mandatory_nodes(&self) -> Vec<T> {
        vec![T::zero()]
    }

    fn spectral_value(&self, x: T, u: &UnitaryBc<T>) -> Result<Cx<T>> {
        Ok(schrod_spectral_value(&SchrodPoint::new(x)?, u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bc::named_family;
    use crate::matalg::det2x2_difference;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    type C = Cx<f64>;

    fn sp(e: f64) -> SchrodPoint<f64> {
        SchrodPoint::new(e).unwrap()
    }

    /// Ψ± of an arbitrary solution given by closures, straight from the definition.
    fn psi_pm(psi: &dyn Fn(f64) -> C, dpsi: &dyn Fn(f64) -> C) -> ([C; 2], [C; 2]) {
        let i = C::new(0.0, 1.0);
        let plus = [-dpsi(-0.5) + i * psi(-0.5), dpsi(0.5) + i * psi(0.5)];
        let minus = [-dpsi(-0.5) - i * psi(-0.5), dpsi(0.5) - i * psi(0.5)];
        (plus, minus)
    }

    #[test]
    fn zero_energy_map_is_the_limit_of_positive_energy() {
        let (ap0, am0) = schrod_boundary_map(&sp(0.0));
        let b0 = am0 * ap0.inverse().unwrap();
        assert!((b_matrix(&sp(0.0)) - b0).frobenius() < 1e-15);
        for e in [1e-10, 1e-12] {
            let b = b_matrix_path(&sp(e)).unwrap();
            assert!((b - b0).frobenius() < 1e-8);
            let b = b_matrix_path(&sp(-e)).unwrap();
            assert!((b - b0).frobenius() < 1e-8);
        }
        // columns of the e = 0 map from ψ = 1 and ψ = x
        let (p1, m1) = psi_pm(&|_| C::new(1.0, 0.0), &|_| C::new(0.0, 0.0));
        let (px, mx) = psi_pm(&|x| C::new(x, 0.0), &|_| C::new(1.0, 0.0));
        assert_eq!(ap0, Mat2::new(p1[0], px[0], p1[1], px[1]));
        assert_eq!(am0, Mat2::new(m1[0], mx[0], m1[1], mx[1]));
    }

    #[test]
    fn periodic_plane_wave_checks() {
        let pp = named_family::<f64>("pp", &[0.0]).unwrap();
        let f_anti = det2x2_difference(&b_matrix_path(&sp(PI * PI)).unwrap(), pp.matrix());
        assert!(f_anti.norm() > 1.0);
        let f_per = det2x2_difference(&b_matrix_path(&sp(4.0 * PI * PI)).unwrap(), pp.matrix());
        assert!(f_per.norm() < 1e-12);
        // the plane wave itself satisfies Ψ₋ = UΨ₊
        let q = 2.0 * PI;
        let (p, m) = psi_pm(&|x| C::from_polar(1.0, q * x), &|x| C::new(0.0, q) * C::from_polar(1.0, q * x));
        let up = pp.matrix().apply(&p);
        assert!((up[0] - m[0]).norm() < 1e-12 && (up[1] - m[1]).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_matrix_path() {
        for j in 0..=5000 {
            let e = -100.0 + 500.0 * j as f64 / 5000.0;
            let p = sp(e);
            let bm = b_matrix_path(&p).unwrap();
            let bc = b_matrix(&p);
            assert!((bm - bc).frobenius() < 1e-11, "e={e}");
            assert!(bc.unitarity_residual() < 1e-10);
            assert!(bm.unitarity_residual() < 1e-10);
            let (a, b, c) = coefficients(&p);
            assert!((c - (a * a - b * b)).norm() < 1e-12);
        }
    }

    #[test]
    fn deep_negative_energy_stays_finite() {
        for e in [-1e4, -1e6, -1e8] {
            let b = b_matrix(&sp(e));
            assert!(b.is_finite() && b.unitarity_residual() < 1e-10);
            assert!((b - b_matrix_path(&sp(e)).unwrap()).frobenius() < 1e-10);
        }
    }

    #[test]
    fn quasi_periodic_roots_at_half_integers() {
        for alpha in [0.0, PI / 2.0, 1.3] {
            let u = named_family::<f64>("qp", &[alpha]).unwrap();
            for n in 0..10 {
                let e = (PI * (n as f64 + 0.5)).powi(2);
                assert!(schrod_spectral_value(&sp(e), &u).norm() < 1e-12, "alpha={alpha} n={n}");
                assert!(schrod_spectral_value(&sp(e + 0.05), &u).norm() > 1e-5);
            }
        }
    }

    #[test]
    fn spectral_value_paths_and_orbit_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..2000 {
            let u = UnitaryBc::<f64>::sample(&mut rng);
            let e: f64 = rng.gen_range(-100.0..400.0);
            let p = sp(e);
            let f = schrod_spectral_value(&p, &u);
            let g = det2x2_difference(&b_matrix_path(&p).unwrap(), u.matrix());
            assert!((f - g).norm() < 1e-11);
            let lambda: f64 = rng.gen_range(-3.0..3.0);
            assert!((f - schrod_spectral_value(&p, &u.conjugate_orbit(lambda))).norm() < 1e-12);
        }
    }

    #[test]
    fn robin_is_an_orbit_fixed_point() {
        for alpha in [0.0, 0.3, 2.0, 5.5] {
            let u = named_family::<f64>("robin", &[alpha]).unwrap();
            for lambda in [0.4, 1.7] {
                assert!((*u.conjugate_orbit(lambda).matrix() - *u.matrix()).frobenius() < 1e-14);
            }
        }
    }

    #[test]
    fn robin_bc_as_printed() {
        // Robin: −ψ'(−½) = −cot(α/2) ψ(−½), ψ'(½) = −cot(α/2) ψ(½).
        // The even solution cosh/cos with matching log-derivative must be a root.
        let alpha: f64 = 2.0;
        let u = named_family::<f64>("robin", &[alpha]).unwrap();
        let beta = 1.0 / (alpha / 2.0).tan();
        // even ψ = cos(qx): ψ'(½)/ψ(½) = −q tan(q/2) = −β
        let g = |q: f64| q * (q / 2.0).tan() - beta;
        let (mut lo, mut hi) = (1e-6, PI - 1e-6);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let q = 0.5 * (lo + hi);
        assert!(schrod_spectral_value(&sp(q * q), &u).norm() < 1e-10);
    }
}
