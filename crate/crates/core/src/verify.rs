//! Acceptance checks shared by the `verify` subcommand and the acceptance tests.
//!
//! Every check is deterministic (fixed seeds) and runs in double precision.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bc::{named_family, UnitaryBc};
use crate::dirac::{self, DiracKernel, DiracPoint, Regime};
use crate::error::Result;
use crate::iso::compare_spectra;
use crate::kernel::SpectralKernel;
use crate::matalg::{Mat2, Vec2};
use crate::roots::{find_spectrum, SearchOptions, SpectrumSlice, Window};
use crate::schrod::{self, SchrodKernel, SchrodPoint};
use crate::triple::{
    boundary_form_check, random_rep, transformed_bc, CliffordRep, Quadrature, RepKernel, SpinorSample,
};

type C = num_complex::Complex<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckOutcome {
    /// `ok 3 - name (detail)` / `not ok ...`
    pub fn tap_line(&self) -> String {
        format!(
            "{} {} - {} ({}; {:.2}s)",
            if self.passed { "ok" } else { "not ok" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// A numbered acceptance check.
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    run: fn() -> Result<(bool, String)>,
}

impl Check {
    pub fn run(&self) -> CheckOutcome {
        let start = Instant::now();
        let (passed, detail) = match (self.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckOutcome { id: self.id, name: self.name, passed, detail, elapsed: start.elapsed() }
    }
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, name: "quasi-periodic Schrodinger spectrum", run: quasi_periodic_spectrum },
        Check { id: 2, name: "isospectral orbit equality", run: orbit_equality },
        Check { id: 3, name: "pointwise spectral-function invariance", run: pointwise_invariance },
        Check { id: 4, name: "mass-mode criterion equivalence", run: mass_mode_equivalence },
        Check { id: 5, name: "dual-path kernel equivalence", run: dual_path },
        Check { id: 6, name: "unitarity and unimodularity", run: unitarity },
        Check { id: 7, name: "gap-edge continuity", run: gap_edge_continuity },
        Check { id: 8, name: "Dirac pseudo-periodic oracle", run: pseudo_periodic_oracle },
        Check { id: 9, name: "boundary-triple identity", run: boundary_triple },
        Check { id: 10, name: "representation independence", run: representation_independence },
        Check { id: 11, name: "grid-refinement stability", run: refinement_stability },
    ]
}

pub fn run_check(id: u8) -> Option<CheckOutcome> {
    checks().into_iter().find(|c| c.id == id).map(|c| c.run())
}

pub fn run_all() -> Vec<CheckOutcome> {
    checks().iter().map(Check::run).collect()
}

/// Dirac mass used by the Dirac-side checks.
pub const MU0: f64 = 1.0;

/// Ten gap-widths centred on zero energy.
pub fn dirac_window() -> Window<f64> {
    Window { min: -10.0 * MU0, max: 10.0 * MU0 }
}

/// Schrödinger window of length 500 with a stretch of negative energies.
pub fn schrod_window() -> Window<f64> {
    Window { min: -100.0, max: 400.0 }
}

fn opts() -> SearchOptions<f64> {
    SearchOptions::default()
}

fn random_bcs(seed: u64, n: usize) -> Vec<UnitaryBc<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| UnitaryBc::sample(&mut rng)).collect()
}

fn incomplete(s: &SpectrumSlice<f64>) -> bool {
    !s.is_complete()
}

fn quasi_periodic_spectrum() -> Result<(bool, String)> {
    let start = Instant::now();
    let w = Window::new(0.0, 500.0)?;
    let bcs = [
        named_family("qp", &[0.0])?,
        named_family("qp", &[PI / 2.0])?,
        named_family("pp", &[PI / 2.0])?,
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for u in &bcs {
        let s = find_spectrum(&SchrodKernel, u, w, &opts())?;
        let v = s.values();
        ok &= v.len() == 7 && s.is_complete();
        for (n, x) in v.iter().enumerate() {
            let want = (PI * (n as f64 + 0.5)).powi(2);
            worst = worst.max(((x - want) / want).abs());
        }
    }
    let t = start.elapsed();
    ok &= worst < 1e-10 && t < Duration::from_secs(1);
    Ok((ok, format!("max rel err {worst:.2e}, {:.3}s", t.as_secs_f64())))
}

fn orbit_equality() -> Result<(bool, String)> {
    let start = Instant::now();
    let dk = DiracKernel::new(MU0)?;
    let mut worst = 0.0f64;
    let mut ok = true;
    for u in random_bcs(2, 50) {
        for (kernel, w) in [
            (&dk as &dyn SpectralKernel<f64>, dirac_window()),
            (&SchrodKernel as &dyn SpectralKernel<f64>, schrod_window()),
        ] {
            let base = find_spectrum(kernel, &u, w, &opts())?;
            ok &= !incomplete(&base);
            for lambda in [0.37, 1.2, 2.9] {
                let s = find_spectrum(kernel, &u.conjugate_orbit(lambda), w, &opts())?;
                let c = compare_spectra(&base, &s, 1e-8)?;
                ok &= c.equal && !incomplete(&s);
                worst = worst.max(c.max_pairwise_gap);
            }
        }
    }
    let t = start.elapsed();
    ok &= t < Duration::from_secs(60);
    Ok((ok, format!("max gap {worst:.2e}, {:.1}s", t.as_secs_f64())))
}

fn pointwise_invariance() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let u = UnitaryBc::sample(&mut rng);
        let ul = u.conjugate_orbit(rng.gen_range(0.0..2.0 * PI));
        for j in 0..2000 {
            let t = (j as f64 + 0.5) / 2000.0;
            let p = DiracPoint::new(-10.0 + 20.0 * t, MU0)?;
            let d = dirac::spectral_value(&p, &u)? - dirac::spectral_value(&p, &ul)?;
            let e = SchrodPoint::new(-100.0 + 500.0 * t)?;
            let s = schrod::schrod_spectral_value(&e, &u) - schrod::schrod_spectral_value(&e, &ul);
            worst = worst.max(d.norm()).max(s.norm());
        }
    }
    Ok((worst < 1e-12, format!("max |F_U - F_U_lambda| {worst:.2e}")))
}

/// A boundary condition on the mass-mode surface `m₁ + sin η = μ₀(m₀ ∓ cos η)`.
pub fn sample_on_mass_mode_surface<R: Rng + ?Sized>(rng: &mut R, sign: i8, mu0: f64) -> UnitaryBc<f64> {
    loop {
        let eta: f64 = rng.gen_range(0.0..PI);
        let m0: f64 = rng.gen_range(-1.0..1.0);
        let c = if sign > 0 { eta.cos() } else { -eta.cos() };
        let m1 = mu0 * (m0 - c) - eta.sin();
        let rest = 1.0 - m0 * m0 - m1 * m1;
        if rest > 0.0 {
            let m2 = rng.gen_range(-1.0..1.0) * rest.sqrt();
            let m3 = (rest - m2 * m2).max(0.0).sqrt();
            if let Ok(u) = UnitaryBc::from_chart(eta, m0, [m1, m2, m3]) {
                return u;
            }
        }
    }
}

fn mass_mode_equivalence() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut mismatches = 0;
    let mut members = 0;
    let mut total = 0;
    for mu0 in [0.5, 1.0, 5.0] {
        for k in 0..200 {
            // a third of the samples lie on one of the two surfaces
            let u = match k % 3 {
                0 => sample_on_mass_mode_surface(&mut rng, 1, mu0),
                1 => sample_on_mass_mode_surface(&mut rng, -1, mu0),
                _ => UnitaryBc::sample(&mut rng),
            };
            for sign in [1i8, -1] {
                let p = DiracPoint::new(f64::from(sign) * mu0, mu0)?;
                let root = dirac::spectral_value(&p, &u)?.norm() < 1e-9;
                let member = dirac::mass_mode_membership(&u, sign, mu0, 1e-10);
                mismatches += usize::from(root != member);
                members += usize::from(member);
                total += 1;
            }
        }
    }
    Ok((
        mismatches == 0 && members > 0,
        format!("{mismatches} mismatches over {total} tests, {members} on the surface"),
    ))
}

/// Dual-path grid: three masses, points in every regime, avoiding `±μ₀`.
fn kernel_grid() -> Vec<(f64, f64)> {
    let mut g = Vec::new();
    for mu0 in [0.5, 1.0, 5.0] {
        let span = 4.0 * mu0 + 20.0;
        let n = 3334;
        for j in 0..n {
            g.push((-span + 2.0 * span * (j as f64 + 0.5) / n as f64, mu0));
        }
    }
    g
}

fn dual_path() -> Result<(bool, String)> {
    let mut worst_b = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut regimes = [false; 3];
    let grid = kernel_grid();
    for &(mu, mu0) in &grid {
        let p = DiracPoint::new(mu, mu0)?;
        match p.regime() {
            Regime::BelowGap => regimes[0] = true,
            Regime::InsideGap => regimes[1] = true,
            Regime::AboveGap => regimes[2] = true,
            _ => {}
        }
        let (ap, am) = dirac::build_apm(&p)?;
        let inv = ap.inverse().expect("A+ invertible off the mass modes");
        let closed = dirac::kernel_at(&p)?.b;
        worst_b = worst_b.max((am * inv - closed).frobenius());
        let (dp, dm) = dirac::det_apm_closed_form(&p)?;
        worst_det = worst_det
            .max((ap.det() - dp).norm() / dp.norm())
            .max((am.det() - dm).norm() / dm.norm());
    }
    let ok = worst_b < 1e-11 && worst_det < 1e-10 && regimes.iter().all(|&r| r);
    Ok((ok, format!("{} points, max |dB| {worst_b:.2e}, max det rel err {worst_det:.2e}", grid.len())))
}

fn unitarity() -> Result<(bool, String)> {
    let mut pts = kernel_grid();
    // deep inside a wide gap: κ up to 500
    let mu0 = 500.0;
    for j in 0..2001 {
        pts.push((-mu0 + 2.0 * mu0 * j as f64 / 2000.0, mu0));
    }
    let mut worst_u = 0.0f64;
    let mut worst_c = 0.0f64;
    let mut max_kappa = 0.0f64;
    for &(mu, mu0) in &pts {
        let p = DiracPoint::new(mu, mu0)?;
        let b = dirac::b_matrix(&p)?;
        worst_u = worst_u.max(b.unitarity_residual());
        if p.regime() == Regime::InsideGap {
            max_kappa = max_kappa.max(((mu0 - mu) * (mu0 + mu)).sqrt());
        }
        if let Ok(k) = dirac::kernel_at(&p) {
            worst_c = worst_c.max((k.c_d.norm() - 1.0).abs());
        }
    }
    let ok = worst_u < 1e-10 && worst_c < 1e-12 && max_kappa >= 500.0 - 1e-9;
    Ok((ok, format!("max ||B*B - I|| {worst_u:.2e}, max ||c|-1| {worst_c:.2e}, kappa up to {max_kappa:.0}")))
}

/// `‖B(μ₀ + δ) − B(μ₀)‖` for `δ ∈ {1e−2, 1e−3, 1e−4}`, and its mirror image
/// `B(−μ₀ − δ)` at the lower edge.
fn gap_edge_continuity() -> Result<(bool, String)> {
    let deltas = [1e-2, 1e-3, 1e-4];
    let mut worst_order = f64::INFINITY;
    let mut decreasing = true;
    for mu0 in [0.5f64, 1.0, 5.0] {
        for edge in [mu0, -mu0] {
            let b0 = dirac::b_matrix(&DiracPoint::new(edge, mu0)?)?;
            let d: Vec<f64> = deltas
                .iter()
                .map(|&h| Ok((dirac::b_matrix(&DiracPoint::new(edge + edge.signum() * h, mu0)?)? - b0).frobenius()))
                .collect::<Result<_>>()?;
            decreasing &= d[0] > d[1] && d[1] > d[2];
            for w in d.windows(2) {
                worst_order = worst_order.min((w[0] / w[1]).log10());
            }
        }
    }
    Ok((decreasing && worst_order >= 1.0, format!("min observed order {worst_order:.4}")))
}

/// `±√((2πn + α)² + μ₀²)` inside the window, sorted, with multiplicity.
pub fn pseudo_periodic_oracle_roots(alpha: f64, mu0: f64, w: &Window<f64>) -> Vec<f64> {
    let mut out = Vec::new();
    let nmax = (w.min.abs().max(w.max.abs()) / (2.0 * PI)).ceil() as i64 + 2;
    for n in -nmax..=nmax {
        let p = 2.0 * PI * n as f64 + alpha;
        let e = (p * p + mu0 * mu0).sqrt();
        out.extend([e, -e].into_iter().filter(|&v| w.contains(v)));
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out
}

fn pseudo_periodic_oracle() -> Result<(bool, String)> {
    let start = Instant::now();
    let k = DiracKernel::new(1.0)?;
    let w = Window::new(-15.0, 15.0)?;
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut count = 0;
    for alpha in [0.0, 1.0] {
        let s = find_spectrum(&k, &named_family("dpp", &[alpha])?, w, &opts())?;
        let got = s.values();
        let want = pseudo_periodic_oracle_roots(alpha, 1.0, &w);
        ok &= got.len() == want.len() && s.is_complete();
        count += got.len();
        for (g, o) in got.iter().zip(&want) {
            worst = worst.max((g - o).abs());
        }
    }
    let t = start.elapsed();
    ok &= worst < 1e-9 && t < Duration::from_secs(5);
    Ok((ok, format!("{count} roots, max err {worst:.2e}, {:.3}s", t.as_secs_f64())))
}

/// Random degree-4 polynomial plus a plane wave in each component, with its derivative.
pub fn random_test_spinor<R: Rng + ?Sized>(rng: &mut R) -> impl Fn(f64) -> (Vec2<f64>, Vec2<f64>) {
    let mut c = || C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let poly: [[C; 5]; 2] = [std::array::from_fn(|_| c()), std::array::from_fn(|_| c())];
    let amp = [c(), c()];
    let freq = [rng.gen_range(-12.0..12.0), rng.gen_range(-12.0..12.0)];
    move |x: f64| {
        let mut v = [C::new(0.0, 0.0); 2];
        let mut dv = [C::new(0.0, 0.0); 2];
        for j in 0..2 {
            for (n, a) in poly[j].iter().enumerate() {
                v[j] += a * x.powi(n as i32);
                if n > 0 {
                    dv[j] += a * (n as f64) * x.powi(n as i32 - 1);
                }
            }
            let e = C::from_polar(1.0, freq[j] * x);
            v[j] += amp[j] * e;
            dv[j] += amp[j] * C::new(0.0, freq[j]) * e;
        }
        (v, dv)
    }
}

fn three_reps(rng: &mut ChaCha8Rng) -> Result<Vec<CliffordRep<f64>>> {
    Ok(vec![
        CliffordRep::dirac(),
        CliffordRep::new(Mat2::sigma_y(), Mat2::sigma_z())?,
        random_rep(rng),
    ])
}

fn boundary_triple() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let q = Quadrature::default();
    let mut worst = 0.0f64;
    for rep in three_reps(&mut rng)? {
        for _ in 0..20 {
            let s1 = SpinorSample::from_fn(&q, random_test_spinor(&mut rng));
            let s2 = SpinorSample::from_fn(&q, random_test_spinor(&mut rng));
            worst = worst.max(boundary_form_check(&rep, &s1, &s2)?);
        }
    }
    Ok((worst < 1e-8, format!("60 pairs, max residual {worst:.2e}")))
}

fn representation_independence() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let dirac_rep = CliffordRep::dirac();
    let dk = DiracKernel::new(MU0)?;
    let reps = three_reps(&mut rng)?;
    let w = dirac_window();
    let mut ok = true;
    let mut worst = 0.0f64;
    for u in random_bcs(10, 10) {
        let base = find_spectrum(&dk, &u, w, &opts())?;
        for rep in &reps {
            let rk = RepKernel::new(*rep, MU0)?;
            let s = find_spectrum(&rk, &transformed_bc(&dirac_rep, rep, &u)?, w, &opts())?;
            let c = compare_spectra(&base, &s, 1e-8)?;
            ok &= c.equal && s.is_complete();
            worst = worst.max(c.max_pairwise_gap);
        }
    }
    Ok((ok, format!("max root gap {worst:.2e}")))
}

fn refinement_stability() -> Result<(bool, String)> {
    let dk = DiracKernel::new(MU0)?;
    let mut worst = 0.0f64;
    let mut count_changes = 0;
    for u in random_bcs(11, 50) {
        for (kernel, w) in [
            (&dk as &dyn SpectralKernel<f64>, dirac_window()),
            (&SchrodKernel as &dyn SpectralKernel<f64>, schrod_window()),
        ] {
            let a = find_spectrum(kernel, &u, w, &opts())?;
            let b = find_spectrum(kernel, &u, w, &opts().with_density(2 * opts().density))?;
            let (va, vb) = (a.values(), b.values());
            if va.len() != vb.len() {
                count_changes += 1;
                continue;
            }
            for (x, y) in va.iter().zip(&vb) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    Ok((
        count_changes == 0 && worst < 1e-10,
        format!("{count_changes} count changes, max shift {worst:.2e}"),
    ))
}
