//! The U(2) boundary-condition space.
//!
//! Every self-adjoint junction condition `Ψ₋ = U Ψ₊` is labelled by a unitary
//! `U = e^{iη}(m₀ I + i m·σ)` with `η ∈ [0, π)` and `(m₀, m)` on the unit
//! 3-sphere. The spectrum depends on `U` only through [`InvariantTriple`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::matalg::{pauli_decompose, Mat2};
use crate::scalar::{cis, cx, lit, re, tol, to_f64, Cx, Real};

/// A boundary condition together with its `(η, m₀, m)` chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryBc<T: Real> {
    matrix: Mat2<T>,
    eta: T,
    m0: T,
    m: [T; 3],
}

/// `(det U, tr U, tr(U σx))`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantTriple<T: Real> {
    pub det_u: Cx<T>,
    pub tr_u: Cx<T>,
    pub tr_u_sx: Cx<T>,
}

impl<T: Real> InvariantTriple<T> {
    pub fn max_diff(&self, other: &Self) -> T {
        (self.det_u - other.det_u)
            .norm()
            .max((self.tr_u - other.tr_u).norm())
            .max((self.tr_u_sx - other.tr_u_sx).norm())
    }
}

/// `e^{iη}(m₀ I + i m·σ)`
fn chart_matrix<T: Real>(eta: T, m0: T, m: &[T; 3]) -> Mat2<T> {
    let e = cis(eta);
    Mat2::new(e * cx(m0, m[2]), e * cx(m[1], m[0]), e * cx(-m[1], m[0]), e * cx(m0, -m[2]))
}

/// Folds `η` into `[0, π)`; returns the folded angle and whether `(m₀, m)` flips sign.
fn fold_eta<T: Real>(eta: T) -> (T, bool) {
    let k = (eta / T::PI()).floor();
    let mut folded = eta - k * T::PI();
    let mut flip = (k.to_i64().unwrap_or(0)).rem_euclid(2) == 1;
    if folded >= T::PI() {
        folded = T::zero();
        flip = !flip;
    }
    if folded < T::zero() {
        folded = T::zero();
    }
    (folded, flip)
}

impl<T: Real> UnitaryBc<T> {
    /// Recovers the chart of a unitary matrix. The stored matrix is rebuilt from the
    /// (renormalised) chart, so all invariants hold to rounding.
    pub fn from_matrix(mat: &Mat2<T>) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::NotUnitary { residual: f64::INFINITY });
        }
        let residual = mat.unitarity_residual();
        if !(residual < tol::<T>(1e-10)) {
            return Err(Error::NotUnitary { residual: to_f64(residual) });
        }
        let eta = mat.det().arg() / lit(2.0);
        let c = pauli_decompose(&mat.scale(cis(-eta)));
        Self::build(eta, c[0].re, [c[1].im, c[2].im, c[3].im])
    }

    /// Builds from the chart; `η` may be any real. The 3-sphere constraint is
    /// validated to `1e-9` and then enforced exactly.
    pub fn from_chart(eta: T, m0: T, m: [T; 3]) -> Result<Self> {
        let r2 = m0 * m0 + m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
        let residual = (r2 - T::one()).abs();
        if !(residual < tol::<T>(1e-9)) {
            return Err(Error::ChartConstraint { residual: to_f64(residual) });
        }
        Self::build(eta, m0, m)
    }

    fn build(eta: T, m0: T, m: [T; 3]) -> Result<Self> {
        let norm = (m0 * m0 + m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
        if !(norm > T::zero()) || !eta.is_finite() {
            return Err(Error::ChartConstraint { residual: 1.0 });
        }
        let (eta, flip) = fold_eta(eta);
        let s = if flip { -T::one() / norm } else { T::one() / norm };
        let (m0, m) = (m0 * s, m.map(|x| x * s));
        Ok(Self { matrix: chart_matrix(eta, m0, &m), eta, m0, m })
    }

    /// Haar-like sample: uniform `η ∈ [0, π)` and a uniform point on the 3-sphere.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let eta = lit::<T>(rng.gen_range(0.0..std::f64::consts::PI));
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-3 && n <= 1.0 {
                let q = q.map(|x| lit::<T>(x / n));
                return Self::build(eta, q[0], [q[1], q[2], q[3]]).expect("unit sample");
            }
        }
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.matrix
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn m0(&self) -> T {
        self.m0
    }

    pub fn m(&self) -> [T; 3] {
        self.m
    }

    /// Invariants read off the stored matrix.
    pub fn invariants(&self) -> InvariantTriple<T> {
        InvariantTriple {
            det_u: self.matrix.det(),
            tr_u: self.matrix.trace(),
            tr_u_sx: (self.matrix * Mat2::sigma_x()).trace(),
        }
    }

    /// `e^{iλσx} U e^{-iλσx}`: rotates `(m₂, m₃)` by `2λ` and leaves `η, m₀, m₁` fixed.
    pub fn conjugate_orbit(&self, lambda: T) -> Self {
        let (s, c) = (lambda + lambda).sin_cos();
        let m = [self.m[0], c * self.m[1] + s * self.m[2], c * self.m[2] - s * self.m[1]];
        Self { matrix: chart_matrix(self.eta, self.m0, &m), eta: self.eta, m0: self.m0, m }
    }

    /// `‖Uσx − σxU‖_F < tol`, i.e. membership in the parity family `U(η, θ)`.
    pub fn is_parity_symmetric(&self, tol: T) -> bool {
        self.commutator_norm() < tol
    }

    pub fn commutator_norm(&self) -> T {
        self.matrix.commutator(&Mat2::sigma_x()).frobenius()
    }

    /// Canonical text form in the `u2:` syntax.
    pub fn to_spec_string(&self) -> String {
        format!(
            "u2:eta={:.17e},m0={:.17e},m1={:.17e},m2={:.17e},m3={:.17e}",
            to_f64(self.eta),
            to_f64(self.m0),
            to_f64(self.m[0]),
            to_f64(self.m[1]),
            to_f64(self.m[2])
        )
    }
}

/// Named one- and two-parameter families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family<T: Real> {
    /// Robin, `e^{iα} I`.
    Robin(T),
    /// Schrödinger pseudo-periodic, `[[0, −e^{−iα}], [−e^{iα}, 0]]`.
    PseudoPeriodic(T),
    /// Quasi-periodic, `[[−sin α, i cos α], [−i cos α, sin α]]`.
    QuasiPeriodic(T),
    /// Dirac chiral, `e^{iα} I`.
    Chiral(T),
    /// Dirac pseudo-periodic, `[[0, e^{−iα}], [e^{iα}, 0]]`.
    DiracPseudoPeriodic(T),
    /// Parity-symmetric `e^{iη}(cos θ I + i sin θ σx)`.
    Parity { eta: T, theta: T },
}

fn reduce_angle<T: Real>(alpha: T) -> T {
    let two_pi = T::PI() + T::PI();
    let r = alpha - two_pi * (alpha / two_pi).floor();
    if r >= two_pi {
        T::zero()
    } else {
        r
    }
}

impl<T: Real> Family<T> {
    pub fn matrix(&self) -> Mat2<T> {
        let z = re(T::zero());
        match *self {
            Family::Robin(a) | Family::Chiral(a) => Mat2::scalar(cis(reduce_angle(a))),
            Family::PseudoPeriodic(a) => {
                let a = reduce_angle(a);
                Mat2::new(z, -cis(-a), -cis(a), z)
            }
            Family::QuasiPeriodic(a) => {
                let (s, c) = reduce_angle(a).sin_cos();
                Mat2::new(re(-s), cx(T::zero(), c), cx(T::zero(), -c), re(s))
            }
            Family::DiracPseudoPeriodic(a) => {
                let a = reduce_angle(a);
                Mat2::new(z, cis(-a), cis(a), z)
            }
            Family::Parity { eta, theta } => {
                let (s, c) = theta.sin_cos();
                Mat2::new(re(c), cx(T::zero(), s), cx(T::zero(), s), re(c)).scale(cis(eta))
            }
        }
    }

    pub fn to_bc(&self) -> UnitaryBc<T> {
        UnitaryBc::from_matrix(&self.matrix()).expect("named families are unitary")
    }
}

/// Looks a family up by name: `robin`, `pp`, `qp`, `chiral`, `dpp` take one
/// angle, `parity` takes `(η, θ)`.
pub fn named_family<T: Real>(name: &str, params: &[T]) -> Result<UnitaryBc<T>> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::MalformedSpec {
                spec: name.to_string(),
                reason: format!("expected {n} parameter(s), got {}", params.len()),
            })
        }
    };
    let fam = match name {
        "robin" => arity(1).map(|_| Family::Robin(params[0]))?,
        "pp" => arity(1).map(|_| Family::PseudoPeriodic(params[0]))?,
        "qp" => arity(1).map(|_| Family::QuasiPeriodic(params[0]))?,
        "chiral" => arity(1).map(|_| Family::Chiral(params[0]))?,
        "dpp" => arity(1).map(|_| Family::DiracPseudoPeriodic(params[0]))?,
        "parity" => arity(2).map(|_| Family::Parity { eta: params[0], theta: params[1] })?,
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(fam.to_bc())
}

fn malformed(spec: &str, reason: impl Into<String>) -> Error {
    Error::MalformedSpec { spec: spec.to_string(), reason: reason.into() }
}

fn parse_num(spec: &str, s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| malformed(spec, format!("`{}` is not a number", s.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(malformed(spec, "non-finite parameter"))
    }
}

/// Parses `key=value` pairs, requiring exactly the keys in `keys`, in any order.
fn parse_keyed(spec: &str, body: &str, keys: &[&str]) -> Result<Vec<f64>> {
    let mut out = vec![None; keys.len()];
    for part in body.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| malformed(spec, format!("expected key=value, got `{part}`")))?;
        let idx = keys
            .iter()
            .position(|key| *key == k.trim())
            .ok_or_else(|| malformed(spec, format!("unexpected key `{}`", k.trim())))?;
        if out[idx].is_some() {
            return Err(malformed(spec, format!("duplicate key `{}`", k.trim())));
        }
        out[idx] = Some(parse_num(spec, v)?);
    }
    out.iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| malformed(spec, format!("missing key `{k}`"))))
        .collect()
}

/// Parses the boundary-condition text format:
///
/// ```text
/// robin:alpha=<f>  pp:alpha=<f>  qp:alpha=<f>  chiral:alpha=<f>  dpp:alpha=<f>
/// parity:eta=<f>,theta=<f>
/// u2:eta=<f>,m0=<f>,m1=<f>,m2=<f>,m3=<f>
/// mat:<8 reals, row-major re/im pairs, comma separated>
/// ```
pub fn parse_bc<T: Real>(spec: &str) -> Result<UnitaryBc<T>> {
    let (name, body) = spec.trim().split_once(':').ok_or_else(|| malformed(spec, "missing `:`"))?;
    match name.trim() {
        "robin" | "pp" | "qp" | "chiral" | "dpp" => {
            let v = parse_keyed(spec, body, &["alpha"])?;
            named_family(name.trim(), &[lit::<T>(v[0])])
        }
        "parity" => {
            let v = parse_keyed(spec, body, &["eta", "theta"])?;
            named_family("parity", &[lit::<T>(v[0]), lit(v[1])])
        }
        "u2" => {
            let v = parse_keyed(spec, body, &["eta", "m0", "m1", "m2", "m3"])?;
            UnitaryBc::from_chart(lit(v[0]), lit(v[1]), [lit(v[2]), lit(v[3]), lit(v[4])])
        }
        "mat" => {
            let vals = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| parse_num(spec, s))
                .collect::<Result<Vec<_>>>()?;
            let arr: [f64; 8] =
                vals.try_into().map_err(|v: Vec<f64>| malformed(spec, format!("expected 8 reals, got {}", v.len())))?;
            UnitaryBc::from_matrix(&Mat2::from_reals(arr.map(lit::<T>)))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    type Bc = UnitaryBc<f64>;
    type M = Mat2<f64>;

    fn close(a: &M, b: &M, eps: f64) -> bool {
        (*a - *b).frobenius() < eps
    }

    /// Direct product `e^{iλσx} U e^{-iλσx}`.
    fn conj_direct(u: &M, lambda: f64) -> M {
        let r = M::identity().scale(re(lambda.cos())) + M::sigma_x().scale(cx(0.0, lambda.sin()));
        r * *u * r.adjoint()
    }

    #[test]
    fn from_matrix_examples() {
        let u = Bc::from_matrix(&M::identity()).unwrap();
        assert_eq!((u.eta(), u.m0(), u.m()), (0.0, 1.0, [0.0; 3]));

        let pp0 = M::new(re(0.0), re(-1.0), re(-1.0), re(0.0));
        let u = Bc::from_matrix(&pp0).unwrap();
        assert!((u.eta() - PI / 2.0).abs() < 1e-15);
        assert!(u.m0().abs() < 1e-15);
        assert!((u.m()[0] - 1.0).abs() < 1e-15 && u.m()[1].abs() < 1e-15 && u.m()[2].abs() < 1e-15);

        let u = Bc::from_matrix(&M::identity().scale(cis(PI / 4.0))).unwrap();
        assert!((u.eta() - PI / 4.0).abs() < 1e-15 && (u.m0() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_matrix_rejects_non_unitary() {
        let m = M::from_reals([1.0, 0.0, 0.5, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(matches!(Bc::from_matrix(&m), Err(Error::NotUnitary { residual }) if residual > 0.1));
    }

    #[test]
    fn chart_invariants_hold_for_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let u = Bc::sample(&mut rng);
            assert!(u.matrix().unitarity_residual() < 1e-12);
            let m = u.m();
            assert!((u.m0().powi(2) + m.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(u.eta() >= 0.0 && u.eta() < PI);
            let rebuilt = (M::identity().scale(re(u.m0()))
                + M::sigma_x().scale(cx(0.0, m[0]))
                + M::sigma_y().scale(cx(0.0, m[1]))
                + M::sigma_z().scale(cx(0.0, m[2])))
            .scale(cis(u.eta()));
            assert!(close(&rebuilt, u.matrix(), 1e-12));

            let t = u.invariants();
            assert!((t.det_u.norm() - 1.0).abs() < 1e-12);
            assert!((t.det_u - cis(2.0 * u.eta())).norm() < 1e-12);
            assert!((t.tr_u - cis(u.eta()) * 2.0 * u.m0()).norm() < 1e-12);
            assert!((t.tr_u_sx - cis(u.eta()) * cx(0.0, 2.0 * m[0])).norm() < 1e-12);

            // chart round trip through the raw matrix
            let back = Bc::from_matrix(u.matrix()).unwrap();
            assert!((back.eta() - u.eta()).abs() < 1e-12 || (back.eta() - u.eta()).abs() > PI - 1e-12);
            assert!(close(back.matrix(), u.matrix(), 1e-12));
        }
    }

    #[test]
    fn chart_folds_eta_with_sign_flip() {
        let a = Bc::from_chart(0.3 + PI, 0.6, [0.8, 0.0, 0.0]).unwrap();
        assert!((a.eta() - 0.3).abs() < 1e-14);
        assert!((a.m0() + 0.6).abs() < 1e-14 && (a.m()[0] + 0.8).abs() < 1e-14);
        let b = Bc::from_chart(-0.3, 1.0, [0.0; 3]).unwrap();
        assert!((b.eta() - (PI - 0.3)).abs() < 1e-14 && (b.m0() + 1.0).abs() < 1e-14);
        assert!(close(a.matrix(), &chart_matrix(0.3 + PI, 0.6, &[0.8, 0.0, 0.0]), 1e-14));
        assert!(matches!(Bc::from_chart(0.0, 1.0, [0.1, 0.0, 0.0]), Err(Error::ChartConstraint { .. })));
    }

    #[test]
    fn family_examples() {
        let qp = named_family::<f64>("qp", &[0.0]).unwrap();
        assert!(close(qp.matrix(), &M::new(re(0.0), cx(0.0, 1.0), cx(0.0, -1.0), re(0.0)), 1e-15));
        let t = qp.invariants();
        assert!((t.det_u - re(-1.0)).norm() < 1e-15 && t.tr_u.norm() < 1e-15 && t.tr_u_sx.norm() < 1e-15);

        let pp = named_family::<f64>("pp", &[0.0]).unwrap();
        assert!(close(pp.matrix(), &M::new(re(0.0), re(-1.0), re(-1.0), re(0.0)), 1e-15));
        let t = pp.invariants();
        assert!((t.det_u - re(-1.0)).norm() < 1e-15 && t.tr_u.norm() < 1e-15);
        assert!((t.tr_u_sx - re(-2.0)).norm() < 1e-15);

        let par = named_family::<f64>("parity", &[0.0, 0.0]).unwrap();
        assert!(close(par.matrix(), &M::identity(), 1e-15));

        // U_pp(π/2) is U_qp(0)
        let a = named_family::<f64>("pp", &[PI / 2.0]).unwrap();
        assert!(close(a.matrix(), qp.matrix(), 1e-15));

        assert!(matches!(named_family::<f64>("nope", &[0.0]), Err(Error::UnknownFamily(_))));
        assert!(matches!(named_family::<f64>("parity", &[0.0]), Err(Error::MalformedSpec { .. })));
    }

    #[test]
    fn family_alpha_is_periodic() {
        for name in ["robin", "pp", "qp", "chiral", "dpp"] {
            let a = named_family::<f64>(name, &[0.7]).unwrap();
            let b = named_family::<f64>(name, &[0.7 + 2.0 * PI]).unwrap();
            let c = named_family::<f64>(name, &[0.7 - 4.0 * PI]).unwrap();
            assert!(close(a.matrix(), b.matrix(), 1e-13) && close(a.matrix(), c.matrix(), 1e-13));
        }
    }

    #[test]
    fn qp_invariants_constant_in_alpha() {
        for k in 0..50 {
            let alpha = k as f64 * 0.13;
            let t = named_family::<f64>("qp", &[alpha]).unwrap().invariants();
            assert!((t.det_u - re(-1.0)).norm() < 1e-14 && t.tr_u.norm() < 1e-14 && t.tr_u_sx.norm() < 1e-14);
        }
    }

    #[test]
    fn conjugation_examples() {
        for &(alpha, lambda) in &[(0.0, 0.3), (1.1, 2.0), (4.0, -0.7)] {
            let u = named_family::<f64>("qp", &[alpha]).unwrap();
            let want = named_family::<f64>("qp", &[alpha - 2.0 * lambda]).unwrap();
            assert!(close(u.conjugate_orbit(lambda).matrix(), want.matrix(), 1e-13));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = Bc::sample(&mut rng);
        assert!(close(u.conjugate_orbit(0.0).matrix(), u.matrix(), 1e-15));

        let par = named_family::<f64>("parity", &[0.3, 1.1]).unwrap();
        for lambda in [0.2, 1.0, 2.5] {
            assert!(close(&conj_direct(par.matrix(), lambda), par.matrix(), 1e-14));
            assert!(close(par.conjugate_orbit(lambda).matrix(), par.matrix(), 1e-14));
        }
    }

    #[test]
    fn conjugation_matches_direct_product_and_keeps_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let u = Bc::sample(&mut rng);
            let lambda: f64 = rng.gen_range(-10.0..10.0);
            let v = u.conjugate_orbit(lambda);
            assert!(close(v.matrix(), &conj_direct(u.matrix(), lambda), 1e-12));
            assert!(u.invariants().max_diff(&v.invariants()) < 1e-12);
        }
    }

    #[test]
    fn parity_examples() {
        for alpha in [0.0, 0.4, 3.0, 6.0] {
            assert!(named_family::<f64>("robin", &[alpha]).unwrap().is_parity_symmetric(1e-10));
        }
        let qp = named_family::<f64>("qp", &[PI / 2.0]).unwrap();
        assert!(close(qp.matrix(), &M::new(re(-1.0), re(0.0), re(0.0), re(1.0)), 1e-15));
        assert!((qp.commutator_norm() - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(!qp.is_parity_symmetric(1e-10));
        assert!(named_family::<f64>("parity", &[0.3, 1.1]).unwrap().is_parity_symmetric(1e-10));
    }

    #[test]
    fn parity_matches_orbit_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tol = 1e-10;
        for i in 0..400 {
            let u = if i % 2 == 0 {
                Bc::sample(&mut rng)
            } else {
                named_family("parity", &[rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)]).unwrap()
            };
            let moved = [0.1, 0.7, 2.3]
                .iter()
                .map(|&l| (*u.conjugate_orbit(l).matrix() - *u.matrix()).frobenius())
                .fold(0.0, f64::max);
            assert_eq!(u.is_parity_symmetric(tol), moved < 10.0 * tol, "sample {i}");
        }
    }

    #[test]
    fn parse_formats() {
        let u: Bc = parse_bc("qp:alpha=0").unwrap();
        assert!(close(u.matrix(), named_family::<f64>("qp", &[0.0]).unwrap().matrix(), 1e-15));
        let u: Bc = parse_bc("parity:theta=1.1,eta=0.3").unwrap();
        assert!(u.is_parity_symmetric(1e-10));
        let u: Bc = parse_bc("u2:eta=0,m0=1,m1=0,m2=0,m3=0").unwrap();
        assert!(close(u.matrix(), &M::identity(), 1e-15));
        let u: Bc = parse_bc("mat:0,0,-1,0,-1,0,0,0").unwrap();
        assert!((u.eta() - PI / 2.0).abs() < 1e-15);

        assert!(matches!(parse_bc::<f64>("robin"), Err(Error::MalformedSpec { .. })));
        assert!(matches!(parse_bc::<f64>("robin:alpha=x"), Err(Error::MalformedSpec { .. })));
        assert!(matches!(parse_bc::<f64>("robin:beta=1"), Err(Error::MalformedSpec { .. })));
        assert!(matches!(parse_bc::<f64>("foo:alpha=1"), Err(Error::UnknownFamily(_))));
        assert!(matches!(parse_bc::<f64>("mat:1,0,0,0"), Err(Error::MalformedSpec { .. })));
        assert!(matches!(parse_bc::<f64>("mat:2,0,0,0,0,0,1,0"), Err(Error::NotUnitary { .. })));
        assert!(matches!(parse_bc::<f64>("u2:eta=0,m0=1,m1=1,m2=0,m3=0"), Err(Error::ChartConstraint { .. })));
    }

    #[test]
    fn spec_string_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let u = Bc::sample(&mut rng);
            let v: Bc = parse_bc(&u.to_spec_string()).unwrap();
            assert!(close(u.matrix(), v.matrix(), 1e-15));
        }
    }
}
