//! Isospectrality: conjugation orbits `U_λ = e^{iλσx} U e^{−iλσx}`, spectrum
//! comparison and the parity classification of boundary conditions.

use rayon::prelude::*;

use crate::bc::{InvariantTriple, UnitaryBc};
use crate::error::{Error, Result};
use crate::kernel::SpectralKernel;
use crate::roots::{find_spectrum, SearchOptions, SpectrumSlice, Window};
use crate::scalar::{lit, Real};

/// Default number of orbit samples: `λ = 2πk/16`, `k = 1..15`.
pub const ORBIT_SAMPLES: usize = 16;

/// Resolution of [`IsoClassification::canonical_tag`].
pub const TAG_RESOLUTION: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct IsoClassification<T: Real> {
    pub parity_symmetric: bool,
    /// `(λ, U_λ)`
    pub orbit_samples: Vec<(T, UnitaryBc<T>)>,
    pub invariant_triple: InvariantTriple<T>,
    /// Re/Im of `(det U, tr U, tr Uσx)` in units of [`TAG_RESOLUTION`].
    pub canonical_tag: [i64; 6],
}

/// Orbit parameters `2πk/n`, `k = 1..n−1`.
pub fn orbit_lambdas<T: Real>(n: usize) -> Vec<T> {
    let two_pi = T::PI() + T::PI();
    (1..n).map(|k| two_pi * lit(k as f64) / lit(n as f64)).collect()
}

pub fn canonical_tag<T: Real>(t: &InvariantTriple<T>) -> [i64; 6] {
    let q = |x: T| (x / lit(TAG_RESOLUTION)).round().to_i64().unwrap_or(i64::MAX);
    [
        q(t.det_u.re),
        q(t.det_u.im),
        q(t.tr_u.re),
        q(t.tr_u.im),
        q(t.tr_u_sx.re),
        q(t.tr_u_sx.im),
    ]
}

pub fn classify<T: Real>(u: &UnitaryBc<T>) -> IsoClassification<T> {
    classify_with(u, ORBIT_SAMPLES)
}

pub fn classify_with<T: Real>(u: &UnitaryBc<T>, samples: usize) -> IsoClassification<T> {
    let invariant_triple = u.invariants();
    IsoClassification {
        parity_symmetric: u.is_parity_symmetric(lit(1e-10)),
        orbit_samples: orbit_lambdas(samples.max(2)).into_iter().map(|l| (l, u.conjugate_orbit(l))).collect(),
        canonical_tag: canonical_tag(&invariant_triple),
        invariant_triple,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumComparison<T: Real> {
    pub equal: bool,
    /// Largest distance between matched roots; infinite when the counts differ.
    pub max_pairwise_gap: T,
}

/// Matches the sorted, multiplicity-expanded roots of two slices pairwise.
pub fn compare_spectra<T: Real>(s1: &SpectrumSlice<T>, s2: &SpectrumSlice<T>, tol: T) -> Result<SpectrumComparison<T>> {
    if s1.window != s2.window {
        return Err(Error::SliceMismatch("windows differ".into()));
    }
    if s1.theory != s2.theory {
        return Err(Error::SliceMismatch("theories differ".into()));
    }
    let (a, b) = (s1.values(), s2.values());
    if a.len() != b.len() {
        return Ok(SpectrumComparison { equal: false, max_pairwise_gap: T::infinity() });
    }
    let gap = a.iter().zip(&b).fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()));
    Ok(SpectrumComparison { equal: gap < tol, max_pairwise_gap: gap })
}

/// One point of a conjugation orbit with its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPoint<T: Real> {
    pub lambda: T,
    pub bc: UnitaryBc<T>,
    pub spectrum: SpectrumSlice<T>,
}

/// Spectra of `U_λ` for every `λ`, computed in parallel, in input order.
pub fn orbit_spectra<T: Real, K: SpectralKernel<T> + ?Sized>(
    kernel: &K,
    u: &UnitaryBc<T>,
    lambdas: &[T],
    window: Window<T>,
    opts: &SearchOptions<T>,
) -> Result<Vec<OrbitPoint<T>>> {
    lambdas
        .par_iter()
        .map(|&lambda| {
            let bc = u.conjugate_orbit(lambda);
            let spectrum = find_spectrum(kernel, &bc, window, opts)?;
            Ok(OrbitPoint { lambda, bc, spectrum })
        })
        .collect()
}

/// Whether every orbit spectrum matches the first one.
pub fn orbit_all_equal<T: Real>(points: &[OrbitPoint<T>], tol: T) -> Result<bool> {
    let Some(first) = points.first() else { return Ok(true) };
    for p in &points[1..] {
        if !compare_spectra(&first.spectrum, &p.spectrum, tol)?.equal {
            return Ok(false);
        }
    }
    Ok(true)
}
