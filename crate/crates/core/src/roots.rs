//! Real zeros of `F_U(x) = det(B(x) − U)` inside a window.
//!
//! `F_U(x) = 0` exactly when `W(x) = B(x)U†` has eigenvalue 1, i.e. when one of
//! its two eigenphases passes through 0. The phases are tracked over a grid,
//! sign changes near 0 are bracketed and bisected, and passages through ±π are
//! ignored as wraps.

use rayon::prelude::*;

use crate::bc::UnitaryBc;
use crate::error::{Error, Result};
use crate::kernel::{SpectralKernel, Theory};
use crate::matalg::unitary_eigen;
use crate::scalar::{lit, to_f64, tol, wrap_phase, Real};

/// Half-open energy window `(min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<T: Real> {
    pub min: T,
    pub max: T,
}

impl<T: Real> Window<T> {
    pub fn new(min: T, max: T) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidWindow { min: to_f64(min), max: to_f64(max) });
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, x: T) -> bool {
        x > self.min && x <= self.max
    }

    pub fn length(&self) -> T {
        self.max - self.min
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions<T: Real> {
    /// Grid intervals per `2π` of window length.
    pub density: usize,
    /// Relative bisection tolerance.
    pub tol_root: T,
    /// Largest accepted `|F_U|` at a reported root.
    pub tol_residual: T,
    /// Relative distance below which two crossings form one double root.
    pub separation: T,
}

impl<T: Real> Default for SearchOptions<T> {
    fn default() -> Self {
        let tol_root = tol::<T>(1e-12);
        Self {
            density: 1024,
            tol_root,
            tol_residual: tol(1e-9),
            separation: tol_root * lit(1e4),
        }
    }
}

impl<T: Real> SearchOptions<T> {
    pub fn with_density(mut self, density: usize) -> Self {
        self.density = density;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.density < 64 {
            return Err(Error::InvalidOption(format!("grid density {} is below 64", self.density)));
        }
        for (name, v) in [
            ("tol_root", self.tol_root),
            ("tol_residual", self.tol_residual),
            ("separation", self.separation),
        ] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::InvalidOption(format!("{name} must be positive, got {}", to_f64(v))));
            }
        }
        if self.separation <= self.tol_root {
            return Err(Error::InvalidOption("separation must exceed tol_root".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    /// Bracketed eigenphase crossing refined by bisection.
    Bisection,
    /// Placed on a mandatory node (mass mode, zero energy) where `F_U` vanishes.
    Node,
}

impl RootMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootMethod::Bisection => "bisection",
            RootMethod::Node => "node",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T: Real> {
    pub mu: T,
    pub multiplicity: u8,
    pub residual: T,
    pub method: RootMethod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSlice<T: Real> {
    pub window: Window<T>,
    pub roots: Vec<Root<T>>,
    pub grid_points: usize,
    pub theory: Theory,
    /// Sub-intervals around points where `B` could not be evaluated.
    pub excluded: Vec<(T, T)>,
    /// Crossings whose residual check failed; not listed in `roots`.
    pub unverified: Vec<T>,
}

impl<T: Real> SpectrumSlice<T> {
    /// Roots expanded by multiplicity.
    pub fn values(&self) -> Vec<T> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat(r.mu).take(r.multiplicity as usize))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum()
    }

    pub fn max_residual(&self) -> T {
        self.roots.iter().fold(T::zero(), |m, r| m.max(r.residual))
    }

    pub fn is_complete(&self) -> bool {
        self.excluded.is_empty() && self.unverified.is_empty()
    }
}

/// Eigenphases of `W = B U†` along a grid, ordered into two tracks.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile<T: Real> {
    pub points: Vec<T>,
    /// `None` where `B` is unavailable.
    pub tracks: Vec<Option<[T; 2]>>,
    /// `(interval, track)` pairs where a track passes through ±π.
    pub wraps: Vec<(usize, usize)>,
}

fn phases_at<T: Real, K: SpectralKernel<T> + ?Sized>(k: &K, u: &UnitaryBc<T>, x: T) -> Option<[T; 2]> {
    let b = k.b_matrix(x).ok()?;
    if !b.is_finite() {
        return None;
    }
    unitary_eigen(&(b * u.matrix().adjoint())).ok().map(|e| e.phases)
}

/// Orders `next` to follow `prev` with the smaller total angular displacement.
fn follow<T: Real>(prev: [T; 2], next: [T; 2]) -> [T; 2] {
    let d = |a: T, b: T| wrap_phase(b - a).abs();
    let direct = d(prev[0], next[0]) + d(prev[1], next[1]);
    let swapped = d(prev[0], next[1]) + d(prev[1], next[0]);
    if swapped < direct {
        [next[1], next[0]]
    } else {
        next
    }
}

fn step<T: Real>(prev: [T; 2], next: [T; 2]) -> T {
    let n = follow(prev, next);
    wrap_phase(n[0] - prev[0]).abs().max(wrap_phase(n[1] - prev[1]).abs())
}

fn is_crossing<T: Real>(a: T, b: T) -> bool {
    (a > T::zero()) != (b > T::zero()) && a.abs() + b.abs() < T::PI()
}

fn is_wrap<T: Real>(a: T, b: T) -> bool {
    (a > T::zero()) != (b > T::zero()) && a.abs() + b.abs() >= T::PI()
}

fn scale<T: Real>(x: T) -> T {
    x.abs().max(T::one())
}

/// Uniform grid over `[min, max]` with `max(64, ⌈density·len/2π⌉)` intervals,
/// merged with the nodes that fall inside.
pub fn default_grid<T: Real>(window: &Window<T>, density: usize, nodes: &[T]) -> Vec<T> {
    let two_pi = T::PI() + T::PI();
    let per = lit::<T>(density as f64) * window.length() / two_pi;
    let n = per.ceil().to_usize().unwrap_or(usize::MAX / 2).max(64);
    let h = window.length() / lit(n as f64);
    let mut grid: Vec<T> = (0..=n).map(|i| window.min + h * lit(i as f64)).collect();
    grid[n] = window.max;
    grid.extend(nodes.iter().copied().filter(|&x| x > window.min && x < window.max));
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    grid.dedup();
    grid
}

/// Raw eigenphase tracks on a given grid.
pub fn eigenphase_profile<T: Real, K: SpectralKernel<T> + ?Sized>(
    kernel: &K,
    u: &UnitaryBc<T>,
    grid: &[T],
) -> PhaseProfile<T> {
    let raw: Vec<Option<[T; 2]>> = grid.par_iter().map(|&x| phases_at(kernel, u, x)).collect();
    let mut tracks = Vec::with_capacity(raw.len());
    let mut wraps = Vec::new();
    let mut prev: Option<[T; 2]> = None;
    for (i, p) in raw.into_iter().enumerate() {
        let cur = match (prev, p) {
            (Some(a), Some(b)) => Some(follow(a, b)),
            (_, b) => b,
        };
        if let (Some(a), Some(b)) = (prev, cur) {
            for j in 0..2 {
                if is_wrap(a[j], b[j]) {
                    wraps.push((i - 1, j));
                }
            }
        }
        tracks.push(cur);
        prev = cur;
    }
    PhaseProfile { points: grid.to_vec(), tracks, wraps }
}

const MAX_STEP_DIVISOR: f64 = 4.0;
const MAX_DEPTH: usize = 40;
const MAX_BISECT: usize = 200;

struct Searcher<'a, T: Real, K: ?Sized> {
    kernel: &'a K,
    u: &'a UnitaryBc<T>,
    opts: SearchOptions<T>,
}

impl<T: Real, K: SpectralKernel<T> + ?Sized> Searcher<'_, T, K> {
    fn phases(&self, x: T) -> Option<[T; 2]> {
        phases_at(self.kernel, self.u, x)
    }

    /// Interior points of `[x0, x1]` needed to keep every track step below `π/4`.
    fn refine(&self, x0: T, p0: [T; 2], x1: T, p1: [T; 2], depth: usize, out: &mut Vec<(T, Option<[T; 2]>)>) {
        let limit = T::PI() / lit(MAX_STEP_DIVISOR);
        if step(p0, p1) <= limit || depth >= MAX_DEPTH || x1 - x0 <= self.opts.tol_root * scale(x0) {
            return;
        }
        let xm = x0 + (x1 - x0) / lit(2.0);
        match self.phases(xm) {
            Some(pm) => {
                self.refine(x0, p0, xm, pm, depth + 1, out);
                out.push((xm, Some(pm)));
                self.refine(xm, pm, x1, p1, depth + 1, out);
            }
            None => out.push((xm, None)),
        }
    }

    /// Nearest evaluable point to a failed `x`, moving towards `toward`.
    fn nearest_valid(&self, x: T, toward: T) -> Option<(T, [T; 2])> {
        let gap = toward - x;
        let mut h = self.opts.separation * scale(x);
        while h < gap.abs() {
            let y = x + h * gap.signum();
            if let Some(p) = self.phases(y) {
                return Some((y, p));
            }
            h = h * lit(4.0);
        }
        None
    }

    fn evaluate_grid(&self, grid: &[T]) -> Vec<(T, Option<[T; 2]>)> {
        let raw: Vec<Option<[T; 2]>> = grid.par_iter().map(|&x| self.phases(x)).collect();
        let mut pts: Vec<(T, Option<[T; 2]>)> = Vec::with_capacity(grid.len());
        for (i, (&x, p)) in grid.iter().zip(raw.iter()).enumerate() {
            if p.is_some() {
                pts.push((x, *p));
                continue;
            }
            // isolate the failure between the closest points that still evaluate
            if i > 0 {
                if let Some((y, q)) = self.nearest_valid(x, grid[i - 1]) {
                    pts.push((y, Some(q)));
                }
            }
            pts.push((x, None));
            if i + 1 < grid.len() {
                if let Some((y, q)) = self.nearest_valid(x, grid[i + 1]) {
                    pts.push((y, Some(q)));
                }
            }
        }
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite grid"));
        pts.dedup_by(|a, b| a.0 == b.0);

        let refined: Vec<Vec<(T, Option<[T; 2]>)>> = pts
            .par_windows(2)
            .map(|w| {
                let mut out = Vec::new();
                if let ((x0, Some(p0)), (x1, Some(p1))) = (w[0], w[1]) {
                    self.refine(x0, p0, x1, p1, 0, &mut out);
                }
                out
            })
            .collect();
        let mut all = Vec::with_capacity(pts.len());
        for (i, p) in pts.iter().enumerate() {
            all.push(*p);
            if let Some(extra) = refined.get(i) {
                all.extend(extra.iter().copied());
            }
        }
        all
    }

    /// Bisects track `j` across `[lo, hi]`, following both tracks from `lo`,
    /// then places the zero by linear interpolation of the phase in the final
    /// bracket.
    fn bisect(&self, mut lo: T, mut plo: [T; 2], mut hi: T, mut phi: [T; 2], j: usize) -> T {
        for _ in 0..MAX_BISECT {
            let mid = lo + (hi - lo) / lit(2.0);
            if hi - lo <= self.opts.tol_root * scale(mid) || mid <= lo || mid >= hi {
                break;
            }
            let Some(pm) = self.phases(mid) else { break };
            let pm = follow(plo, pm);
            if (pm[j] > T::zero()) == (plo[j] > T::zero()) {
                lo = mid;
                plo = pm;
            } else {
                hi = mid;
                phi = pm;
            }
        }
        let (a, b) = (plo[j], phi[j]);
        if is_crossing(a, b) && a != b {
            let x = lo - a * (hi - lo) / (b - a);
            if x >= lo && x <= hi {
                return x;
            }
        }
        lo + (hi - lo) / lit(2.0)
    }
}

/// All zeros of `F_U` in the window, with multiplicities.
pub fn find_spectrum<T: Real, K: SpectralKernel<T> + ?Sized>(
    kernel: &K,
    u: &UnitaryBc<T>,
    window: Window<T>,
    opts: &SearchOptions<T>,
) -> Result<SpectrumSlice<T>> {
    opts.validate()?;
    Window::new(window.min, window.max)?;
    let s = Searcher { kernel, u, opts: *opts };
    let nodes = kernel.mandatory_nodes();
    let grid = default_grid(&window, opts.density, &nodes);
    let pts = s.evaluate_grid(&grid);

    // track across consecutive valid points; a failed point ends the segment
    let mut excluded = Vec::new();
    let mut brackets: Vec<(T, [T; 2], T, [T; 2], usize)> = Vec::new();
    let mut last: Option<(T, [T; 2])> = None;
    let mut gap_start: Option<T> = None;
    for &(x, p) in &pts {
        match p {
            None => {
                if gap_start.is_none() {
                    gap_start = Some(last.map_or(window.min, |(lx, _)| lx));
                }
                last = None;
            }
            Some(p) => {
                if let Some(g) = gap_start.take() {
                    excluded.push((g, x));
                }
                let p = match last {
                    Some((lx, lp)) => {
                        let p = follow(lp, p);
                        for j in 0..2 {
                            if is_crossing(lp[j], p[j]) {
                                brackets.push((lx, lp, x, p, j));
                            }
                        }
                        p
                    }
                    None => p,
                };
                last = Some((x, p));
            }
        }
    }
    if let Some(g) = gap_start {
        excluded.push((g, window.max));
    }

    let mut found: Vec<T> = brackets
        .par_iter()
        .map(|&(lo, plo, hi, phi, j)| s.bisect(lo, plo, hi, phi, j))
        .collect();
    found.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));

    let mut clustered: Vec<(T, usize)> = Vec::new();
    for x in found {
        if let Some((c, n)) = clustered.last_mut() {
            if x - *c <= opts.separation * scale(x) {
                *c = (*c * lit(*n as f64) + x) / lit((*n + 1) as f64);
                *n += 1;
                continue;
            }
        }
        clustered.push((x, 1));
    }

    let mut roots = Vec::new();
    let mut unverified = Vec::new();
    for (mu, n) in clustered {
        if n > 2 {
            return Err(Error::MultiplicityOverflow { mu: to_f64(mu), count: n });
        }
        if !window.contains(mu) || mu - window.min <= opts.tol_root * scale(mu) {
            continue;
        }
        match kernel.spectral_value(mu, u) {
            Ok(f) if f.norm() < opts.tol_residual => roots.push(Root {
                mu,
                multiplicity: n as u8,
                residual: f.norm(),
                method: RootMethod::Bisection,
            }),
            _ => unverified.push(mu),
        }
    }

    // zeros sitting on nodes are reported exactly at the node
    let snap = opts.separation.sqrt();
    for &node in nodes.iter().filter(|&&x| window.contains(x)) {
        let Ok(f) = kernel.spectral_value(node, u) else { continue };
        if f.norm() >= opts.tol_residual {
            continue;
        }
        let near = roots.iter_mut().find(|r| (r.mu - node).abs() <= snap * scale(node));
        match near {
            Some(r) => {
                r.mu = node;
                r.residual = f.norm();
                r.method = RootMethod::Node;
            }
            None => roots.push(Root { mu: node, multiplicity: 1, residual: f.norm(), method: RootMethod::Node }),
        }
    }
    roots.sort_by(|a, b| a.mu.partial_cmp(&b.mu).expect("finite roots"));

    Ok(SpectrumSlice {
        window,
        roots,
        grid_points: pts.len(),
        theory: kernel.theory(),
        excluded,
        unverified,
    })
}
