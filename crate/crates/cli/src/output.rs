//! JSON and CSV writers. Floats go through serde_json's shortest round-trip
//! formatting, so parsing the output recovers the exact `f64`.

use std::io::{self, Write};

use clap::ValueEnum;
use ring_spectra::{IsoClassification, OrbitPoint, PhysicalConfig, SearchOptions, SpectrumSlice, Theory, UnitaryBc};
use serde_json::{json, Value};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Units {
    Dimensionless,
    Physical,
}

impl Units {
    fn as_str(self) -> &'static str {
        match self {
            Units::Dimensionless => "dimensionless",
            Units::Physical => "physical",
        }
    }
}

pub struct RunInfo {
    pub theory: Theory,
    pub bc_spec: String,
    pub bc_chart: String,
    pub units: Units,
    pub window: (f64, f64),
    pub mu0: Option<f64>,
    pub physical: Option<PhysicalConfig<f64>>,
    pub opts: SearchOptions<f64>,
}

impl RunInfo {
    fn meta(&self, s: &SpectrumSlice<f64>, to_user: &impl Fn(f64) -> f64) -> Value {
        let physical = self.physical.map(|p| {
            json!({ "L": p.length, "mass": p.mass, "hbar": p.hbar, "c": p.c })
        });
        json!({
            "grid_points": s.grid_points,
            "density": self.opts.density,
            "tol_root": self.opts.tol_root,
            "tol_residual": self.opts.tol_residual,
            "mu0": self.mu0,
            "physical": physical,
            "excluded": s.excluded.iter().map(|(a, b)| [to_user(*a), to_user(*b)]).collect::<Vec<_>>(),
            "unverified": s.unverified.iter().map(|x| to_user(*x)).collect::<Vec<_>>(),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

fn eigenvalues(s: &SpectrumSlice<f64>, to_user: &impl Fn(f64) -> f64) -> Value {
    s.roots
        .iter()
        .map(|r| {
            json!({
                "value": to_user(r.mu),
                "multiplicity": r.multiplicity,
                "residual": r.residual,
                "method": r.method.as_str(),
            })
        })
        .collect()
}

fn finish(w: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    writeln!(w)
}

pub fn write_spectrum_json(
    w: &mut dyn Write,
    info: &RunInfo,
    s: &SpectrumSlice<f64>,
    to_user: impl Fn(f64) -> f64,
) -> io::Result<()> {
    let v = json!({
        "theory": info.theory.as_str(),
        "bc": info.bc_spec,
        "bc_chart": info.bc_chart,
        "window": [info.window.0, info.window.1],
        "units": info.units.as_str(),
        "eigenvalues": eigenvalues(s, &to_user),
        "meta": info.meta(s, &to_user),
    });
    finish(w, &v)
}

fn csv_header(w: &mut dyn Write, info: &RunInfo, grid_points: usize) -> io::Result<()> {
    writeln!(w, "# theory={}", info.theory.as_str())?;
    writeln!(w, "# bc={}", info.bc_spec)?;
    writeln!(w, "# bc_chart={}", info.bc_chart)?;
    writeln!(w, "# window=({:?}, {:?}]", info.window.0, info.window.1)?;
    writeln!(w, "# units={}", info.units.as_str())?;
    if let Some(m) = info.mu0 {
        writeln!(w, "# mu0={m:?}")?;
    }
    writeln!(
        w,
        "# density={} tol_root={:?} tol_residual={:?} grid_points={}",
        info.opts.density, info.opts.tol_root, info.opts.tol_residual, grid_points
    )?;
    writeln!(w, "# version={}", env!("CARGO_PKG_VERSION"))
}

pub fn write_spectrum_csv(
    w: &mut dyn Write,
    info: &RunInfo,
    s: &SpectrumSlice<f64>,
    to_user: impl Fn(f64) -> f64,
) -> io::Result<()> {
    csv_header(w, info, s.grid_points)?;
    let mut c = csv::Writer::from_writer(w);
    c.write_record(["value", "multiplicity", "residual"])?;
    for r in &s.roots {
        c.write_record([format!("{:?}", to_user(r.mu)), r.multiplicity.to_string(), format!("{:?}", r.residual)])?;
    }
    c.flush()
}

pub fn write_orbit_json(
    w: &mut dyn Write,
    info: &RunInfo,
    all_equal: bool,
    points: &[OrbitPoint<f64>],
    to_user: impl Fn(f64) -> f64,
) -> io::Result<()> {
    let orbit: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "lambda": p.lambda,
                "bc": p.bc.to_spec_string(),
                "eigenvalues": eigenvalues(&p.spectrum, &to_user),
            })
        })
        .collect();
    let grid = points.first().map_or(0, |p| p.spectrum.grid_points);
    let first = points.first().map(|p| info.meta(&p.spectrum, &to_user));
    let v = json!({
        "theory": info.theory.as_str(),
        "bc": info.bc_spec,
        "bc_chart": info.bc_chart,
        "window": [info.window.0, info.window.1],
        "units": info.units.as_str(),
        "all_equal": all_equal,
        "orbit": orbit,
        "meta": first.unwrap_or_else(|| json!({ "grid_points": grid })),
    });
    finish(w, &v)
}

pub fn write_orbit_csv(
    w: &mut dyn Write,
    info: &RunInfo,
    all_equal: bool,
    points: &[OrbitPoint<f64>],
    to_user: impl Fn(f64) -> f64,
) -> io::Result<()> {
    csv_header(w, info, points.first().map_or(0, |p| p.spectrum.grid_points))?;
    writeln!(w, "# all_equal={all_equal}")?;
    let mut c = csv::Writer::from_writer(w);
    c.write_record(["lambda", "value", "multiplicity", "residual"])?;
    for p in points {
        for r in &p.spectrum.roots {
            c.write_record([
                format!("{:?}", p.lambda),
                format!("{:?}", to_user(r.mu)),
                r.multiplicity.to_string(),
                format!("{:?}", r.residual),
            ])?;
        }
    }
    c.flush()
}

fn cx(z: ring_spectra::Cx<f64>) -> Value {
    json!([z.re, z.im])
}

pub fn write_classification_json(
    w: &mut dyn Write,
    spec: &str,
    u: &UnitaryBc<f64>,
    c: &IsoClassification<f64>,
) -> io::Result<()> {
    let t = &c.invariant_triple;
    let v = json!({
        "bc": spec,
        "bc_chart": u.to_spec_string(),
        "parity_symmetric": c.parity_symmetric,
        "commutator_norm": u.commutator_norm(),
        "invariant_triple": {
            "det_u": cx(t.det_u),
            "tr_u": cx(t.tr_u),
            "tr_u_sigma_x": cx(t.tr_u_sx),
        },
        "canonical_tag": c.canonical_tag,
        "orbit": c.orbit_samples.iter().map(|(l, b)| json!({ "lambda": l, "bc": b.to_spec_string() })).collect::<Vec<_>>(),
    });
    finish(w, &v)
}
