//! Exact spectra of Dirac and Schrödinger particles on a ring with a junction,
//! for every boundary condition `U ∈ U(2)`.
//!
//! The spectrum of `H_U` is the zero set of `F_U(x) = det(B(x) − U)`, where the
//! energy-dependent unitary `B` is supplied by a [`SpectralKernel`]. Roots are
//! found by tracking the eigenphases of `B U†` ([`roots`]), and the conjugation
//! orbits `U_λ = e^{iλσx} U e^{−iλσx}` give isospectral families ([`iso`]).
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`.
//!
//! ```
//! use ring_spectra::{named_family, find_spectrum, SchrodKernel, SearchOptions, Window};
//!
//! let u = named_family::<f64>("qp", &[0.0]).unwrap();
//! let s = find_spectrum(&SchrodKernel, &u, Window::new(0.0, 50.0).unwrap(), &SearchOptions::default()).unwrap();
//! let pi2 = std::f64::consts::PI.powi(2);
//! assert!((s.roots[0].mu - pi2 / 4.0).abs() < 1e-10);
//! ```

pub mod bc;
pub mod dirac;
pub mod error;
pub mod iso;
pub mod kernel;
pub mod matalg;
pub mod roots;
pub mod scalar;
pub mod schrod;
pub mod triple;
pub mod verify;

pub use bc::{named_family, parse_bc, Family, InvariantTriple, UnitaryBc};
pub use dirac::{DiracKernel, DiracPoint, PhysicalConfig, Regime};
pub use error::{Error, Result};
pub use iso::{classify, compare_spectra, orbit_spectra, IsoClassification, OrbitPoint, SpectrumComparison};
pub use kernel::{SpectralKernel, Theory};
pub use matalg::{Mat2, UnitaryEigen};
pub use roots::{find_spectrum, Root, RootMethod, SearchOptions, SpectrumSlice, Window};
pub use scalar::{Cx, Real};
pub use schrod::{SchrodKernel, SchrodPoint};
pub use triple::{CliffordRep, RepKernel};

pub type Mat2f64 = Mat2<f64>;
pub type UnitaryBc64 = UnitaryBc<f64>;
pub type DiracKernel64 = DiracKernel<f64>;
pub type PhysicalConfig64 = PhysicalConfig<f64>;
pub type SearchOptions64 = SearchOptions<f64>;
pub type SpectrumSlice64 = SpectrumSlice<f64>;
pub type Window64 = Window<f64>;
pub type CliffordRep64 = CliffordRep<f64>;
pub type IsoClassification64 = IsoClassification<f64>;
