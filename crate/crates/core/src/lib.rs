//! Numerical witnesses for the classic results on hidden variables.
//!
//! The crate builds small dense quantum objects (qubit states, Pauli
//! observables, density operators) and uses them to check, by direct
//! computation or exhaustive search:
//!
//! * the density-operator reconstruction from an expectation functional and
//!   the absence of dispersion-free states ([`vn_ensemble`]);
//! * Bell's hidden-variable model for a single spin-½ and Wigner's joint
//!   weights for two spins ([`hvmodels`]);
//! * Kochen-Specker uncolourability of the Peres 33-ray set and the Mermin
//!   square ([`contextuality`]);
//! * Bell, CHSH, GHZ and Hardy nonlocality and the no-signalling property
//!   ([`nonlocality`]);
//! * seeded Monte Carlo correlation experiments ([`simlab`]).

pub mod check;
pub mod contextuality;
pub mod error;
pub mod hvmodels;
pub mod nonlocality;
pub mod qmath;
pub mod rng;
pub mod simlab;
pub mod tol;
pub mod vn_ensemble;

pub use check::{Check, Relation};
pub use error::{Error, Result};
pub use qmath::{ComplexMatrix, DensityOperator, Observable, StateVector, C64};
