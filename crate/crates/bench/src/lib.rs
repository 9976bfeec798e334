//! Shared fixtures for the criterion benches.

use hvcheck::contextuality::{orthogonality_structure, peres_rays, OrthogonalityStructure};
use hvcheck::tol;

pub fn peres_structure() -> OrthogonalityStructure {
    orthogonality_structure(&peres_rays(), tol::ORTH)
}
