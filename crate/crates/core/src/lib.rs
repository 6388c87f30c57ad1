//! Regularized Riesz z-energies `∬|x−y|^z`, their meromorphic continuations
//! (beta functions) and residues for closed curves, closed surfaces and
//! compact domains.

pub mod cli;
pub mod closed_energy;
pub mod domain_energy;
pub mod error;
pub mod extrinsic;
pub mod geometry;
pub mod manifold;
pub mod moebius;
pub mod par;
pub mod quad;
pub mod regularize;
pub mod shapes;
pub mod special;
pub mod validation;

pub use error::{Result, RieszError};
pub use num_complex::Complex64;

use closed_energy::{EnergyOptions, EnergyReport};
use shapes::Shape;

/// E(z) of any shape: closed curves and surfaces through
/// [`closed_energy::energy_hadamard_with`], domains through
/// [`domain_energy::domain_energy_with`].
pub fn energy(shape: &Shape, z: Complex64, opts: &EnergyOptions) -> Result<EnergyReport> {
    match shape {
        Shape::Domain(d) => domain_energy::domain_energy_with(d, z, opts),
        _ => closed_energy::energy_hadamard_with(shape, z, opts),
    }
}
