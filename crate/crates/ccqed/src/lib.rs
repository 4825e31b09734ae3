//! Exact diagonalization of a two-site coupled-cavity QED model.
//!
//! Each site is a single-mode cavity containing a two-level atom; photons hop
//! between the cavities. Within the conserved two-excitation sector the
//! library computes the ground state, all five bipartite von Neumann
//! entanglement entropies, and the excitation-number variances that serve as
//! order parameters for the insulator/superfluid phase diagram.
//!
//! ```
//! use ccqed::hilbert::enumerate_basis;
//! use ccqed::model::{build_hamiltonian, ModelParams};
//! use ccqed::spectra::ground_state;
//! use ccqed::entanglement::all_bipartite_entropies;
//!
//! // resonant atoms, small hopping: the polaritonic insulator
//! let basis = enumerate_basis(2);
//! let params = ModelParams::from_reduced(0.0, 0.01, 1.0, 0.0).unwrap();
//! let gs = ground_state(&build_hamiltonian(&params, &basis)).unwrap();
//! let report = all_bipartite_entropies(&gs).unwrap();
//! assert!((report.atom - 1.0).abs() < 1e-3); // one full bit per atom
//! assert!(report.site < 0.05); // but no intersite entanglement
//! ```

pub mod boundary;
pub mod cli;
pub mod dressed;
pub mod entanglement;
pub mod error;
pub mod fullspace;
pub mod hilbert;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod output;
pub mod selfcheck;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
