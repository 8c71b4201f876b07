//! U_q(sl2)-symmetric spin chains: exact q-arithmetic, the Temperley-Lieb
//! calculus, the dual canonical basis, cascade Hamiltonians and the
//! ferromagnetic ordering of energy levels.

pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod identities;
pub mod qalg;
pub mod repspaces;
pub mod spectra;
pub mod tl;
pub mod urnsim;

pub use error::{Error, Result};
