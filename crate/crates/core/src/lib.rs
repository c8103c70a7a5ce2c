//! Horn triples, Littlewood–Richardson counts, triple reduction, numerical
//! spectral checks and exact projection-lattice constructions.

pub mod exec;
pub mod flag;
pub mod horn;
pub mod lr;
pub mod reduce;
pub mod spectra;

pub use exec::Execution;
