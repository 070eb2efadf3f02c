pub mod catalog;
pub mod chain_lab;
pub mod embed;
pub mod ideals;
pub mod poset;
pub mod semilattice;
pub mod theorems;

pub use poset::{DownSet, FinitePoset, PosetError};
pub use semilattice::{FiniteJoinSemilattice, LatticeLaws, SemilatticeError};
