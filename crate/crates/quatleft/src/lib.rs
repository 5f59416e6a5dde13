pub mod charpoly;
pub mod cli;
pub mod checks;
pub mod dense;
pub mod error;
pub mod mpoly;
pub mod quaternion;
pub mod representation;
pub mod solver;
pub mod spectra;
