//! Exact verification of centralizer constructions in universal enveloping
//! algebras: Yangian and twisted-Yangian evaluation images, ideal
//! projections, Harish-Chandra images and shifted symmetric functions.

pub mod cli;
pub mod coeff;
pub mod invariants;
pub mod lie;
pub mod pbw;
pub mod relations;
pub mod series_matrix;
pub mod symfun;
