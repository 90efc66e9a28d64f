//! Exact computations for the birational geometry of the moduli of quartic
//! K3 surfaces: integral lattices and Niemeier boundary labels, Hilbert–Mumford
//! analysis of quartics, SL2 decompositions and slices, Dolgachev singularity
//! invariants, weighted blow-up fans, and the flip schedule.
//!
//! Everything is done over the rationals or the integers; there is no floating
//! point in any decision.

pub mod exactpoly;
pub mod lattice;
pub mod niemeier;
pub mod git;
pub mod sl2;
pub mod dolgachev;
pub mod toric;
pub mod schedule;
pub mod verify;
