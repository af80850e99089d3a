// SPDX-License-Identifier: Apache-2.0

//! Exact enumeration of numerical Sarkisov links whose midpoint is a
//! terminal Gorenstein Fano 3-fold of Picard rank 2 obtained by blowing up
//! a rank-1 Fano 3-fold.
//!
//! The pipeline runs bottom-up: [`catalog`] lists the possible endpoints,
//! [`contractions`] builds the left-hand quadruple, [`solver`] finds every
//! right-hand completion, [`enumerator`] drives the 2-ray game,
//! [`annotator`] attaches rationality verdicts and [`reference`] compares
//! the result with the bundled published tables.

pub mod annotator;
pub mod catalog;
pub mod contractions;
pub mod enumerator;
pub mod lattice;
pub mod reference;
pub mod solver;
