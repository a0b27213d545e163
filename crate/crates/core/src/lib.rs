//! Nerves, nested-set subdivisions and action-dimension bounds for Artin groups.
//!
//! The input is a Coxeter matrix. From it the crate builds the nerve `L`, the subdivision
//! `L_⊘` whose simplices index the standard abelian subgroups, the octahedralization, and
//! their homology, and assembles lower and upper bounds for the action dimension of the
//! associated Artin group.

pub mod abelian;
pub mod actdim;
pub mod builtin;
pub mod classify;
pub mod cli;
pub mod coxmatrix;
pub mod error;
pub mod genset;
pub mod homology;
pub mod rootsys;
pub mod simcomplex;
pub mod verify;

pub use actdim::{action_dimension_report, ActdimReport, Kpi1Status};
pub use coxmatrix::{parse_coxeter_matrix, CoxeterMatrix, Label};
pub use error::{Error, Result};
pub use genset::GenSet;
