//! Finite-truncation toolkit for cusped spaces, complexes of groups,
//! developments, and glued boundary skeletons.

pub mod complex;
pub mod cusped;
pub mod development;
pub mod delta;
pub mod error;
pub mod graph;
pub mod group;
pub mod horoball;
pub mod presentation;
pub mod scwol;
pub mod amalgam;
pub mod boundary;
pub mod examples;
pub mod io;
pub mod cog;
pub mod smith;
pub mod subgroup;
pub mod word;

pub use error::{Error, Result};
