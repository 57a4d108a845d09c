//! Potential theory on the unit disk for studying zero sets of weighted
//! Bergman-type spaces: kernels, Green's functions of disk unions, Riesz
//! measures of radial weights, and computable density criteria.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod criteria;
pub mod error;
pub mod geometry;
pub mod green;
pub mod kernels;
pub mod measures;
pub mod products;
pub mod quadrature;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{CarlesonBox, Disk, Point, UnionDomain};
