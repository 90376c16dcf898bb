//! Numerical verification of Dirichlet domains for a one-parameter family of
//! complex hyperbolic reflection groups.
//!
//! The family consists of representations of the Coxeter group
//! `G = <i1,i2,i3,i4 | i_k^2 = (i1 i3)^2 = (i2 i4)^2 = id>` into `PU(3,1)`,
//! with each generator acting as a complex reflection and each product
//! `i_k i_{k+1}` parabolic. The moduli parameter is `theta in [5pi/6, pi]`;
//! the left endpoint degenerates to `PU(2,1)` geometry and the right endpoint
//! to real hyperbolic 3-space.
//!
//! The crate builds the representation matrices, parameterizes intersections
//! of the equidistant hypersurfaces (bisectors) bounding the partial Dirichlet
//! domain `D_R` by phases on tori, and certifies the combinatorial facts the
//! Poincare polyhedron argument consumes: which bisector pairs meet, the
//! tangency at the parabolic fixed point, half-space coverage, side pairings
//! and ridge cycles.
//!
//! Entry points:
//! - [`group::build_group`] constructs the representation at a given `theta`.
//! - [`chart`] parameterizes bisector intersections.
//! - [`optim`] minimizes chart objectives over tori, optionally with a
//!   Lipschitz positivity certificate.
//! - [`verify::full_report`] runs the whole verification at one `theta`.
//! - [`cli`] backs the `chyp` binary (`verify`, `sweep`, `export-locus`,
//!   `golden`).

pub mod chart;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod group;
pub mod herm;
pub mod optim;
pub mod verify;

pub use error::{ChypError, Result};
