//! Exact computations for noncommutative projective geometry at desk scale.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`], [`word`], [`poly`], [`endo`]: coefficient fields and the free-algebra term layer.
//! - [`rewriting`]: degree-truncated two-sided Gröbner bases, normal forms and growth data.
//! - [`presentation`]: graded presentations, twists and the standard-algebra check.
//! - [`homology`]: minimal resolutions, Ext, Gorenstein and χ probes, Proj cohomology.
//! - [`coord_rings`]: twisted homogeneous coordinate rings of the projective line.
//! - [`heart`]: charge-level model of coherent sheaves on an elliptic curve.
//! - [`real_mult`]: quadratic irrationals, SL(2,Z) actions and real-multiplication algebras.

pub mod coord_rings;
pub mod endo;
pub mod error;
pub mod field;
pub mod heart;
pub mod homology;
pub mod linalg;
pub mod poly;
pub mod presentation;
pub mod real_mult;
pub mod rewriting;
pub mod word;

pub use error::{Error, Result};
