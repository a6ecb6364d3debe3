//! Computer-algebra kernel for line singularities on weighted homogeneous
//! hypersurfaces and complete intersections.
//!
//! Everything is computed in the localization of `ℚ[z_0, ..., z_n]` at the
//! origin. Variable `0` is always the axis variable `x`; the line `Σ` is the
//! `x`-axis and its ideal `𝔤` is generated by the remaining variables.
//!
//! Layers, bottom up:
//!
//! - [`rational`], [`monomial`], [`poly`], [`parse`], [`weights`]: exact
//!   polynomial arithmetic, orders, text form, weight inference.
//! - [`mora`]: weak normal forms, standard bases, membership, `vdim`.
//! - [`ideal_ops`]: sums, products, intersections, colon ideals and the
//!   relative dimension `dim 𝔤/I`.
//! - [`derlog`]: logarithmic vector fields and the Euler split.
//! - [`invariants`]: Jacobian number, `ν`, Euler characteristic of the Milnor
//!   fibre and the identity checks built on them.
//! - [`jet`]: an independent oracle using linear algebra on truncated jets.

pub mod derlog;
pub mod error;
pub mod ideal_ops;
pub mod invariants;
pub mod jet;
pub mod monomial;
pub mod mora;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod weights;

pub use error::{Error, ErrorKind, Result};
pub use monomial::{weighted_degree, Monomial, MonomialOrder, Weights};
pub use mora::{Dim, Ideal, StdBasis};
pub use parse::{parse_poly, Ring};
pub use poly::{apply_derivation, leading_term, Derivation, Polynomial};
pub use rational::Rational;
pub use weights::infer_weights;
