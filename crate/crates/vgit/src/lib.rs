//! Exact arithmetic for two related problems.
//!
//! The first is variation of GIT for pairs `(C, L)` of a plane curve of degree `d`
//! and a line: the Hilbert–Mumford function, stability intervals in the slope `t`,
//! stability thresholds of singular points and the enumeration of walls.
//!
//! The second is the even-lattice toolkit needed to study the K3 surfaces attached
//! to such pairs: discriminant forms, overlattices, root systems, primitive
//! embeddings, Vinberg's algorithm and the classification of isotropic sublattices.
//!
//! Everything is exact. Slopes and weights are [`Q`] rationals, lattices are integer
//! Gram matrices.

// Matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod hyperbolic;
pub mod lattice;
pub mod moduli;
pub mod monoform;
pub mod rational;
pub mod stability;
pub mod walls;

pub use rational::Q;
