//! Similarity geometry of Euclidean 3-space and the Lorentzian null-cone
//! model of the conformal 3-sphere.
//!
//! The toolkit has three layers:
//!
//! * **Models** — [`euclid`] implements the similarity group
//!   `(R* x O(3)) |x R^3` of `E^3` together with its Lie algebra;
//!   [`lorentz`] implements `R^{1,4}`, the null cone, the 3-sphere as the
//!   projectivised null cone, and the `O(1,4)` action. [`bridge`] is the
//!   conformal-compactification dictionary between the two.
//! * **Structure** — [`subalgebra`] handles spans, ranks and
//!   bracket-closure of generator sets; [`classifier`] decides the
//!   conjugacy class of a subalgebra of the similarity algebra and returns
//!   an explicit conjugating element; [`reduction`] scans a subalgebra of
//!   `so(1,4)` for invariant subspaces of the ambient Lorentzian space.
//! * **Verification** — [`catalog`] is the registry of the named groups
//!   with their claimed invariants, and [`orbit`] measures orbit
//!   dimensions, cohomogeneity, orbit equivalence and conserved quantities
//!   against those claims.
//!
//! All numerics are double precision. Two tolerances govern every decision
//! ([`tol::Tolerances`]): `eps` for algebraic identities and `rank_tol` for
//! rank/subspace decisions.

pub mod bridge;
pub mod catalog;
pub mod classifier;
pub mod euclid;
pub mod linalg;
pub mod lorentz;
pub mod orbit;
pub mod reduction;
pub mod subalgebra;
pub mod tol;

pub use tol::Tolerances;
