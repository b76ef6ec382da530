//! Geometry of the Siegel upper half space and homological growth on surface covers.
//!
//! The crate has four layers:
//!
//! * [`polyinv`] — root-based and quadrature-based invariants of monic
//!   polynomials: logarithmic Mahler measure, the Jensen square sum
//!   (sum of squared logarithmic radii of roots outside the unit circle),
//!   the log-house, and exact reciprocity.
//! * [`symplectic`] — construction, validation and factorization of
//!   symplectic matrices, with exact characteristic polynomials whenever
//!   the entries are integers or rationals.
//! * [`siegel`] — the generalized upper half plane: fractional linear
//!   action, cross-ratio, distance, tangent norm, Hodge frames, and
//!   translation lengths (closed form and a derivative-free numerical
//!   oracle).
//! * [`cover`] — surface group presentations, automorphisms, regular
//!   finite covers via Reidemeister–Schreier rewriting and Smith normal
//!   form, lifted homology actions and the normalized growth table.
//!
//! Everything is deterministic: randomness is always seeded and all
//! operations are pure functions of their inputs.

pub mod cover;
pub mod exact;
pub mod io;
pub mod polyinv;
pub mod siegel;
pub mod symplectic;

pub use polyinv::{MonicPolynomial, RootMultiset};
pub use siegel::SiegelPoint;
pub use symplectic::SymplecticMatrix;
