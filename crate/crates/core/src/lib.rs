//! Involutive correction terms of large surgeries on knots, computed from
//! finite model complexes for `CFK^infinity` over `F2[U, U^-1]`.
//!
//! The pipeline runs bottom up:
//! [`knot`] builds and validates model complexes, [`involution`] supplies the
//! conjugation map and checks it, [`cone`] truncates to finite complexes over
//! `F2` and forms the mapping cone of `Q(1 + iota)`, and [`invariants`] reads
//! off tower bottoms and the triple `(V_lower, V0, V_upper)`.

pub mod cone;
pub mod error;
pub mod f2;
pub mod invariants;
pub mod involution;
pub mod knot;
pub mod random;

pub use error::{Error, Result};
