//! Exact intersection theory for towers of fibered varieties over curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`] — graded commutative rings presented by generators and oriented
//!   rewrite rules, with exact rational coefficients, normal forms, and
//!   top-degree integration (plus an independent linear-algebra oracle).
//! * [`tower`] — constructors for the varieties the engine works on: curves,
//!   abelian varieties, projective spaces, products, rank-2 projective
//!   bundles, and double covers, each carrying its canonical class and
//!   fibration data.
//! * [`bundle`] — pushforward calculus for the relative dualizing sheaf down
//!   a tower, with Riemann-Roch h^0 tables, yielding rank and degree on the
//!   base curve.
//! * [`lab`] — the four built-in families of fibered varieties, their
//!   numerical invariants, and verdicts for the slope inequality and the
//!   sharp lower bounds.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and every comparison is a cross-multiplied integer comparison. No floats
//! participate in any computation or verdict.

pub mod bundle;
pub mod error;
pub mod lab;
pub mod ring;
pub mod tower;

pub use error::{Error, Result};
