//! Exact arithmetic for Hankel determinants of automatic sequences.
//!
//! The crate is organized around five concerns:
//!
//! - [`seq`]: generators for the paperfolding, Thue-Morse and Cantor
//!   sequences (closed form and morphism + coding), plus functional-equation
//!   checks on their generating functions.
//! - [`linalg`]: dense arbitrary-precision integer matrices, fraction-free
//!   determinants, GF(2) determinants, and the parity-pattern vectors and
//!   permutation used by the bordered determinant families.
//! - [`families`]: the nine bordered Hankel determinant families, their
//!   doubling identities (exact and mod 2), the period-10 mod-2 tables, and
//!   the nonvanishing checks.
//! - [`pade`]: truncated exact-rational power series and `[k-1/k]` Padé
//!   approximants with the leading-error-coefficient identity.
//! - [`irr`]: Mahler-type functional-equation iteration, convergent
//!   construction with rigorous error brackets, and irrationality-exponent
//!   bound calculators.
//!
//! All number theory is done in exact integer/rational arithmetic; floating
//! point appears only as a display convenience next to rigorous rational
//! interval endpoints.

pub mod families;
pub mod irr;
pub mod linalg;
mod lnum;
pub mod pade;
pub mod poly;
pub mod seq;
pub mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
