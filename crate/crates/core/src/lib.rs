//! Exact Gröbner–Shirshov computations in free right-symmetric (pre-Lie)
//! algebras over the rationals.
//!
//! * [`terms`]: letters, bracketed words, the deg-lex order and the good-word
//!   basis.
//! * [`poly`]: polynomials in the good-word basis and their products.
//! * [`gs`]: reduction, compositions, basis checking, completion and
//!   irreducible words.
//! * [`lie`]: universal enveloping right-symmetric algebras of Lie algebras.
//! * [`oracle`]: independent brute-force checks.

pub mod error;
pub mod gs;
pub mod lie;
pub mod oracle;
pub mod poly;
pub mod terms;

pub use error::{Error, Result};
pub use gs::{Presentation, Reduction};
pub use poly::{Coefficient, Poly};
pub use terms::{Alphabet, GoodWord, Letter, Word};

/// Default cap on the number of words any enumeration may produce.
pub const DEFAULT_CAP: usize = 1_000_000;
