//! Lyndon words and primitive words in k-automatic sequences, decided and
//! counted through multi-track base-k automata.
//!
//! The crate has three layers:
//!
//! * [`automaton`] and [`numeration`] provide deterministic multi-track
//!   automata over base-k digit tuples, with boolean combination, projection,
//!   minimization and value-language finiteness tests.
//! * [`predicate`] parses a small first-order language (addition, comparisons,
//!   sequence indexing, quantifiers) and compiles it to automata, including
//!   the built-in predicates for primitivity, lexicographic comparison and
//!   Lyndon occurrences.
//! * [`factorization`] and [`enumeration`] use those predicates to encode the
//!   Lyndon factorization of a sequence as an automaton, to decide whether it
//!   is finite, and to count primitive/Lyndon factors as k-regular sequences
//!   given by linear representations over nonnegative integer matrices.
//!
//! The [`oracle`] module holds independent brute-force implementations on
//! finite words (Duval's factorization, primitivity and Lyndon tests, factor
//! counting, return words) used as ground truth in tests and cross-checks.
//!
//! ```
//! use lyndon_automata::sequence::SequenceDfao;
//! use lyndon_automata::oracle;
//!
//! let t = SequenceDfao::builtin("t").unwrap();
//! assert_eq!(t.prefix(8), vec![0, 1, 1, 0, 1, 0, 0, 1]);
//! assert!(oracle::is_lyndon(&t.prefix(3)).unwrap());
//! ```

pub mod automaton;
pub mod enumeration;
mod error;
pub mod factorization;
pub mod numeration;
mod occurrence;
pub mod oracle;
pub mod predicate;
pub mod sequence;

pub use automaton::{Automaton, BoolOp, DigitTupleAlphabet, Limits};
pub use error::{Error, Result};
pub use occurrence::{Occurrence, OccurrenceEnd};
pub use predicate::{CompiledPredicate, Session};
pub use sequence::SequenceDfao;
