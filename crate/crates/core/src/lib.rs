//! Rational base numeration systems, their automata, and first-order logic
//! over `N_{p/q}`.

pub mod analysis;
pub mod automata;
pub mod builtins;
pub mod error;
pub mod logic;
pub mod numeration;

pub use automata::{Direction, MultiTapeAutomaton};
pub use error::{Error, ParseError, Result};
pub use numeration::{Base, QkNumber, TupleWord, Word};
