//! First-order logic over `<N_{p/q}, +, V, <=len>`: syntax, macros, the
//! compiler to automata, the converse construction and a bounded evaluator.

mod ast;
mod compile;
mod emit;
mod eval;
mod macros;
mod parser;

pub use ast::*;
pub use compile::{compile, decide};
pub use emit::{emit_formula, emit_formula_with, normalize, EmitOptions};
pub use eval::{eval_bounded, Evaluator};
pub use macros::{arity, expand_macro, is_macro, modulo_relation, names as macro_names};
pub use parser::{parse, parse_term};
