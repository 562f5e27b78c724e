//! The `qcpo` scripting language and command-line front end.

pub mod ast;
pub mod diagnostic;
pub mod eval;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod report;
