//! The `.pch` scene language: lexer, parser, syntax tree and elaborator.

pub mod ast;
pub mod diagnostic;
pub mod elaborate;
pub mod lexer;
pub mod parser;

pub use ast::Program;
pub use diagnostic::{Diagnostic, Phase, Pos, Severity};
pub use elaborate::{elaborate, Command, CommandKind, Scene};
pub use parser::parse_program;
