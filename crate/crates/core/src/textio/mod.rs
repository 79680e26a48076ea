//! Parsing, rendering and file ingestion.

mod lexer;
mod parse;
mod render;
mod system;

pub use lexer::{tokenize, ParseError, Span, Token, TokenKind};
pub use parse::{parse_boson_word, parse_qp_monomial, parse_qp_poly};
pub use render::{
    rational_string, render, render_boson_word, render_qp_poly, term_records, Format, ScalarRecord, TermRecord,
};
pub use system::{load_system, parse_rational_literal, parse_system, SystemError};
