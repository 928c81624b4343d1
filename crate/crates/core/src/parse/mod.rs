//! Concrete syntax for signatures, classes, and objects.
//!
//! ```text
//! decl  ::= ident ":" class "."
//! class ::= "Sort" | "Lvl" | "{" ident ":" class "}" class | class "->" class
//!         | "Eq" "(" class ";" obj ";" obj ")" | obj
//! obj   ::= ident | numeral | "*" | "lzero" | "lsuc" obj | "[" ident ":" class "]" obj
//!         | obj obj | "(" obj ")"
//! ```
//!
//! Application is left-associative and binds tighter than `->`, which is
//! right-associative. Binder bodies extend as far right as possible. A
//! Π written in object position is a Π-sort. Numerals `n` abbreviate
//! `succ (... (succ zero))`. `--` starts a comment.

mod lexer;
mod parser;
mod print;

pub use parser::{Expr, ExprKind};
pub use print::{print_class, print_decls, print_object};

use crate::syntax::{Class, Decl, Object, Telescope};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: Option<Arc<str>>,
    /// Byte offsets into the parsed text.
    pub start: usize,
    pub end: usize,
    pub start_line: usize,
    pub start_col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}", self.start_line, self.start_col)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

impl ParseError {
    pub(crate) fn new(span: SourceSpan, message: impl Into<String>, expected: Vec<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected,
        }
    }
}

/// A parsed declaration together with its source location.
#[derive(Clone, Debug)]
pub struct SurfaceDecl {
    pub name: String,
    pub class: Class,
    pub span: SourceSpan,
    pub expr: Expr,
}

pub fn parse_signature(text: &str) -> Result<Vec<SurfaceDecl>, ParseError> {
    parse_signature_in(text, None)
}

/// Like [`parse_signature`], recording `file` in every span.
pub fn parse_signature_in(text: &str, file: Option<&str>) -> Result<Vec<SurfaceDecl>, ParseError> {
    parser::Parser::new(text, file)?.decls()
}

pub fn parse_telescope(text: &str) -> Result<Telescope, ParseError> {
    Ok(to_telescope(&parse_signature(text)?))
}

pub fn to_telescope(decls: &[SurfaceDecl]) -> Telescope {
    decls
        .iter()
        .map(|d| Decl::new(&d.name, d.class.clone()))
        .collect()
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = parser::Parser::new(text, None)?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

pub fn parse_object(text: &str) -> Result<Object, ParseError> {
    parser::lower_object(&parse_expr(text)?, &mut Vec::new())
}

pub fn parse_class(text: &str) -> Result<Class, ParseError> {
    parser::lower_class(&parse_expr(text)?, &mut Vec::new())
}
