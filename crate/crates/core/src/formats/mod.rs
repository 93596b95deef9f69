//! Line-oriented input formats. Every parse error carries a 1-based line
//! and column.

mod algebra_file;
mod lexer;
mod metric_file;
mod padic_file;

pub use algebra_file::{emit_algebra, parse_algebra, parse_algebra_raw, AlgebraInputError};
pub use lexer::{parse_linear_combination, parse_matrix_rows, parse_rational_at};
pub use metric_file::{emit_fibered, emit_metric_space, parse_fibered, parse_metric_space, FiberedFile};
pub use padic_file::{parse_matrices, parse_split_torus};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A file that either fails to parse or parses into invalid domain data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError<E: std::error::Error + 'static> {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(E),
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Non-blank, non-comment lines with their 1-based numbers; `#` starts a
/// comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(p) => &l[..p],
            None => l,
        };
        if l.trim().is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

/// Split `key: value`, returning the value and its column offset.
pub(crate) fn split_key(line: &str) -> Option<(&str, &str, usize)> {
    let p = line.find(':')?;
    let key = line[..p].trim();
    if key.is_empty() || key.contains(char::is_whitespace) || key.starts_with('[') {
        return None;
    }
    Some((key, &line[p + 1..], p + 1))
}
