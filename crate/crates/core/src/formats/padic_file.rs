//! p-adic inputs. Matrix files hold one or more `matrix:` lines (rows
//! separated by `;`, as in `split_torus:` of algebra files). Split-torus
//! files describe the data of the cone-dimension formula:
//!
//! ```text
//! split_torus_dim: 2
//! unipotent_basis: e12 e13 e23
//! action: 1 0 0 ; 0 2 0 ; 0 0 1
//! ```

use super::lexer::parse_matrix_rows;
use super::{content_lines, split_key, ParseError};
use crate::exactmath::RationalMatrix;
use crate::padic::SplitTorusData;

fn square(rows: Vec<Vec<crate::exactmath::Q>>, ln: usize, col: usize) -> Result<RationalMatrix, ParseError> {
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(ParseError::new(ln, col, "expected a square matrix"));
    }
    RationalMatrix::from_rows(rows).map_err(|e| ParseError::new(ln, col, e.to_string()))
}

pub fn parse_matrices(text: &str) -> Result<Vec<RationalMatrix>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in content_lines(text) {
        match split_key(line) {
            Some(("matrix", value, col)) => out.push(square(parse_matrix_rows(value, ln, col + 1)?, ln, col + 1)?),
            Some((key, _, _)) => return Err(ParseError::new(ln, 1, format!("unknown key `{key}`"))),
            None => return Err(ParseError::new(ln, 1, "expected `matrix: …`")),
        }
    }
    if out.is_empty() {
        return Err(ParseError::new(1, 1, "no `matrix:` line"));
    }
    Ok(out)
}

pub fn parse_split_torus(text: &str) -> Result<SplitTorusData, ParseError> {
    let mut dim = None;
    let mut basis = None;
    let mut action = Vec::new();
    for (ln, line) in content_lines(text) {
        let (key, value, col) = split_key(line).ok_or_else(|| ParseError::new(ln, 1, "expected `key: value`"))?;
        match key {
            "split_torus_dim" => {
                dim = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| ParseError::new(ln, col + 1, "expected a non-negative integer"))?,
                )
            }
            "unipotent_basis" => basis = Some(value.split_whitespace().map(str::to_string).collect::<Vec<_>>()),
            "action" => action.push(square(parse_matrix_rows(value, ln, col + 1)?, ln, col + 1)?),
            _ => return Err(ParseError::new(ln, 1, format!("unknown key `{key}`"))),
        }
    }
    Ok(SplitTorusData {
        split_torus_dim: dim.ok_or_else(|| ParseError::new(1, 1, "missing `split_torus_dim:`"))?,
        unipotent_basis: basis.ok_or_else(|| ParseError::new(1, 1, "missing `unipotent_basis:`"))?,
        action,
    })
}
