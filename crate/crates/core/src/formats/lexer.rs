use num_traits::Zero;

use super::ParseError;
use crate::exactmath::{parse_rational, Q};

/// Parse one rational token located at `(line, col)`.
pub fn parse_rational_at(tok: &str, line: usize, col: usize) -> Result<Q, ParseError> {
    parse_rational(tok).ok_or_else(|| ParseError::new(line, col, format!("invalid rational `{tok}`")))
}

/// Parse `2/3 x - y + z` (or `0`) into coordinates over `names`.
/// `col0` is the column of the first character of `s`.
pub fn parse_linear_combination(s: &str, names: &[String], line: usize, col0: usize) -> Result<Vec<Q>, ParseError> {
    let mut out = vec![Q::zero(); names.len()];
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut any = false;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if s.trim() == "0" {
        return Ok(out);
    }
    while i < bytes.len() {
        let mut sign = Q::from_integer(1.into());
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if any {
            return Err(ParseError::new(line, col0 + i, "expected `+` or `-`"));
        }
        let start = i;
        // optional coefficient
        let mut coeff = Q::from_integer(1.into());
        if i < bytes.len() && (bytes[i].is_ascii_digit()) {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
                i += 1;
            }
            let tok: String = bytes[start..i].iter().collect();
            coeff = parse_rational_at(&tok, line, col0 + start)?;
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }
        let ns = i;
        while i < bytes.len() && !bytes[i].is_whitespace() && bytes[i] != '+' && bytes[i] != '-' {
            i += 1;
        }
        let name: String = bytes[ns..i].iter().collect();
        if name.is_empty() {
            return Err(ParseError::new(line, col0 + ns, "expected a basis name"));
        }
        let k = names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| ParseError::new(line, col0 + ns, format!("unknown basis element `{name}`")))?;
        out[k] += sign * coeff;
        any = true;
        skip_ws(&mut i);
    }
    if !any {
        return Err(ParseError::new(line, col0, "empty linear combination"));
    }
    Ok(out)
}

/// Rows of whitespace-separated rationals separated by `;`.
pub fn parse_matrix_rows(s: &str, line: usize, col0: usize) -> Result<Vec<Vec<Q>>, ParseError> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for part in s.split(';') {
        let mut row = Vec::new();
        let mut pos = 0;
        for tok in part.split_whitespace() {
            let at = part[pos..].find(tok).unwrap() + pos;
            pos = at + tok.len();
            row.push(parse_rational_at(tok, line, col0 + offset + at)?);
        }
        if !row.is_empty() {
            rows.push(row);
        }
        offset += part.len() + 1;
    }
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(ParseError::new(line, col0, "rows have different lengths"));
        }
    }
    Ok(rows)
}
