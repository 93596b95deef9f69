//! Algebra files:
//!
//! ```text
//! name: sol
//! basis: t x y
//! [t,x] = x
//! [t,y] = -y
//! simply_connected: true
//! max_compact_dim: 0
//! levi_noncompact: h ; e ; f
//! levi_georank: 1 0
//! split_torus: 1 0 0 ; 0 2 0 ; 0 0 -2
//! ```

use super::lexer::{parse_linear_combination, parse_matrix_rows};
use super::{content_lines, split_key, ParseError};
use crate::exactmath::{RationalMatrix, fmt_rational, is_zero_vec};
use crate::liealg::{validate, LieAlgebra, LieError, RawStructureConstants, StructuralAnnotations, Subspace};

pub fn parse_algebra_raw(text: &str) -> Result<RawStructureConstants, ParseError> {
    let mut raw = RawStructureConstants::default();
    let mut have_basis = false;
    let mut ann = StructuralAnnotations::default();
    let mut levi: Option<(usize, Vec<Vec<crate::exactmath::Q>>)> = None;
    let mut torus = Vec::new();
    for (ln, line) in content_lines(text) {
        let trimmed_start = line.len() - line.trim_start().len();
        let body = line.trim_start();
        if body.starts_with('[') {
            if !have_basis {
                return Err(ParseError::new(ln, trimmed_start + 1, "bracket before `basis:`"));
            }
            let close = body
                .find(']')
                .ok_or_else(|| ParseError::new(ln, trimmed_start + 1, "unclosed `[`"))?;
            let inner = &body[1..close];
            let comma = inner
                .find(',')
                .ok_or_else(|| ParseError::new(ln, trimmed_start + 2, "expected `[a,b]`"))?;
            let (a, b) = (inner[..comma].trim(), inner[comma + 1..].trim());
            let find = |name: &str, col: usize| {
                raw.basis_names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| ParseError::new(ln, col, format!("unknown basis element `{name}`")))
            };
            let i = find(a, trimmed_start + 2)?;
            let j = find(b, trimmed_start + 3 + comma)?;
            let rest = &body[close + 1..];
            let eq = rest
                .find('=')
                .ok_or_else(|| ParseError::new(ln, trimmed_start + close + 2, "expected `=`"))?;
            let col = trimmed_start + close + 2 + eq + 1;
            let v = parse_linear_combination(&rest[eq + 1..], &raw.basis_names, ln, col)?;
            raw.entries.push((i, j, v));
            continue;
        }
        let (key, value, vcol) =
            split_key(line).ok_or_else(|| ParseError::new(ln, trimmed_start + 1, "expected `key: value` or `[a,b] = …`"))?;
        let vcol = vcol + 1;
        let vt = value.trim();
        match key {
            "name" => raw.name = vt.to_string(),
            "basis" => {
                if have_basis {
                    return Err(ParseError::new(ln, 1, "duplicate `basis:`"));
                }
                raw.basis_names = vt.split_whitespace().map(str::to_string).collect();
                if raw.basis_names.is_empty() {
                    return Err(ParseError::new(ln, vcol, "empty basis"));
                }
                for (k, n) in raw.basis_names.iter().enumerate() {
                    if raw.basis_names[..k].contains(n) {
                        return Err(ParseError::new(ln, vcol, format!("duplicate basis name `{n}`")));
                    }
                }
                have_basis = true;
            }
            "simply_connected" => {
                ann.simply_connected = match vt {
                    "true" | "yes" => true,
                    "false" | "no" => false,
                    _ => return Err(ParseError::new(ln, vcol, "expected true or false")),
                }
            }
            "max_compact_dim" => {
                ann.max_compact_dim = vt
                    .parse()
                    .map_err(|_| ParseError::new(ln, vcol, "expected a count"))?
            }
            "levi_georank" => {
                let parts: Vec<usize> = vt
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| ParseError::new(ln, vcol, "expected two counts")))
                    .collect::<Result<_, _>>()?;
                if parts.len() != 2 {
                    return Err(ParseError::new(ln, vcol, "expected `real_rank center_rank`"));
                }
                ann.levi_georank = Some((parts[0], parts[1]));
            }
            "levi_noncompact" => {
                if !have_basis {
                    return Err(ParseError::new(ln, 1, "annotation before `basis:`"));
                }
                let mut vecs = Vec::new();
                let mut off = 0;
                for part in value.split(';') {
                    vecs.push(parse_linear_combination(part, &raw.basis_names, ln, vcol + off)?);
                    off += part.len() + 1;
                }
                levi = Some((ln, vecs));
            }
            "split_torus" => {
                let rows = parse_matrix_rows(value, ln, vcol)?;
                torus.push(
                    RationalMatrix::from_rows(rows).map_err(|e| ParseError::new(ln, vcol, e.to_string()))?,
                );
            }
            other => return Err(ParseError::new(ln, trimmed_start + 1, format!("unknown key `{other}`"))),
        }
    }
    if !have_basis {
        return Err(ParseError::new(1, 1, "missing `basis:` line"));
    }
    let n = raw.basis_names.len();
    if let Some((_, vecs)) = levi {
        ann.levi_noncompact = Some(Subspace::span(n, vecs));
    }
    if !torus.is_empty() {
        ann.split_torus = Some(torus);
    }
    if raw.name.is_empty() {
        raw.name = "algebra".into();
    }
    raw.annotations = ann;
    Ok(raw)
}

#[derive(Debug)]
pub enum AlgebraInputError {
    Parse(ParseError),
    Lie(LieError),
}

/// Parse and validate.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, AlgebraInputError> {
    let raw = parse_algebra_raw(text).map_err(AlgebraInputError::Parse)?;
    validate(raw).map_err(AlgebraInputError::Lie)
}

/// Inverse of `parse_algebra` (comments are not preserved).
pub fn emit_algebra(g: &LieAlgebra) -> String {
    let mut s = format!("name: {}\nbasis: {}\n", g.name(), g.basis_names().join(" "));
    for e in g.bracket_listing() {
        s.push_str(&format!("[{},{}] = {}\n", e.left, e.right, e.value));
    }
    let a = g.annotations();
    if !a.simply_connected {
        s.push_str("simply_connected: false\n");
    }
    if a.max_compact_dim != 0 {
        s.push_str(&format!("max_compact_dim: {}\n", a.max_compact_dim));
    }
    if let Some(l) = &a.levi_noncompact {
        let parts: Vec<String> = l.basis().iter().filter(|v| !is_zero_vec(v)).map(|v| g.describe(v)).collect();
        s.push_str(&format!("levi_noncompact: {}\n", parts.join(" ; ")));
    }
    if let Some((r, z)) = a.levi_georank {
        s.push_str(&format!("levi_georank: {r} {z}\n"));
    }
    for m in a.split_torus.iter().flatten() {
        let rows: Vec<String> = (0..m.rows())
            .map(|i| m.row(i).iter().map(fmt_rational).collect::<Vec<_>>().join(" "))
            .collect();
        s.push_str(&format!("split_torus: {}\n", rows.join(" ; ")));
    }
    s
}
