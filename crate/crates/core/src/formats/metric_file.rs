//! Metric-space and fibered-map files.
//!
//! ```text
//! points: a b c
//! 1          # d(b, a)
//! 2 1        # d(c, a) d(c, b)
//! ```
//!
//! A fibered file lists the total space under `points:`, the base under
//! `base:`, then the map, the fiber constant and optional covering levels
//! of the base (scale first, sets separated by `|`):
//!
//! ```text
//! fiber: y0 = a b
//! fiber: y1 = c
//! lambda: 1
//! level: 4 | y0 y1
//! ```

use super::lexer::parse_rational_at;
use super::{content_lines, split_key, InputError, ParseError};
use crate::covering::{CoveringError, FiberedMap, FiniteMetricSpace};
use crate::exactmath::{fmt_rational, Q};

#[derive(Default)]
struct Block {
    line: usize,
    labels: Vec<String>,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Block {
    fn build(self, what: &str) -> Result<FiniteMetricSpace, InputError<CoveringError>> {
        let n = self.labels.len();
        // the row of the first point is empty and may be omitted
        let skip = usize::from(self.rows.len() + 1 == n);
        if self.rows.len() + skip != n {
            return Err(InputError::Parse(ParseError::new(
                self.line,
                1,
                format!("{what}: expected {} distance rows for {n} points, found {}", n.saturating_sub(1), self.rows.len()),
            )));
        }
        let mut d = vec![vec![Q::default(); n]; n];
        for (k, (ln, row)) in self.rows.into_iter().enumerate() {
            let i = k + skip;
            if row.len() != i {
                return Err(InputError::Parse(ParseError::new(
                    ln,
                    1,
                    format!("row for `{}` needs {i} entries, found {}", self.labels[i], row.len()),
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                d[i][j] = v.clone();
                d[j][i] = v;
            }
        }
        let space = FiniteMetricSpace::new(self.labels, d).map_err(InputError::Domain)?;
        space.require_metric().map_err(InputError::Domain)?;
        Ok(space)
    }
}

fn parse_row(line: &str, ln: usize) -> Result<Vec<Q>, ParseError> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in line.split_whitespace() {
        let at = line[pos..].find(tok).unwrap() + pos;
        pos = at + tok.len();
        out.push(parse_rational_at(tok, ln, at + 1)?);
    }
    Ok(out)
}

fn labels(value: &str, ln: usize, col: usize) -> Result<Vec<String>, ParseError> {
    let v: Vec<String> = value.split_whitespace().map(str::to_string).collect();
    if v.is_empty() {
        return Err(ParseError::new(ln, col, "expected at least one label"));
    }
    for (i, a) in v.iter().enumerate() {
        if v[..i].contains(a) {
            return Err(ParseError::new(ln, col, format!("duplicate label `{a}`")));
        }
    }
    Ok(v)
}

fn index_of(names: &[String], name: &str, ln: usize, col: usize) -> Result<usize, ParseError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| ParseError::new(ln, col, format!("unknown point `{name}`")))
}

/// A metric space file (only `points:` and rows).
pub fn parse_metric_space(text: &str) -> Result<FiniteMetricSpace, InputError<CoveringError>> {
    let mut block: Option<Block> = None;
    for (ln, line) in content_lines(text) {
        match split_key(line) {
            Some(("points", value, col)) => {
                if block.is_some() {
                    return Err(ParseError::new(ln, 1, "duplicate `points:`").into());
                }
                block = Some(Block {
                    line: ln,
                    labels: labels(value, ln, col + 1)?,
                    rows: Vec::new(),
                });
            }
            Some((key, _, _)) => return Err(ParseError::new(ln, 1, format!("unknown key `{key}`")).into()),
            None => {
                let b = block
                    .as_mut()
                    .ok_or_else(|| ParseError::new(ln, 1, "distance row before `points:`"))?;
                b.rows.push((ln, parse_row(line, ln)?));
            }
        }
    }
    block.ok_or_else(|| ParseError::new(1, 1, "missing `points:`"))?.build("points")
}

/// A fibered map with its base covering levels `(sets, scale)`.
#[derive(Clone, Debug)]
pub struct FiberedFile {
    pub map: FiberedMap,
    pub levels: Vec<(Vec<Vec<usize>>, Q)>,
}

pub fn parse_fibered(text: &str) -> Result<FiberedFile, InputError<CoveringError>> {
    let mut x: Option<Block> = None;
    let mut y: Option<Block> = None;
    let mut in_base = false;
    let mut fibers: Vec<(usize, usize, String, Vec<String>)> = Vec::new();
    let mut lambda: Option<Q> = None;
    let mut levels_raw: Vec<(usize, usize, String)> = Vec::new();
    for (ln, line) in content_lines(text) {
        match split_key(line) {
            Some((key @ ("points" | "base"), value, col)) => {
                let slot = if key == "points" { &mut x } else { &mut y };
                if slot.is_some() {
                    return Err(ParseError::new(ln, 1, format!("duplicate `{key}:`")).into());
                }
                *slot = Some(Block {
                    line: ln,
                    labels: labels(value, ln, col + 1)?,
                    rows: Vec::new(),
                });
                in_base = key == "base";
            }
            Some(("fiber", value, col)) => {
                let eq = value
                    .find('=')
                    .ok_or_else(|| ParseError::new(ln, col + 1, "expected `fiber: <base point> = <points>`"))?;
                fibers.push((
                    ln,
                    col + 1,
                    value[..eq].trim().to_string(),
                    value[eq + 1..].split_whitespace().map(str::to_string).collect(),
                ));
            }
            Some(("lambda", value, col)) => {
                lambda = Some(parse_rational_at(value.trim(), ln, col + 1)?);
            }
            Some(("level", value, col)) => levels_raw.push((ln, col + 1, value.to_string())),
            Some((key, _, _)) => return Err(ParseError::new(ln, 1, format!("unknown key `{key}`")).into()),
            None => {
                let b = if in_base { y.as_mut() } else { x.as_mut() }
                    .ok_or_else(|| ParseError::new(ln, 1, "distance row before `points:`"))?;
                b.rows.push((ln, parse_row(line, ln)?));
            }
        }
    }
    let x = x.ok_or_else(|| ParseError::new(1, 1, "missing `points:`"))?.build("points")?;
    let y = y.ok_or_else(|| ParseError::new(1, 1, "missing `base:`"))?.build("base")?;
    let lambda = lambda.ok_or_else(|| ParseError::new(1, 1, "missing `lambda:`"))?;
    let mut f: Vec<Option<usize>> = vec![None; x.len()];
    for (ln, col, base, pts) in fibers {
        let b = index_of(y.labels(), &base, ln, col)?;
        for p in pts {
            let i = index_of(x.labels(), &p, ln, col)?;
            if f[i].replace(b).is_some() {
                return Err(ParseError::new(ln, col, format!("point `{p}` assigned twice")).into());
            }
        }
    }
    let f: Vec<usize> = f
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| ParseError::new(1, 1, format!("point `{}` has no `fiber:` line", x.labels()[i]))))
        .collect::<Result<_, _>>()?;
    let mut levels = Vec::new();
    for (ln, col, value) in levels_raw {
        let mut parts = value.split('|');
        let scale = parse_rational_at(parts.next().unwrap_or("").trim(), ln, col)?;
        let mut sets = Vec::new();
        for part in parts {
            let set: Vec<usize> = part
                .split_whitespace()
                .map(|n| index_of(y.labels(), n, ln, col))
                .collect::<Result<_, _>>()?;
            if set.is_empty() {
                return Err(ParseError::new(ln, col, "empty set in `level:`").into());
            }
            sets.push(set);
        }
        levels.push((sets, scale));
    }
    let map = FiberedMap::new(x, y, f, lambda).map_err(InputError::Domain)?;
    Ok(FiberedFile { map, levels })
}

/// Inverse of `parse_metric_space`.
pub fn emit_metric_space(space: &FiniteMetricSpace) -> String {
    let mut s = format!("points: {}\n", space.labels().join(" "));
    for i in 1..space.len() {
        let row: Vec<String> = (0..i).map(|j| fmt_rational(space.d(i, j))).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Inverse of `parse_fibered`.
pub fn emit_fibered(file: &FiberedFile) -> String {
    let m = &file.map;
    let mut s = emit_metric_space(&m.x);
    s.push_str(&emit_metric_space(&m.y).replacen("points:", "base:", 1));
    for y in 0..m.y.len() {
        let pts: Vec<&str> = m.fiber(y).iter().map(|&i| m.x.labels()[i].as_str()).collect();
        s.push_str(&format!("fiber: {} = {}\n", m.y.labels()[y], pts.join(" ")));
    }
    s.push_str(&format!("lambda: {}\n", fmt_rational(&m.lambda)));
    for (sets, r) in &file.levels {
        let parts: Vec<String> = sets
            .iter()
            .map(|set| set.iter().map(|&i| m.y.labels()[i].as_str()).collect::<Vec<_>>().join(" "))
            .collect();
        s.push_str(&format!("level: {} | {}\n", fmt_rational(r), parts.join(" | ")));
    }
    s
}
