//! Exact minimal-multiplicity covers at a scale.
//!
//! A cover at scale r uses sets of diameter ≤ r and must have Lebesgue
//! number r/2: every subset of diameter ≤ r/2 lies inside one set. (Without
//! the Lebesgue condition every finite space would have a partition into
//! singletons and dimension 0 at every scale.) It suffices to place every
//! maximal clique of the "d ≤ r/2" graph, and any optimal cover can be
//! shrunk to unions of such cliques, so the search partitions the cliques
//! into groups whose unions have diameter ≤ r.

use super::{Covering, CoveringError, FiniteMetricSpace};
use crate::exactmath::Q;

pub const MAX_EXACT_COVER_POINTS: usize = 14;

type Mask = u32;

fn maximal_cliques(n: usize, adj: &[Mask]) -> Vec<Mask> {
    // Bron–Kerbosch with pivoting on bitmasks
    fn bk(r: Mask, mut p: Mask, mut x: Mask, adj: &[Mask], out: &mut Vec<Mask>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let bit = 1 << v;
            bk(r | bit, p & adj[v], x & adj[v], adj, out);
            p &= !bit;
            x |= bit;
            cand &= !bit;
        }
    }
    let mut out = Vec::new();
    bk(0, if n == 32 { Mask::MAX } else { (1 << n) - 1 }, 0, adj, &mut out);
    out.sort_unstable();
    out
}

struct Search<'a> {
    cliques: &'a [Mask],
    /// pairs at distance > r, as adjacency masks
    far: &'a [Mask],
    groups: Vec<Mask>,
    count: Vec<usize>,
    target: usize,
}

impl Search<'_> {
    fn fits(&self, group: Mask, add: Mask) -> bool {
        let new = add & !group;
        let all = group | add;
        let mut m = new;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if self.far[v] & all != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    fn bump(&mut self, mask: Mask, delta: isize) -> bool {
        let mut ok = true;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            self.count[v] = (self.count[v] as isize + delta) as usize;
            ok &= self.count[v] <= self.target;
            m &= m - 1;
        }
        ok
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.cliques.len() {
            return true;
        }
        let c = self.cliques[i];
        if self.groups.iter().any(|&g| g & c == c) {
            return self.run(i + 1);
        }
        for gi in 0..self.groups.len() {
            let g = self.groups[gi];
            if !self.fits(g, c) {
                continue;
            }
            let added = c & !g;
            let ok = self.bump(added, 1);
            if ok {
                self.groups[gi] = g | c;
                if self.run(i + 1) {
                    return true;
                }
                self.groups[gi] = g;
            }
            self.bump(added, -1);
        }
        let ok = self.bump(c, 1);
        if ok {
            self.groups.push(c);
            if self.run(i + 1) {
                return true;
            }
            self.groups.pop();
        }
        self.bump(c, -1);
        false
    }
}

pub fn min_multiplicity_cover(space: &FiniteMetricSpace, r: &Q) -> Result<Covering, CoveringError> {
    let n = space.len();
    if n > MAX_EXACT_COVER_POINTS {
        return Err(CoveringError::BudgetExceeded {
            points: n,
            budget: MAX_EXACT_COVER_POINTS,
        });
    }
    space.require_metric()?;
    if n == 0 {
        return Covering::new(space, vec![]);
    }
    let half = r / Q::from_integer(2.into());
    let mut near: Vec<Mask> = vec![0; n];
    let mut far: Vec<Mask> = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if space.d(i, j) <= &half {
                    near[i] |= 1 << j;
                }
                if space.d(i, j) > r {
                    far[i] |= 1 << j;
                }
            }
        }
    }
    let cliques = maximal_cliques(n, &near);
    for target in 1..=cliques.len() {
        let mut s = Search {
            cliques: &cliques,
            far: &far,
            groups: Vec::new(),
            count: vec![0; n],
            target,
        };
        if s.run(0) {
            let sets = s
                .groups
                .iter()
                .map(|&g| (0..n).filter(|&v| g & (1 << v) != 0).collect())
                .collect();
            return Covering::new(space, sets);
        }
    }
    unreachable!("one group per clique always fits")
}

/// Multiplicity of the best cover at scale r, minus one.
pub fn dimension_at_scale(space: &FiniteMetricSpace, r: &Q) -> Result<usize, CoveringError> {
    Ok(min_multiplicity_cover(space, r)?.multiplicity - 1)
}
