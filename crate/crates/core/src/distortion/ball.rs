//! Breadth-first Cayley balls with exact word lengths.

use std::collections::HashMap;

use super::{DistortionError, GroupElement, GroupModel};

pub const DEFAULT_BALL_BUDGET: usize = 50_000_000;

/// Elements in BFS discovery order (frontier order × generator order), so
/// the table is deterministic.
#[derive(Clone, Debug)]
pub struct BallTable {
    pub radius: u32,
    pub elements: Vec<GroupElement>,
    pub lengths: Vec<u32>,
    /// `ball_sizes[r] = |B(r)|` for r = 0..=radius.
    pub ball_sizes: Vec<usize>,
    index: HashMap<GroupElement, u32>,
}

impl BallTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn length_of(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).map(|&i| self.lengths[i as usize])
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.ball_sizes
            .iter()
            .map(|&b| {
                let s = b - prev;
                prev = b;
                s
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.elements.iter().zip(self.lengths.iter().copied())
    }
}

pub fn cayley_ball(model: &GroupModel, radius: u32) -> Result<BallTable, DistortionError> {
    cayley_ball_with_budget(model, radius, DEFAULT_BALL_BUDGET)
}

pub fn cayley_ball_with_budget(model: &GroupModel, radius: u32, budget: usize) -> Result<BallTable, DistortionError> {
    let id = model.identity();
    let mut index = HashMap::new();
    index.insert(id.clone(), 0u32);
    let mut elements = vec![id];
    let mut lengths = vec![0];
    let mut ball_sizes = vec![1];
    let mut start = 0;
    for r in 1..=radius {
        let end = elements.len();
        for i in start..end {
            for (_, s) in &model.generators {
                let h = model.mul(&elements[i], s);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= budget {
                    return Err(DistortionError::BudgetExceeded {
                        radius_reached: r - 1,
                        budget,
                    });
                }
                index.insert(h.clone(), elements.len() as u32);
                elements.push(h);
                lengths.push(r);
            }
        }
        start = end;
        ball_sizes.push(elements.len());
    }
    Ok(BallTable {
        radius,
        elements,
        lengths,
        ball_sizes,
        index,
    })
}

/// Checks `|g·s| ∈ {|g|−1, |g|, |g|+1}` for every `g` of length < R and
/// every generator `s`; returns the first offending (element, generator).
pub fn check_generator_lipschitz(model: &GroupModel, table: &BallTable) -> Result<(), (GroupElement, String)> {
    for (g, l) in table.iter() {
        if l >= table.radius {
            continue;
        }
        for (name, s) in &model.generators {
            let ok = match table.length_of(&model.mul(g, s)) {
                Some(m) => m + 1 >= l && m <= l + 1,
                None => false,
            };
            if !ok {
                return Err((g.clone(), name.clone()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distortion::build_model;

    #[test]
    fn free_abelian_ball() {
        let m = build_model("zk:2").unwrap();
        let b = cayley_ball(&m, 2).unwrap();
        assert_eq!(b.len(), 13);
        for (g, l) in b.iter() {
            let GroupElement::Zk(v) = g else { panic!() };
            assert_eq!(l as i64, v[0].abs() + v[1].abs());
        }
        assert_eq!(b.ball_sizes, vec![1, 5, 13]);
        assert!(check_generator_lipschitz(&m, &b).is_ok());
    }

    #[test]
    fn heisenberg_center_needs_four_letters() {
        let m = build_model("heis").unwrap();
        let z = GroupElement::Heis([0, 0, 1]);
        assert_eq!(cayley_ball(&m, 3).unwrap().length_of(&z), None);
        assert_eq!(cayley_ball(&m, 4).unwrap().length_of(&z), Some(4));
    }

    #[test]
    fn budget_is_enforced() {
        let m = build_model("bs:1:2").unwrap();
        let err = cayley_ball_with_budget(&m, 10, 100).unwrap_err();
        assert!(matches!(err, DistortionError::BudgetExceeded { budget: 100, .. }));
    }

    #[test]
    fn deterministic_order() {
        let m = build_model("lamp:2").unwrap();
        let a = cayley_ball(&m, 6).unwrap();
        let b = cayley_ball(&m, 6).unwrap();
        assert_eq!(a.elements, b.elements);
    }
}
