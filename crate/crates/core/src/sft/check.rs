use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::period::solver::{Goal, Limits, Model};
use crate::period::space::Space;

use super::{IVec, SftError, SftSpec};

/// Admissibility of finite patterns: no forbidden pattern sits entirely
/// inside the support, and every cell passes the links.
pub struct LocalChecker<'a> {
    spec: &'a SftSpec,
    // per layer: shape -> forbidden symbol tuples of that shape
    shapes: Vec<Vec<(Vec<IVec>, HashSet<Vec<u32>>)>>,
}

impl<'a> LocalChecker<'a> {
    pub fn new(spec: &'a SftSpec) -> Self {
        let shapes = spec
            .layers()
            .iter()
            .map(|l| {
                let mut by_shape: HashMap<Vec<IVec>, HashSet<Vec<u32>>> = HashMap::new();
                for p in l.forbidden() {
                    let shape: Vec<IVec> = p.cells().keys().cloned().collect();
                    by_shape.entry(shape).or_default().insert(p.cells().values().copied().collect());
                }
                let mut v: Vec<_> = by_shape.into_iter().collect();
                v.sort_by(|a, b| a.0.cmp(&b.0));
                v
            })
            .collect();
        LocalChecker { spec, shapes }
    }

    /// `cells` maps positions to full cell tuples.
    pub fn admissible(&self, cells: &BTreeMap<IVec, Vec<u32>>) -> bool {
        if !cells.values().all(|c| self.spec.cell_allowed(c)) {
            return false;
        }
        let mut buf = Vec::new();
        for (li, shapes) in self.shapes.iter().enumerate() {
            for (shape, tuples) in shapes {
                for anchor in cells.keys() {
                    let t = anchor.sub(&shape[0]);
                    buf.clear();
                    let inside = shape.iter().all(|o| match cells.get(&t.add(o)) {
                        Some(c) => {
                            buf.push(c[li]);
                            true
                        }
                        None => false,
                    });
                    if inside && tuples.contains(&buf[..]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeterminismMode {
    /// `a` at (i,j) and `b` at (i+1,j+1) fix `c` at (i+1,j).
    NorthWest,
    /// `a` at (i,j) and `b` at (i,j+1) fix `c` at (i+1,j).
    East,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinism {
    pub deterministic: bool,
    /// First violating context `(a, b)` with two completions `c1 < c2`.
    pub counterexample: Option<DetCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetCounterexample {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c1: Vec<u32>,
    pub c2: Vec<u32>,
}

/// At most one `c` per context extends to an admissible 2×2 block.
pub fn check_deterministic(sft: &SftSpec, mode: DeterminismMode) -> Result<Determinism, SftError> {
    if sft.dim() != 2 {
        return Err(SftError::DimensionMismatch { expected: 2, found: sft.dim() });
    }
    if sft.radius() > 1 {
        return Err(SftError::Unsupported(format!("determinism needs radius ≤ 1, spec has radius {}", sft.radius())));
    }
    // cells of the 2×2 box, first coordinate fastest
    let (ia, ib, ic) = match mode {
        DeterminismMode::NorthWest => (0, 3, 1),
        DeterminismMode::East => (0, 2, 1),
    };
    let model = Model::build(sft, &Space::Boxed { dims: vec![2, 2] });
    let limits = Limits { max_nodes: u64::MAX, deadline: None };
    let blocks = model.solve(&limits, Goal::All, &|_| true).solutions;
    let k = sft.arity();
    let cell = |b: &[u32], i: usize| b[i * k..(i + 1) * k].to_vec();
    let mut completions: BTreeMap<(Vec<u32>, Vec<u32>), BTreeSet<Vec<u32>>> = BTreeMap::new();
    for b in &blocks {
        completions.entry((cell(b, ia), cell(b, ib))).or_default().insert(cell(b, ic));
    }
    let counterexample = completions.into_iter().find(|(_, cs)| cs.len() > 1).map(|((a, b), cs)| {
        let mut it = cs.into_iter();
        DetCounterexample { a, b, c1: it.next().expect("two"), c2: it.next().expect("two") }
    });
    Ok(Determinism { deterministic: counterexample.is_none(), counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::{Alphabet, Pattern};

    #[test]
    fn one_symbol_is_deterministic() {
        let s = SftSpec::new(2, Alphabet::numeric(1), Vec::new()).unwrap();
        assert!(check_deterministic(&s, DeterminismMode::NorthWest).unwrap().deterministic);
    }

    #[test]
    fn two_symbol_full_shift_is_not() {
        let s = SftSpec::new(2, Alphabet::numeric(2), Vec::new()).unwrap();
        let d = check_deterministic(&s, DeterminismMode::East).unwrap();
        assert!(!d.deterministic);
        let cx = d.counterexample.unwrap();
        assert_eq!((cx.a, cx.b, cx.c1, cx.c2), (vec![0], vec![0], vec![0], vec![1]));
    }

    #[test]
    fn radius_two_rejected() {
        let p = Pattern::from_cells(&[([0, 0], 0), ([2, 0], 0)]);
        let s = SftSpec::new(2, Alphabet::numeric(2), vec![p]).unwrap();
        assert!(matches!(check_deterministic(&s, DeterminismMode::East), Err(SftError::Unsupported(_))));
    }

    #[test]
    fn copy_rule_is_east_deterministic() {
        // c at (i+1,j) must equal b at (i,j+1): anti-diagonal copy
        let mut pats = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                if x != y {
                    pats.push(Pattern::from_cells(&[([1, 0], x), ([0, 1], y)]));
                }
            }
        }
        let s = SftSpec::new(2, Alphabet::numeric(2), pats).unwrap();
        assert!(check_deterministic(&s, DeterminismMode::East).unwrap().deterministic);
        assert!(!check_deterministic(&s, DeterminismMode::NorthWest).unwrap().deterministic);
    }
}
