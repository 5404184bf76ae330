use std::collections::HashMap;

use super::{IVec, SftError, SftSpec};

/// Filling of an `n₁ × … × n_d` box, read with wraparound.
///
/// Cells are stored with the first coordinate varying fastest; each cell
/// holds `arity` symbols, one per layer of the spec it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusConfig {
    dims: Vec<usize>,
    arity: usize,
    cells: Vec<u32>,
}

impl TorusConfig {
    pub fn new(dims: Vec<usize>, arity: usize, cells: Vec<u32>) -> Result<Self, SftError> {
        if dims.is_empty() || dims.contains(&0) || arity == 0 {
            return Err(SftError::Mismatch("dimensions must be positive".into()));
        }
        let n: usize = dims.iter().product();
        if cells.len() != n * arity {
            return Err(SftError::Mismatch(format!("expected {} symbols, found {}", n * arity, cells.len())));
        }
        Ok(TorusConfig { dims, arity, cells })
    }

    /// Single-layer configuration.
    pub fn plain(dims: Vec<usize>, cells: Vec<u32>) -> Result<Self, SftError> {
        Self::new(dims, 1, cells)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.cells.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Raw symbol storage, `arity` entries per cell.
    pub fn raw(&self) -> &[u32] {
        &self.cells
    }

    pub fn index_of(&self, pos: &[i64]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (&p, &n) in pos.iter().zip(&self.dims) {
            idx += p.rem_euclid(n as i64) as usize * stride;
            stride *= n;
        }
        idx
    }

    pub fn position(&self, mut idx: usize) -> Vec<i64> {
        self.dims
            .iter()
            .map(|&n| {
                let c = idx % n;
                idx /= n;
                c as i64
            })
            .collect()
    }

    pub fn cell(&self, idx: usize) -> &[u32] {
        &self.cells[idx * self.arity..(idx + 1) * self.arity]
    }

    pub fn get(&self, pos: &[i64]) -> &[u32] {
        self.cell(self.index_of(pos))
    }

    /// Configuration `c'` with `c'(z) = c(z + v)`.
    pub fn shifted(&self, v: &[i64]) -> TorusConfig {
        let mut cells = Vec::with_capacity(self.cells.len());
        let mut z = vec![0i64; self.dims.len()];
        for i in 0..self.len() {
            let p = self.position(i);
            for (k, zk) in z.iter_mut().enumerate() {
                *zk = p[k] + v[k];
            }
            cells.extend_from_slice(self.get(&z));
        }
        TorusConfig { dims: self.dims.clone(), arity: self.arity, cells }
    }

    /// Projection onto one layer.
    pub fn layer(&self, layer: usize) -> TorusConfig {
        let cells = self.cells.chunks(self.arity).map(|c| c[layer]).collect();
        TorusConfig { dims: self.dims.clone(), arity: 1, cells }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// Global forbidden-pattern index (see [`SftSpec::pattern`]).
    Pattern(usize),
    /// Index into [`SftSpec::links`]; the cell tuple is not allowed.
    Link(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub position: IVec,
    pub kind: ViolationKind,
}

/// Every placement of a forbidden pattern in the periodic extension of
/// `config`, plus every cell whose tuple breaks a link. Sorted.
pub fn is_locally_valid(config: &TorusConfig, sft: &SftSpec) -> Result<Vec<Violation>, SftError> {
    if config.dim() != sft.dim() {
        return Err(SftError::DimensionMismatch { expected: sft.dim(), found: config.dim() });
    }
    if config.arity != sft.arity() {
        return Err(SftError::Mismatch(format!("{} layers in config, {} in spec", config.arity, sft.arity())));
    }
    for c in config.cells.chunks(config.arity) {
        for (l, &s) in c.iter().enumerate() {
            let size = sft.layers()[l].alphabet().len();
            if s as usize >= size {
                return Err(SftError::SymbolOutOfRange { index: s, size });
            }
        }
    }
    let mut out = Vec::new();
    let n = config.len();
    let positions: Vec<Vec<i64>> = (0..n).map(|i| config.position(i)).collect();
    for (li, layer) in sft.layers().iter().enumerate() {
        let base = sft.pattern_offset(li);
        // group by first cell (offset, symbol) to skip most placements early
        let mut groups: HashMap<(&IVec, u32), Vec<usize>> = HashMap::new();
        for (pi, p) in layer.forbidden().iter().enumerate() {
            let (o, &s) = p.cells().iter().next().expect("non-empty");
            groups.entry((o, s)).or_default().push(pi);
        }
        let mut z = vec![0i64; config.dim()];
        for ((o, s0), pats) in &groups {
            for pos in &positions {
                for (k, zk) in z.iter_mut().enumerate() {
                    *zk = pos[k] + o.coords()[k];
                }
                if config.get(&z)[li] != *s0 {
                    continue;
                }
                for &pi in pats {
                    let hit = layer.forbidden()[pi].cells().iter().all(|(q, &s)| {
                        for (k, zk) in z.iter_mut().enumerate() {
                            *zk = pos[k] + q.coords()[k];
                        }
                        config.get(&z)[li] == s
                    });
                    if hit {
                        out.push(Violation { position: IVec::new(pos.clone()), kind: ViolationKind::Pattern(base + pi) });
                    }
                }
            }
        }
    }
    for (ki, link) in sft.links().iter().enumerate() {
        for (i, pos) in positions.iter().enumerate() {
            if !link.permits(config.cell(i)) {
                out.push(Violation { position: IVec::new(pos.clone()), kind: ViolationKind::Link(ki) });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::{Alphabet, Pattern};

    #[test]
    fn self_wrap_violation() {
        let s = SftSpec::new(1, Alphabet::new(["a", "b"]).unwrap(), vec![Pattern::from_cells(&[([0], 0), ([1], 0)])]).unwrap();
        let c = TorusConfig::plain(vec![1], vec![0]).unwrap();
        let v = is_locally_valid(&c, &s).unwrap();
        assert_eq!(v, vec![Violation { position: IVec::from([0]), kind: ViolationKind::Pattern(0) }]);
    }

    #[test]
    fn checkerboard_has_no_monochrome_dominoes() {
        let pats = (0..2)
            .flat_map(|a| [Pattern::from_cells(&[([0, 0], a), ([1, 0], a)]), Pattern::from_cells(&[([0, 0], a), ([0, 1], a)])])
            .collect();
        let s = SftSpec::new(2, Alphabet::numeric(2), pats).unwrap();
        let c = TorusConfig::plain(vec![2, 2], vec![0, 1, 1, 0]).unwrap();
        assert!(is_locally_valid(&c, &s).unwrap().is_empty());
        let u = TorusConfig::plain(vec![2, 2], vec![0, 0, 1, 1]).unwrap();
        assert_eq!(is_locally_valid(&u, &s).unwrap().len(), 4);
    }

    #[test]
    fn index_position_roundtrip() {
        let c = TorusConfig::plain(vec![3, 2], vec![0; 6]).unwrap();
        for i in 0..6 {
            assert_eq!(c.index_of(&c.position(i)), i);
        }
        assert_eq!(c.index_of(&[-1, 3]), 2 + 3);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let s = SftSpec::new(1, Alphabet::numeric(2), Vec::new()).unwrap();
        let c = TorusConfig::plain(vec![2], vec![0, 5]).unwrap();
        assert!(is_locally_valid(&c, &s).is_err());
    }
}
