use std::collections::BTreeMap;
use std::fmt;

use super::SftError;

/// Integer vector in ℤ^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IVec(Vec<i64>);

impl IVec {
    pub fn new(coords: Vec<i64>) -> Self {
        IVec(coords)
    }

    pub fn zero(dim: usize) -> Self {
        IVec(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &IVec) -> IVec {
        IVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IVec) -> IVec {
        IVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for IVec {
    fn from(v: Vec<i64>) -> Self {
        IVec(v)
    }
}

impl From<&[i64]> for IVec {
    fn from(v: &[i64]) -> Self {
        IVec(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for IVec {
    fn from(v: [i64; N]) -> Self {
        IVec(v.to_vec())
    }
}

impl fmt::Display for IVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite map from positions to symbol indices of one alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    dim: usize,
    cells: BTreeMap<IVec, u32>,
}

impl Pattern {
    pub fn new<I>(dim: usize, cells: I) -> Result<Self, SftError>
    where
        I: IntoIterator<Item = (IVec, u32)>,
    {
        let mut map = BTreeMap::new();
        for (pos, sym) in cells {
            if pos.dim() != dim {
                return Err(SftError::DimensionMismatch { expected: dim, found: pos.dim() });
            }
            if let Some(old) = map.insert(pos.clone(), sym) {
                if old != sym {
                    return Err(SftError::ConflictingCell(pos.to_string()));
                }
            }
        }
        if map.is_empty() {
            return Err(SftError::EmptyPattern);
        }
        Ok(Pattern { dim, cells: map })
    }

    /// Build from `(coords, symbol)` pairs; panics on malformed input.
    pub fn from_cells<const N: usize>(cells: &[([i64; N], u32)]) -> Self {
        Self::new(N, cells.iter().map(|(p, s)| (IVec::from(*p), *s))).expect("well-formed pattern")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &BTreeMap<IVec, u32> {
        &self.cells
    }

    pub fn get(&self, pos: &IVec) -> Option<u32> {
        self.cells.get(pos).copied()
    }

    /// Coordinate-wise minimum of the support.
    pub fn min_corner(&self) -> IVec {
        let mut m = vec![i64::MAX; self.dim];
        for p in self.cells.keys() {
            for (a, &b) in m.iter_mut().zip(p.coords()) {
                *a = (*a).min(b);
            }
        }
        IVec(m)
    }

    pub fn translate(&self, v: &IVec) -> Pattern {
        Pattern {
            dim: self.dim,
            cells: self.cells.iter().map(|(p, &s)| (p.add(v), s)).collect(),
        }
    }

    /// Translate so the support minimum sits at the origin.
    pub fn canonical(&self) -> Pattern {
        let m = self.min_corner();
        self.translate(&IVec(m.0.iter().map(|c| -c).collect()))
    }

    /// Largest coordinate of the canonical form: the smallest `r` with the
    /// canonical support inside `[0, r]^d`.
    pub fn extent(&self) -> usize {
        let m = self.min_corner();
        self.cells
            .keys()
            .flat_map(|p| p.coords().iter().zip(m.coords()).map(|(a, b)| (a - b) as usize))
            .max()
            .unwrap_or(0)
    }

    /// Apply a position map; the result is not canonicalized.
    pub fn map_positions(&self, f: impl Fn(&IVec) -> IVec) -> Result<Pattern, SftError> {
        let cells: Vec<_> = self.cells.iter().map(|(p, &s)| (f(p), s)).collect();
        let dim = cells[0].0.dim();
        Pattern::new(dim, cells)
    }

    pub fn map_symbols(&self, f: impl Fn(u32) -> u32) -> Pattern {
        Pattern { dim: self.dim, cells: self.cells.iter().map(|(p, &s)| (p.clone(), f(s))).collect() }
    }
}

/// All `v` with `v + support(small) ⊆ support(big)` and matching symbols,
/// in increasing order.
pub fn pattern_occurs(small: &Pattern, big: &Pattern) -> Result<Vec<IVec>, SftError> {
    if small.dim != big.dim {
        return Err(SftError::DimensionMismatch { expected: big.dim, found: small.dim });
    }
    let (p0, s0) = small.cells.iter().next().expect("patterns are non-empty");
    let mut out = Vec::new();
    for (q, &t) in &big.cells {
        if t != *s0 {
            continue;
        }
        let v = q.sub(p0);
        if small.cells.iter().all(|(p, &s)| big.cells.get(&p.add(&v)) == Some(&s)) {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}
