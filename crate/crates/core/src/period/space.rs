//! Finite cell sets the solver runs on.

/// A finite set of cells with a rule for folding positions of ℤ^d onto it.
#[derive(Clone, Debug)]
pub(crate) enum Space {
    /// ℤ^d modulo a full-rank lattice given by upper-triangular rows with
    /// positive pivots. Cells are the box `∏ [0, h_jj)`, first coordinate
    /// fastest; a diagonal lattice is an ordinary torus.
    Lattice { rows: Vec<Vec<i64>> },
    /// `{ lo ≤ −n·x + m·y < hi }` modulo `(m, n)`, two-dimensional.
    /// Column `x ∈ [0, m)` holds `(hi − lo)/m` consecutive cells.
    Band { m: i64, n: i64, lo: i64, hi: i64 },
    /// A box without wraparound.
    Boxed { dims: Vec<usize> },
}

impl Space {
    pub(crate) fn torus(dims: &[usize]) -> Space {
        let d = dims.len();
        let rows = (0..d).map(|i| (0..d).map(|j| if i == j { dims[i] as i64 } else { 0 }).collect()).collect();
        Space::Lattice { rows }
    }

    pub(crate) fn dim(&self) -> usize {
        match self {
            Space::Lattice { rows } => rows.len(),
            Space::Band { .. } => 2,
            Space::Boxed { dims } => dims.len(),
        }
    }

    pub(crate) fn cell_count(&self) -> usize {
        match self {
            Space::Lattice { rows } => rows.iter().enumerate().map(|(i, r)| r[i] as usize).product(),
            Space::Band { m, lo, hi, .. } => ((hi - lo) / m * m) as usize,
            Space::Boxed { dims } => dims.iter().product(),
        }
    }

    fn band_height(m: i64, lo: i64, hi: i64) -> i64 {
        (hi - lo) / m
    }

    /// Lowest `y` of column `x` inside the band.
    pub(crate) fn band_ymin(m: i64, n: i64, lo: i64, x: i64) -> i64 {
        (lo + n * x).div_euclid(m) + ((lo + n * x).rem_euclid(m) != 0) as i64
    }

    pub(crate) fn locate(&self, p: &[i64]) -> Option<usize> {
        match self {
            Space::Lattice { rows } => {
                let mut z = p.to_vec();
                for (j, row) in rows.iter().enumerate() {
                    let q = z[j].div_euclid(row[j]);
                    if q != 0 {
                        for (zk, rk) in z.iter_mut().zip(row) {
                            *zk -= q * rk;
                        }
                    }
                }
                let mut idx = 0usize;
                let mut stride = 1usize;
                for (j, row) in rows.iter().enumerate() {
                    idx += z[j] as usize * stride;
                    stride *= row[j] as usize;
                }
                Some(idx)
            }
            &Space::Band { m, n, lo, hi } => {
                let q = p[0].div_euclid(m);
                let x = p[0] - q * m;
                let y = p[1] - q * n;
                let h = -n * x + m * y;
                if h < lo || h >= hi {
                    return None;
                }
                let off = y - Self::band_ymin(m, n, lo, x);
                Some((x * Self::band_height(m, lo, hi) + off) as usize)
            }
            Space::Boxed { dims } => {
                let mut idx = 0usize;
                let mut stride = 1usize;
                for (&c, &n) in p.iter().zip(dims) {
                    if c < 0 || c >= n as i64 {
                        return None;
                    }
                    idx += c as usize * stride;
                    stride *= n;
                }
                Some(idx)
            }
        }
    }

    /// Representative position of a cell.
    pub(crate) fn position(&self, mut cell: usize) -> Vec<i64> {
        match self {
            Space::Lattice { rows } => (0..rows.len())
                .map(|j| {
                    let n = rows[j][j] as usize;
                    let c = cell % n;
                    cell /= n;
                    c as i64
                })
                .collect(),
            &Space::Band { m, n, lo, hi } => {
                let h = Self::band_height(m, lo, hi) as usize;
                let x = (cell / h) as i64;
                vec![x, Self::band_ymin(m, n, lo, x) + (cell % h) as i64]
            }
            Space::Boxed { dims } => dims
                .iter()
                .map(|&n| {
                    let c = cell % n;
                    cell /= n;
                    c as i64
                })
                .collect(),
        }
    }

    /// Anchor positions covering every placement of a pattern whose
    /// canonical support lies in `[0, reach]^d`, one per placement class.
    pub(crate) fn anchors(&self, reach: usize) -> Vec<Vec<i64>> {
        let r = reach as i64;
        match self {
            Space::Lattice { .. } => (0..self.cell_count()).map(|c| self.position(c)).collect(),
            &Space::Band { m, n, lo, hi } => {
                let mut out = Vec::new();
                for x in 0..m {
                    let y0 = (lo - m * r + n * x).div_euclid(m) - 1;
                    let y1 = (hi + n.abs() * r + n * x).div_euclid(m) + 1;
                    for y in y0..=y1 {
                        out.push(vec![x, y]);
                    }
                }
                out
            }
            Space::Boxed { dims } => {
                let mut out = vec![Vec::new()];
                for &n in dims {
                    let mut next = Vec::new();
                    for p in &out {
                        for c in -r..n as i64 {
                            let mut q = p.clone();
                            q.push(c);
                            next.push(q);
                        }
                    }
                    out = next;
                }
                out
            }
        }
    }
}
