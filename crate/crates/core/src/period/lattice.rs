use std::fmt;

use crate::sft::TorusConfig;

/// A subgroup of ℤ^d stored by its row Hermite normal form: rows are
/// upper triangular, pivots positive, entries above a pivot reduced into
/// `[0, pivot)`. Two groups are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodGroup {
    dim: usize,
    basis: Vec<Vec<i64>>,
}

impl PeriodGroup {
    pub fn from_generators(dim: usize, gens: &[Vec<i64>]) -> Self {
        PeriodGroup { dim, basis: hnf(dim, gens) }
    }

    /// `p·ℤ^d`.
    pub fn scaled(dim: usize, p: i64) -> Self {
        let gens: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { p } else { 0 }).collect()).collect();
        Self::from_generators(dim, &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Index in ℤ^d (number of cosets) when the rank is full.
    pub fn index(&self) -> Option<u64> {
        (self.rank() == self.dim).then(|| self.basis.iter().enumerate().map(|(i, r)| r[i] as u64).product())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        for row in &self.basis {
            let c = pivot(row).expect("nonzero row");
            if v[c] % row[c] != 0 {
                return false;
            }
            let q = v[c] / row[c];
            for (a, b) in v.iter_mut().zip(row) {
                *a -= q * b;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Whether the group is contained in `other`.
    pub fn is_subgroup_of(&self, other: &PeriodGroup) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }
}

impl fmt::Display for PeriodGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.basis.iter().map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

fn pivot(row: &[i64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

fn hnf(dim: usize, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let mut r = 0;
    for col in 0..dim {
        loop {
            let best = (r..rows.len()).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].abs());
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col] / rows[r][col];
                    let pr = rows[r].clone();
                    for (a, p) in rows[i].iter_mut().zip(&pr) {
                        *a -= q * p;
                    }
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && rows[r][col] != 0 {
            if rows[r][col] < 0 {
                rows[r].iter_mut().for_each(|x| *x = -*x);
            }
            let pr = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                let q = row[col].div_euclid(pr[col]);
                for (a, p) in row.iter_mut().zip(&pr) {
                    *a -= q * p;
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Whether translating `config` by `v` leaves it unchanged.
pub(crate) fn fixes(config: &TorusConfig, v: &[i64]) -> bool {
    let mut z = vec![0i64; config.dim()];
    (0..config.len()).all(|i| {
        let p = config.position(i);
        for (k, zk) in z.iter_mut().enumerate() {
            *zk = p[k] + v[k];
        }
        config.get(&z) == config.cell(i)
    })
}

/// All nonzero translations of the fundamental box.
pub(crate) fn box_translations(dims: &[usize]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let n: usize = dims.iter().product();
    (1..n).map(move |mut i| {
        dims.iter()
            .map(|&d| {
                let c = i % d;
                i /= d;
                c as i64
            })
            .collect()
    })
}

/// Group of translations fixing the periodic extension of `config`.
pub fn stabilizer(config: &TorusConfig) -> PeriodGroup {
    let d = config.dim();
    let mut gens: Vec<Vec<i64>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { config.dims()[i] as i64 } else { 0 }).collect()).collect();
    gens.extend(box_translations(config.dims()).filter(|v| fixes(config, v)));
    PeriodGroup::from_generators(d, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let a = PeriodGroup::from_generators(2, &[vec![1, 1], vec![2, 0]]);
        assert_eq!(a.basis(), &[vec![1, 1], vec![0, 2]]);
        let b = PeriodGroup::from_generators(2, &[vec![3, 1], vec![-1, -1], vec![4, 4]]);
        assert_eq!(a, b);
        assert_eq!(a.index(), Some(2));
        assert!(a.contains(&[5, 3]) && !a.contains(&[1, 0]));
        let rank1 = PeriodGroup::from_generators(2, &[vec![2, 4], vec![-3, -6]]);
        assert_eq!(rank1.basis(), &[vec![1, 2]]);
        assert!(rank1.contains(&[-2, -4]) && !rank1.contains(&[0, 2]));
    }

    #[test]
    fn stabilizers_of_small_tori() {
        let u = TorusConfig::plain(vec![3, 3], vec![0; 9]).unwrap();
        assert_eq!(stabilizer(&u), PeriodGroup::scaled(2, 1));
        let ab = TorusConfig::plain(vec![2], vec![0, 1]).unwrap();
        assert_eq!(stabilizer(&ab), PeriodGroup::scaled(1, 2));
        let cb = TorusConfig::plain(vec![2, 2], vec![0, 1, 1, 0]).unwrap();
        // the four translations of the 2×2 box, tested one by one
        let fixing: Vec<Vec<i64>> = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]
            .into_iter()
            .filter(|v| (0..4).all(|i| cb.get(&cb.position(i).iter().zip(v).map(|(a, b)| a + b).collect::<Vec<_>>()) == cb.cell(i)))
            .collect();
        assert_eq!(fixing, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(stabilizer(&cb), PeriodGroup::from_generators(2, &[vec![1, 1], vec![2, 0]]));
    }
}
