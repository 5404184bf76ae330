//! Reflected `n`-ary Gray code on `[0, n)^d`.

/// Bijection between `[0, n^d)` and `[0, n)^d` in which consecutive indices
/// land on neighbouring points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrayFold {
    n: u64,
    d: usize,
}

pub fn gray_fold(n: u64, d: usize) -> Result<GrayFold, crate::sft::SftError> {
    if n == 0 || d == 0 {
        return Err(crate::sft::SftError::Unsupported("gray folding needs n ≥ 1 and d ≥ 1".into()));
    }
    if n.checked_pow(d as u32).is_none() {
        return Err(crate::sft::SftError::Unsupported(format!("{n}^{d} does not fit 64 bits")));
    }
    Ok(GrayFold { n, d })
}

impl GrayFold {
    pub fn len(&self) -> u64 {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digits `t_i` of `t` in base `n` (least significant first) become
    /// `a_i = t_i` when `⌊t / n^{i+1}⌋` is even and `n − 1 − t_i` otherwise.
    /// For odd `n` the parity of `⌊t / n^{i+1}⌋` is the parity of
    /// `Σ_{j>i} t_j`; for even `n` only `t_{i+1}` matters.
    pub fn index_to_coord(&self, t: u64) -> Vec<u64> {
        assert!(t < self.len(), "index {t} out of range");
        let mut out = Vec::with_capacity(self.d);
        let mut rest = t;
        for _ in 0..self.d {
            let digit = rest % self.n;
            rest /= self.n;
            out.push(if rest.is_multiple_of(2) { digit } else { self.n - 1 - digit });
        }
        out
    }

    pub fn coord_to_index(&self, a: &[u64]) -> u64 {
        assert_eq!(a.len(), self.d, "coordinate dimension");
        let mut t = 0u64;
        for &x in a.iter().rev() {
            assert!(x < self.n, "coordinate out of range");
            let digit = if t.is_multiple_of(2) { x } else { self.n - 1 - x };
            t = t * self.n + digit;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let g = gray_fold(5, 1).unwrap();
        assert!((0..5).all(|t| g.index_to_coord(t) == vec![t]));
        let g = gray_fold(2, 2).unwrap();
        let order: Vec<Vec<u64>> = (0..4).map(|t| g.index_to_coord(t)).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert!(gray_fold(0, 2).is_err());
        // the digit-sum rule and the quotient rule agree for odd n
        let g = gray_fold(3, 3).unwrap();
        for t in 0..g.len() {
            let digits = [t % 3, t / 3 % 3, t / 9];
            let by_sum: Vec<u64> = (0..3)
                .map(|i| if digits[i + 1..].iter().sum::<u64>() % 2 == 0 { digits[i] } else { 2 - digits[i] })
                .collect();
            assert_eq!(g.index_to_coord(t), by_sum);
        }
    }

    #[test]
    fn unit_steps() {
        for (n, d) in [(2, 3), (3, 2), (4, 2)] {
            let g = gray_fold(n, d).unwrap();
            for t in 0..g.len() - 1 {
                let (a, b) = (g.index_to_coord(t), g.index_to_coord(t + 1));
                let diff: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x.abs_diff(*y)).collect();
                assert_eq!(diff.iter().sum::<u64>(), 1, "n={n} d={d} t={t}");
            }
        }
    }

    proptest! {
        #[test]
        fn inverse(n in 1u64..6, d in 1usize..5, seed in 0u64..10_000) {
            let g = gray_fold(n, d).unwrap();
            let t = seed % g.len();
            prop_assert_eq!(g.coord_to_index(&g.index_to_coord(t)), t);
        }
    }
}
