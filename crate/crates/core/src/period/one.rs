//! Single period vectors: configurations whose period group is `ℤ·(m, n)`.

use super::horizontal::chain_walk;
use super::report::{PeriodError, SearchBudget, StripWalk, Verdict, Witness, WitnessReport};
use super::strip::{self, StripGraph};
use crate::sft::{IVec, SftSpec};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Vectors `v` with `d·v = (m, n)` for some `d ≥ 2`.
pub(crate) fn proper_fractions(m: i64, n: i64) -> Vec<[i64; 2]> {
    let g = gcd(m, n);
    (2..=g).filter(|d| g % d == 0).map(|d| [m / d, n / d]).collect()
}

/// Orientation change bringing `(m, n)` into `m ≥ |n|`, `n ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Orientation {
    pub transpose: bool,
    pub reflect: bool,
    pub m: i64,
    pub n: i64,
}

pub(crate) fn orient(m: i64, n: i64) -> Orientation {
    let (mut a, mut b) = if m < 0 || (m == 0 && n < 0) { (-m, -n) } else { (m, n) };
    let transpose = b.abs() > a;
    if transpose {
        (a, b) = (b, a);
        if a < 0 {
            (a, b) = (-a, -b);
        }
    }
    let reflect = b < 0;
    if reflect {
        b = -b;
    }
    Orientation { transpose, reflect, m: a, n: b }
}

impl Orientation {
    pub fn apply(&self, p: [i64; 2]) -> [i64; 2] {
        let [mut x, mut y] = p;
        if self.transpose {
            std::mem::swap(&mut x, &mut y);
        }
        if self.reflect {
            x = -x;
        }
        [x, y]
    }

    pub fn spec(&self, sft: &SftSpec) -> Result<SftSpec, PeriodError> {
        if !self.transpose && !self.reflect {
            return Ok(sft.clone());
        }
        Ok(sft.map_patterns(2, |v| {
            let [x, y] = self.apply([v.coords()[0], v.coords()[1]]);
            IVec::new(vec![x, y])
        })?)
    }
}

/// Is `(m, n)` the only period direction of some configuration, with
/// period group exactly `ℤ·(m, n)`?
pub fn one_period(sft: &SftSpec, m: i64, n: i64, budget: &SearchBudget) -> Result<WitnessReport, PeriodError> {
    if sft.dim() != 2 {
        return Err(PeriodError::InvalidArgument(format!("period vectors need dimension 2, spec has {}", sft.dim())));
    }
    if (m, n) == (0, 0) {
        return Err(PeriodError::InvalidArgument("period vector must be nonzero".into()));
    }
    budget.validate()?;
    let o = orient(m, n);
    let spec = o.spec(sft)?;
    let mut clock = budget.start();
    let g = match strip::build_with(&spec, o.m, o.n, &mut clock) {
        Ok(g) => g,
        Err(PeriodError::BudgetExhausted { .. }) => return Ok(clock.report(Verdict::Unknown, None)),
        Err(e) => return Err(e),
    };
    let fr = proper_fractions(o.m, o.n);
    let masks: Vec<u32> = (0..g.vertex_count())
        .map(|v| fr.iter().enumerate().filter(|(_, &f)| !g.is_periodic_under(v, f)).fold(0, |a, (b, _)| a | 1 << b))
        .collect();
    Ok(match chain_walk(&g, &masks, (1u32 << fr.len()) - 1, true) {
        Some((u, i, j)) => {
            debug_assert!(check_one_period_walk(&g, &u));
            let walk = StripWalk {
                m: o.m,
                n: o.n,
                r: g.r(),
                arity: g.arity(),
                transpose: o.transpose,
                reflect: o.reflect,
                strips: u.iter().map(|&v| g.vertex(v).to_vec()).collect(),
                i,
                j,
            };
            clock.report(Verdict::Yes, Some(Witness::Walk(walk)))
        }
        None => clock.report(Verdict::No, None),
    })
}

/// The four walk conditions, read literally: `u` is a path of `g` with
/// some `i < k` where `u_i = u_0` and `u_{i+1} ≠ u_1`, some `i ≤ j < k`
/// with `u_j = u_k`, and for every `v` with `d·v = (m, n)`, `d ≥ 2`, some
/// `u_l` that is not `v`-periodic.
pub fn check_one_period_walk(g: &StripGraph, u: &[usize]) -> bool {
    if u.len() < 2 || u.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    if !u.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return false;
    }
    let k = u.len() - 1;
    let shape = (1..k).any(|i| u[i] == u[0] && u[i + 1] != u[1] && (i..k).any(|j| u[j] == u[k]));
    shape && proper_fractions(g.m(), g.n()).iter().all(|&f| u.iter().any(|&v| !g.is_periodic_under(v, f)))
}

/// Re-check a walk witness of [`one_period`] against a freshly built graph.
pub fn verify_one_period_walk(sft: &SftSpec, w: &StripWalk, budget: &SearchBudget) -> Result<bool, PeriodError> {
    let o = Orientation { transpose: w.transpose, reflect: w.reflect, m: w.m, n: w.n };
    let g = strip::build_strip_graph(&o.spec(sft)?, w.m, w.n, budget)?;
    let u: Option<Vec<usize>> = w.strips.iter().map(|s| g.find(s)).collect();
    Ok(u.is_some_and(|u| {
        let k = u.len() - 1;
        check_one_period_walk(&g, &u) && w.i < k && u[w.i] == u[0] && w.i <= w.j && w.j < k && u[w.j] == u[k]
    }))
}
