//! Searches over tori and lattice quotients.

use super::lattice::PeriodGroup;
use super::report::{PeriodError, SearchBudget, Verdict, Witness, WitnessReport};
use super::solver::{Goal, Model};
use super::space::Space;
use crate::sft::{Alphabet, Pattern, SftSpec, TorusConfig};

#[derive(Clone, Debug)]
pub struct TorusEnumeration {
    /// Valid configurations in lexicographic cell order.
    pub configs: Vec<TorusConfig>,
    /// False when the budget cut the search short; `configs` is then
    /// only part of the answer.
    pub complete: bool,
    pub nodes: u64,
}

fn check_dims(sft: &SftSpec, dims: &[usize]) -> Result<(), PeriodError> {
    if dims.len() != sft.dim() || dims.contains(&0) {
        return Err(PeriodError::InvalidArgument(format!(
            "torus needs {} positive sizes, got {:?}",
            sft.dim(),
            dims
        )));
    }
    Ok(())
}

pub fn enumerate_torus(sft: &SftSpec, dims: &[usize], budget: &SearchBudget) -> Result<TorusEnumeration, PeriodError> {
    check_dims(sft, dims)?;
    budget.validate()?;
    let mut clock = budget.start();
    let out = Model::build(sft, &Space::torus(dims)).solve(&clock.limits(), Goal::All, &|_| true);
    clock.spent(out.nodes);
    let configs = out
        .solutions
        .into_iter()
        .map(|c| TorusConfig::new(dims.to_vec(), sft.arity(), c).expect("solver output fits the torus"))
        .collect();
    Ok(TorusEnumeration { configs, complete: out.complete, nodes: clock.used })
}

fn first_in(sft: &SftSpec, dims: &[usize], space: Space, pins: &[Pin], budget: &SearchBudget) -> Result<Option<TorusConfig>, PeriodError> {
    check_dims(sft, dims)?;
    budget.validate()?;
    let mut model = Model::build(sft, &space);
    let cells: usize = dims.iter().product();
    for pin in pins {
        if pin.cell.len() != dims.len() || pin.cell.iter().zip(dims).any(|(&c, &d)| c >= d) || pin.layer >= sft.arity() {
            return Err(PeriodError::InvalidArgument(format!("pin {:?} outside the {:?} box", pin.cell, dims)));
        }
        let mut idx = 0;
        for (&c, &d) in pin.cell.iter().zip(dims).rev() {
            idx = idx * d + c;
        }
        debug_assert!(idx < cells);
        model.restrict(idx * sft.arity() + pin.layer, &pin.symbols);
    }
    let mut clock = budget.start();
    let out = model.solve(&clock.limits(), Goal::First, &|_| true);
    clock.spent(out.nodes);
    match out.solutions.into_iter().next() {
        Some(c) => Ok(Some(TorusConfig::new(dims.to_vec(), sft.arity(), c)?)),
        None if out.complete => Ok(None),
        None => Err(PeriodError::BudgetExhausted { nodes: clock.used }),
    }
}

/// Restriction of one cell's layer to a set of symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pin {
    pub cell: Vec<usize>,
    pub layer: usize,
    pub symbols: Vec<u32>,
}

/// Some admissible filling of a box (no wraparound), stored in a
/// [`TorusConfig`] grid of the same shape. `None` when no filling exists.
pub fn find_patch(sft: &SftSpec, dims: &[usize], budget: &SearchBudget) -> Result<Option<TorusConfig>, PeriodError> {
    first_in(sft, dims, Space::Boxed { dims: dims.to_vec() }, &[], budget)
}

/// The first valid torus in lexicographic cell order, `None` when there is
/// none.
pub fn find_torus(sft: &SftSpec, dims: &[usize], budget: &SearchBudget) -> Result<Option<TorusConfig>, PeriodError> {
    first_in(sft, dims, Space::torus(dims), &[], budget)
}

/// [`find_torus`] among the tori whose pinned cells carry one of the given
/// symbols. Pinning a cell that every valid torus has up to translation
/// removes the translates from the search.
pub fn find_torus_pinned(sft: &SftSpec, dims: &[usize], pins: &[Pin], budget: &SearchBudget) -> Result<Option<TorusConfig>, PeriodError> {
    first_in(sft, dims, Space::torus(dims), pins, budget)
}

/// Whether some nonzero translation of the box fixes the raw cells.
fn has_symmetry(dims: &[usize], arity: usize, cells: &[u32]) -> bool {
    let n: usize = dims.iter().product();
    let mut strides = Vec::with_capacity(dims.len());
    let mut s = 1;
    for &d in dims {
        strides.push(s);
        s *= d;
    }
    let mut pos = vec![0usize; dims.len()];
    super::lattice::box_translations(dims).any(|v| {
        (0..n).all(|i| {
            let mut rest = i;
            for (k, p) in pos.iter_mut().enumerate() {
                *p = rest % dims[k];
                rest /= dims[k];
            }
            let j: usize = pos.iter().enumerate().map(|(k, &p)| (p + v[k] as usize) % dims[k] * strides[k]).sum();
            cells[i * arity..(i + 1) * arity] == cells[j * arity..(j + 1) * arity]
        })
    })
}

/// Whether the raw cells are strictly smaller than every nontrivial translate.
fn is_lex_least(dims: &[usize], arity: usize, cells: &[u32]) -> bool {
    let n: usize = dims.iter().product();
    let mut strides = Vec::with_capacity(dims.len());
    let mut s = 1;
    for &d in dims {
        strides.push(s);
        s *= d;
    }
    let mut pos = vec![0usize; dims.len()];
    super::lattice::box_translations(dims).all(|v| {
        for i in 0..n {
            let mut rest = i;
            for (k, p) in pos.iter_mut().enumerate() {
                *p = rest % dims[k];
                rest /= dims[k];
            }
            let j: usize = pos.iter().enumerate().map(|(k, &p)| (p + v[k] as usize) % dims[k] * strides[k]).sum();
            match cells[i * arity..(i + 1) * arity].cmp(&cells[j * arity..(j + 1) * arity]) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
        false
    })
}

/// Yes when some `p^d` torus has stabilizer exactly `pℤ^d`.
pub fn strong_period_exists(sft: &SftSpec, p: usize, budget: &SearchBudget) -> Result<WitnessReport, PeriodError> {
    if p == 0 {
        return Err(PeriodError::InvalidArgument("period must be at least 1".into()));
    }
    budget.validate()?;
    let dims = vec![p; sft.dim()];
    let arity = sft.arity();
    let mut clock = budget.start();
    let out = Model::build(sft, &Space::torus(&dims)).solve(&clock.limits(), Goal::First, &|c| !has_symmetry(&dims, arity, c));
    clock.spent(out.nodes);
    Ok(match out.solutions.into_iter().next() {
        Some(c) => {
            let t = TorusConfig::new(dims, arity, c).expect("solver output fits the torus");
            clock.report(Verdict::Yes, Some(Witness::Torus(t)))
        }
        None if out.complete => clock.report(Verdict::No, None),
        None => clock.report(Verdict::Unknown, None),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CountMode {
    /// Tori with trivial stabilizer, divided by `p^d`.
    #[default]
    Stabilizer,
    /// Tori strictly smaller than each of their nontrivial translates.
    LexMin,
}

/// Number of orbits of configurations whose period group is exactly `pℤ^d`.
pub fn count_strong(sft: &SftSpec, p: usize, budget: &SearchBudget) -> Result<u64, PeriodError> {
    count_strong_with(sft, p, CountMode::Stabilizer, budget)
}

pub fn count_strong_with(sft: &SftSpec, p: usize, mode: CountMode, budget: &SearchBudget) -> Result<u64, PeriodError> {
    if p == 0 {
        return Err(PeriodError::InvalidArgument("period must be at least 1".into()));
    }
    budget.validate()?;
    let dims = vec![p; sft.dim()];
    let arity = sft.arity();
    let mut clock = budget.start();
    let model = Model::build(sft, &Space::torus(&dims));
    let out = match mode {
        CountMode::Stabilizer => model.solve(&clock.limits(), Goal::Count, &|c| !has_symmetry(&dims, arity, c)),
        CountMode::LexMin => model.solve(&clock.limits(), Goal::Count, &|c| is_lex_least(&dims, arity, c)),
    };
    clock.spent(out.nodes);
    if !out.complete {
        return Err(PeriodError::BudgetExhausted { nodes: clock.used });
    }
    Ok(match mode {
        CountMode::Stabilizer => {
            let orbit = (p as u64).pow(sft.dim() as u32);
            debug_assert_eq!(out.count % orbit, 0);
            out.count / orbit
        }
        CountMode::LexMin => out.count,
    })
}

/// Where the forbidden patterns for [`bounded_lattice_refute`] come from.
pub enum PatternSource<'a> {
    Spec(&'a SftSpec),
    /// Patterns are read lazily; at most `limit` are used.
    Stream { dim: usize, alphabet: Alphabet, patterns: Box<dyn Iterator<Item = Pattern> + 'a>, limit: usize },
}

/// Search the fillings of `ℤ^d / basis` against the forbidden patterns.
/// No means every filling contains a forbidden pattern; Yes comes with a
/// torus witness; Unknown means fillings survived a truncated stream.
pub fn bounded_lattice_refute(
    source: PatternSource<'_>,
    basis: &PeriodGroup,
    budget: &SearchBudget,
) -> Result<WitnessReport, PeriodError> {
    budget.validate()?;
    let (sft, truncated) = match source {
        PatternSource::Spec(s) => (s.clone(), false),
        PatternSource::Stream { dim, alphabet, patterns, limit } => {
            let mut it = patterns.peekable();
            let taken: Vec<Pattern> = it.by_ref().take(limit).collect();
            let more = it.peek().is_some();
            (SftSpec::new(dim, alphabet, taken)?, more)
        }
    };
    if basis.dim() != sft.dim() || basis.rank() != sft.dim() {
        return Err(PeriodError::InvalidArgument(format!(
            "lattice must have full rank {} in dimension {}",
            sft.dim(),
            sft.dim()
        )));
    }
    let space = Space::Lattice { rows: basis.basis().to_vec() };
    let mut clock = budget.start();
    let out = Model::build(&sft, &space).solve(&clock.limits(), Goal::First, &|_| true);
    clock.spent(out.nodes);
    let Some(sol) = out.solutions.into_iter().next() else {
        let v = if out.complete { Verdict::No } else { Verdict::Unknown };
        return Ok(clock.report(v, None));
    };
    // unfold onto the smallest box whose sides lie in the lattice
    let d = sft.dim();
    let dims: Vec<usize> = (0..d)
        .map(|i| {
            let mut e = vec![0i64; d];
            (1..)
                .find(|&t| {
                    e[i] = t;
                    basis.contains(&e)
                })
                .expect("full rank") as usize
        })
        .collect();
    let arity = sft.arity();
    let probe = TorusConfig::new(dims.clone(), arity, vec![0; dims.iter().product::<usize>() * arity])?;
    let mut cells = Vec::with_capacity(probe.raw().len());
    for i in 0..probe.len() {
        let c = space.locate(&probe.position(i)).expect("lattice covers the plane");
        cells.extend_from_slice(&sol[c * arity..(c + 1) * arity]);
    }
    let t = TorusConfig::new(dims, arity, cells)?;
    let v = if truncated { Verdict::Unknown } else { Verdict::Yes };
    Ok(clock.report(v, Some(Witness::Torus(t))))
}
