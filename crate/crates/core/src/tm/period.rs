//! An SFT whose horizontal periods encode the unary language of a machine.
//!
//! The skeleton is `Y_k`: rectangles of width `p` and height `k^(p-1)`
//! framed by breaker columns and marked rows. A machine layer `M` holds the
//! compiled tiles of [`compile_tm`] inside every rectangle: the marked row is
//! the input row `1^n` followed by one blank cell, between a left and a right
//! border column, and the row under the next marked row closes with `halt`.
//! A row-constant `sync` layer names the transition used on that row, or
//! `idle` on input rows and rows where the machine has halted, so all
//! rectangles along a row run the same computation.
//!
//! With one breaker, two borders and the blank cell, `1^n` is accepted within
//! `k^(n+3)` configurations on `n + 1` cells iff `n + 4` is a horizontal
//! period. The offset is [`PERIOD_OFFSET`].

use super::compile::{compile_tm, input_color, HALT, WHITE};
use super::machine::{TmError, TmSpec};
use crate::constructions::{counter_cells, east_deterministic_base, y_k_over, CounterCell, LayerBundle, YK_C};
use crate::sft::{Alphabet, Layer, Link, Pattern, SftSpec};

/// Columns of a rectangle not used by the input: breaker, two borders and
/// the trailing blank cell.
pub const PERIOD_OFFSET: usize = 4;

/// Layer indices added on top of `y_k`.
pub const TM_M: usize = 4;
pub const TM_SYNC: usize = 5;

/// Token of the machine layer's breaker symbol.
pub const M_BREAKER: &str = "brk";
/// Sync value on rows that may not use any transition.
pub const SYNC_IDLE: &str = "idle";

/// Symbol of tile `tile` in the machine layer.
pub fn machine_symbol(tile: usize, marked: bool) -> u32 {
    1 + 2 * tile as u32 + u32::from(!marked)
}

fn pair(a: u32, b: u32, off: [i64; 2]) -> Pattern {
    Pattern::from_cells(&[([0, 0], a), (off, b)])
}

/// South side of a tile on a marked row.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Bottom {
    Frame,
    Head { pad: bool },
    Cell { pad: bool },
    Other,
}

/// [`tm_period_bundle_over`] on the East-deterministic base.
pub fn tm_period_bundle(tm: &TmSpec, k: u32) -> Result<LayerBundle, TmError> {
    tm_period_bundle_over(tm, k, &east_deterministic_base())
}

/// The layered SFT for `tm` over the East-deterministic base.
pub fn tm_period_sft(tm: &TmSpec, k: u32) -> Result<SftSpec, TmError> {
    Ok(tm_period_bundle(tm, k)?.product()?)
}

/// `y_k_over(base, k)` with the machine and sync layers. The machine must
/// have a single input symbol.
pub fn tm_period_bundle_over(tm: &TmSpec, k: u32, base: &SftSpec) -> Result<LayerBundle, TmError> {
    let [one] = tm.input()[..] else {
        return Err(TmError::Unsupported("the period encoding reads unary inputs: declare exactly one input symbol".into()));
    };
    let mut bundle = y_k_over(base, k)?;
    let tiles = compile_tm(tm);
    let color = |s: &str| tiles.colors().index_of(s);
    let white = color(WHITE);
    let halt = color(HALT);
    let unary = tm.tape().token(one);
    let bottom_of = |c: u32| -> Bottom {
        if Some(c) == white {
            Bottom::Frame
        } else if Some(c) == color(&input_color(&[unary], 0)) {
            Bottom::Head { pad: false }
        } else if Some(c) == color(&input_color(&[], 0)) {
            Bottom::Head { pad: true }
        } else if Some(c) == color(&input_color(&[unary, unary], 1)) {
            Bottom::Cell { pad: false }
        } else if Some(c) == color(&input_color(&[], 1)) {
            Bottom::Cell { pad: true }
        } else {
            Bottom::Other
        }
    };
    let is_input = |c: u32| tiles.colors().token(c).starts_with("in:");

    let mut tokens = vec![M_BREAKER.to_string()];
    for t in tiles.tiles() {
        tokens.push(format!("{}:h", t.name));
        tokens.push(format!("{}:e", t.name));
    }
    let brk = 0u32;
    let n = tiles.len();
    let mut forbidden = Vec::new();
    for (i, x) in tiles.tiles().iter().enumerate() {
        for mx in [true, false] {
            let a = machine_symbol(i, mx);
            if Some(x.east) != white {
                forbidden.push(pair(a, brk, [1, 0]));
            }
            if Some(x.west) != white {
                forbidden.push(pair(brk, a, [1, 0]));
            }
            forbidden.push(pair(a, brk, [0, 1]));
            forbidden.push(pair(brk, a, [0, 1]));
            for (j, y) in tiles.tiles().iter().enumerate() {
                for my in [true, false] {
                    let b = machine_symbol(j, my);
                    let side = mx == my && x.east == y.west && Some(x.east) != white && (!mx || marked_pair(bottom_of(x.south), bottom_of(y.south)));
                    if !side {
                        forbidden.push(pair(a, b, [1, 0]));
                    }
                    let up = if my {
                        let (top, bot) = (Some(x.north), Some(y.south));
                        (top == halt && is_input(y.south)) || (top == white && bot == white)
                    } else {
                        x.north == y.south
                    };
                    if !up {
                        forbidden.push(pair(a, b, [0, 1]));
                    }
                }
            }
        }
    }
    let m = Layer::new("M", Alphabet::new(tokens)?, forbidden)?;

    let nsync = tm.delta().len() as u32;
    let mut sync_tokens: Vec<String> = (0..nsync).map(|i| format!("d{i}")).collect();
    sync_tokens.push(SYNC_IDLE.into());
    let mut sync_forbidden = Vec::new();
    for a in 0..=nsync {
        for b in 0..=nsync {
            if a != b {
                sync_forbidden.push(pair(a, b, [1, 0]));
            }
        }
    }
    let sync = Layer::new("sync", Alphabet::new(sync_tokens)?, sync_forbidden)?;

    let cells = counter_cells(k);
    let mut cm = Vec::new();
    for (c, cell) in cells.iter().enumerate() {
        match cell {
            CounterCell::Breaker { .. } => cm.push(vec![c as u32, brk]),
            CounterCell::Digit { marked, .. } => cm.extend((0..n).map(|t| vec![c as u32, machine_symbol(t, *marked)])),
        }
    }
    let mut ms: Vec<Vec<u32>> = (0..=nsync).map(|s| vec![brk, s]).collect();
    for (i, t) in tiles.tiles().iter().enumerate() {
        let step = t.name.strip_prefix("step.").map(|s| s.split('.').next().unwrap_or(s).parse::<u32>());
        for marked in [true, false] {
            let a = machine_symbol(i, marked);
            match step {
                Some(Ok(d)) => ms.push(vec![a, d]),
                // the head sits below these without moving
                _ if t.name.starts_with("halted.") || t.name.starts_with("input.head.") => ms.push(vec![a, nsync]),
                _ => ms.extend((0..=nsync).map(|s| vec![a, s])),
            }
        }
    }
    debug_assert_eq!(bundle.layers.len(), TM_M);
    bundle.layers.push(SftSpec::layered(2, vec![m], Vec::new())?);
    bundle.layers.push(SftSpec::layered(2, vec![sync], Vec::new())?);
    bundle.links.push(Link::new(vec![YK_C, TM_M], cm)?);
    bundle.links.push(Link::new(vec![TM_M, TM_SYNC], ms)?);
    Ok(bundle)
}

/// Horizontal neighbours on a marked row: a left border, the head cell, the
/// unary input, one blank cell, a right border.
fn marked_pair(x: Bottom, y: Bottom) -> bool {
    use Bottom::*;
    matches!(
        (x, y),
        (Frame, Head { .. }) | (Head { pad: false } | Cell { pad: false }, Cell { .. }) | (Head { pad: true } | Cell { pad: true }, Frame)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::YK_A;
    use crate::period::{find_torus, find_torus_pinned, Pin, SearchBudget};
    use crate::sft::{is_locally_valid, TorusConfig};
    use crate::tm::{count_accepting, parse_tm, run_bounded};

    fn tm(delta: &str) -> TmSpec {
        parse_tm(&format!("%tm\nstates: s a h\ntape: 1 _\nblank: _\ninput: 1\ninitial: s\nhalting: h\n{delta}")).unwrap()
    }

    /// Accepts exactly `1`.
    fn only_one() -> TmSpec {
        tm("delta: s 1 -> a 1 R\ndelta: a _ -> h _ S\n")
    }

    /// Stand-in for the aperiodic base at small widths: `i` must be
    /// followed by `i + 1`, so no row of white symbols is periodic, and
    /// columns are constant.
    fn flat() -> SftSpec {
        let n = 10;
        let mut forbidden = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if b != a + 1 {
                    forbidden.push(pair(a, b, [1, 0]));
                }
                if b != a {
                    forbidden.push(pair(a, b, [0, 1]));
                }
            }
        }
        SftSpec::new(2, Alphabet::numeric(n as usize), forbidden).unwrap()
    }

    /// First `p × 2^(p-1)` torus, `None` once the search space is exhausted.
    /// Every such torus has a breaker on a marked row, moved to the origin.
    fn solve(tm: &TmSpec, p: usize) -> (SftSpec, Option<TorusConfig>) {
        let spec = tm_period_bundle_over(tm, 2, &flat()).unwrap().product().unwrap();
        let h = 1usize << (p - 1);
        let pins = [
            Pin { cell: vec![0, 0], layer: YK_A, symbols: vec![flat().alphabet().len() as u32] },
            Pin { cell: vec![0, 0], layer: YK_C, symbols: vec![0] },
        ];
        let found = find_torus_pinned(&spec, &[p, h], &pins, &SearchBudget::default()).unwrap();
        (spec, found)
    }

    #[test]
    fn layout() {
        let b = tm_period_bundle_over(&only_one(), 2, &flat()).unwrap();
        assert_eq!(b.names(), ["A", "C", "T", "post", "M", "sync"]);
        let spec = b.product().unwrap();
        let m = &spec.layers()[TM_M];
        assert_eq!(m.alphabet().token(0), M_BREAKER);
        assert_eq!(m.alphabet().len(), 1 + 2 * compile_tm(&only_one()).len());
        assert_eq!(spec.layers()[TM_SYNC].alphabet().tokens(), ["d0", "d1", SYNC_IDLE]);
    }

    #[test]
    fn binary_input_is_rejected() {
        let m = parse_tm("%tm\nstates: s\ntape: 0 1 _\nblank: _\ninput: 0 1\ninitial: s\nhalting: s\n").unwrap();
        assert!(matches!(tm_period_bundle_over(&m, 2, &flat()), Err(TmError::Unsupported(_))));
    }

    /// Machine layer of row `y` inside the first rectangle, as tile names.
    fn row_names(spec: &SftSpec, t: &TorusConfig, y: usize, p: usize) -> Vec<String> {
        (0..p).map(|x| spec.layers()[TM_M].alphabet().token(t.raw()[(y * p + x) * spec.arity() + TM_M]).to_string()).collect()
    }

    #[test]
    fn period_five_holds_the_run_of_one() {
        let m = only_one();
        // oracle: the machine accepts `1` on two cells within 16 configurations
        assert_eq!(count_accepting(&m, &[0], 16, 2).unwrap(), 1);
        let (spec, found) = solve(&m, 5);
        let t = found.expect("a 5 × 16 torus");
        assert!(is_locally_valid(&t, &spec).unwrap().is_empty());
        // the marked row is the input row
        let marked = (0..16).find(|&y| row_names(&spec, &t, y, 5).iter().any(|s| s.starts_with("input.head"))).unwrap();
        let run = &run_bounded(&m, &[0], 16, 2).unwrap()[0];
        for (i, snap) in run.snapshots.iter().enumerate().skip(1) {
            let names = row_names(&spec, &t, (marked + i) % 16, 5);
            let via = snap.via.unwrap();
            assert!(names.iter().any(|s| s.starts_with(&format!("step.{via}"))), "{names:?}");
        }
        let closing = row_names(&spec, &t, (marked + 15) % 16, 5);
        assert_eq!(closing.iter().filter(|s| s.contains(".end:")).count(), 2, "{closing:?}");
    }

    #[test]
    fn other_widths_fail() {
        let m = only_one();
        // 1^0 and 1^2 are rejected
        assert_eq!(count_accepting(&m, &[], 8, 1).unwrap(), 0);
        assert_eq!(count_accepting(&m, &[0, 0], 32, 3).unwrap(), 0);
        for p in [4, 6] {
            assert!(solve(&m, p).1.is_none(), "p = {p}");
        }
    }

    #[test]
    fn rejecting_machine_has_no_period() {
        let m = tm("delta: s 1 -> s 1 S\n");
        assert!(solve(&m, 5).1.is_none());
    }

    #[test]
    fn branches_are_synchronized() {
        // two ways to accept `1`, differing in the written symbol
        let m = tm("delta: s 1 -> h 1 S\ndelta: s 1 -> h _ S\n");
        assert_eq!(count_accepting(&m, &[0], 16, 2).unwrap(), 2);
        let spec = tm_period_bundle_over(&m, 2, &flat()).unwrap().product().unwrap();
        // a 10-wide torus holds two rectangles; they must agree on the transition
        let t = find_torus(&spec, &[10, 16], &SearchBudget::default()).unwrap().expect("a 10 × 16 torus");
        for y in 0..16 {
            let names = row_names(&spec, &t, y, 10);
            let steps: Vec<&String> = names.iter().filter(|s| s.starts_with("step.")).collect();
            if let [a, b] = steps[..] {
                assert_eq!(a.split(':').next(), b.split(':').next());
            }
        }
    }

    /// The same question on the aperiodic base. Minutes to hours of search.
    #[test]
    #[ignore]
    fn period_five_on_the_real_base() {
        let spec = tm_period_sft(&only_one(), 2).unwrap();
        let b = SearchBudget { max_seconds: 3600.0, max_nodes: u64::MAX, ..SearchBudget::default() };
        let r = crate::period::horizontal_period(&spec, 1 + PERIOD_OFFSET as i64, &b).unwrap();
        assert_eq!(r.verdict, crate::period::Verdict::Yes);
    }
}
