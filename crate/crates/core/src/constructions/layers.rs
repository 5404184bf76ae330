//! The components of `Y_k = A × C_k × T`.
//!
//! `A` is an aperiodic East-deterministic base plus a breaker symbol that
//! forms full columns and never touches itself horizontally. `C_k` writes a
//! base-`k` counter on every segment between two breaker columns and marks
//! the rows where it reads zero. `T` is constant along rows and equals the
//! base symbol just right of each breaker, so every segment carries the same
//! base column. The "just right of" relation needs to see two cells of two
//! layers at once; a three-symbol `post` layer (breaker / first column /
//! other) carries it.

use super::robinson::east_deterministic_base;
use crate::sft::{product, Alphabet, Allowed, Layer, LayerProduct, Link, Pattern, SftError, SftSpec};

fn pair(a: u32, b: u32, off: [i64; 2]) -> Pattern {
    Pattern::from_cells(&[([0, 0], a), (off, b)])
}

const RIGHT: [i64; 2] = [1, 0];
const UP: [i64; 2] = [0, 1];

fn single(name: &str, alphabet: Alphabet, forbidden: Vec<Pattern>) -> Result<SftSpec, SftError> {
    SftSpec::layered(2, vec![Layer::new(name, alphabet, forbidden)?], Vec::new())
}

/// Token of the breaker symbol added to `base`.
pub fn breaker_token(base: &Alphabet) -> String {
    let mut t = String::from("brk");
    while base.index_of(&t).is_some() {
        t.push('_');
    }
    t
}

/// `base` plus a breaker symbol (the last index): no base symbol directly
/// above or below a breaker, and no two breakers side by side.
pub fn breaker_layer(base: &SftSpec) -> Result<SftSpec, SftError> {
    if base.dim() != 2 {
        return Err(SftError::DimensionMismatch { expected: 2, found: base.dim() });
    }
    if !base.is_plain() {
        return Err(SftError::Unsupported("the breaker layer needs a single-layer base".into()));
    }
    let mut tokens = base.alphabet().tokens().to_vec();
    let brk = tokens.len() as u32;
    tokens.push(breaker_token(base.alphabet()));
    let mut forbidden = base.forbidden().to_vec();
    for w in 0..brk {
        forbidden.push(pair(w, brk, UP));
        forbidden.push(pair(brk, w, UP));
    }
    forbidden.push(pair(brk, brk, RIGHT));
    single("A", Alphabet::new(tokens)?, forbidden)
}

/// Base-`k` increment read from the least significant digit, as a
/// two-state transducer: the state is the incoming carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    k: u32,
}

impl Transducer {
    pub fn increment(k: u32) -> Result<Self, SftError> {
        if k < 2 {
            return Err(SftError::Unsupported(format!("counter base must be at least 2, got {k}")));
        }
        Ok(Transducer { k })
    }

    pub fn base(&self) -> u32 {
        self.k
    }

    /// Carry state and input digit to next carry state and output digit.
    pub fn step(&self, carry: u32, digit: u32) -> (u32, u32) {
        let s = digit + carry;
        (s / self.k, s % self.k)
    }

    /// All edges `(state, in, next state, out)`.
    pub fn edges(&self) -> Vec<(u32, u32, u32, u32)> {
        let mut out = Vec::new();
        for c in 0..2 {
            for d in 0..self.k {
                let (c2, d2) = self.step(c, d);
                out.push((c, d, c2, d2));
            }
        }
        out
    }

    /// Successor of a number given least significant digit first, wrapping
    /// around at `k^len`.
    pub fn successor(&self, digits: &[u32]) -> Vec<u32> {
        let mut carry = 1;
        digits
            .iter()
            .map(|&d| {
                let (c, o) = self.step(carry, d);
                carry = c;
                o
            })
            .collect()
    }
}

/// A cell of the counter layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterCell {
    /// The carry `1` riding the breaker column.
    Breaker { marked: bool },
    Digit { digit: u32, carry: u32, marked: bool },
}

impl CounterCell {
    fn token(self) -> String {
        let m = |b: bool| if b { 'h' } else { 'e' };
        match self {
            CounterCell::Breaker { marked } => format!("B^1{}", m(marked)),
            CounterCell::Digit { digit, carry, marked } => format!("{digit}^{carry}{}", m(marked)),
        }
    }

    pub fn marked(self) -> bool {
        match self {
            CounterCell::Breaker { marked } | CounterCell::Digit { marked, .. } => marked,
        }
    }
}

/// Cells of `counter_layer(k)` in symbol order.
pub fn counter_cells(k: u32) -> Vec<CounterCell> {
    let mut out = vec![CounterCell::Breaker { marked: true }, CounterCell::Breaker { marked: false }];
    for digit in 0..k {
        for carry in 0..2 {
            for marked in [true, false] {
                out.push(CounterCell::Digit { digit, carry, marked });
            }
        }
    }
    out
}

/// `C_k`: digits with their incoming carry (`d^c`) between breaker columns
/// (`B^1`), each marked `h` (horizontal line) or `e` (empty).
///
/// The carry of a digit comes from its east neighbour (1 next to a
/// breaker), the digit above is `(d + c) mod k`, marks are constant along
/// rows, and the row above a segment whose leading digit overflows, the
/// one reading zero, is the marked one.
pub fn counter_layer(k: u32) -> Result<SftSpec, SftError> {
    let t = Transducer::increment(k)?;
    let cells = counter_cells(k);
    let alphabet = Alphabet::new(cells.iter().map(|c| c.token()))?;
    let mut forbidden = Vec::new();
    for (i, &a) in cells.iter().enumerate() {
        for (j, &b) in cells.iter().enumerate() {
            let (i, j) = (i as u32, j as u32);
            if a.marked() != b.marked() {
                forbidden.push(pair(i, j, RIGHT));
            }
            use CounterCell::*;
            match (a, b) {
                (Breaker { .. }, Digit { .. }) | (Digit { .. }, Breaker { .. }) => forbidden.push(pair(i, j, UP)),
                (Digit { digit, carry, .. }, Digit { digit: d2, .. }) if t.step(carry, digit).1 != d2 => {
                    forbidden.push(pair(i, j, UP))
                }
                _ => {}
            }
            let carry_in = match b {
                Breaker { .. } => 1,
                Digit { digit, carry, .. } => t.step(carry, digit).0,
            };
            if let Digit { carry, .. } = a {
                if carry != carry_in {
                    forbidden.push(pair(i, j, RIGHT));
                }
            }
        }
    }
    // leading digit: breaker to the north-west of the lower digit
    for (b, &cb) in cells.iter().enumerate() {
        let CounterCell::Breaker { .. } = cb else { continue };
        for (lo, &cl) in cells.iter().enumerate() {
            let CounterCell::Digit { digit, carry, .. } = cl else { continue };
            let overflow = t.step(carry, digit).0 == 1;
            for (hi, &ch) in cells.iter().enumerate() {
                if matches!(ch, CounterCell::Digit { .. }) && ch.marked() != overflow {
                    forbidden.push(Pattern::from_cells(&[([0, 1], b as u32), ([1, 0], lo as u32), ([1, 1], hi as u32)]));
                }
            }
        }
    }
    single("C", alphabet, forbidden)
}

/// Value of one counter segment: the digits right of a breaker in `row`
/// (cyclically), most significant first. `None` without exactly one breaker.
pub fn counter_value(k: u32, row: &[u32]) -> Option<u64> {
    let cells = counter_cells(k);
    let cell = |s: u32| cells[s as usize];
    let breakers: Vec<usize> = (0..row.len()).filter(|&i| matches!(cell(row[i]), CounterCell::Breaker { .. })).collect();
    let [b] = breakers[..] else { return None };
    let mut v = 0u64;
    for i in 1..row.len() {
        let CounterCell::Digit { digit, .. } = cell(row[(b + i) % row.len()]) else { return None };
        v = v * k as u64 + digit as u64;
    }
    Some(v)
}

/// `T`: symbols of `alphabet`, equal along rows.
pub fn copy_layer(alphabet: &Alphabet) -> Result<SftSpec, SftError> {
    let n = alphabet.len() as u32;
    let mut forbidden = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                forbidden.push(pair(a, b, RIGHT));
            }
        }
    }
    single("T", alphabet.clone(), forbidden)
}

pub const POST_BREAKER: u32 = 0;
pub const POST_FIRST: u32 = 1;
pub const POST_OTHER: u32 = 2;

/// Marks the column just right of each breaker.
pub fn post_layer() -> Result<SftSpec, SftError> {
    let mut forbidden = Vec::new();
    for b in [POST_FIRST, POST_OTHER] {
        forbidden.push(pair(b, POST_FIRST, RIGHT));
    }
    for b in [POST_BREAKER, POST_OTHER] {
        forbidden.push(pair(POST_BREAKER, b, RIGHT));
    }
    single("post", Alphabet::new(["brk", "first", "other"])?, forbidden)
}

/// Named layers and the same-cell links tying them together.
#[derive(Clone, Debug)]
pub struct LayerBundle {
    pub layers: Vec<SftSpec>,
    /// Links over the flattened layer list.
    pub links: Vec<Link>,
}

impl LayerBundle {
    pub fn names(&self) -> Vec<String> {
        self.layers.iter().flat_map(|l| l.layers().iter().map(|x| x.name().to_string())).collect()
    }

    pub fn layer_index(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    pub fn product(&self) -> Result<SftSpec, SftError> {
        product(&LayerProduct { layers: self.layers.clone(), allowed: Allowed::Links(self.links.clone()) })
    }
}

/// Layer indices of `y_k` in its product.
pub const YK_A: usize = 0;
pub const YK_C: usize = 1;
pub const YK_T: usize = 2;
pub const YK_POST: usize = 3;

/// `Y_k` over the East-deterministic base.
pub fn y_k(k: u32) -> Result<LayerBundle, SftError> {
    y_k_over(&east_deterministic_base(), k)
}

/// `Y_k` with another single-layer base in the white columns.
pub fn y_k_over(base: &SftSpec, k: u32) -> Result<LayerBundle, SftError> {
    let a = breaker_layer(base)?;
    let c = counter_layer(k)?;
    let t = copy_layer(base.alphabet())?;
    let post = post_layer()?;
    let nw = base.alphabet().len() as u32;
    let brk = nw;
    let cells = counter_cells(k);
    let mut ac = Vec::new();
    for x in 0..=brk {
        for (i, cell) in cells.iter().enumerate() {
            if (x == brk) == matches!(cell, CounterCell::Breaker { .. }) {
                ac.push(vec![x, i as u32]);
            }
        }
    }
    let mut apt = Vec::new();
    for x in 0..=brk {
        for p in [POST_BREAKER, POST_FIRST, POST_OTHER] {
            if (x == brk) != (p == POST_BREAKER) {
                continue;
            }
            for w in 0..nw {
                if p != POST_FIRST || w == x {
                    apt.push(vec![x, p, w]);
                }
            }
        }
    }
    let links = vec![Link::new(vec![YK_A, YK_C], ac)?, Link::new(vec![YK_A, YK_POST, YK_T], apt)?];
    Ok(LayerBundle { layers: vec![a, c, t, post], links })
}
