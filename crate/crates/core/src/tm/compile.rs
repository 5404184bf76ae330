//! Wang tiles simulating a machine, one row per configuration.
//!
//! Colours on vertical edges of tape columns are the cell content, either
//! `a` or `q.a` when the head in state `q` sits on it. Horizontal edges carry
//! `-`, or `>q` / `<q` when the head enters the neighbouring cell from the
//! left / right. The rectangle has a `white` frame; the south side of tape
//! column `i` reads `in:^a` for `i = 0` and `in:a` otherwise, where `a` is the
//! `i`-th input symbol, and the bare `in:^` / `in:` past the end of the input.
//! The north side of the tape columns reads `halt`, which only closing tiles
//! produce, and only once the head is in a halting state. Halting heads are
//! copied upward unchanged, so a `(w + 2) × t` rectangle has one tiling per
//! accepted run with at most `t` configurations.

use std::collections::HashMap;

use super::machine::{Move, TmSpec};
use crate::sft::WangTileset;

pub const WHITE: &str = "white";
pub const HALT: &str = "halt";
pub const QUIET: &str = "-";

/// South colour of tape column `i` under `input`.
pub fn input_color(input: &[&str], i: usize) -> String {
    let head = if i == 0 { "^" } else { "" };
    format!("in:{head}{}", input.get(i).copied().unwrap_or(""))
}

struct Builder {
    tiles: Vec<(String, [String; 4])>,
}

impl Builder {
    fn add(&mut self, name: String, n: &str, e: &str, s: &str, w: &str) {
        self.tiles.push((name, [n.to_string(), e.to_string(), s.to_string(), w.to_string()]));
    }

    /// A tile and, when `close` holds, its variant ending the rectangle.
    fn with_close(&mut self, name: &str, close: bool, n: &str, e: &str, s: &str, w: &str) {
        self.add(name.to_string(), n, e, s, w);
        if close {
            self.add(format!("{name}.end"), HALT, e, s, w);
        }
    }
}

pub fn compile_tm(tm: &TmSpec) -> WangTileset {
    let q = |i: u32| tm.states().token(i);
    let a = |i: u32| tm.tape().token(i);
    let head = |s: u32, x: u32| format!("{}.{}", q(s), a(x));
    let ntape = tm.tape().len() as u32;
    let nstates = tm.states().len() as u32;
    let mut b = Builder { tiles: Vec::new() };
    b.add("border.l".into(), WHITE, QUIET, WHITE, WHITE);
    b.add("border.r".into(), WHITE, WHITE, WHITE, QUIET);

    let q0 = tm.initial();
    let mut firsts: Vec<(String, u32)> = tm.input().iter().map(|&x| (a(x).to_string(), x)).collect();
    firsts.push((String::new(), tm.blank()));
    for (label, x) in &firsts {
        let tag = if label.is_empty() { "pad".to_string() } else { format!("sym.{label}") };
        b.with_close(&format!("input.{tag}"), true, a(*x), QUIET, &format!("in:{label}"), QUIET);
        b.with_close(&format!("input.head.{tag}"), tm.is_halting(q0), &head(q0, *x), QUIET, &format!("in:^{label}"), QUIET);
    }
    for x in 0..ntape {
        b.with_close(&format!("copy.{}", a(x)), true, a(x), QUIET, a(x), QUIET);
    }
    for (i, d) in tm.delta().iter().enumerate() {
        let close = tm.is_halting(d.next);
        let s = head(d.state, d.read);
        let name = format!("step.{i}");
        match d.mv {
            Move::Stay => b.with_close(&name, close, &head(d.next, d.write), QUIET, &s, QUIET),
            Move::Right => b.with_close(&name, close, a(d.write), &format!(">{}", q(d.next)), &s, QUIET),
            Move::Left => b.with_close(&name, close, a(d.write), QUIET, &s, &format!("<{}", q(d.next))),
        }
    }
    for s in 0..nstates {
        let close = tm.is_halting(s);
        let from_left = tm.delta().iter().any(|d| d.next == s && d.mv == Move::Right);
        let from_right = tm.delta().iter().any(|d| d.next == s && d.mv == Move::Left);
        for x in 0..ntape {
            if from_left {
                b.with_close(&format!("enter.l.{}.{}", q(s), a(x)), close, &head(s, x), QUIET, a(x), &format!(">{}", q(s)));
            }
            if from_right {
                b.with_close(&format!("enter.r.{}.{}", q(s), a(x)), close, &head(s, x), &format!("<{}", q(s)), a(x), QUIET);
            }
            if close {
                b.with_close(&format!("halted.{}.{}", q(s), a(x)), true, &head(s, x), QUIET, &head(s, x), QUIET);
            }
        }
    }
    WangTileset::from_named(&b.tiles).expect("compiled tile names are distinct tokens")
}

/// Number of tilings of the `(w + 2) × t` rectangle framed as described in
/// the module docs, with `input` on the south side. Zero when the input does
/// not fit or a boundary colour is not used by any tile.
pub fn count_rectangle_tilings(tiles: &WangTileset, w: usize, t: usize, input: &[&str]) -> u128 {
    if t == 0 || input.len() > w {
        return 0;
    }
    let color = |s: &str| tiles.colors().index_of(s);
    let (Some(white), Some(halt)) = (color(WHITE), color(HALT)) else { return 0 };
    let mut south = vec![white; w + 2];
    for i in 0..w {
        match color(&input_color(input, i)) {
            Some(c) => south[i + 1] = c,
            None => return 0,
        }
    }
    let mut top = vec![halt; w + 2];
    top[0] = white;
    top[w + 1] = white;

    let mut by_sw: HashMap<(u32, u32), Vec<(u32, u32)>> = HashMap::new();
    for tile in tiles.tiles() {
        by_sw.entry((tile.south, tile.west)).or_default().push((tile.north, tile.east));
    }
    let mut rows: HashMap<Vec<u32>, u128> = HashMap::from([(south, 1)]);
    for _ in 0..t {
        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        for (s, &count) in &rows {
            // one row, column by column, keyed on (north so far, east colour)
            let mut partial: HashMap<(Vec<u32>, u32), u128> = HashMap::from([((Vec::new(), white), count)]);
            for &sc in s {
                let mut grown: HashMap<(Vec<u32>, u32), u128> = HashMap::new();
                for ((north, east), c) in partial {
                    for &(n, e) in by_sw.get(&(sc, east)).map(Vec::as_slice).unwrap_or(&[]) {
                        let mut nn = north.clone();
                        nn.push(n);
                        *grown.entry((nn, e)).or_default() += c;
                    }
                }
                partial = grown;
            }
            for ((north, east), c) in partial {
                if east == white {
                    *next.entry(north).or_default() += c;
                }
            }
        }
        rows = next;
    }
    rows.get(&top).copied().unwrap_or(0)
}

/// `count_rectangle_tilings` on a machine's own tiles, with the input given
/// as symbol indices.
pub fn count_tm_tilings(tm: &TmSpec, tiles: &WangTileset, w: usize, t: usize, input: &[u32]) -> u128 {
    let word: Vec<&str> = input.iter().map(|&x| tm.tape().token(x)).collect();
    count_rectangle_tilings(tiles, w, t, &word)
}
