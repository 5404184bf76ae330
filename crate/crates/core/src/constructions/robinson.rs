//! Robinson's tiles, Kari's diagonal layer on top of them, and the sheared
//! copy that is East-deterministic.
//!
//! Tiles are read off the hierarchical tiling rather than listed by hand. In
//! row `y` the crosses sit at the `x` with `v2(x) = v2(y)`; each cross sends a
//! principal line of length `2^v2` in the four directions, and a thin
//! companion line along the two rays it faces, on the side of the other
//! facing ray. An edge colour records the principal flow across the edge, the
//! half carrying a thin line (if any), and the parity of the tile below or to
//! the left of the edge.

use std::collections::BTreeMap;

use crate::sft::{wang_to_sft, IVec, SftSpec, WangTileset};

fn v2(x: i64) -> u32 {
    x.trailing_zeros()
}

/// Direction a cross at `(x, y)` (with `v2(x) = v2(y)`) faces, as
/// `(east?, north?)`.
fn facing(x: i64, y: i64) -> (bool, bool) {
    let k = v2(x);
    ((x >> k) % 4 == 1, (y >> k) % 4 == 1)
}

/// Colour of the edge crossed by the line along an axis.
/// `along` is the coordinate on the line's axis (the left/lower cell of the
/// edge), `across` the other coordinate. Returns `(flow positive?, thin side)`
/// where the side is `Some(true)` for the positive half of the edge.
fn edge(along: i64, across: i64, swap: bool) -> (bool, Option<bool>) {
    let b = v2(across);
    let half = 1i64 << b;
    let u = along.rem_euclid(2 * half);
    let (xc, positive) = if u >= half { (along - (u - half), true) } else { (along - u + half, false) };
    let (fx, fy) = if swap { let (a, c) = facing(across, xc); (c, a) } else { facing(xc, across) };
    // the ray towards `fx` carries a companion on the `fy` side
    let thin = (positive == fx).then_some(fy);
    (positive, thin)
}

fn vertical_edge(x: i64, y: i64) -> String {
    let (pos, thin) = edge(x, y, false);
    format!("h{}{}{}{}", if pos { '+' } else { '-' }, side(thin, 'n', 's'), x & 1, y & 1)
}

fn horizontal_edge(x: i64, y: i64) -> String {
    let (pos, thin) = edge(y, x, true);
    format!("v{}{}{}{}", if pos { '+' } else { '-' }, side(thin, 'e', 'w'), x & 1, y & 1)
}

fn side(thin: Option<bool>, pos: char, neg: char) -> char {
    match thin {
        Some(true) => pos,
        Some(false) => neg,
        None => 'o',
    }
}

/// Colours `[n, e, s, w]` and name of the tile at `(x, y)`, `x, y ≥ 2`.
fn tile_at(x: i64, y: i64) -> (String, [String; 4]) {
    let colors = [horizontal_edge(x, y), vertical_edge(x, y), horizontal_edge(x, y - 1), vertical_edge(x - 1, y)];
    let c = |i: usize, k: usize| colors[i].as_bytes()[k] as char;
    let name = match v2(x).cmp(&v2(y)) {
        std::cmp::Ordering::Equal => {
            let (fx, fy) = facing(x, y);
            format!("X{}{}", if fx { 'e' } else { 'w' }, if fy { 'n' } else { 's' })
        }
        // vertical arm: ray direction, own companion, companions coming in from the sides
        std::cmp::Ordering::Greater => format!("V{}{}{}", if c(0, 1) == '+' { 'n' } else { 's' }, c(0, 2), c(3, 2)),
        std::cmp::Ordering::Less => format!("H{}{}{}", if c(1, 1) == '+' { 'e' } else { 'w' }, c(1, 2), c(2, 2)),
    };
    (format!("{name}.{}{}", x & 1, y & 1), colors)
}

/// Every tile of a `2^7`-wide piece of the hierarchy, sorted by name.
fn hierarchy_tiles() -> BTreeMap<String, [String; 4]> {
    let mut tiles = BTreeMap::new();
    for x in 2..128 {
        for y in 2..128 {
            let (name, colors) = tile_at(x, y);
            let old = tiles.insert(name.clone(), colors.clone());
            debug_assert!(old.is_none_or(|o| o == colors), "tile {name} has two colourings");
        }
    }
    tiles
}

/// Robinson's crosses and arms in all four rotations, with the parity of
/// their position folded into the edge colours: 28 shapes, 56 tiles.
pub fn robinson() -> WangTileset {
    let tiles: Vec<(String, [String; 4])> = hierarchy_tiles().into_iter().collect();
    WangTileset::from_named(&tiles).expect("robinson tiles")
}

/// Diagonal label of a tile at a corner: horizontal or vertical arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Diag {
    H,
    V,
}

impl Diag {
    fn letter(self) -> char {
        match self {
            Diag::H => 'h',
            Diag::V => 'v',
        }
    }
}

/// Robinson's tiles with a diagonal arrow from the north-west to the
/// south-east corner that must match along NW-SE diagonals. Horizontal arms
/// carry `(nw, se) = (H, V)`, vertical arms `(V, H)`, crosses either `(H, H)`
/// or `(V, V)`. Since Wang tiles only see edges, each tile also relays the
/// label joining its west and south neighbours: the west and south edges
/// carry the relay, the east edge the tile's `se` label and the north edge
/// its `nw` label. 128 tiles, each fixed by its west and north colours.
pub fn kari_nw() -> WangTileset {
    let mut out: Vec<(String, [String; 4])> = Vec::new();
    for (name, [n, e, s, w]) in hierarchy_tiles() {
        let variants: &[(Diag, Diag)] = match name.as_bytes()[0] {
            b'H' => &[(Diag::H, Diag::V)],
            b'V' => &[(Diag::V, Diag::H)],
            _ => &[(Diag::H, Diag::H), (Diag::V, Diag::V)],
        };
        for &(nw, se) in variants {
            for relay in [Diag::H, Diag::V] {
                let tag = format!("{name}.{}{}{}", nw.letter(), se.letter(), relay.letter());
                out.push((
                    tag,
                    [
                        format!("{n}:{}", nw.letter()),
                        format!("{e}:{}", se.letter()),
                        format!("{s}:{}", relay.letter()),
                        format!("{w}:{}", relay.letter()),
                    ],
                ));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    WangTileset::from_named(&out).expect("kari tiles")
}

/// `kari_nw` as an SFT, sheared by `(x, y) ↦ (x − y, y)`: the north
/// neighbour of a tile moves to the north-west, so a symbol and the one
/// above it fix the symbol to the east of the first.
pub fn east_deterministic_base() -> SftSpec {
    let nw = wang_to_sft(&kari_nw()).expect("kari spec");
    nw.map_patterns(2, |v| {
        let c = v.coords();
        IVec::new(vec![c[0] - c[1], c[1]])
    })
    .expect("sheared spec")
}

/// A `size × size` piece of the hierarchy, as tile indices of `tiles` (rows
/// from south to north). Used to show that large patches exist.
pub fn robinson_patch(tiles: &WangTileset, size: usize) -> Vec<Vec<u32>> {
    let base = 2i64;
    (0..size as i64)
        .map(|dy| {
            (0..size as i64)
                .map(|dx| tiles.tile_index(&tile_at(base + dx, base + dy).0).expect("tile of the hierarchy") as u32)
                .collect()
        })
        .collect()
}

#[cfg(test)]
/// Rotation by a quarter turn counter-clockwise, on colours without parity.
fn rotate(colors: &[String; 4]) -> [String; 4] {
    let rot = |c: &str| -> String {
        let b = c.as_bytes();
        let (flow, side) = (b[1] as char, b[2] as char);
        let new_side = match side {
            'n' => 'w',
            's' => 'e',
            'e' => 'n',
            'w' => 's',
            o => o,
        };
        // +x -> +y, +y -> -x
        match b[0] {
            b'h' => format!("v{flow}{new_side}"),
            _ => format!("h{}{new_side}", if flow == '+' { '-' } else { '+' }),
        }
    };
    let [n, e, s, w] = colors;
    [rot(e), rot(s), rot(w), rot(n)]
}

#[cfg(test)]
/// Shapes without parity, for the rotation check.
fn shapes(tiles: &WangTileset) -> std::collections::BTreeSet<[String; 4]> {
    let c = |i: u32| tiles.colors().token(i)[..3].to_string();
    tiles.tiles().iter().map(|t| [c(t.north), c(t.east), c(t.south), c(t.west)]).collect()
}

#[cfg(test)]
pub(crate) fn is_rotation_closed(tiles: &WangTileset) -> bool {
    let s = shapes(tiles);
    s.iter().all(|t| s.contains(&rotate(t)))
}

#[cfg(test)]
pub(crate) fn shape_count(tiles: &WangTileset) -> usize {
    shapes(tiles).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::{enumerate_torus, find_patch, SearchBudget};
    use crate::sft::{check_deterministic, DeterminismMode};

    #[test]
    fn robinson_inventory() {
        let r = robinson();
        assert_eq!(r.len(), 56);
        assert_eq!(shape_count(&r), 28);
        assert!(is_rotation_closed(&r));
        let crosses = r.tiles().iter().filter(|t| t.name.starts_with('X')).count();
        assert_eq!(crosses, 8);
    }

    /// Wang matching checked directly on the tiles, without the SFT.
    fn wang_valid(tiles: &WangTileset, patch: &[Vec<u32>]) -> bool {
        let t = |i: u32| &tiles.tiles()[i as usize];
        let h = patch.len();
        let w = patch[0].len();
        (0..h).all(|y| {
            (0..w).all(|x| {
                (x + 1 == w || t(patch[y][x]).east == t(patch[y][x + 1]).west)
                    && (y + 1 == h || t(patch[y][x]).north == t(patch[y + 1][x]).south)
            })
        })
    }

    #[test]
    fn hierarchy_patches_are_valid() {
        let r = robinson();
        assert!(wang_valid(&r, &robinson_patch(&r, 40)));
    }

    #[test]
    fn no_small_robinson_tori() {
        let s = wang_to_sft(&robinson()).unwrap();
        for n in 1..=4 {
            let e = enumerate_torus(&s, &[n, n], &SearchBudget::default()).unwrap();
            assert!(e.complete && e.configs.is_empty(), "{n}x{n}");
        }
    }

    #[test]
    fn free_patches_exist() {
        let s = wang_to_sft(&robinson()).unwrap();
        let p = find_patch(&s, &[6, 6], &SearchBudget::default()).unwrap();
        assert!(p.is_some());
    }

    #[test]
    fn kari_is_nw_deterministic() {
        let k = kari_nw();
        assert_eq!(k.len(), 128);
        let s = wang_to_sft(&k).unwrap();
        let d = check_deterministic(&s, DeterminismMode::NorthWest).unwrap();
        assert!(d.deterministic, "{:?}", d.counterexample);
        for n in 1..=3 {
            let e = enumerate_torus(&s, &[n, n], &SearchBudget::default()).unwrap();
            assert!(e.complete && e.configs.is_empty());
        }
    }

    #[test]
    fn kari_labels_the_hierarchy() {
        // diagonal labels of a hierarchical patch: a cross takes the label of
        // the next arm up its NW diagonal
        let r = robinson();
        let k = kari_nw();
        let size = 24;
        let patch = robinson_patch(&r, size + 8);
        let kind = |x: usize, y: usize| r.tiles()[patch[y][x] as usize].name.as_bytes()[0];
        let mut nw_label = vec![vec![Diag::H; size + 8]; size + 8];
        for y in 0..size + 8 {
            for x in 0..size + 8 {
                nw_label[y][x] = match kind(x, y) {
                    b'H' => Diag::H,
                    b'V' => Diag::V,
                    _ => {
                        let (mut cx, mut cy) = (x, y);
                        loop {
                            if cx == 0 || cy + 1 == size + 8 {
                                break Diag::H;
                            }
                            cx -= 1;
                            cy += 1;
                            match kind(cx, cy) {
                                b'H' => break Diag::V,
                                b'V' => break Diag::H,
                                _ => {}
                            }
                        }
                    }
                };
            }
        }
        let se = |x: usize, y: usize| match kind(x, y) {
            b'H' => Diag::V,
            b'V' => Diag::H,
            _ => nw_label[y][x],
        };
        let out: Vec<Vec<u32>> = (1..size + 1)
            .map(|y| {
                (1..size + 1)
                    .map(|x| {
                        let name = &r.tiles()[patch[y][x] as usize].name;
                        let relay = se(x - 1, y);
                        let tag = format!("{name}.{}{}{}", nw_label[y][x].letter(), se(x, y).letter(), relay.letter());
                        k.tile_index(&tag).unwrap_or_else(|| panic!("{tag}")) as u32
                    })
                    .collect()
            })
            .collect();
        assert!(wang_valid(&k, &out));
    }

    #[test]
    fn east_base() {
        let e = east_deterministic_base();
        assert_eq!(e.alphabet().len(), 128);
        let d = check_deterministic(&e, DeterminismMode::East).unwrap();
        assert!(d.deterministic, "{:?}", d.counterexample);
        assert!(enumerate_torus(&e, &[2, 2], &SearchBudget::default()).unwrap().configs.is_empty());
    }
}
