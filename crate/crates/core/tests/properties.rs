use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use sftkit::period::{count_strong_with, horizontal_period, stabilizer, CountMode, PeriodGroup, SearchBudget, Verdict, Witness};
use sftkit::sft::{
    is_locally_valid, lift_dimension, parse_sft, pattern_occurs, product, wang_to_sft, write_sft, Allowed, Alphabet, IVec, Layer, LayerProduct, Link,
    Pattern, SftSpec, TorusConfig, WangTile, WangTileset,
};
use sftkit::tm::{compile_tm, count_accepting, count_tm_tilings, parse_tm};

type Cells = Vec<(Vec<i64>, u32)>;

/// Pattern from cells; a repeated position keeps its last symbol.
fn pattern(dim: usize, cells: &Cells) -> Pattern {
    let cells: BTreeMap<&Vec<i64>, u32> = cells.iter().map(|(c, s)| (c, *s)).collect();
    Pattern::new(dim, cells.into_iter().map(|(c, s)| (IVec::new(c.clone()), s))).unwrap()
}

/// Up to three patterns with cells in `[0, 2)^dim` over `q` symbols.
fn patterns(dim: usize, q: u32) -> impl Strategy<Value = Vec<Cells>> {
    let cell = (prop::collection::vec(0i64..2, dim), 0..q);
    prop::collection::vec(prop::collection::vec(cell, 1..=3), 0..=3)
}

fn spec(dim: usize, q: u32, pats: &[Cells]) -> SftSpec {
    SftSpec::new(dim, Alphabet::numeric(q as usize), pats.iter().map(|p| pattern(dim, p)).collect()).unwrap()
}

fn torus(dims: Vec<usize>, q: u32) -> impl Strategy<Value = TorusConfig> {
    let n: usize = dims.iter().product();
    prop::collection::vec(0..q, n).prop_map(move |cells| TorusConfig::plain(dims.clone(), cells).unwrap())
}

fn torus_2d(q: u32) -> impl Strategy<Value = TorusConfig> {
    (1usize..=3, 1usize..=3).prop_flat_map(move |(a, b)| torus(vec![a, b], q))
}

fn valid(t: &TorusConfig, s: &SftSpec) -> bool {
    is_locally_valid(t, s).unwrap().is_empty()
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn wang(edges: &[[u32; 4]], colors: u32) -> WangTileset {
    let tiles = edges
        .iter()
        .enumerate()
        .map(|(i, e)| WangTile { name: format!("t{i}"), north: e[0], east: e[1], south: e[2], west: e[3] })
        .collect();
    WangTileset::new(Alphabet::numeric(colors as usize), tiles).unwrap()
}

/// All translations fixing `t`, reduced mod the torus sides.
fn fixing(t: &TorusConfig) -> BTreeSet<Vec<i64>> {
    let dims = t.dims();
    let mut out = BTreeSet::new();
    for dx in 0..dims[0] as i64 {
        for dy in 0..dims[1] as i64 {
            if t.shifted(&[dx, dy]) == *t {
                out.insert(vec![dx, dy]);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wang_validity_is_edge_matching(
        edges in prop::collection::vec(prop::array::uniform4(0u32..2), 1..=3),
        shape in (1usize..=3, 1usize..=3),
        seed in prop::collection::vec(0usize..3, 9),
    ) {
        let tiles = wang(&edges, 2);
        let s = wang_to_sft(&tiles).unwrap();
        let (w, h) = shape;
        let cells: Vec<u32> = seed[..w * h].iter().map(|&i| (i % edges.len()) as u32).collect();
        let t = TorusConfig::plain(vec![w, h], cells.clone()).unwrap();
        let at = |x: usize, y: usize| edges[cells[(y % h) * w + x % w] as usize];
        let direct = (0..w).all(|x| (0..h).all(|y| at(x, y)[1] == at(x + 1, y)[3] && at(x, y)[0] == at(x, y + 1)[2]));
        prop_assert_eq!(valid(&t, &s), direct);
    }

    #[test]
    fn product_validity_is_componentwise(
        pa in patterns(2, 2),
        pb in patterns(2, 2),
        allowed in prop::collection::btree_set((0u32..2, 0u32..2), 1..=4),
        t in (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| torus(vec![a, b], 2).prop_flat_map(move |x| torus(vec![a, b], 2).prop_map(move |y| (x.clone(), y)))),
    ) {
        let (a, b) = (spec(2, 2, &pa), spec(2, 2, &pb));
        let tuples: Vec<Vec<u32>> = allowed.iter().map(|&(x, y)| vec![x, y]).collect();
        let p = product(&LayerProduct { layers: vec![a.clone(), b.clone()], allowed: Allowed::Tuples(tuples) }).unwrap();
        let (ta, tb) = t;
        let cells: Vec<u32> = ta.raw().iter().zip(tb.raw()).flat_map(|(&x, &y)| [x, y]).collect();
        let joint = TorusConfig::new(ta.dims().to_vec(), 2, cells).unwrap();
        let tuples_ok = ta.raw().iter().zip(tb.raw()).all(|(&x, &y)| allowed.contains(&(x, y)));
        prop_assert_eq!(valid(&joint, &p), valid(&ta, &a) && valid(&tb, &b) && tuples_ok);
        prop_assert_eq!(joint.layer(0), ta);
    }

    #[test]
    fn lift_is_constant_extension(pats in patterns(1, 2), row in prop::collection::vec(0u32..2, 1..=4), m in 1usize..=3, flip in any::<Option<(usize, usize)>>()) {
        let s = spec(1, 2, &pats);
        let lifted = lift_dimension(&s);
        let n = row.len();
        let base = TorusConfig::plain(vec![n], row.clone()).unwrap();
        let mut cells: Vec<u32> = (0..m).flat_map(|_| row.clone()).collect();
        let constant = match flip {
            Some((i, j)) if m > 1 => {
                let k = (j % (m - 1) + 1) * n + i % n;
                cells[k] ^= 1;
                false
            }
            _ => true,
        };
        let t = TorusConfig::plain(vec![n, m], cells).unwrap();
        prop_assert_eq!(valid(&t, &lifted), constant && valid(&base, &s));
    }

    #[test]
    fn occurrences_are_translation_equivariant(
        small in prop::collection::vec((prop::collection::vec(0i64..2, 2), 0u32..2), 1..=2),
        big in prop::collection::vec((prop::collection::vec(0i64..4, 2), 0u32..2), 1..=10),
        shift in prop::collection::vec(-3i64..4, 2),
    ) {
        let small = pattern(2, &small);
        let big = pattern(2, &big);
        let v = IVec::new(shift);
        let moved: BTreeSet<IVec> = pattern_occurs(&small, &big.translate(&v)).unwrap().into_iter().collect();
        let expect: BTreeSet<IVec> = pattern_occurs(&small, &big).unwrap().into_iter().map(|p| p.add(&v)).collect();
        prop_assert_eq!(moved, expect);
    }

    #[test]
    fn stabilizer_matches_brute_force(t in torus_2d(2)) {
        let g = stabilizer(&t);
        let dims = t.dims();
        prop_assert!(g.contains(&[dims[0] as i64, 0]) && g.contains(&[0, dims[1] as i64]));
        let brute = fixing(&t);
        for dx in 0..dims[0] as i64 {
            for dy in 0..dims[1] as i64 {
                prop_assert_eq!(g.contains(&[dx, dy]), brute.contains(&vec![dx, dy]));
            }
        }
        let gens: Vec<Vec<i64>> = brute.into_iter().chain([vec![dims[0] as i64, 0], vec![0, dims[1] as i64]]).collect();
        prop_assert_eq!(g, PeriodGroup::from_generators(2, &gens));
    }

    #[test]
    fn text_round_trip(pats in patterns(2, 3)) {
        let s = spec(2, 3, &pats);
        let back = parse_sft(&write_sft(&s)).unwrap();
        prop_assert_eq!(write_sft(&back), write_sft(&s));
        prop_assert_eq!(back.radius(), s.radius());
    }

    #[test]
    fn torus_lookup_wraps(t in torus_2d(3), x in -7i64..7, y in -7i64..7) {
        let (w, h) = (t.dims()[0] as i64, t.dims()[1] as i64);
        prop_assert_eq!(t.get(&[x, y]), t.get(&[x.rem_euclid(w), y.rem_euclid(h)]));
        prop_assert_eq!(t.len(), (w * h) as usize);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn count_modes_agree(case in (1usize..=2, 1u32..=3, 1usize..=3).prop_flat_map(|(d, q, p)| patterns(d, q).prop_map(move |x| (d, q, p, x)))) {
        let (dim, q, p, pats) = case;
        let s = spec(dim, q, &pats);
        let a = count_strong_with(&s, p, CountMode::Stabilizer, &budget()).unwrap();
        let b = count_strong_with(&s, p, CountMode::LexMin, &budget()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn horizontal_witnesses_recheck(pats in patterns(2, 2), n in 1i64..=4) {
        let s = spec(2, 2, &pats);
        let r = horizontal_period(&s, n, &budget()).unwrap();
        prop_assert_ne!(r.verdict, Verdict::Unknown);
        if r.verdict == Verdict::Yes {
            let Some(Witness::Torus(t)) = &r.witness else { panic!("no torus") };
            prop_assert_eq!(t.dims()[0] as i64, n);
            prop_assert!(valid(t, &s));
            let g = stabilizer(t);
            prop_assert!((1..n).all(|k| !g.contains(&[k, 0])));
        }
    }

    /// At most one transition per (state, symbol), so at most one tiling.
    #[test]
    fn deterministic_machines_tile_at_most_once(
        delta in prop::collection::vec(prop::option::of((0usize..3, 0usize..3, 0usize..3)), 6),
        input in prop::collection::vec(0u32..2, 0..=3),
        w in 1usize..=4,
        t in 1usize..=5,
    ) {
        prop_assume!(input.len() <= w);
        let states = ["s", "a", "h"];
        let syms = ["0", "1", "_"];
        let moves = ["L", "S", "R"];
        let mut text = String::from("%tm\nstates: s a h\ntape: 0 1 _\nblank: _\ninput: 0 1\ninitial: s\nhalting: h\n");
        for (i, d) in delta.iter().enumerate() {
            if let Some((q, a, m)) = d {
                text += &format!("delta: {} {} -> {} {} {}\n", states[i / 3], syms[i % 3], states[*q], syms[*a], moves[*m]);
            }
        }
        let tm = parse_tm(&text).unwrap();
        let tiles = compile_tm(&tm);
        let tilings = count_tm_tilings(&tm, &tiles, w, t, &input);
        prop_assert!(tilings <= 1);
        prop_assert_eq!(tilings, count_accepting(&tm, &input, t, w).unwrap());
    }
}

#[test]
fn alphabet_is_a_bijection() {
    let a = Alphabet::new(["x", "y", "zz"]).unwrap();
    for (i, tok) in a.tokens().iter().enumerate() {
        assert_eq!(a.index_of(tok), Some(i as u32));
        assert_eq!(a.token(i as u32), tok);
    }
    assert!(Alphabet::new(["x", "x"]).is_err());
    assert!(Alphabet::new(Vec::<String>::new()).is_err());
}

#[test]
fn products_through_links_match_tuples() {
    let a = Layer::new("a", Alphabet::numeric(2), Vec::new()).unwrap();
    let b = Layer::new("b", Alphabet::numeric(2), Vec::new()).unwrap();
    let eq = Link::new(vec![0, 1], vec![vec![0, 0], vec![1, 1]]).unwrap();
    let linked = SftSpec::layered(2, vec![a, b], vec![eq]).unwrap();
    let full = SftSpec::new(2, Alphabet::numeric(2), Vec::new()).unwrap();
    let tuples = product(&LayerProduct { layers: vec![full.clone(), full], allowed: Allowed::Tuples(vec![vec![0, 0], vec![1, 1]]) }).unwrap();
    for p in 1..=2 {
        assert_eq!(count_strong_with(&linked, p, CountMode::Stabilizer, &budget()).unwrap(), count_strong_with(&tuples, p, CountMode::Stabilizer, &budget()).unwrap());
    }
}
