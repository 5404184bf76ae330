//! The strip graph `G_{m,n}`.
//!
//! `S = { 0 ≤ −n·x + m·y < 4rm }` taken modulo `(m, n)`; vertices are the
//! admissible patterns on `S`, and `P → P'` when `P` below `P'` shifted up
//! by `4r` is admissible on the doubled band. Only the cells near the seam
//! matter for an edge, so edges are stored through seam signatures.

use std::collections::{BTreeSet, HashMap};

use super::graph;
use super::report::{Clock, PeriodError, SearchBudget};
use super::solver::{Goal, Model};
use super::space::Space;
use crate::sft::SftSpec;

#[derive(Clone, Debug)]
pub struct StripGraph {
    m: i64,
    n: i64,
    r: usize,
    arity: usize,
    cells: Vec<[i64; 2]>,
    vertices: Vec<Vec<u32>>,
    top: Vec<u32>,
    bot: Vec<u32>,
    compat: Vec<Vec<u32>>,
    by_bot: Vec<Vec<u32>>,
    nodes: u64,
}

/// A crossing placement: `(slot, symbol)` pairs, where slots index
/// `top signature ++ bottom signature` (one symbol per slot).
type Crossing = Vec<(usize, u32)>;

pub fn build_strip_graph(sft: &SftSpec, m: i64, n: i64, budget: &SearchBudget) -> Result<StripGraph, PeriodError> {
    budget.validate()?;
    let mut clock = budget.start();
    build_with(sft, m, n, &mut clock)
}

pub(crate) fn build_with(sft: &SftSpec, m: i64, n: i64, clock: &mut Clock) -> Result<StripGraph, PeriodError> {
    if sft.dim() != 2 {
        return Err(PeriodError::InvalidArgument(format!("strip graphs need dimension 2, spec has {}", sft.dim())));
    }
    if m < n.abs() || (m, n) == (0, 0) {
        return Err(PeriodError::InvalidArgument(format!("strip ({m},{n}) needs m ≥ |n| and (m,n) ≠ (0,0)")));
    }
    let r = sft.radius().max(1);
    let arity = sft.arity();
    let h = 4 * r as i64 * m;
    let strip = Space::Band { m, n, lo: 0, hi: h };
    let double = Space::Band { m, n, lo: 0, hi: 2 * h };
    let model = Model::build(sft, &strip);
    let out = model.solve(&clock.limits(), Goal::All, &|_| true);
    clock.spent(out.nodes);
    if !out.complete {
        return Err(PeriodError::BudgetExhausted { nodes: clock.used });
    }
    let vertices = out.solutions;
    let ncell = strip.cell_count();
    let cells: Vec<[i64; 2]> = (0..ncell).map(|c| strip.position(c).try_into().expect("2d")).collect();

    // crossing placements over the doubled band: cell c < ncell is the lower
    // copy, c ≥ ncell the upper copy of cell c − ncell
    let dcell = |p: &[i64]| -> Option<usize> {
        let c = double.locate(p)?;
        let q = double.position(c);
        let hh = -n * q[0] + m * q[1];
        if hh < h {
            strip.locate(&q)
        } else {
            strip.locate(&[q[0], q[1] - 4 * r as i64]).map(|c| c + ncell)
        }
    };
    let anchors = double.anchors(sft.radius());
    let mut raw: Vec<Vec<(usize, usize, u32)>> = Vec::new(); // (dcell, layer, symbol)
    let mut seen = BTreeSet::new();
    for (li, layer) in sft.layers().iter().enumerate() {
        for pat in layer.forbidden() {
            'a: for a in &anchors {
                let mut pl = Vec::with_capacity(pat.len());
                for (o, &s) in pat.cells() {
                    let Some(c) = dcell(&[a[0] + o.coords()[0], a[1] + o.coords()[1]]) else { continue 'a };
                    pl.push((c, li, s));
                }
                let lower = pl.iter().any(|x| x.0 < ncell);
                let upper = pl.iter().any(|x| x.0 >= ncell);
                if lower && upper {
                    pl.sort_unstable();
                    pl.dedup();
                    if seen.insert(pl.clone()) {
                        raw.push(pl);
                    }
                }
            }
        }
    }
    let top_cells: BTreeSet<usize> = raw.iter().flatten().filter(|x| x.0 < ncell).map(|x| x.0).collect();
    let bot_cells: BTreeSet<usize> = raw.iter().flatten().filter(|x| x.0 >= ncell).map(|x| x.0 - ncell).collect();
    let top_cells: Vec<usize> = top_cells.into_iter().collect();
    let bot_cells: Vec<usize> = bot_cells.into_iter().collect();
    let slot = |c: usize, li: usize| -> usize {
        if c < ncell {
            top_cells.binary_search(&c).expect("top") * arity + li
        } else {
            (top_cells.len() + bot_cells.binary_search(&(c - ncell)).expect("bot")) * arity + li
        }
    };
    let mut crossings: Vec<Crossing> = Vec::new();
    for pl in &raw {
        let mut cr: Crossing = pl.iter().map(|&(c, li, s)| (slot(c, li), s)).collect();
        cr.sort_unstable();
        // a slot with two different symbols can never match
        if cr.windows(2).all(|w| w[0].0 != w[1].0 || w[0].1 == w[1].1) {
            cr.dedup();
            crossings.push(cr);
        }
    }

    let sig = |v: &[u32], cs: &[usize]| -> Vec<u32> { cs.iter().flat_map(|&c| v[c * arity..(c + 1) * arity].iter().copied()).collect() };
    let mut top_ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut bot_ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut top_list = Vec::new();
    let mut bot_list = Vec::new();
    let mut top = Vec::with_capacity(vertices.len());
    let mut bot = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let t = sig(v, &top_cells);
        let id = *top_ids.entry(t.clone()).or_insert_with(|| {
            top_list.push(t);
            top_list.len() as u32 - 1
        });
        top.push(id);
        let b = sig(v, &bot_cells);
        let id = *bot_ids.entry(b.clone()).or_insert_with(|| {
            bot_list.push(b);
            bot_list.len() as u32 - 1
        });
        bot.push(id);
    }
    let mut by_bot = vec![Vec::new(); bot_list.len()];
    for (i, &b) in bot.iter().enumerate() {
        by_bot[b as usize].push(i as u32);
    }
    let mut joined = Vec::new();
    let compat: Vec<Vec<u32>> = top_list
        .iter()
        .map(|t| {
            (0..bot_list.len() as u32)
                .filter(|&b| {
                    joined.clear();
                    joined.extend_from_slice(t);
                    joined.extend_from_slice(&bot_list[b as usize]);
                    !crossings.iter().any(|cr| cr.iter().all(|&(s, x)| joined[s] == x))
                })
                .collect()
        })
        .collect();
    Ok(StripGraph { m, n, r, arity, cells, vertices, top, bot, compat, by_bot, nodes: out.nodes })
}

impl StripGraph {
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Radius used for the strip height (`4r` rows), at least 1.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Representative positions of the strip cells, in vertex-pattern order.
    pub fn cells(&self) -> &[[i64; 2]] {
        &self.cells
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex patterns in lexicographic order, `arity` symbols per cell.
    pub fn vertex(&self, i: usize) -> &[u32] {
        &self.vertices[i]
    }

    /// Index of a vertex pattern.
    pub fn find(&self, pattern: &[u32]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(pattern)).ok()
    }

    /// Solver nodes spent enumerating the vertices.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn successors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.compat[self.top[i] as usize]
            .iter()
            .flat_map(|&b| self.by_bot[b as usize].iter().map(|&v| v as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.compat[self.top[i] as usize].binary_search(&self.bot[j]).is_ok()
    }

    pub fn edge_count(&self) -> u64 {
        self.top
            .iter()
            .map(|&t| self.compat[t as usize].iter().map(|&b| self.by_bot[b as usize].len() as u64).sum::<u64>())
            .sum()
    }

    /// Whether vertex `i` is invariant under the shift by `v` (a vector
    /// parallel to `(m, n)`, so the strip maps onto itself).
    pub fn is_periodic_under(&self, i: usize, v: [i64; 2]) -> bool {
        let band = Space::Band { m: self.m, n: self.n, lo: 0, hi: 4 * self.r as i64 * self.m };
        let p = &self.vertices[i];
        let a = self.arity;
        self.cells.iter().enumerate().all(|(c, z)| {
            let d = band.locate(&[z[0] + v[0], z[1] + v[1]]).expect("parallel shift");
            p[c * a..(c + 1) * a] == p[d * a..(d + 1) * a]
        })
    }

    /// Graph with seam hubs: nodes `0..V` are vertices, then one node per
    /// top signature, then one per bottom signature. Its cycles through
    /// vertices are exactly the cycles of the strip graph.
    pub(crate) fn hub_count(&self) -> usize {
        self.vertices.len() + self.compat.len() + self.by_bot.len()
    }

    pub(crate) fn hub_successors(&self, x: usize, out: &mut Vec<usize>) {
        let nv = self.vertices.len();
        let nt = self.compat.len();
        if x < nv {
            out.push(nv + self.top[x] as usize);
        } else if x < nv + nt {
            out.extend(self.compat[x - nv].iter().map(|&b| nv + nt + b as usize));
        } else {
            out.extend(self.by_bot[x - nv - nt].iter().map(|&v| v as usize));
        }
    }

    /// Shortest vertex path from `from` to a vertex satisfying `goal`,
    /// staying on vertices accepted by `allow` (hubs are free).
    pub(crate) fn path(
        &self,
        from: usize,
        allow: &dyn Fn(usize) -> bool,
        goal: &dyn Fn(usize) -> bool,
        nonempty: bool,
    ) -> Option<Vec<usize>> {
        let nv = self.vertices.len();
        let p = graph::bfs_path(
            self.hub_count(),
            &|x, out| self.hub_successors(x, out),
            from,
            &|x| x >= nv || allow(x),
            &|x| x < nv && goal(x),
            nonempty,
        )?;
        Some(p.into_iter().filter(|&x| x < nv).collect())
    }

    /// DOT text; labels list the cell tokens in vertex-pattern order.
    pub fn to_dot(&self, spec: &SftSpec) -> String {
        let mut s = format!("digraph strip_{}_{} {{\n", self.m, self.n).replace('-', "m");
        for (i, v) in self.vertices.iter().enumerate() {
            let toks: Vec<String> = v.chunks(self.arity).map(|c| spec.token(c)).collect();
            let label = toks.join(" ").replace('\\', "\\\\").replace('"', "\\\"");
            s.push_str(&format!("  v{i} [label=\"{label}\"];\n"));
        }
        for i in 0..self.vertices.len() {
            for j in self.successors(i) {
                s.push_str(&format!("  v{i} -> v{j};\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}
