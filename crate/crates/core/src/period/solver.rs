//! Backtracking search over a finite cell space.
//!
//! Variables are `(cell, layer)` pairs. Two-cell forbidden patterns and
//! two-layer links become binary tables and are kept arc consistent; larger
//! patterns get forward checking; links over three or more layers are
//! revised against their tuple list. Branching picks the smallest domain.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::space::Space;
use crate::bits;
use crate::sft::{IVec, SftSpec};

/// Row `a` holds the partner symbols forbidden next to `a`.
struct Table {
    words: usize,
    data: Vec<u64>,
}

impl Table {
    fn new(rows: usize, cols: usize) -> Self {
        let words = bits::words_for(cols);
        Table { words, data: vec![0; rows * words] }
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.data[a * self.words..(a + 1) * self.words]
    }

    fn set(&mut self, a: usize, b: usize) {
        self.data[a * self.words + b / 64] |= 1 << (b % 64);
    }
}

#[derive(Clone, Copy)]
struct Arc {
    other: u32,
    table: u32,
}

struct Nary {
    vars: Vec<u32>,
    syms: Vec<u32>,
}

struct Gac {
    vars: Vec<u32>,
    link: usize,
}

pub(crate) struct Model {
    nvars: usize,
    off: Vec<usize>,
    init: Vec<u64>,
    arcs: Vec<Vec<Arc>>,
    tables: Vec<Table>,
    nary: Vec<Nary>,
    nary_of: Vec<Vec<u32>>,
    gac: Vec<Gac>,
    gac_of: Vec<Vec<u32>>,
    gac_tuples: Vec<Vec<Vec<u32>>>,
    max_words: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    First,
    All,
    Count,
}

#[derive(Clone, Debug)]
pub(crate) struct Limits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    /// Accepted assignments (empty in `Count` mode), sorted for `All`.
    pub solutions: Vec<Vec<u32>>,
    pub count: u64,
    pub nodes: u64,
    pub complete: bool,
}

type Accept<'a> = &'a (dyn Fn(&[u32]) -> bool + Sync);

impl Model {
    pub(crate) fn build(spec: &SftSpec, space: &Space) -> Model {
        let arity = spec.arity();
        let ncell = space.cell_count();
        let nvars = ncell * arity;
        let sizes: Vec<usize> = spec.layers().iter().map(|l| l.alphabet().len()).collect();
        let lw: Vec<usize> = sizes.iter().map(|&n| bits::words_for(n)).collect();
        let mut off = Vec::with_capacity(nvars + 1);
        let mut total = 0;
        for v in 0..nvars {
            off.push(total);
            total += lw[v % arity];
        }
        off.push(total);
        let mut init = vec![0u64; total];
        for v in 0..nvars {
            bits::fill(&mut init[off[v]..off[v + 1]], sizes[v % arity]);
        }
        let mut model = Model {
            nvars,
            off,
            max_words: lw.iter().copied().max().unwrap_or(1),
            init,
            arcs: vec![Vec::new(); nvars],
            tables: Vec::new(),
            nary: Vec::new(),
            nary_of: vec![Vec::new(); nvars],
            gac: Vec::new(),
            gac_of: vec![Vec::new(); nvars],
            gac_tuples: Vec::new(),
        };
        let anchors = space.anchors(spec.radius());
        let mut seen: HashSet<(u32, u32, u32)> = HashSet::new();
        let mut p = vec![0i64; space.dim()];
        let mut locate = |a: &[i64], o: &IVec| {
            for (k, pk) in p.iter_mut().enumerate() {
                *pk = a[k] + o.coords()[k];
            }
            space.locate(&p)
        };
        for (li, layer) in spec.layers().iter().enumerate() {
            let n = sizes[li];
            let mut binary: BTreeMap<(IVec, IVec), (Table, Table)> = BTreeMap::new();
            let mut nary = Vec::new();
            for pat in layer.forbidden() {
                let cells: Vec<(&IVec, u32)> = pat.cells().iter().map(|(k, &s)| (k, s)).collect();
                match cells.len() {
                    1 => {
                        for c in 0..ncell {
                            let v = c * arity + li;
                            bits::clear(&mut model.init[model.off[v]..model.off[v + 1]], cells[0].1 as usize);
                        }
                    }
                    2 => {
                        let key = (cells[0].0.clone(), cells[1].0.clone());
                        let (f, b) = binary.entry(key).or_insert_with(|| (Table::new(n, n), Table::new(n, n)));
                        f.set(cells[0].1 as usize, cells[1].1 as usize);
                        b.set(cells[1].1 as usize, cells[0].1 as usize);
                    }
                    _ => nary.push(cells),
                }
            }
            for ((o0, o1), (f, b)) in binary {
                let tf = model.tables.len() as u32;
                model.tables.push(f);
                model.tables.push(b);
                for a in &anchors {
                    let (Some(c0), Some(c1)) = (locate(a, &o0), locate(a, &o1)) else { continue };
                    let v0 = (c0 * arity + li) as u32;
                    let v1 = (c1 * arity + li) as u32;
                    if v0 == v1 {
                        let t = &model.tables[tf as usize];
                        let bad: Vec<usize> = (0..n).filter(|&s| bits::test(t.row(s), s)).collect();
                        let (lo, hi) = (model.off[v0 as usize], model.off[v0 as usize + 1]);
                        for s in bad {
                            bits::clear(&mut model.init[lo..hi], s);
                        }
                    } else if seen.insert((v0, v1, tf)) {
                        model.arcs[v0 as usize].push(Arc { other: v1, table: tf });
                        model.arcs[v1 as usize].push(Arc { other: v0, table: tf + 1 });
                    }
                }
            }
            let mut seen_nary: HashSet<Vec<(u32, u32)>> = HashSet::new();
            for cells in &nary {
                'anchor: for a in &anchors {
                    let mut placed: BTreeMap<u32, u32> = BTreeMap::new();
                    for &(o, s) in cells {
                        let Some(c) = locate(a, o) else { continue 'anchor };
                        let v = (c * arity + li) as u32;
                        match placed.insert(v, s) {
                            Some(prev) if prev != s => continue 'anchor,
                            _ => {}
                        }
                    }
                    let key: Vec<(u32, u32)> = placed.into_iter().collect();
                    if key.len() == 1 {
                        let v = key[0].0 as usize;
                        bits::clear(&mut model.init[model.off[v]..model.off[v + 1]], key[0].1 as usize);
                    } else if seen_nary.insert(key.clone()) {
                        let idx = model.nary.len() as u32;
                        for &(v, _) in &key {
                            model.nary_of[v as usize].push(idx);
                        }
                        model.nary.push(Nary { vars: key.iter().map(|k| k.0).collect(), syms: key.iter().map(|k| k.1).collect() });
                    }
                }
            }
        }
        for link in spec.links() {
            let ls = link.layers();
            if ls.len() == 2 {
                let (l0, l1) = (ls[0], ls[1]);
                let (n0, n1) = (sizes[l0], sizes[l1]);
                let mut f = Table::new(n0, n1);
                let mut b = Table::new(n1, n0);
                for a in 0..n0 {
                    for c in 0..n1 {
                        if !link.allowed().contains(&vec![a as u32, c as u32]) {
                            f.set(a, c);
                            b.set(c, a);
                        }
                    }
                }
                let tf = model.tables.len() as u32;
                model.tables.push(f);
                model.tables.push(b);
                for c in 0..ncell {
                    let v0 = (c * arity + l0) as u32;
                    let v1 = (c * arity + l1) as u32;
                    model.arcs[v0 as usize].push(Arc { other: v1, table: tf });
                    model.arcs[v1 as usize].push(Arc { other: v0, table: tf + 1 });
                }
            } else {
                let li = model.gac_tuples.len();
                model.gac_tuples.push(link.allowed().iter().cloned().collect());
                for c in 0..ncell {
                    let idx = model.gac.len() as u32;
                    let vars: Vec<u32> = ls.iter().map(|&l| (c * arity + l) as u32).collect();
                    for &v in &vars {
                        model.gac_of[v as usize].push(idx);
                    }
                    model.gac.push(Gac { vars, link: li });
                }
            }
        }
        model
    }

    /// Keep only `allowed` symbols for variable `var`.
    pub(crate) fn restrict(&mut self, var: usize, allowed: &[u32]) {
        let d = &mut self.init[self.off[var]..self.off[var + 1]];
        let keep: Vec<u32> = allowed.iter().copied().filter(|&s| bits::test(d, s as usize)).collect();
        d.iter_mut().for_each(|w| *w = 0);
        for s in keep {
            d[s as usize / 64] |= 1 << (s % 64);
        }
    }

    fn dom<'d>(&self, d: &'d [u64], v: usize) -> &'d [u64] {
        &d[self.off[v]..self.off[v + 1]]
    }

    /// Propagate from the queued variables. `false` on a wipe-out.
    fn propagate(&self, d: &mut [u64], sc: &mut Scratch) -> bool {
        while let Some(x) = sc.queue.pop() {
            let x = x as usize;
            sc.inq[x] = false;
            for arc in &self.arcs[x] {
                let y = arc.other as usize;
                let t = &self.tables[arc.table as usize];
                let (ylo, yhi) = (self.off[y], self.off[y + 1]);
                let w = yhi - ylo;
                let acc = &mut sc.acc[..w];
                acc.copy_from_slice(&d[ylo..yhi]);
                let mut live = true;
                for a in bits::ones(&d[self.off[x]..self.off[x + 1]]) {
                    let row = t.row(a);
                    let mut any = 0;
                    for (ac, r) in acc.iter_mut().zip(row) {
                        *ac &= r;
                        any |= *ac;
                    }
                    if any == 0 {
                        live = false;
                        break;
                    }
                }
                if live {
                    let mut any = 0;
                    for (dy, ac) in d[ylo..yhi].iter_mut().zip(acc.iter()) {
                        *dy &= !ac;
                        any |= *dy;
                    }
                    if any == 0 {
                        return false;
                    }
                    sc.push(y);
                }
            }
            for &ni in &self.nary_of[x] {
                let nc = &self.nary[ni as usize];
                let mut open = None;
                let mut n_open = 0;
                let mut dead = false;
                for (k, (&v, &s)) in nc.vars.iter().zip(&nc.syms).enumerate() {
                    let dv = self.dom(d, v as usize);
                    if !bits::test(dv, s as usize) {
                        dead = true;
                        break;
                    }
                    if bits::count(dv) > 1 {
                        n_open += 1;
                        open = Some(k);
                        if n_open > 1 {
                            break;
                        }
                    }
                }
                if dead || n_open > 1 {
                    continue;
                }
                match open {
                    None => return false,
                    Some(k) => {
                        let v = nc.vars[k] as usize;
                        let (lo, hi) = (self.off[v], self.off[v + 1]);
                        bits::clear(&mut d[lo..hi], nc.syms[k] as usize);
                        sc.push(v);
                    }
                }
            }
            for &gi in &self.gac_of[x] {
                let g = &self.gac[gi as usize];
                let mut support: Vec<Vec<u64>> = g.vars.iter().map(|&v| vec![0u64; self.off[v as usize + 1] - self.off[v as usize]]).collect();
                for t in &self.gac_tuples[g.link] {
                    if g.vars.iter().zip(t).all(|(&v, &s)| bits::test(self.dom(d, v as usize), s as usize)) {
                        for (sp, &s) in support.iter_mut().zip(t) {
                            sp[s as usize / 64] |= 1 << (s % 64);
                        }
                    }
                }
                for (&v, sp) in g.vars.iter().zip(&support) {
                    let v = v as usize;
                    let dv = &mut d[self.off[v]..self.off[v + 1]];
                    let mut changed = false;
                    let mut any = 0;
                    for (w, s) in dv.iter_mut().zip(sp) {
                        let nw = *w & s;
                        changed |= nw != *w;
                        *w = nw;
                        any |= nw;
                    }
                    if any == 0 {
                        return false;
                    }
                    if changed {
                        sc.push(v);
                    }
                }
            }
        }
        true
    }

    fn pick(&self, d: &[u64]) -> Option<usize> {
        let mut best = None;
        let mut best_n = usize::MAX;
        for v in 0..self.nvars {
            let n = bits::count(self.dom(d, v));
            if n > 1 && n < best_n {
                best_n = n;
                best = Some(v);
                if n == 2 {
                    break;
                }
            }
        }
        best
    }

    fn assignment(&self, d: &[u64]) -> Vec<u32> {
        (0..self.nvars).map(|v| bits::first(self.dom(d, v)).expect("assigned") as u32).collect()
    }

    /// Run the search. The result does not depend on the number of
    /// worker threads unless the deadline is hit.
    pub(crate) fn solve(&self, limits: &Limits, goal: Goal, accept: Accept) -> Outcome {
        let mut sc = Scratch::new(self);
        let mut root = self.init.clone();
        for v in 0..self.nvars {
            if bits::is_empty(self.dom(&root, v)) {
                return Outcome { complete: true, ..Outcome::default() };
            }
            sc.push(v);
        }
        if !self.propagate(&mut root, &mut sc) {
            return Outcome { complete: true, ..Outcome::default() };
        }
        let Some(var) = self.pick(&root) else {
            let sol = self.assignment(&root);
            let ok = accept(&sol);
            return Outcome {
                count: ok as u64,
                solutions: if ok && goal != Goal::Count { vec![sol] } else { Vec::new() },
                nodes: 0,
                complete: true,
            };
        };
        let values: Vec<usize> = bits::ones(self.dom(&root, var)).collect();
        let best = AtomicUsize::new(usize::MAX);
        let branches: Vec<Branch> = values
            .par_iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut run = Run {
                    model: self,
                    goal,
                    accept,
                    cap: limits.max_nodes,
                    deadline: limits.deadline,
                    nodes: 0,
                    stamps: Vec::new(),
                    sols: Vec::new(),
                    stop: false,
                    exhausted: false,
                    timed_out: false,
                    index: i,
                    best: &best,
                    sc: Scratch::new(self),
                };
                run.try_value(&root, var, a);
                if goal == Goal::First && !run.stamps.is_empty() {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                Branch {
                    nodes: run.nodes,
                    stamps: run.stamps,
                    sols: run.sols,
                    complete: !run.exhausted && !run.timed_out,
                }
            })
            .collect();
        combine(branches, limits.max_nodes, goal)
    }
}

struct Branch {
    nodes: u64,
    stamps: Vec<u64>,
    sols: Vec<Vec<u32>>,
    complete: bool,
}

/// Replay the branches in order as a single sequential run would.
fn combine(branches: Vec<Branch>, cap: u64, goal: Goal) -> Outcome {
    let mut out = Outcome { complete: true, ..Outcome::default() };
    let mut used = 0u64;
    for br in branches {
        let remaining = cap - used;
        let fits = br.complete && br.nodes <= remaining;
        let take = if fits { br.stamps.len() } else { br.stamps.iter().take_while(|&&s| s <= remaining).count() };
        out.count += take as u64;
        if goal != Goal::Count {
            out.solutions.extend(br.sols.into_iter().take(take));
        }
        if !fits {
            out.nodes = if br.complete || br.nodes >= remaining { cap } else { used + br.nodes };
            out.complete = false;
            break;
        }
        used += br.nodes;
        out.nodes = used;
        if goal == Goal::First && take > 0 {
            break;
        }
    }
    if goal == Goal::All {
        out.solutions.sort();
    }
    out
}

struct Scratch {
    queue: Vec<u32>,
    inq: Vec<bool>,
    acc: Vec<u64>,
}

impl Scratch {
    fn new(m: &Model) -> Self {
        Scratch { queue: Vec::new(), inq: vec![false; m.nvars], acc: vec![0; m.max_words] }
    }

    fn push(&mut self, v: usize) {
        if !self.inq[v] {
            self.inq[v] = true;
            self.queue.push(v as u32);
        }
    }

    fn reset(&mut self) {
        for &v in &self.queue {
            self.inq[v as usize] = false;
        }
        self.queue.clear();
    }
}

struct Run<'a> {
    model: &'a Model,
    goal: Goal,
    accept: Accept<'a>,
    cap: u64,
    deadline: Option<Instant>,
    nodes: u64,
    stamps: Vec<u64>,
    sols: Vec<Vec<u32>>,
    stop: bool,
    exhausted: bool,
    timed_out: bool,
    index: usize,
    best: &'a AtomicUsize,
    sc: Scratch,
}

impl Run<'_> {
    fn try_value(&mut self, d: &[u64], var: usize, a: usize) {
        if self.goal == Goal::First && self.best.load(Ordering::Relaxed) < self.index {
            self.stop = true;
            return;
        }
        if self.nodes >= self.cap {
            self.exhausted = true;
            self.stop = true;
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(t) = self.deadline {
                if Instant::now() >= t {
                    self.timed_out = true;
                    self.stop = true;
                    return;
                }
            }
        }
        let m = self.model;
        let mut child = d.to_vec();
        let dv = &mut child[m.off[var]..m.off[var + 1]];
        dv.iter_mut().for_each(|w| *w = 0);
        dv[a / 64] = 1 << (a % 64);
        self.sc.reset();
        self.sc.push(var);
        if m.propagate(&mut child, &mut self.sc) {
            self.descend(&child);
        }
    }

    fn descend(&mut self, d: &[u64]) {
        let m = self.model;
        match m.pick(d) {
            None => {
                let sol = m.assignment(d);
                if (self.accept)(&sol) {
                    self.stamps.push(self.nodes);
                    if self.goal != Goal::Count {
                        self.sols.push(sol);
                    }
                    if self.goal == Goal::First {
                        self.stop = true;
                    }
                }
            }
            Some(var) => {
                let values: Vec<usize> = bits::ones(m.dom(d, var)).collect();
                for a in values {
                    if self.stop {
                        return;
                    }
                    self.try_value(d, var, a);
                }
            }
        }
    }
}
