use std::fmt;
use std::time::{Duration, Instant};

use super::solver::Limits;
use super::space::Space;
use crate::sft::{text_lines, SftError, SftSpec, TorusConfig};

/// Resource caps shared by every search in this module.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// Cap on the height of tori tried when scanning for a vertical companion period.
    pub max_vertical: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000, max_seconds: 60.0, max_vertical: 64 }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<(), PeriodError> {
        if self.max_nodes == 0 || self.max_vertical == 0 || !(self.max_seconds > 0.0) {
            return Err(PeriodError::InvalidArgument("budget values must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn start(&self) -> Clock {
        let start = Instant::now();
        let deadline = Duration::try_from_secs_f64(self.max_seconds).ok().and_then(|d| start.checked_add(d));
        Clock { start, deadline, max_nodes: self.max_nodes, used: 0 }
    }
}

/// Running account of one budgeted operation.
pub(crate) struct Clock {
    start: Instant,
    deadline: Option<Instant>,
    max_nodes: u64,
    pub used: u64,
}

impl Clock {
    pub fn limits(&self) -> Limits {
        Limits { max_nodes: self.max_nodes.saturating_sub(self.used), deadline: self.deadline }
    }

    pub fn spent(&mut self, nodes: u64) {
        self.used = self.used.saturating_add(nodes);
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.max_nodes || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn report(&self, verdict: Verdict, witness: Option<Witness>) -> WitnessReport {
        WitnessReport { verdict, witness, nodes: self.used, seconds: self.start.elapsed().as_secs_f64() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PeriodError {
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// The budget ran out before the question was settled.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Torus(TorusConfig),
    Walk(StripWalk),
}

/// Bi-infinite sequence of strips `… u_0 … u_{i-1} | u_i … u_k | u_j … u_{k-1} …`:
/// the first cycle repeated to the left, the last cycle repeated to the right.
///
/// Strip `t` covers `{ 4r·m·t ≤ −n·x + m·y < 4r·m·(t+1) }` in walk coordinates;
/// `transpose`/`reflect` map original coordinates onto them (transpose first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripWalk {
    pub m: i64,
    pub n: i64,
    pub r: usize,
    pub arity: usize,
    pub transpose: bool,
    pub reflect: bool,
    /// Strip patterns `u_0 … u_k`, each in band cell order.
    pub strips: Vec<Vec<u32>>,
    /// `u_i = u_0`.
    pub i: usize,
    /// `u_j = u_k`.
    pub j: usize,
}

impl StripWalk {
    fn band(&self) -> Space {
        let h = 4 * self.r as i64 * self.m;
        Space::Band { m: self.m, n: self.n, lo: 0, hi: h }
    }

    /// Index into `strips` of bi-infinite position `t`.
    pub fn strip_index(&self, t: i64) -> usize {
        let k = self.strips.len() as i64 - 1;
        if t < 0 {
            t.rem_euclid(self.i as i64) as usize
        } else if t <= k {
            t as usize
        } else {
            let j = self.j as i64;
            (j + (t - j).rem_euclid(k - j)) as usize
        }
    }

    /// Map a position given in the original coordinates into walk coordinates.
    pub fn to_walk(&self, p: [i64; 2]) -> [i64; 2] {
        let [mut x, mut y] = p;
        if self.transpose {
            std::mem::swap(&mut x, &mut y);
        }
        if self.reflect {
            x = -x;
        }
        [x, y]
    }

    /// Cell tuple at an original-coordinate position.
    pub fn cell(&self, p: [i64; 2]) -> &[u32] {
        let [x, y] = self.to_walk(p);
        let h = 4 * self.r as i64 * self.m;
        let t = (-self.n * x + self.m * y).div_euclid(h);
        let band = self.band();
        let c = band.locate(&[x, y - 4 * self.r as i64 * t]).expect("inside strip");
        let s = &self.strips[self.strip_index(t)];
        &s[c * self.arity..(c + 1) * self.arity]
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub nodes: u64,
    pub seconds: f64,
}

impl WitnessReport {
    /// `verdict=<v> nodes=<n>`, plus `seconds=<s>` when `timing` is set.
    pub fn machine_line(&self, timing: bool) -> String {
        let mut s = format!("verdict={} nodes={}", self.verdict, self.nodes);
        if timing {
            s.push_str(&format!(" seconds={:.3}", self.seconds));
        }
        s
    }

    /// Human-readable report including the witness, rows printed top first.
    pub fn render(&self, spec: &SftSpec, timing: bool) -> String {
        let mut out = self.machine_line(timing);
        out.push('\n');
        match &self.witness {
            None => {}
            Some(Witness::Torus(t)) => {
                let dims: Vec<String> = t.dims().iter().map(|d| d.to_string()).collect();
                out.push_str(&format!("witness torus {}\n", dims.join("x")));
                out.push_str(&grid_text(t, spec));
            }
            Some(Witness::Walk(w)) => {
                out.push_str(&format!(
                    "witness walk m={} n={} length={} first-cycle={} last-cycle-start={}\n",
                    w.m,
                    w.n,
                    w.strips.len() - 1,
                    w.i,
                    w.j
                ));
                for (t, s) in w.strips.iter().enumerate() {
                    let toks: Vec<String> = s.chunks(w.arity).map(|c| spec.token(c)).collect();
                    out.push_str(&format!("u{t}: {}\n", toks.join(" ")));
                }
            }
        }
        out
    }
}

/// Tokens of a torus, one line per row, top row first (2D) or a single
/// line in cell order otherwise.
pub fn grid_text(t: &TorusConfig, spec: &SftSpec) -> String {
    let mut out = String::new();
    if t.dim() == 2 {
        let (w, h) = (t.dims()[0], t.dims()[1]);
        let width = (0..t.len()).map(|i| spec.token(t.cell(i)).chars().count()).max().unwrap_or(1);
        for y in (0..h).rev() {
            let row: Vec<String> =
                (0..w).map(|x| format!("{:<width$}", spec.token(t.get(&[x as i64, y as i64])))).collect();
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        }
    } else {
        let row: Vec<String> = (0..t.len()).map(|i| spec.token(t.cell(i))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `%walk` text of a strip walk: the header fields, then one `strip:` line
/// of cell tokens per strip in band cell order.
pub fn write_walk(w: &StripWalk, spec: &SftSpec) -> String {
    let mut out = String::from("%walk\n");
    out.push_str(&format!("vector: {} {}\nr: {}\n", w.m, w.n, w.r));
    out.push_str(&format!("transpose: {}\nreflect: {}\n", u8::from(w.transpose), u8::from(w.reflect)));
    out.push_str(&format!("cycles: {} {}\n", w.i, w.j));
    for s in &w.strips {
        let toks: Vec<String> = s.chunks(w.arity).map(|c| spec.token(c)).collect();
        out.push_str(&format!("strip: {}\n", toks.join(" ")));
    }
    out
}

pub fn parse_walk(text: &str, spec: &SftSpec) -> Result<StripWalk, SftError> {
    let mut lines = text_lines(text);
    match lines.next() {
        Some((_, "%walk")) => {}
        Some((n, _)) => return Err(SftError::parse(n, "expected `%walk` header")),
        None => return Err(SftError::parse(1, "empty input")),
    }
    let mut w = StripWalk { m: 0, n: 0, r: 0, arity: spec.arity(), transpose: false, reflect: false, strips: Vec::new(), i: 0, j: 0 };
    let mut seen = [false; 4];
    for (n, line) in lines {
        let (key, rest) = line.split_once(':').ok_or_else(|| SftError::parse(n, format!("expected `key: value`, found `{line}`")))?;
        let nums = || -> Result<Vec<i64>, SftError> {
            rest.split_whitespace().map(|t| t.parse::<i64>().map_err(|_| SftError::parse(n, format!("bad number `{t}`")))).collect()
        };
        let flag = || match rest.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(SftError::parse(n, format!("expected 0 or 1, found `{other}`"))),
        };
        match key.trim() {
            "vector" => match nums()?[..] {
                [m, k] => (w.m, w.n, seen[0]) = (m, k, true),
                _ => return Err(SftError::parse(n, "`vector:` takes two integers")),
            },
            "r" => match nums()?[..] {
                [r] if r > 0 => (w.r, seen[1]) = (r as usize, true),
                _ => return Err(SftError::parse(n, "`r:` takes a positive integer")),
            },
            "transpose" => w.transpose = flag()?,
            "reflect" => w.reflect = flag()?,
            "cycles" => match nums()?[..] {
                [i, j] if i >= 0 && j >= 0 => (w.i, w.j, seen[2]) = (i as usize, j as usize, true),
                _ => return Err(SftError::parse(n, "`cycles:` takes two indices")),
            },
            "strip" => {
                let mut cells = Vec::new();
                for tok in rest.split_whitespace() {
                    cells.extend(spec.parse_token(tok).map_err(|e| SftError::parse(n, e.to_string()))?);
                }
                w.strips.push(cells);
                seen[3] = true;
            }
            other => return Err(SftError::parse(n, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        let name = ["vector", "r", "cycles", "strip"][k];
        return Err(SftError::parse(1, format!("missing `{name}:`")));
    }
    Ok(w)
}
