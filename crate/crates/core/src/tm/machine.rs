use std::fmt;

use thiserror::Error;

use crate::sft::{Alphabet, SftError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TmError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("unsupported machine: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Sft(#[from] SftError),
}

fn perr(line: usize, msg: impl Into<String>) -> TmError {
    TmError::Parse { line, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    pub fn offset(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Stay => 0,
            Move::Right => 1,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            Move::Left => "L",
            Move::Stay => "S",
            Move::Right => "R",
        }
    }
}

/// One line of the transition relation, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub state: u32,
    pub read: u32,
    pub next: u32,
    pub write: u32,
    pub mv: Move,
}

/// A nondeterministic one-tape machine `(Q, Γ, B, Σ, δ, q0, H)`.
///
/// State and tape tokens are restricted to ASCII letters, digits and `_` so
/// that compiled tile and colour names stay unambiguous; `halt` and `white`
/// are reserved for the rectangle boundary and may not be tape symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmSpec {
    states: Alphabet,
    tape: Alphabet,
    blank: u32,
    input: Vec<u32>,
    initial: u32,
    halting: Vec<bool>,
    delta: Vec<Transition>,
}

fn check_name(kind: &str, s: &str) -> Result<(), TmError> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(TmError::Invalid(format!("{kind} `{s}` must use letters, digits and `_`")));
    }
    Ok(())
}

impl TmSpec {
    pub fn new(
        states: Alphabet,
        tape: Alphabet,
        blank: u32,
        input: Vec<u32>,
        initial: u32,
        halting: Vec<u32>,
        delta: Vec<Transition>,
    ) -> Result<Self, TmError> {
        for s in states.tokens() {
            check_name("state", s)?;
        }
        for s in tape.tokens() {
            check_name("tape symbol", s)?;
            if s == "halt" || s == "white" {
                return Err(TmError::Invalid(format!("tape symbol `{s}` is reserved")));
            }
        }
        let nq = states.len() as u32;
        let ng = tape.len() as u32;
        if blank >= ng || initial >= nq {
            return Err(TmError::Invalid("blank or initial state out of range".into()));
        }
        if input.iter().any(|&a| a >= ng || a == blank) {
            return Err(TmError::Invalid("input alphabet must be tape symbols other than the blank".into()));
        }
        let mut h = vec![false; nq as usize];
        for q in halting {
            if q >= nq {
                return Err(TmError::Invalid("halting state out of range".into()));
            }
            h[q as usize] = true;
        }
        for d in &delta {
            if d.state >= nq || d.next >= nq || d.read >= ng || d.write >= ng {
                return Err(TmError::Invalid("transition refers to an undeclared state or symbol".into()));
            }
            if h[d.state as usize] {
                return Err(TmError::Invalid(format!("transition out of halting state `{}`", states.token(d.state))));
            }
        }
        let mut input = input;
        input.sort_unstable();
        input.dedup();
        Ok(TmSpec { states, tape, blank, input, initial, halting: h, delta })
    }

    pub fn states(&self) -> &Alphabet {
        &self.states
    }

    pub fn tape(&self) -> &Alphabet {
        &self.tape
    }

    pub fn blank(&self) -> u32 {
        self.blank
    }

    /// Input symbols, sorted.
    pub fn input(&self) -> &[u32] {
        &self.input
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn is_halting(&self, q: u32) -> bool {
        self.halting[q as usize]
    }

    pub fn delta(&self) -> &[Transition] {
        &self.delta
    }

    /// Transitions from `(q, a)` with their line indices, in declaration order.
    pub fn moves(&self, q: u32, a: u32) -> impl Iterator<Item = (usize, &Transition)> {
        self.delta.iter().enumerate().filter(move |(_, d)| d.state == q && d.read == a)
    }

    /// At most one transition per `(state, symbol)`.
    pub fn is_deterministic(&self) -> bool {
        let mut keys: Vec<(u32, u32)> = self.delta.iter().map(|d| (d.state, d.read)).collect();
        let n = keys.len();
        keys.sort_unstable();
        keys.dedup();
        keys.len() == n
    }

    /// Read a word over the input alphabet: whitespace-separated tokens, or
    /// one token per character when there is no whitespace.
    pub fn word(&self, text: &str) -> Result<Vec<u32>, TmError> {
        let toks: Vec<String> = if text.trim().contains(char::is_whitespace) {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.trim().chars().map(String::from).collect()
        };
        toks.iter()
            .map(|t| match self.tape.index_of(t) {
                Some(a) if self.input.binary_search(&a).is_ok() => Ok(a),
                _ => Err(TmError::Invalid(format!("`{t}` is not an input symbol"))),
            })
            .collect()
    }
}

impl fmt::Display for TmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_tm(self))
    }
}

pub fn write_tm(tm: &TmSpec) -> String {
    let q = |i: u32| tm.states.token(i);
    let a = |i: u32| tm.tape.token(i);
    let mut out = String::from("%tm\n");
    out.push_str(&format!("states: {}\n", tm.states.tokens().join(" ")));
    out.push_str(&format!("tape: {}\n", tm.tape.tokens().join(" ")));
    out.push_str(&format!("blank: {}\n", a(tm.blank)));
    let input: Vec<&str> = tm.input.iter().map(|&i| a(i)).collect();
    out.push_str(&format!("input: {}\n", input.join(" ")));
    out.push_str(&format!("initial: {}\n", q(tm.initial)));
    let halting: Vec<&str> = (0..tm.states.len() as u32).filter(|&i| tm.is_halting(i)).map(q).collect();
    out.push_str(&format!("halting: {}\n", halting.join(" ")));
    for d in &tm.delta {
        out.push_str(&format!("delta: {} {} -> {} {} {}\n", q(d.state), a(d.read), q(d.next), a(d.write), d.mv.letter()));
    }
    out
}

/// Parse the `%tm` format. Duplicate `delta:` lines are kept: each one is a
/// separate nondeterministic branch.
pub fn parse_tm(text: &str) -> Result<TmSpec, TmError> {
    let mut lines = crate::sft::text_lines(text);
    match lines.next() {
        Some((_, "%tm")) => {}
        Some((n, _)) => return Err(perr(n, "expected `%tm` header")),
        None => return Err(perr(1, "empty input")),
    }
    let mut fields: [Option<(usize, String)>; 6] = Default::default();
    const KEYS: [&str; 6] = ["states", "tape", "blank", "input", "initial", "halting"];
    let mut deltas: Vec<(usize, String)> = Vec::new();
    let mut last = 1;
    for (n, line) in lines {
        last = n;
        let (key, rest) = line.split_once(':').ok_or_else(|| perr(n, format!("expected `key: value`, found `{line}`")))?;
        let (key, rest) = (key.trim(), rest.trim());
        if key == "delta" {
            deltas.push((n, rest.to_string()));
        } else if let Some(i) = KEYS.iter().position(|k| *k == key) {
            if fields[i].is_some() {
                return Err(perr(n, format!("duplicate `{key}:`")));
            }
            fields[i] = Some((n, rest.to_string()));
        } else {
            return Err(perr(n, format!("unknown directive `{key}`")));
        }
    }
    let field = |i: usize| fields[i].clone().ok_or_else(|| perr(last, format!("missing `{}:`", KEYS[i])));
    let (ln, s) = field(0)?;
    let states = Alphabet::new(s.split_whitespace()).map_err(|e| perr(ln, e.to_string()))?;
    let (ln, s) = field(1)?;
    let tape = Alphabet::new(s.split_whitespace()).map_err(|e| perr(ln, e.to_string()))?;
    let state = |ln: usize, t: &str| states.index_of(t).ok_or_else(|| perr(ln, format!("undeclared state `{t}`")));
    let sym = |ln: usize, t: &str| tape.index_of(t).ok_or_else(|| perr(ln, format!("undeclared symbol `{t}`")));
    let single = |i: usize| -> Result<(usize, String), TmError> {
        let (ln, s) = field(i)?;
        let mut it = s.split_whitespace();
        match (it.next(), it.next()) {
            (Some(t), None) => Ok((ln, t.to_string())),
            _ => Err(perr(ln, format!("`{}:` takes exactly one token", KEYS[i]))),
        }
    };
    let (ln, b) = single(2)?;
    let blank = sym(ln, &b)?;
    let (ln, s) = field(3)?;
    let input = s.split_whitespace().map(|t| sym(ln, t)).collect::<Result<Vec<_>, _>>()?;
    if input.contains(&blank) {
        return Err(perr(ln, "the blank cannot be an input symbol"));
    }
    let (ln, q0) = single(4)?;
    let initial = state(ln, &q0)?;
    let (ln, s) = field(5)?;
    let halting = s.split_whitespace().map(|t| state(ln, t)).collect::<Result<Vec<_>, _>>()?;
    let mut delta = Vec::new();
    for (ln, d) in deltas {
        let (lhs, rhs) = d.split_once("->").ok_or_else(|| perr(ln, "expected `<q> <sym> -> <q'> <sym'> <L|R|S>`"))?;
        let l: Vec<&str> = lhs.split_whitespace().collect();
        let r: Vec<&str> = rhs.split_whitespace().collect();
        if l.len() != 2 || r.len() != 3 {
            return Err(perr(ln, "expected `<q> <sym> -> <q'> <sym'> <L|R|S>`"));
        }
        let mv = match r[2] {
            "L" => Move::Left,
            "R" => Move::Right,
            "S" => Move::Stay,
            m => return Err(perr(ln, format!("move must be L, R or S, found `{m}`"))),
        };
        let t = Transition { state: state(ln, l[0])?, read: sym(ln, l[1])?, next: state(ln, r[0])?, write: sym(ln, r[1])?, mv };
        if halting.contains(&t.state) {
            return Err(perr(ln, format!("transition out of halting state `{}`", l[0])));
        }
        delta.push(t);
    }
    TmSpec::new(states, tape, blank, input, initial, halting, delta).map_err(|e| match e {
        TmError::Invalid(m) => perr(1, m),
        e => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const MINIMAL: &str = "%tm\nstates: h\ntape: 1 _\nblank: _\ninput: 1\ninitial: h\nhalting: h\n";

    #[test]
    fn minimal_machine() {
        let tm = parse_tm(MINIMAL).unwrap();
        assert!(tm.is_halting(tm.initial()));
        assert!(tm.delta().is_empty());
        assert_eq!(parse_tm(&write_tm(&tm)).unwrap(), tm);
    }

    #[test]
    fn duplicate_lines_are_branches() {
        let text = "%tm\nstates: s h\ntape: 1 _\nblank: _\ninput: 1\ninitial: s\nhalting: h\n\
                    delta: s 1 -> h 1 S\ndelta: s 1 -> h 1 S\n";
        let tm = parse_tm(text).unwrap();
        assert_eq!(tm.moves(0, 0).count(), 2);
        assert!(!tm.is_deterministic());
        assert_eq!(parse_tm(&write_tm(&tm)).unwrap(), tm);
    }

    #[test]
    fn errors_carry_lines() {
        let halting = format!("{MINIMAL}delta: h 1 -> h 1 S\n");
        assert_eq!(parse_tm(&halting), Err(perr(8, "transition out of halting state `h`")));
        let undeclared = MINIMAL.replace("initial: h", "initial: q");
        assert!(matches!(parse_tm(&undeclared), Err(TmError::Parse { line: 6, .. })));
        let missing = MINIMAL.replace("blank: _\n", "");
        assert!(matches!(parse_tm(&missing), Err(TmError::Parse { .. })));
        assert!(matches!(parse_tm("%sft\n"), Err(TmError::Parse { line: 1, .. })));
        let bad_move = "%tm\nstates: s h\ntape: 1 _\nblank: _\ninput: 1\ninitial: s\nhalting: h\ndelta: s 1 -> h 1 X\n";
        assert!(matches!(parse_tm(bad_move), Err(TmError::Parse { line: 8, .. })));
        let reserved = MINIMAL.replace("1 _", "halt _").replace("input: 1", "input: halt");
        assert!(parse_tm(&reserved).is_err());
    }

    #[test]
    fn words() {
        let tm = parse_tm(MINIMAL).unwrap();
        assert_eq!(tm.word("11").unwrap(), vec![0, 0]);
        assert_eq!(tm.word("").unwrap(), Vec::<u32>::new());
        assert!(tm.word("1_").is_err());
    }
}
