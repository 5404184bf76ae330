use super::machine::{TmError, TmSpec};

/// One configuration of a run. `via` is the index of the `delta` line that
/// produced it, `None` for the initial configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub tape: Vec<u32>,
    pub head: usize,
    pub state: u32,
    pub via: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunWitness {
    pub snapshots: Vec<Snapshot>,
    pub accepted: bool,
}

impl RunWitness {
    /// Number of configurations, the initial one included.
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }
}

/// Every maximal run on a tape of `w` cells with at most `t` configurations,
/// depth first, transitions in declaration order.
///
/// A run is accepted when it reaches a halting state. Runs that get stuck or
/// are cut at `t` configurations are reported as rejected; a branch whose
/// head leaves the tape is dropped.
pub fn run_bounded(tm: &TmSpec, input: &[u32], t: usize, w: usize) -> Result<Vec<RunWitness>, TmError> {
    if t == 0 || w == 0 {
        return Err(TmError::Invalid("time and space bounds must be positive".into()));
    }
    if input.len() > w {
        return Err(TmError::Invalid(format!("input of length {} does not fit {w} cells", input.len())));
    }
    if let Some(&a) = input.iter().find(|a| tm.input().binary_search(a).is_err()) {
        return Err(TmError::Invalid(format!("`{}` is not an input symbol", tm.tape().token(a))));
    }
    let mut tape = input.to_vec();
    tape.resize(w, tm.blank());
    let mut path = vec![Snapshot { tape, head: 0, state: tm.initial(), via: None }];
    let mut out = Vec::new();
    extend(tm, t, &mut path, &mut out);
    Ok(out)
}

fn extend(tm: &TmSpec, t: usize, path: &mut Vec<Snapshot>, out: &mut Vec<RunWitness>) {
    let cur = path.last().expect("nonempty run").clone();
    if tm.is_halting(cur.state) || path.len() == t {
        out.push(RunWitness { snapshots: path.clone(), accepted: tm.is_halting(cur.state) });
        return;
    }
    let a = cur.tape[cur.head];
    let mut any = false;
    for (i, d) in tm.moves(cur.state, a) {
        any = true;
        let head = cur.head as i64 + d.mv.offset();
        if head < 0 || head >= cur.tape.len() as i64 {
            continue;
        }
        let mut tape = cur.tape.clone();
        tape[cur.head] = d.write;
        path.push(Snapshot { tape, head: head as usize, state: d.next, via: Some(i) });
        extend(tm, t, path, out);
        path.pop();
    }
    if !any {
        out.push(RunWitness { snapshots: path.clone(), accepted: false });
    }
}

/// Number of accepted runs within the bounds.
pub fn count_accepting(tm: &TmSpec, input: &[u32], t: usize, w: usize) -> Result<u128, TmError> {
    Ok(run_bounded(tm, input, t, w)?.iter().filter(|r| r.accepted).count() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::parse_tm;

    fn tm(delta: &str) -> TmSpec {
        parse_tm(&format!("%tm\nstates: s a h\ntape: 1 _\nblank: _\ninput: 1\ninitial: s\nhalting: h\n{delta}")).unwrap()
    }

    #[test]
    fn immediate_halt() {
        let m = parse_tm("%tm\nstates: h\ntape: 1 _\nblank: _\ninput: 1\ninitial: h\nhalting: h\n").unwrap();
        let runs = run_bounded(&m, &[], 1, 1).unwrap();
        assert_eq!(runs.len(), 1);
        assert!(runs[0].accepted);
        assert_eq!(runs[0].len(), 1);
    }

    #[test]
    fn two_branches() {
        let m = tm("delta: s 1 -> h 1 S\ndelta: s 1 -> a _ R\ndelta: a _ -> h 1 S\n");
        let runs = run_bounded(&m, &[0], 3, 2).unwrap();
        assert_eq!(runs.iter().filter(|r| r.accepted).count(), 2);
        assert_eq!(runs[0].snapshots[1].via, Some(0));
        assert_eq!(runs[1].snapshots.iter().map(|s| s.head).collect::<Vec<_>>(), vec![0, 1, 1]);
        // the second branch needs three configurations
        assert_eq!(count_accepting(&m, &[0], 2, 2).unwrap(), 1);
        // and a second cell
        assert_eq!(count_accepting(&m, &[0], 3, 1).unwrap(), 1);
    }

    #[test]
    fn loops_are_cut() {
        let m = tm("delta: s 1 -> s 1 S\n");
        let runs = run_bounded(&m, &[0], 5, 1).unwrap();
        assert_eq!(runs.len(), 1);
        assert!(!runs[0].accepted);
        assert_eq!(runs[0].len(), 5);
        // stuck on a blank
        let runs = run_bounded(&m, &[], 5, 1).unwrap();
        assert_eq!((runs.len(), runs[0].len(), runs[0].accepted), (1, 1, false));
    }

    #[test]
    fn leaving_the_tape_kills() {
        let m = tm("delta: s 1 -> h 1 L\n");
        assert!(run_bounded(&m, &[0], 4, 2).unwrap().is_empty());
    }

    #[test]
    fn bad_arguments() {
        let m = tm("");
        assert!(run_bounded(&m, &[0, 0], 2, 1).is_err());
        assert!(run_bounded(&m, &[1], 2, 1).is_err());
        assert!(run_bounded(&m, &[], 0, 1).is_err());
    }
}
