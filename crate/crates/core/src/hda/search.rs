use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::ipomset::{Ipomset, StepKind};

use super::{CellId, Direction, Hda, Path, PathStep};

/// A cell together with the direction of the step that reached it.
type State = (CellId, Option<Direction>);

/// Result of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Accepted(Path),
    Rejected,
}

impl Membership {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Membership::Accepted(_))
    }
}

impl Hda {
    /// Is `p` the event ipomset of some accepting path? Follows the sparse
    /// decomposition of `p` step by step; cells must carry exactly the
    /// losets of the steps.
    pub fn member(&self, p: &Ipomset) -> Membership {
        match self.trace(self.start().iter().copied(), p, |x| self.accept().contains(&x)) {
            Some(path) => Membership::Accepted(path),
            None => Membership::Rejected,
        }
    }

    /// A sparse path from `from` to `to` whose event ipomset is `p`.
    pub fn find_path(&self, from: CellId, to: CellId, p: &Ipomset) -> Option<Path> {
        self.trace([from], p, |x| x == to)
    }

    fn trace(&self, starts: impl IntoIterator<Item = CellId>, p: &Ipomset, done: impl Fn(CellId) -> bool) -> Option<Path> {
        let dec = p.sparse_decomposition();
        let m = dec.steps.len();
        let mut parent: HashMap<(usize, CellId), (CellId, PathStep)> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut seen = HashSet::new();
        for s in starts {
            if *self.loset(s) == dec.initial && seen.insert((0, s)) {
                queue.push_back((0, s));
            }
        }
        while let Some((i, x)) = queue.pop_front() {
            if i == m {
                if done(x) {
                    return Some(rebuild(&parent, i, x));
                }
                continue;
            }
            let step = &dec.steps[i];
            let mut next = Vec::new();
            match step.kind {
                StepKind::Starter => {
                    for &(y, a) in self.upsteps_from(x) {
                        if a == step.active && *self.loset(y) == step.loset {
                            next.push((y, PathStep::up(a)));
                        }
                    }
                }
                StepKind::Terminator => {
                    if *self.loset(x) == step.loset {
                        if let Ok(y) = self.upper_face(x, step.active) {
                            next.push((y, PathStep::down(step.active)));
                        }
                    }
                }
            }
            for (y, s) in next {
                if seen.insert((i + 1, y)) {
                    parent.insert((i + 1, y), (x, s));
                    queue.push_back((i + 1, y));
                }
            }
        }
        None
    }

    /// Event ipomsets of all sparse accepting paths with at most
    /// `max_steps` steps.
    pub fn enumerate_language(&self, max_steps: usize) -> BTreeSet<Ipomset> {
        let mut out = BTreeSet::new();
        let mut seen: HashSet<(CellId, Option<Direction>, Ipomset)> = HashSet::new();
        let mut layer: Vec<(CellId, Option<Direction>, Ipomset)> = Vec::new();
        for &s in self.start() {
            let st = (s, None, Ipomset::identity(self.loset(s)));
            if seen.insert(st.clone()) {
                layer.push(st);
            }
        }
        for depth in 0..=max_steps {
            let mut next_layer = Vec::new();
            for (x, last, ev) in &layer {
                if self.accept().contains(x) {
                    out.insert(ev.clone());
                }
                if depth == max_steps {
                    continue;
                }
                for (y, step) in self.sparse_moves(*x, *last) {
                    let piece = match step.dir {
                        Direction::Up => Ipomset::starter(self.loset(y), step.set),
                        Direction::Down => Ipomset::terminator(self.loset(*x), step.set),
                    };
                    // only an ill-typed automaton makes these fail
                    let Ok(ev) = piece.and_then(|piece| ev.glue(&piece)) else {
                        continue;
                    };
                    let st = (y, Some(step.dir), ev);
                    if seen.insert(st.clone()) {
                        next_layer.push(st);
                    }
                }
            }
            layer = next_layer;
        }
        out
    }

    /// The language of `self` relative to a finite candidate prefix set.
    /// Explores sparse paths through coaccessible cells whose event
    /// ipomsets satisfy `is_prefix`. Returns the accepted event ipomsets
    /// found, plus one accepting path for every explored extension that
    /// leaves the prefix set; those paths accept ipomsets with a non-prefix
    /// prefix. Terminates whenever `is_prefix` holds for finitely many
    /// ipomsets.
    pub fn language_within(&self, is_prefix: impl Fn(&Ipomset) -> bool) -> (BTreeSet<Ipomset>, Vec<Path>) {
        let co = self.coaccessible();
        let mut accepted = BTreeSet::new();
        let mut escapes = Vec::new();
        type State = (CellId, Option<Direction>, Ipomset);
        let mut parent: HashMap<State, (State, PathStep)> = HashMap::new();
        let mut seen: HashSet<State> = HashSet::new();
        let mut queue: VecDeque<State> = VecDeque::new();
        for &s in self.start() {
            let st = (s, None, Ipomset::identity(self.loset(s)));
            if co.contains(&s) && seen.insert(st.clone()) {
                queue.push_back(st);
            }
        }
        let path_to = |parent: &HashMap<State, (State, PathStep)>, st: &State| -> Path {
            let mut cells = vec![st.0];
            let mut steps = Vec::new();
            let mut cur = st;
            while let Some((prev, step)) = parent.get(cur) {
                cells.push(prev.0);
                steps.push(*step);
                cur = prev;
            }
            cells.reverse();
            steps.reverse();
            Path { cells, steps }
        };
        while let Some(st) = queue.pop_front() {
            let (x, last, ev) = &st;
            if !is_prefix(ev) {
                let head = path_to(&parent, &st);
                let tail = self.path_to_accept(*x, *last).expect("cell is coaccessible");
                escapes.push(head.concat(&tail).expect("paths meet at the same cell"));
                continue;
            }
            if self.accept().contains(x) {
                accepted.insert(ev.clone());
            }
            for (y, step) in self.sparse_moves(*x, *last) {
                if !co.contains(&y) {
                    continue;
                }
                let piece = match step.dir {
                    Direction::Up => Ipomset::starter(self.loset(y), step.set),
                    Direction::Down => Ipomset::terminator(self.loset(*x), step.set),
                };
                let Ok(ev) = piece.and_then(|piece| ev.glue(&piece)) else {
                    continue;
                };
                let next = (y, Some(step.dir), ev);
                if seen.insert(next.clone()) {
                    parent.insert(next.clone(), (st.clone(), step));
                    queue.push_back(next);
                }
            }
        }
        (accepted, escapes)
    }

    /// A shortest sparse path from `x` to an accept cell whose first step
    /// does not repeat the direction `last`.
    fn path_to_accept(&self, x: CellId, last: Option<Direction>) -> Option<Path> {
        let mut parent: HashMap<State, (State, PathStep)> = HashMap::new();
        let mut queue = VecDeque::from([(x, last)]);
        let mut seen = HashSet::from([(x, last)]);
        while let Some(st) = queue.pop_front() {
            if self.accept().contains(&st.0) {
                let mut cells = vec![st.0];
                let mut steps = Vec::new();
                let mut cur = st;
                while let Some(&(prev, step)) = parent.get(&cur) {
                    cells.push(prev.0);
                    steps.push(step);
                    cur = prev;
                }
                cells.reverse();
                steps.reverse();
                return Some(Path { cells, steps });
            }
            for (y, step) in self.sparse_moves(st.0, st.1) {
                let next = (y, Some(step.dir));
                if seen.insert(next) {
                    parent.insert(next, (st, step));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// All sparse accepting paths with at most `max_steps` steps, in
    /// discovery order. Exponential; meant for small automata.
    pub fn sparse_accepting_paths(&self, max_steps: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for &s in self.start() {
            let mut path = Path::trivial(s);
            self.extend_paths(&mut path, None, max_steps, &mut out);
        }
        out
    }

    fn extend_paths(&self, path: &mut Path, last: Option<Direction>, budget: usize, out: &mut Vec<Path>) {
        let x = path.last();
        if self.accept().contains(&x) {
            out.push(path.clone());
        }
        if budget == 0 {
            return;
        }
        for (y, step) in self.sparse_moves(x, last) {
            path.push(step, y);
            self.extend_paths(path, Some(step.dir), budget - 1, out);
            path.steps.pop();
            path.cells.pop();
        }
    }

    /// Nonempty steps out of `x` whose direction differs from `last`.
    fn sparse_moves(&self, x: CellId, last: Option<Direction>) -> Vec<(CellId, PathStep)> {
        let mut out = Vec::new();
        if last != Some(Direction::Up) {
            for &(y, a) in self.upsteps_from(x) {
                out.push((y, PathStep::up(a)));
            }
        }
        if last != Some(Direction::Down) {
            for b in self.loset(x).positions().subsets().skip(1) {
                if let Ok(y) = self.upper_face(x, b) {
                    out.push((y, PathStep::down(b)));
                }
            }
        }
        out
    }
}

fn rebuild(parent: &HashMap<(usize, CellId), (CellId, PathStep)>, mut i: usize, mut x: CellId) -> Path {
    let mut cells = vec![x];
    let mut steps = Vec::new();
    while i > 0 {
        let &(prev, step) = &parent[&(i, x)];
        steps.push(step);
        cells.push(prev);
        x = prev;
        i -= 1;
    }
    cells.reverse();
    steps.reverse();
    Path { cells, steps }
}
