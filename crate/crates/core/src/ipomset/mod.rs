//! Labelled interval posets with event order and interfaces.
//!
//! Every [`Ipomset`] value is kept in canonical form, so isomorphism is
//! structural equality. The canonical form numbers events by the time step
//! at which they become active (sources first, at step 0), breaking ties by
//! event order, and stores only the event order forced by concurrent pairs
//! (transitively closed). Event order between precedence-related events is
//! not observable and therefore not stored.

mod decompose;
mod divide;
mod interval;
mod ops;
mod refine;
mod subsume;

use std::cmp::Ordering;
use std::fmt;

use crate::bits::{PosSet, MAX_BITS};
use crate::error::{Error, Result, Violation};
use crate::label::{Label, Loset};

pub use decompose::{StepKind, StepSequence, StarterTerminator};
pub use divide::Division;
pub use interval::{Interval, IntervalRep};
pub use refine::down_close;

/// An unchecked iposet description, as read from a file or built by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawIposet {
    pub labels: Vec<Label>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub prec: Vec<(usize, usize)>,
    pub evord: Vec<(usize, usize)>,
}

impl RawIposet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an event and returns its index.
    pub fn event(&mut self, label: impl Into<Label>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn with_events<'a>(labels: impl IntoIterator<Item = &'a str>) -> Self {
        RawIposet {
            labels: labels.into_iter().map(Label::new).collect(),
            ..Self::default()
        }
    }

    pub fn source(mut self, events: &[usize]) -> Self {
        self.source.extend_from_slice(events);
        self
    }

    pub fn target(mut self, events: &[usize]) -> Self {
        self.target.extend_from_slice(events);
        self
    }

    pub fn prec(mut self, pairs: &[(usize, usize)]) -> Self {
        self.prec.extend_from_slice(pairs);
        self
    }

    pub fn evord(mut self, pairs: &[(usize, usize)]) -> Self {
        self.evord.extend_from_slice(pairs);
        self
    }

    pub fn canonicalize(&self) -> Result<Ipomset> {
        canonicalize(self)
    }
}

/// A canonical ipomset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ipomset {
    labels: Vec<Label>,
    source: PosSet,
    target: PosSet,
    /// `prec[x]` is the set of events strictly after `x`.
    prec: Vec<PosSet>,
    /// `evord[x]` is the set of events `y` with `x ⋖ y`.
    evord: Vec<PosSet>,
}

/// Validates `raw` and returns its canonical form.
pub fn canonicalize(raw: &RawIposet) -> Result<Ipomset> {
    let n = raw.labels.len();
    if n > MAX_BITS {
        return Err(Error::TooLarge(n));
    }
    let check = |e: usize| -> Result<()> {
        if e < n {
            Ok(())
        } else {
            Err(Violation::EventOutOfRange { event: e, len: n }.into())
        }
    };
    let mut source = PosSet::EMPTY;
    let mut target = PosSet::EMPTY;
    for &s in &raw.source {
        check(s)?;
        source.insert(s);
    }
    for &t in &raw.target {
        check(t)?;
        target.insert(t);
    }
    let mut prec = vec![PosSet::EMPTY; n];
    let mut evord = vec![PosSet::EMPTY; n];
    for &(x, y) in &raw.prec {
        check(x)?;
        check(y)?;
        prec[x].insert(y);
    }
    for &(x, y) in &raw.evord {
        check(x)?;
        check(y)?;
        evord[x].insert(y);
    }
    Ipomset::from_parts(raw.labels.clone(), source, target, prec, evord)
}

pub(crate) fn transitive_closure(rel: &mut [PosSet]) {
    let n = rel.len();
    for k in 0..n {
        let row_k = rel[k];
        for row in rel.iter_mut() {
            if row.contains(k) {
                *row = row.union(row_k);
            }
        }
    }
}

impl Ipomset {
    /// Closes both relations, checks every axiom and renumbers events into
    /// canonical order.
    pub(crate) fn from_parts(
        labels: Vec<Label>,
        source: PosSet,
        target: PosSet,
        mut prec: Vec<PosSet>,
        mut evord: Vec<PosSet>,
    ) -> Result<Ipomset> {
        let n = labels.len();
        if n > MAX_BITS {
            return Err(Error::TooLarge(n));
        }
        transitive_closure(&mut prec);
        transitive_closure(&mut evord);
        for x in 0..n {
            if prec[x].contains(x) {
                return Err(Violation::CyclicPrecedence { event: x }.into());
            }
            if evord[x].contains(x) {
                return Err(Violation::CyclicEventOrder { event: x }.into());
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let related = prec[x].contains(y)
                    || prec[y].contains(x)
                    || evord[x].contains(y)
                    || evord[y].contains(x);
                if !related {
                    return Err(Violation::Unrelated { x, y }.into());
                }
            }
        }
        let mut preds = vec![PosSet::EMPTY; n];
        for x in 0..n {
            for y in prec[x].iter() {
                preds[y].insert(x);
            }
        }
        for s in source.iter() {
            if !preds[s].is_empty() {
                return Err(Violation::SourceNotMinimal { event: s }.into());
            }
        }
        for t in target.iter() {
            if !prec[t].is_empty() {
                return Err(Violation::TargetNotMaximal { event: t }.into());
            }
        }
        // Interval orders are exactly those whose predecessor sets form a chain.
        let mut chain: Vec<PosSet> = preds.clone();
        chain.sort_by_key(|p| p.len());
        chain.dedup();
        if chain.windows(2).any(|w| !w[0].is_subset(w[1])) {
            return Err(find_two_plus_two(&prec).into());
        }

        let start: Vec<usize> = preds
            .iter()
            .map(|p| chain.iter().position(|c| c == p).expect("pred set in chain"))
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| {
            start[x].cmp(&start[y]).then_with(|| {
                if evord[x].contains(y) {
                    Ordering::Less
                } else if evord[y].contains(x) {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            })
        });
        // Events sharing a start step are pairwise concurrent, so the
        // comparator above is total on each group.
        let mut new_index = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let map_set = |s: PosSet| -> PosSet { s.iter().map(|i| new_index[i]).collect() };

        let mut c_prec = vec![PosSet::EMPTY; n];
        let mut c_evord = vec![PosSet::EMPTY; n];
        for x in 0..n {
            c_prec[new_index[x]] = map_set(prec[x]);
        }
        for x in 0..n {
            for y in evord[x].iter() {
                let concurrent = !prec[x].contains(y) && !prec[y].contains(x);
                if concurrent {
                    c_evord[new_index[x]].insert(new_index[y]);
                }
            }
        }
        transitive_closure(&mut c_evord);
        let c_labels = order.iter().map(|&i| labels[i].clone()).collect();
        Ok(Ipomset {
            labels: c_labels,
            source: map_set(source),
            target: map_set(target),
            prec: c_prec,
            evord: c_evord,
        })
    }

    /// The empty ipomset ε.
    pub fn empty() -> Ipomset {
        Ipomset {
            labels: Vec::new(),
            source: PosSet::EMPTY,
            target: PosSet::EMPTY,
            prec: Vec::new(),
            evord: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &Label {
        &self.labels[x]
    }

    pub fn events(&self) -> PosSet {
        PosSet::full(self.len())
    }

    pub fn source_set(&self) -> PosSet {
        self.source
    }

    pub fn target_set(&self) -> PosSet {
        self.target
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.source.contains(x)
    }

    pub fn is_target(&self, x: usize) -> bool {
        self.target.contains(x)
    }

    /// `x < y`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.prec[x].contains(y)
    }

    /// Events strictly after `x`.
    pub fn successors(&self, x: usize) -> PosSet {
        self.prec[x]
    }

    /// Events strictly before `x`.
    pub fn predecessors(&self, x: usize) -> PosSet {
        (0..self.len()).filter(|&y| self.prec[y].contains(x)).collect()
    }

    /// `x ⋖ y` in the stored (essential, closed) event order.
    pub fn event_order(&self, x: usize, y: usize) -> bool {
        self.evord[x].contains(y)
    }

    pub fn concurrent(&self, x: usize, y: usize) -> bool {
        x != y && !self.prec[x].contains(y) && !self.prec[y].contains(x)
    }

    /// Precedence pairs, all of them (the relation is transitively closed).
    pub fn prec_pairs(&self) -> Vec<(usize, usize)> {
        pairs(&self.prec)
    }

    pub fn evord_pairs(&self) -> Vec<(usize, usize)> {
        pairs(&self.evord)
    }

    /// Covering pairs of precedence.
    pub fn prec_covers(&self) -> Vec<(usize, usize)> {
        covers(&self.prec)
    }

    pub fn evord_covers(&self) -> Vec<(usize, usize)> {
        covers(&self.evord)
    }

    pub fn prec_count(&self) -> usize {
        self.prec.iter().map(|s| s.len()).sum()
    }

    /// The events of `set` sorted by event order; `set` must be pairwise
    /// concurrent.
    pub fn loset_order(&self, set: PosSet) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().collect();
        v.sort_by_key(|&x| set.iter().filter(|&y| self.evord[y].contains(x)).count());
        v
    }

    /// Source events in interface order.
    pub fn source_events(&self) -> Vec<usize> {
        self.loset_order(self.source)
    }

    /// Target events in interface order.
    pub fn target_events(&self) -> Vec<usize> {
        self.loset_order(self.target)
    }

    pub fn source_loset(&self) -> Loset {
        self.source_events()
            .into_iter()
            .map(|x| self.labels[x].clone())
            .collect()
    }

    pub fn target_loset(&self) -> Loset {
        self.target_events()
            .into_iter()
            .map(|x| self.labels[x].clone())
            .collect()
    }

    /// Discrete: no precedence at all.
    pub fn is_discrete(&self) -> bool {
        self.prec.iter().all(|s| s.is_empty())
    }

    /// The raw description of this canonical ipomset, with covering pairs only.
    pub fn to_raw(&self) -> RawIposet {
        RawIposet {
            labels: self.labels.clone(),
            source: self.source.iter().collect(),
            target: self.target.iter().collect(),
            prec: self.prec_covers(),
            evord: self.evord_covers(),
        }
    }

    /// Keeps the events in `keep`; the interfaces become `source` and
    /// `target` (given in current indices, subsets of `keep`).
    pub(crate) fn restrict(&self, keep: PosSet, source: PosSet, target: PosSet) -> Result<Ipomset> {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_index[o] = i;
        }
        let map = |s: PosSet| -> PosSet {
            s.intersection(keep).iter().map(|i| new_index[i]).collect()
        };
        Ipomset::from_parts(
            old.iter().map(|&o| self.labels[o].clone()).collect(),
            map(source),
            map(target),
            old.iter().map(|&o| map(self.prec[o])).collect(),
            old.iter().map(|&o| map(self.evord[o])).collect(),
        )
    }

    /// Rows for the shorthand notation: precedence chains that are pairwise
    /// fully concurrent and ordered by event order. `None` when the ipomset
    /// has no such presentation.
    fn rows(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.len();
        let mut row_of = vec![usize::MAX; n];
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if row_of[x] != usize::MAX {
                continue;
            }
            let mut comp = PosSet::singleton(x);
            loop {
                let mut grown = comp;
                for y in comp.iter() {
                    grown = grown.union(self.prec[y]).union(self.predecessors(y));
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            let mut members: Vec<usize> = comp.iter().collect();
            for &a in &members {
                for &b in &members {
                    if a != b && self.concurrent(a, b) {
                        return None;
                    }
                }
            }
            members.sort_by_key(|&y| self.predecessors(y).len());
            for &m in &members {
                row_of[m] = rows.len();
            }
            rows.push(members);
        }
        rows.sort_by(|r, s| {
            if self.evord[r[0]].contains(s[0]) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        for (i, r) in rows.iter().enumerate() {
            for s in &rows[i + 1..] {
                if r.iter().any(|&x| s.iter().any(|&y| !self.evord[x].contains(y))) {
                    return None;
                }
            }
        }
        Some(rows)
    }

    /// Shorthand such as `ab•` or `[•a∥b•]`, if the ipomset has one.
    pub fn shorthand(&self) -> Option<String> {
        if self.is_empty() {
            return Some("ε".to_string());
        }
        let rows = self.rows()?;
        let render = |row: &[usize]| -> String {
            let mut s = String::new();
            for &x in row {
                if self.is_source(x) {
                    s.push('•');
                }
                s.push_str(self.labels[x].as_str());
                if self.is_target(x) {
                    s.push('•');
                }
            }
            s
        };
        if rows.len() == 1 {
            Some(render(&rows[0]))
        } else {
            let parts: Vec<String> = rows.iter().map(|r| render(r)).collect();
            Some(format!("[{}]", parts.join("∥")))
        }
    }
}

fn pairs(rel: &[PosSet]) -> Vec<(usize, usize)> {
    rel.iter()
        .enumerate()
        .flat_map(|(x, s)| s.iter().map(move |y| (x, y)))
        .collect()
}

fn covers(rel: &[PosSet]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, s) in rel.iter().enumerate() {
        for y in s.iter() {
            let implied = s.iter().any(|z| z != y && rel[z].contains(y));
            if !implied {
                out.push((x, y));
            }
        }
    }
    out
}

fn find_two_plus_two(prec: &[PosSet]) -> Violation {
    let n = prec.len();
    for a in 0..n {
        for b in prec[a].iter() {
            for c in 0..n {
                for d in prec[c].iter() {
                    if !prec[a].contains(d) && !prec[c].contains(b) {
                        return Violation::NotInterval { a, b, c, d };
                    }
                }
            }
        }
    }
    unreachable!("predecessor sets not a chain but no 2+2 found")
}

impl PartialOrd for Ipomset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ipomset {
    /// Smaller ipomsets first, then lexicographic on the canonical data.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.labels.cmp(&other.labels))
            .then_with(|| self.prec.cmp(&other.prec))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
            .then_with(|| self.evord.cmp(&other.evord))
    }
}

impl fmt::Display for Ipomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.shorthand() {
            return f.write_str(&s);
        }
        f.write_str("{")?;
        for x in 0..self.len() {
            if x > 0 {
                f.write_str(" ")?;
            }
            let s = if self.is_source(x) { "•" } else { "" };
            let t = if self.is_target(x) { "•" } else { "" };
            write!(f, "{s}{}{x}{t}", self.labels[x])?;
        }
        f.write_str(" |")?;
        for (x, y) in self.prec_covers() {
            write!(f, " {}{x}<{}{y}", self.labels[x], self.labels[y])?;
        }
        f.write_str(" |")?;
        for (x, y) in self.evord_covers() {
            write!(f, " {}{x}⋖{}{y}", self.labels[x], self.labels[y])?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Ipomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
