use std::collections::BTreeSet;

use super::{transitive_closure, Ipomset};

impl Ipomset {
    /// All `Q ⊑ self`, including `self`.
    pub fn refinements(&self) -> BTreeSet<Ipomset> {
        let mut seen = BTreeSet::new();
        let mut work = vec![self.clone()];
        seen.insert(self.clone());
        while let Some(p) = work.pop() {
            for q in p.one_step_refinements() {
                if seen.insert(q.clone()) {
                    work.push(q);
                }
            }
        }
        seen
    }

    /// Ipomsets obtained by ordering one concurrent pair.
    pub fn one_step_refinements(&self) -> Vec<Ipomset> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !self.concurrent(x, y) {
                    continue;
                }
                let mut prec = self.prec.clone();
                prec[x].insert(y);
                transitive_closure(&mut prec);
                if let Ok(q) = Ipomset::from_parts(
                    self.labels.clone(),
                    self.source,
                    self.target,
                    prec,
                    self.evord.clone(),
                ) {
                    out.push(q);
                }
            }
        }
        out
    }
}

/// The downward subsumption closure of a finite set.
pub fn down_close<'a>(xs: impl IntoIterator<Item = &'a Ipomset>) -> BTreeSet<Ipomset> {
    let mut out = BTreeSet::new();
    for x in xs {
        if !out.contains(x) {
            out.extend(x.refinements());
        }
    }
    out
}
