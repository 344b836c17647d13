use std::fmt;

use crate::bits::PosSet;
use crate::error::Result;
use crate::label::Loset;

use super::Ipomset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Starter,
    Terminator,
}

/// A starter `U↑A` or terminator `U↓A`; `active` holds positions in `loset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarterTerminator {
    pub kind: StepKind,
    pub loset: Loset,
    pub active: PosSet,
}

impl StarterTerminator {
    pub fn starter(loset: Loset, active: PosSet) -> Self {
        StarterTerminator { kind: StepKind::Starter, loset, active }
    }

    pub fn terminator(loset: Loset, active: PosSet) -> Self {
        StarterTerminator { kind: StepKind::Terminator, loset, active }
    }

    pub fn is_identity(&self) -> bool {
        self.active.is_empty()
    }

    pub fn source_loset(&self) -> Loset {
        match self.kind {
            StepKind::Starter => self.loset.without(self.active),
            StepKind::Terminator => self.loset.clone(),
        }
    }

    pub fn target_loset(&self) -> Loset {
        match self.kind {
            StepKind::Starter => self.loset.clone(),
            StepKind::Terminator => self.loset.without(self.active),
        }
    }

    pub fn try_to_ipomset(&self) -> Result<Ipomset> {
        match self.kind {
            StepKind::Starter => Ipomset::starter(&self.loset, self.active),
            StepKind::Terminator => Ipomset::terminator(&self.loset, self.active),
        }
    }

    /// Panics if `active` is out of range for `loset`.
    pub fn to_ipomset(&self) -> Ipomset {
        self.try_to_ipomset().expect("step positions in range")
    }
}

impl fmt::Display for StarterTerminator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.kind {
            StepKind::Starter => '↑',
            StepKind::Terminator => '↓',
        };
        f.write_str("(")?;
        for l in self.loset.labels() {
            write!(f, "{l}")?;
        }
        write!(f, "){arrow}")?;
        for i in self.active.iter() {
            write!(f, "{}", self.loset.labels()[i])?;
        }
        Ok(())
    }
}

/// A sequence of steps starting from an initial interface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSequence {
    pub initial: Loset,
    pub steps: Vec<StarterTerminator>,
}

impl StepSequence {
    /// Steps are non-identities and strictly alternate in kind.
    pub fn is_sparse(&self) -> bool {
        self.steps.iter().all(|s| !s.is_identity())
            && self.steps.windows(2).all(|w| w[0].kind != w[1].kind)
    }

    /// Glues the steps left to right.
    pub fn compose(&self) -> Result<Ipomset> {
        let mut acc = Ipomset::identity(&self.initial);
        for s in &self.steps {
            acc = acc.glue(&s.try_to_ipomset()?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "id{}", self.initial);
        }
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Step indices at which each event starts and ends.
#[derive(Debug, Clone)]
pub(crate) struct Timing {
    pub begin: Vec<usize>,
    pub end: Vec<usize>,
    /// Index of the last step.
    pub last: usize,
}

impl Ipomset {
    /// The distinct predecessor sets form a chain `D_0 ⊂ … ⊂ D_k`; an event
    /// starts at the index of its own predecessor set and ends at the last
    /// index whose set does not contain it.
    pub(crate) fn timing(&self) -> Timing {
        let n = self.len();
        let preds: Vec<PosSet> = (0..n).map(|x| self.predecessors(x)).collect();
        let mut chain = preds.clone();
        chain.push(PosSet::EMPTY);
        chain.sort_by_key(|p| p.len());
        chain.dedup();
        let begin = preds
            .iter()
            .map(|p| chain.iter().position(|c| c == p).expect("pred set in chain"))
            .collect();
        let end = (0..n)
            .map(|x| chain.iter().rposition(|c| !c.contains(x)).expect("D_0 is empty"))
            .collect();
        Timing { begin, end, last: chain.len() - 1 }
    }

    /// The unique alternating starter/terminator decomposition.
    pub fn sparse_decomposition(&self) -> StepSequence {
        let t = self.timing();
        let n = self.len();
        let mut steps = Vec::new();
        for i in 0..=t.last {
            let active: PosSet = (0..n).filter(|&x| t.begin[x] <= i && i <= t.end[x]).collect();
            let order = self.loset_order(active);
            let loset: Loset = order.iter().map(|&x| self.label(x).clone()).collect();
            let positions = |pred: &dyn Fn(usize) -> bool| -> PosSet {
                order
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| pred(x))
                    .map(|(p, _)| p)
                    .collect()
            };
            let starting = positions(&|x| t.begin[x] == i && !self.is_source(x));
            if !starting.is_empty() {
                steps.push(StarterTerminator::starter(loset.clone(), starting));
            }
            let ending = positions(&|x| t.end[x] == i && !self.is_target(x));
            if !ending.is_empty() {
                steps.push(StarterTerminator::terminator(loset, ending));
            }
        }
        StepSequence { initial: self.source_loset(), steps }
    }
}
