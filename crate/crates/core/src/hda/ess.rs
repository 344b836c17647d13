use std::collections::{BTreeSet, VecDeque};

use crate::error::Result;

use super::{CellId, Hda};

/// Accessible, coaccessible and essential cells, and the face closure of the
/// essential cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialReport {
    pub accessible: BTreeSet<CellId>,
    pub coaccessible: BTreeSet<CellId>,
    pub essential: BTreeSet<CellId>,
    /// All `δ⁰_A δ¹_B(x)` for essential `x`.
    pub closure: BTreeSet<CellId>,
}

impl Hda {
    /// Cells reachable from a start cell; singleton steps suffice because
    /// every step factors through singleton faces.
    pub fn accessible(&self) -> BTreeSet<CellId> {
        self.search(self.start().iter().copied(), |x, out| {
            out.extend(self.lower_cofaces(x).iter().map(|&(y, _)| y));
            out.extend(self.cell(x).upper.iter().copied());
        })
    }

    /// Cells from which an accept cell is reachable.
    pub fn coaccessible(&self) -> BTreeSet<CellId> {
        self.search(self.accept().iter().copied(), |x, out| {
            out.extend(self.cell(x).lower.iter().copied());
            out.extend(self.upper_cofaces(x).iter().map(|&(y, _)| y));
        })
    }

    fn search(
        &self,
        seeds: impl Iterator<Item = CellId>,
        next: impl Fn(CellId, &mut Vec<CellId>),
    ) -> BTreeSet<CellId> {
        let mut seen: BTreeSet<CellId> = seeds.collect();
        let mut queue: VecDeque<CellId> = seen.iter().copied().collect();
        let mut buf = Vec::new();
        while let Some(x) = queue.pop_front() {
            buf.clear();
            next(x, &mut buf);
            for &y in &buf {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn essential(&self) -> BTreeSet<CellId> {
        self.essential_report().essential
    }

    pub fn essential_report(&self) -> EssentialReport {
        let accessible = self.accessible();
        let coaccessible = self.coaccessible();
        let essential: BTreeSet<CellId> = accessible.intersection(&coaccessible).copied().collect();
        let mut closure = BTreeSet::new();
        for &x in &essential {
            let all = self.loset(x).positions();
            for a in all.subsets() {
                for b in all.difference(a).subsets() {
                    if let Ok(f) = self.face(x, a, b) {
                        closure.insert(f);
                    }
                }
            }
        }
        EssentialReport { accessible, coaccessible, essential, closure }
    }

    /// The smallest sub-HDA containing every essential cell.
    pub fn ess_closure(&self) -> Result<Hda> {
        self.restrict(&self.essential_report().closure)
    }
}
