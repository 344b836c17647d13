use std::collections::{BTreeMap, BTreeSet};

use crate::bits::PosSet;
use crate::label::Loset;

use super::{CellId, Hda};

/// Outcome of the determinism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Determinism {
    Deterministic,
    /// Two or more start cells of the same type.
    MultipleStarts { loset: Loset, cells: Vec<CellId> },
    /// Essential `y ≠ z` of the same type with `δ⁰_A(y) = δ⁰_A(z) = x`,
    /// `x` essential.
    Branching { x: CellId, a: PosSet, y: CellId, z: CellId },
}

impl Determinism {
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Determinism::Deterministic)
    }
}

impl Hda {
    pub fn is_deterministic(&self) -> bool {
        self.determinism().is_deterministic()
    }

    /// Returns the first violation in cell order, if any.
    pub fn determinism(&self) -> Determinism {
        let mut starts: BTreeMap<&Loset, Vec<CellId>> = BTreeMap::new();
        for &s in self.start() {
            starts.entry(self.loset(s)).or_default().push(s);
        }
        if let Some((loset, cells)) = starts.into_iter().find(|(_, v)| v.len() > 1) {
            return Determinism::MultipleStarts { loset: loset.clone(), cells };
        }
        let ess = self.essential();
        for &x in &ess {
            let mut groups: BTreeMap<(&Loset, PosSet), BTreeSet<CellId>> = BTreeMap::new();
            for &(y, a) in self.upsteps_from(x) {
                if ess.contains(&y) {
                    groups.entry((self.loset(y), a)).or_default().insert(y);
                }
            }
            for ((_, a), ys) in groups {
                let mut it = ys.into_iter();
                if let (Some(y), Some(z)) = (it.next(), it.next()) {
                    return Determinism::Branching { x, a, y, z };
                }
            }
        }
        Determinism::Deterministic
    }
}
