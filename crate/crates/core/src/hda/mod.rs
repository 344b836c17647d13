//! Finite higher-dimensional automata.
//!
//! Cells carry a loset of active events. Only singleton faces are stored:
//! `lower[i]` unstarts and `upper[i]` terminates the event at position `i`.
//! Composite faces remove positions in descending order, so lower positions
//! keep their meaning while higher ones are removed.

mod det;
mod ess;
mod path;
mod search;

use std::collections::{BTreeSet, HashMap};

use crate::bits::{PosSet, MAX_BITS};
use crate::error::{Error, Result};
use crate::label::Loset;

pub use det::Determinism;
pub use ess::EssentialReport;
pub use path::{Direction, Path, PathStep};
pub use search::Membership;

pub type CellId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub loset: Loset,
    pub lower: Vec<CellId>,
    pub upper: Vec<CellId>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.loset.len()
    }
}

#[derive(Debug, Clone)]
pub struct Hda {
    cells: Vec<Cell>,
    start: BTreeSet<CellId>,
    accept: BTreeSet<CellId>,
    names: HashMap<String, CellId>,
    /// `lower_rev[x]`: pairs `(y, i)` with `δ⁰_i(y) = x`.
    lower_rev: Vec<Vec<(CellId, usize)>>,
    /// `upper_rev[x]`: pairs `(y, i)` with `δ¹_i(y) = x`.
    upper_rev: Vec<Vec<(CellId, usize)>>,
    /// `up[x]`: pairs `(y, A)`, `A ≠ ∅`, with `δ⁰_A(y) = x`.
    up: Vec<Vec<(CellId, PosSet)>>,
}

impl PartialEq for Hda {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.start == other.start && self.accept == other.accept
    }
}

impl Eq for Hda {}

/// Builds an [`Hda`] from named cells.
#[derive(Debug, Clone, Default)]
pub struct HdaBuilder {
    cells: Vec<(String, Loset, Vec<String>, Vec<String>)>,
    start: Vec<String>,
    accept: Vec<String>,
}

impl HdaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a cell; `lower` and `upper` name the singleton faces by position.
    pub fn cell(mut self, name: &str, loset: Loset, lower: &[&str], upper: &[&str]) -> Self {
        self.push_cell(name, loset, lower, upper);
        self
    }

    pub fn push_cell(&mut self, name: &str, loset: Loset, lower: &[&str], upper: &[&str]) {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        self.cells.push((name.to_string(), loset, own(lower), own(upper)));
    }

    pub fn start(mut self, names: &[&str]) -> Self {
        self.start.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn accept(mut self, names: &[&str]) -> Self {
        self.accept.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn push_start(&mut self, name: &str) {
        self.start.push(name.to_string());
    }

    pub fn push_accept(&mut self, name: &str) {
        self.accept.push(name.to_string());
    }

    pub fn build(self) -> Result<Hda> {
        let mut ids = HashMap::new();
        for (i, (name, ..)) in self.cells.iter().enumerate() {
            if ids.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateCell(name.clone()));
            }
        }
        let resolve = |n: &String| ids.get(n).copied().ok_or_else(|| Error::UnknownCell(n.clone()));
        let mut cells = Vec::with_capacity(self.cells.len());
        for (name, loset, lower, upper) in &self.cells {
            cells.push(Cell {
                name: name.clone(),
                loset: loset.clone(),
                lower: lower.iter().map(resolve).collect::<Result<_>>()?,
                upper: upper.iter().map(resolve).collect::<Result<_>>()?,
            });
        }
        let start = self.start.iter().map(resolve).collect::<Result<_>>()?;
        let accept = self.accept.iter().map(resolve).collect::<Result<_>>()?;
        Hda::new(cells, start, accept)
    }
}

impl Hda {
    /// Checks face arity and cell ids, then builds the search indices.
    /// Typing and the precubical identities are checked by [`Hda::validate`].
    pub fn new(cells: Vec<Cell>, start: BTreeSet<CellId>, accept: BTreeSet<CellId>) -> Result<Hda> {
        let n = cells.len();
        let mut names = HashMap::new();
        for (id, c) in cells.iter().enumerate() {
            if names.insert(c.name.clone(), id).is_some() {
                return Err(Error::DuplicateCell(c.name.clone()));
            }
            if c.dim() > MAX_BITS {
                return Err(Error::TooLarge(c.dim()));
            }
            if c.lower.len() != c.dim() || c.upper.len() != c.dim() {
                return Err(Error::FaceTyping {
                    cell: c.name.clone(),
                    reason: format!(
                        "{} positions but {} lower and {} upper faces",
                        c.dim(),
                        c.lower.len(),
                        c.upper.len()
                    ),
                });
            }
            if let Some(&bad) = c.lower.iter().chain(&c.upper).find(|&&f| f >= n) {
                return Err(Error::UnknownCell(bad.to_string()));
            }
        }
        if let Some(&bad) = start.iter().chain(&accept).find(|&&f| f >= n) {
            return Err(Error::UnknownCell(bad.to_string()));
        }
        let mut lower_rev = vec![Vec::new(); n];
        let mut upper_rev = vec![Vec::new(); n];
        for (y, c) in cells.iter().enumerate() {
            for (i, &x) in c.lower.iter().enumerate() {
                lower_rev[x].push((y, i));
            }
            for (i, &x) in c.upper.iter().enumerate() {
                upper_rev[x].push((y, i));
            }
        }
        let mut hda = Hda { cells, start, accept, names, lower_rev, upper_rev, up: vec![Vec::new(); n] };
        for y in 0..n {
            for a in hda.cells[y].loset.positions().subsets().skip(1) {
                if let Ok(x) = hda.lower_face(y, a) {
                    hda.up[x].push((y, a));
                }
            }
        }
        Ok(hda)
    }

    pub fn empty() -> Hda {
        Hda::new(Vec::new(), BTreeSet::new(), BTreeSet::new()).expect("empty hda")
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn name(&self, id: CellId) -> &str {
        &self.cells[id].name
    }

    pub fn loset(&self, id: CellId) -> &Loset {
        &self.cells[id].loset
    }

    pub fn id(&self, name: &str) -> Result<CellId> {
        self.names.get(name).copied().ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    pub fn start(&self) -> &BTreeSet<CellId> {
        &self.start
    }

    pub fn accept(&self) -> &BTreeSet<CellId> {
        &self.accept
    }

    /// Cells with `δ⁰_i(y) = x`, as `(y, i)`.
    pub fn lower_cofaces(&self, x: CellId) -> &[(CellId, usize)] {
        &self.lower_rev[x]
    }

    /// Cells with `δ¹_i(y) = x`, as `(y, i)`.
    pub fn upper_cofaces(&self, x: CellId) -> &[(CellId, usize)] {
        &self.upper_rev[x]
    }

    /// Pairs `(y, A)` with `A` nonempty and `δ⁰_A(y) = x`.
    pub fn upsteps_from(&self, x: CellId) -> &[(CellId, PosSet)] {
        &self.up[x]
    }

    /// The mixed face `δ⁰_A δ¹_B(x)` for disjoint `A`, `B`.
    pub fn face(&self, x: CellId, lower: PosSet, upper: PosSet) -> Result<CellId> {
        if !lower.is_disjoint(upper) {
            return Err(Error::InvalidPath(format!(
                "lower positions {lower:?} and upper positions {upper:?} overlap"
            )));
        }
        let mut cur = x;
        for i in lower.union(upper).iter().rev() {
            let c = &self.cells[cur];
            if i >= c.dim() {
                return Err(Error::OutOfRange { pos: i, len: c.dim() });
            }
            cur = if lower.contains(i) { c.lower[i] } else { c.upper[i] };
        }
        Ok(cur)
    }

    pub fn lower_face(&self, x: CellId, a: PosSet) -> Result<CellId> {
        self.face(x, a, PosSet::EMPTY)
    }

    pub fn upper_face(&self, x: CellId, b: PosSet) -> Result<CellId> {
        self.face(x, PosSet::EMPTY, b)
    }

    /// Checks face typing and all precubical identities
    /// `δ^ν_i δ^μ_j = δ^μ_{j−1} δ^ν_i` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        for c in &self.cells {
            for i in 0..c.dim() {
                let want = c.loset.without(PosSet::singleton(i));
                for (kind, f) in [("d0", c.lower[i]), ("d1", c.upper[i])] {
                    let got = &self.cells[f].loset;
                    if *got != want {
                        return Err(Error::FaceTyping {
                            cell: c.name.clone(),
                            reason: format!(
                                "{kind}({}) = {} has type {got}, expected {want}",
                                i + 1,
                                self.cells[f].name
                            ),
                        });
                    }
                }
            }
        }
        let single = |cell: CellId, k: usize, kind: u8| -> CellId {
            let c = &self.cells[cell];
            if kind == 0 {
                c.lower[k]
            } else {
                c.upper[k]
            }
        };
        for (me, c) in self.cells.iter().enumerate() {
            for j in 0..c.dim() {
                for i in 0..j {
                    for (nu, mu) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                        let left = single(single(me, j, mu), i, nu);
                        let right = single(single(me, i, nu), j - 1, mu);
                        if left != right {
                            return Err(Error::IdentityViolation {
                                cell: c.name.clone(),
                                i: i + 1,
                                j: j + 1,
                                j_shifted: j,
                                nu,
                                mu,
                                left: self.cells[left].name.clone(),
                                right: self.cells[right].name.clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The sub-HDA on `keep`, which must be closed under faces.
    pub fn restrict(&self, keep: &BTreeSet<CellId>) -> Result<Hda> {
        let order: Vec<CellId> = keep.iter().copied().collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &c) in order.iter().enumerate() {
            new_id[c] = i;
        }
        let mut cells = Vec::with_capacity(order.len());
        for &c in &order {
            let old = &self.cells[c];
            let map = |v: &[CellId]| -> Result<Vec<CellId>> {
                v.iter()
                    .map(|&f| {
                        if new_id[f] == usize::MAX {
                            Err(Error::UnknownCell(self.cells[f].name.clone()))
                        } else {
                            Ok(new_id[f])
                        }
                    })
                    .collect()
            };
            cells.push(Cell {
                name: old.name.clone(),
                loset: old.loset.clone(),
                lower: map(&old.lower)?,
                upper: map(&old.upper)?,
            });
        }
        let sub = |s: &BTreeSet<CellId>| s.iter().filter(|c| keep.contains(c)).map(|&c| new_id[c]).collect();
        Hda::new(cells, sub(&self.start), sub(&self.accept))
    }

    /// Replaces the start and accept sets.
    pub fn with_start_accept(&self, start: BTreeSet<CellId>, accept: BTreeSet<CellId>) -> Result<Hda> {
        Hda::new(self.cells.clone(), start, accept)
    }

    /// Cell counts by dimension.
    pub fn dimension_counts(&self) -> Vec<usize> {
        let max = self.cells.iter().map(|c| c.dim()).max().unwrap_or(0);
        let mut out = vec![0; if self.cells.is_empty() { 0 } else { max + 1 }];
        for c in &self.cells {
            out[c.dim()] += 1;
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn l(s: &str) -> Loset {
        Loset::from_chars(s)
    }

    /// A single square with start `v` and accept cells `h`, `y`.
    pub fn filled_square() -> Hda {
        HdaBuilder::new()
            .cell("v", l(""), &[], &[])
            .cell("w", l(""), &[], &[])
            .cell("x", l(""), &[], &[])
            .cell("y", l(""), &[], &[])
            .cell("e", l("a"), &["v"], &["w"])
            .cell("f", l("a"), &["x"], &["y"])
            .cell("g", l("b"), &["v"], &["x"])
            .cell("h", l("b"), &["w"], &["y"])
            .cell("q", l("ab"), &["g", "e"], &["h", "f"])
            .start(&["v"])
            .accept(&["h", "y"])
            .build()
            .unwrap()
    }
}
