//! The Myhill-Nerode automaton of a finite language.
//!
//! Cells are strong-equivalence classes `[P]`, keyed by
//! `(P\L, fin(P), ((P−A)\L) for A ⊆ rfin(P))`, plus one subsidiary cell `w_U`
//! per loset. Only the face closure of the prefix classes is built.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::bits::PosSet;
use crate::error::Result;
use crate::hda::{Cell, CellId, Hda};
use crate::ipomset::{Ipomset, StarterTerminator};
use crate::label::Loset;
use crate::language::{IpomsetSet, LanguageSet, QuotientId};

/// The strong-equivalence key of an ipomset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub quotient: QuotientId,
    pub fin: StarterTerminator,
    /// Quotient ids of `P − A` for `A ⊆ rfin(P)` in submask order.
    pub removals: Vec<QuotientId>,
}

pub fn classify(l: &LanguageSet, p: &Ipomset) -> ClassKey {
    ClassKey { quotient: l.quotient_id(p), fin: p.fin(), removals: l.removal_family(p) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MnCellKind {
    Regular { representative: Ipomset, key: ClassKey },
    Subsidiary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnCell {
    pub kind: MnCellKind,
    pub loset: Loset,
    /// The prefix quotient; empty for subsidiary cells.
    pub quotient: IpomsetSet,
}

impl MnCell {
    pub fn is_subsidiary(&self) -> bool {
        matches!(self.kind, MnCellKind::Subsidiary)
    }

    pub fn representative(&self) -> Option<&Ipomset> {
        match &self.kind {
            MnCellKind::Regular { representative, .. } => Some(representative),
            MnCellKind::Subsidiary => None,
        }
    }

    /// Nonempty prefix quotient.
    pub fn has_future(&self) -> bool {
        !self.quotient.is_empty()
    }
}

/// An HDA whose cell `i` is described by `cells[i]`.
#[derive(Debug, Clone)]
pub struct MnAutomaton {
    pub hda: Hda,
    pub cells: Vec<MnCell>,
    by_key: HashMap<ClassKey, CellId>,
}

struct Builder<'a> {
    lang: &'a LanguageSet,
    cells: Vec<MnCell>,
    by_key: HashMap<ClassKey, CellId>,
    subsidiary: BTreeMap<Loset, CellId>,
    work: VecDeque<CellId>,
}

impl Builder<'_> {
    fn regular(&mut self, p: &Ipomset) -> CellId {
        let key = classify(self.lang, p);
        if let Some(&id) = self.by_key.get(&key) {
            return id;
        }
        let id = self.cells.len();
        self.cells.push(MnCell {
            loset: p.target_loset(),
            quotient: self.lang.index().quotient(key.quotient).clone(),
            kind: MnCellKind::Regular { representative: p.clone(), key: key.clone() },
        });
        self.by_key.insert(key, id);
        self.work.push_back(id);
        id
    }

    fn subsidiary(&mut self, u: Loset) -> CellId {
        if let Some(&id) = self.subsidiary.get(&u) {
            return id;
        }
        let id = self.cells.len();
        self.cells.push(MnCell { kind: MnCellKind::Subsidiary, loset: u.clone(), quotient: IpomsetSet::new() });
        self.subsidiary.insert(u, id);
        self.work.push_back(id);
        id
    }

    /// Lower and upper singleton faces of a cell.
    fn faces(&mut self, id: CellId) -> (Vec<CellId>, Vec<CellId>) {
        let cell = self.cells[id].clone();
        let n = cell.loset.len();
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        match &cell.kind {
            MnCellKind::Subsidiary => {
                for i in 0..n {
                    let w = self.subsidiary(cell.loset.without(PosSet::singleton(i)));
                    lower.push(w);
                    upper.push(w);
                }
            }
            MnCellKind::Regular { representative: p, .. } => {
                let rfin = p.rfin();
                for i in 0..n {
                    let single = PosSet::singleton(i);
                    let l = if rfin.contains(i) {
                        let r = p.remove_targets(single).expect("position in rfin");
                        self.regular(&r)
                    } else {
                        self.subsidiary(cell.loset.without(single))
                    };
                    lower.push(l);
                    let t = Ipomset::terminator(&cell.loset, single).expect("position in range");
                    let glued = p.glue(&t).expect("terminator on the target interface");
                    upper.push(self.regular(&glued));
                }
            }
        }
        (lower, upper)
    }
}

impl MnAutomaton {
    pub fn build(l: &LanguageSet) -> Result<MnAutomaton> {
        let prefixes: Vec<Ipomset> = l.prefixes().cloned().collect();
        Self::build_with_seeds(l, &prefixes)
    }

    /// Builds with the prefixes visited in the given order; the result is
    /// independent of the order up to cell numbering.
    pub fn build_with_seeds(l: &LanguageSet, seeds: &[Ipomset]) -> Result<MnAutomaton> {
        let mut b = Builder {
            lang: l,
            cells: Vec::new(),
            by_key: HashMap::new(),
            subsidiary: BTreeMap::new(),
            work: VecDeque::new(),
        };
        for p in seeds {
            b.regular(p);
        }
        let mut faces: BTreeMap<CellId, (Vec<CellId>, Vec<CellId>)> = BTreeMap::new();
        while let Some(id) = b.work.pop_front() {
            let f = b.faces(id);
            faces.insert(id, f);
        }
        let mut start = BTreeSet::new();
        let mut accept = BTreeSet::new();
        for (id, c) in b.cells.iter().enumerate() {
            if let MnCellKind::Regular { key, .. } = &c.kind {
                if classify(l, &Ipomset::identity(&c.loset)) == *key {
                    start.insert(id);
                }
                // P ∈ L iff id_{T_P} ∈ P\L
                if c.quotient.contains(&Ipomset::identity(&c.loset)) {
                    accept.insert(id);
                }
            }
        }
        let hda_cells = b
            .cells
            .iter()
            .enumerate()
            .map(|(id, c)| {
                let (lower, upper) = faces.remove(&id).expect("every cell processed");
                let prefix = if c.is_subsidiary() { "w" } else { "c" };
                Cell { name: format!("{prefix}{id}"), loset: c.loset.clone(), lower, upper }
            })
            .collect();
        let hda = Hda::new(hda_cells, start, accept)?;
        Ok(MnAutomaton { hda, cells: b.cells, by_key: b.by_key })
    }

    /// The cell of `[P]`, if that class was built.
    pub fn class_of(&self, l: &LanguageSet, p: &Ipomset) -> Option<CellId> {
        self.by_key.get(&classify(l, p)).copied()
    }

    pub fn subsidiary_cell(&self, u: &Loset) -> Option<CellId> {
        self.cells.iter().position(|c| c.is_subsidiary() && c.loset == *u)
    }

    /// Cells with nonempty quotient.
    pub fn with_future(&self) -> BTreeSet<CellId> {
        (0..self.cells.len()).filter(|&i| self.cells[i].has_future()).collect()
    }

    /// Counts by dimension of the cells with nonempty quotient.
    pub fn essential_counts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in self.with_future() {
            let d = self.cells[i].loset.len();
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    /// A numbering-independent description: each cell by its key (or loset
    /// for subsidiary cells) together with the keys of its faces.
    pub fn signature(&self) -> BTreeSet<String> {
        let key = |id: CellId| -> String {
            match &self.cells[id].kind {
                MnCellKind::Regular { key, .. } => format!("{key:?}"),
                MnCellKind::Subsidiary => format!("w{}", self.cells[id].loset),
            }
        };
        (0..self.cells.len())
            .map(|id| {
                let c = self.hda.cell(id);
                let lower: Vec<String> = c.lower.iter().map(|&f| key(f)).collect();
                let upper: Vec<String> = c.upper.iter().map(|&f| key(f)).collect();
                format!(
                    "{} start={} accept={} d0={lower:?} d1={upper:?}",
                    key(id),
                    self.hda.start().contains(&id),
                    self.hda.accept().contains(&id)
                )
            })
            .collect()
    }

    /// A description of cell `id` such as `[ab•]` or `w[a]`.
    pub fn describe(&self, id: CellId) -> String {
        match &self.cells[id].kind {
            MnCellKind::Regular { representative, .. } => format!("[{representative}]"),
            MnCellKind::Subsidiary => format!("w{}", self.cells[id].loset),
        }
    }
}

/// Outcome of [`verify_mn`]; each field is `None` when the check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MnReport {
    /// Members of `L` not accepted, and accepted ipomsets not in `L`.
    pub language: Option<(Vec<Ipomset>, Vec<Ipomset>)>,
    /// Essential cells without future, and cells with future that are not essential.
    pub essential: Option<(Vec<CellId>, Vec<CellId>)>,
    pub validation: Option<String>,
}

impl MnReport {
    pub fn passed(&self) -> bool {
        self.language.is_none() && self.essential.is_none() && self.validation.is_none()
    }
}

/// Checks that the automaton accepts exactly `L`, that its essential cells
/// are exactly the classes with nonempty quotient, and that it is a valid HDA.
pub fn verify_mn(l: &LanguageSet, m: &MnAutomaton) -> MnReport {
    let mut report = MnReport::default();
    let (got, escapes) = m.hda.language_within(|p| l.is_prefix(p));
    let missing: Vec<Ipomset> = l.members().difference(&got).cloned().collect();
    let mut extra: BTreeSet<Ipomset> = got.difference(l.members()).cloned().collect();
    for path in escapes {
        extra.insert(m.hda.ev_of_path(&path).expect("escape paths are valid"));
    }
    if !missing.is_empty() || !extra.is_empty() {
        report.language = Some((missing, extra.into_iter().collect()));
    }
    let ess = m.hda.essential();
    let future = m.with_future();
    if ess != future {
        report.essential = Some((
            ess.difference(&future).copied().collect(),
            future.difference(&ess).copied().collect(),
        ));
    }
    if let Err(e) = m.hda.validate() {
        report.validation = Some(e.to_string());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ipomset as p;
    use crate::hda::Determinism;

    fn lang(gens: &[&str]) -> LanguageSet {
        LanguageSet::from_generators(gens.iter().map(|s| p(s).unwrap()), None).unwrap()
    }

    #[test]
    fn ab_abc_shape_and_nondeterminism() {
        let l = lang(&["[a∥b]", "abc"]);
        let m = MnAutomaton::build(&l).unwrap();
        assert_eq!(m.essential_counts(), vec![5, 6, 1]);
        assert!(verify_mn(&l, &m).passed());
        match m.hda.determinism() {
            Determinism::Branching { x, y, z, .. } => {
                assert_eq!(Some(x), m.class_of(&l, &p("a").unwrap()));
                let mut yz = [m.describe(y), m.describe(z)];
                yz.sort();
                assert_eq!(yz, ["[[a∥b•]]".to_string(), "[ab•]".to_string()]);
            }
            other => panic!("expected branching, got {other:?}"),
        }
    }

    #[test]
    fn strong_equivalence_separates_edges() {
        let l = lang(&["[a∥b]", "aa"]);
        let m = MnAutomaton::build(&l).unwrap();
        assert!(verify_mn(&l, &m).passed());
        assert_ne!(m.class_of(&l, &p("aa•").unwrap()), m.class_of(&l, &p("ba•").unwrap()));
        assert_eq!(m.essential_counts(), vec![4, 5, 1]);
    }

    #[test]
    fn subsidiary_cells_for_source_events() {
        let l = lang(&["[•aa•∥•a•]"]);
        let m = MnAutomaton::build(&l).unwrap();
        assert!(verify_mn(&l, &m).passed());
        assert!(m.subsidiary_cell(&Loset::empty()).is_some());
        assert!(m.subsidiary_cell(&Loset::from_chars("a")).is_some());
        let start_sq = m.class_of(&l, &p("[•a•∥•a•]").unwrap()).unwrap();
        let accept_sq = m.class_of(&l, &p("[•aa•∥•a•]").unwrap()).unwrap();
        assert!(m.hda.start().contains(&start_sq));
        assert!(m.hda.accept().contains(&accept_sq));
        assert_eq!(classify(&l, &p("[•aa∥•a]").unwrap()), classify(&l, &p("[•a∥•a]").unwrap()));
    }

    #[test]
    fn seed_order_does_not_matter() {
        let l = lang(&["[a∥b]", "abc"]);
        let mut seeds: Vec<Ipomset> = l.prefixes().cloned().collect();
        let a = MnAutomaton::build_with_seeds(&l, &seeds).unwrap();
        seeds.reverse();
        let b = MnAutomaton::build_with_seeds(&l, &seeds).unwrap();
        assert_eq!(a.signature(), b.signature());
    }

    #[test]
    fn dropped_accept_flag_is_detected() {
        let l = lang(&["[a∥b]", "abc"]);
        let mut m = MnAutomaton::build(&l).unwrap();
        let mut accept = m.hda.accept().clone();
        let first = *accept.iter().next().unwrap();
        accept.remove(&first);
        m.hda = m.hda.with_start_accept(m.hda.start().clone(), accept).unwrap();
        let r = verify_mn(&l, &m);
        assert!(matches!(&r.language, Some((missing, _)) if !missing.is_empty()));
    }
}
