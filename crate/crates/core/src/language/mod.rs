//! Finite subsumption-closed languages and their quotients.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ipomset::{down_close, Ipomset};
use crate::label::Label;

/// A set of ipomsets stored in canonical order.
pub type IpomsetSet = BTreeSet<Ipomset>;

/// Identifier of a quotient value; `EMPTY_QUOTIENT` is `∅`.
pub type QuotientId = usize;
pub const EMPTY_QUOTIENT: QuotientId = 0;

/// A finite down-closed language.
#[derive(Debug, Clone)]
pub struct LanguageSet {
    alphabet: BTreeSet<Label>,
    members: IpomsetSet,
    generators: Vec<Ipomset>,
    index: OnceLock<QuotientIndex>,
}

impl PartialEq for LanguageSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.alphabet == other.alphabet
    }
}

impl Eq for LanguageSet {}

impl LanguageSet {
    /// `{generators}↓`. The alphabet defaults to the labels that occur.
    pub fn from_generators(
        generators: impl IntoIterator<Item = Ipomset>,
        alphabet: Option<BTreeSet<Label>>,
    ) -> Result<LanguageSet> {
        let generators: Vec<Ipomset> = generators.into_iter().collect();
        let members = down_close(&generators);
        LanguageSet::build(members, generators, alphabet)
    }

    /// A language given by all its members; fails unless down-closed.
    pub fn from_closed(
        members: impl IntoIterator<Item = Ipomset>,
        alphabet: Option<BTreeSet<Label>>,
    ) -> Result<LanguageSet> {
        let members: IpomsetSet = members.into_iter().collect();
        for m in &members {
            if let Some(missing) = m.refinements().into_iter().find(|r| !members.contains(r)) {
                return Err(Error::NotDownClosed {
                    member: m.to_string(),
                    missing: missing.to_string(),
                });
            }
        }
        let generators = members.iter().cloned().collect();
        LanguageSet::build(members, generators, alphabet)
    }

    pub fn empty() -> LanguageSet {
        LanguageSet::build(IpomsetSet::new(), Vec::new(), None).expect("empty language")
    }

    fn build(
        members: IpomsetSet,
        generators: Vec<Ipomset>,
        alphabet: Option<BTreeSet<Label>>,
    ) -> Result<LanguageSet> {
        let used: BTreeSet<Label> = members.iter().flat_map(|m| m.labels().iter().cloned()).collect();
        let alphabet = match alphabet {
            Some(a) => {
                if let Some(l) = used.iter().find(|l| !a.contains(*l)) {
                    return Err(Error::UnknownLabel(l.to_string()));
                }
                a
            }
            None => used,
        };
        Ok(LanguageSet { alphabet, members, generators, index: OnceLock::new() })
    }

    pub fn alphabet(&self) -> &BTreeSet<Label> {
        &self.alphabet
    }

    pub fn members(&self) -> &IpomsetSet {
        &self.members
    }

    pub fn generators(&self) -> &[Ipomset] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Ipomset) -> bool {
        self.members.contains(p)
    }

    /// The quotient index, built on first use from all divisions of all members.
    pub fn index(&self) -> &QuotientIndex {
        self.index.get_or_init(|| QuotientIndex::build(&self.members))
    }

    /// `P\L = {Q | P * Q ∈ L}`.
    pub fn prefix_quotient(&self, p: &Ipomset) -> &IpomsetSet {
        self.index().prefix_quotient(p)
    }

    /// `L/P = {Q | Q * P ∈ L}`.
    pub fn suffix_quotient(&self, p: &Ipomset) -> IpomsetSet {
        self.index().suffix.get(p).cloned().unwrap_or_default()
    }

    /// All `P` with `P\L ≠ ∅`.
    pub fn prefixes(&self) -> impl Iterator<Item = &Ipomset> {
        self.index().prefix.keys()
    }

    /// Does `p` have a nonempty quotient?
    pub fn is_prefix(&self, p: &Ipomset) -> bool {
        self.index().prefix.contains_key(p)
    }

    /// `suff(L)`: the distinct prefix quotients, `∅` included.
    pub fn suffix_quotient_family(&self) -> Vec<IpomsetSet> {
        self.index().values.clone()
    }

    /// `pref(L)`: the distinct suffix quotients, `∅` included.
    pub fn prefix_quotient_family(&self) -> Vec<IpomsetSet> {
        let mut values: BTreeSet<IpomsetSet> = self.index().suffix.values().cloned().collect();
        values.insert(IpomsetSet::new());
        values.into_iter().collect()
    }

    pub fn quotient_id(&self, p: &Ipomset) -> QuotientId {
        self.index().quotient_id(p)
    }

    /// `P ∼_L Q`: equal signatures and equal prefix quotients.
    pub fn weak_equiv(&self, p: &Ipomset, q: &Ipomset) -> bool {
        p.fin() == q.fin() && self.quotient_id(p) == self.quotient_id(q)
    }

    /// `P ≈_L Q`: weakly equivalent, and `(P−A)\L = (Q−A)\L` for every
    /// `A ⊆ rfin(P)`.
    pub fn strong_equiv(&self, p: &Ipomset, q: &Ipomset) -> bool {
        self.weak_equiv(p, q) && self.removal_family(p) == self.removal_family(q)
    }

    /// Quotient ids of `P − A` for `A ⊆ rfin(P)` in submask order.
    pub fn removal_family(&self, p: &Ipomset) -> Vec<QuotientId> {
        p.rfin()
            .subsets()
            .map(|a| {
                let r = p.remove_targets(a).expect("A ⊆ rfin");
                self.quotient_id(&r)
            })
            .collect()
    }

    /// Pairs `P ⊑ Q` of prefixes with `P\L ≠ Q\L`, where `P` is obtained from
    /// `Q` by ordering one concurrent pair. Since `P ⊑ R ⊑ Q` gives
    /// `Q\L ⊆ R\L ⊆ P\L`, every violating pair is linked by a chain of
    /// these, so `L` is swap-invariant iff the list is empty. Sorted.
    pub fn swap_invariance_violations(&self) -> Vec<SwapViolation> {
        let mut out = Vec::new();
        for q in self.prefixes() {
            let qid = self.quotient_id(q);
            for p in q.one_step_refinements() {
                if self.quotient_id(&p) != qid {
                    out.push(SwapViolation {
                        finer_quotient: self.prefix_quotient(&p).clone(),
                        coarser_quotient: self.prefix_quotient(q).clone(),
                        finer: p,
                        coarser: q.clone(),
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_swap_invariant(&self) -> bool {
        self.prefixes().all(|q| {
            let qid = self.quotient_id(q);
            q.one_step_refinements().iter().all(|p| self.quotient_id(p) == qid)
        })
    }
}

/// A witness against swap-invariance: `finer ⊑ coarser` with different quotients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SwapViolation {
    pub finer: Ipomset,
    pub coarser: Ipomset,
    pub finer_quotient: IpomsetSet,
    pub coarser_quotient: IpomsetSet,
}

/// Prefix and suffix quotients of every division of every member.
#[derive(Debug, Clone)]
pub struct QuotientIndex {
    prefix: BTreeMap<Ipomset, QuotientId>,
    suffix: BTreeMap<Ipomset, IpomsetSet>,
    values: Vec<IpomsetSet>,
}

impl QuotientIndex {
    fn build(members: &IpomsetSet) -> QuotientIndex {
        let mut by_prefix: BTreeMap<Ipomset, IpomsetSet> = BTreeMap::new();
        let mut suffix: BTreeMap<Ipomset, IpomsetSet> = BTreeMap::new();
        for m in members {
            for d in m.enumerate_divisions() {
                by_prefix.entry(d.left.clone()).or_default().insert(d.right.clone());
                suffix.entry(d.right).or_default().insert(d.left);
            }
        }
        let mut values = vec![IpomsetSet::new()];
        let mut ids: BTreeMap<IpomsetSet, QuotientId> = BTreeMap::new();
        ids.insert(IpomsetSet::new(), EMPTY_QUOTIENT);
        let prefix = by_prefix
            .into_iter()
            .map(|(p, q)| {
                let id = *ids.entry(q.clone()).or_insert_with(|| {
                    values.push(q);
                    values.len() - 1
                });
                (p, id)
            })
            .collect();
        QuotientIndex { prefix, suffix, values }
    }

    pub fn quotient_id(&self, p: &Ipomset) -> QuotientId {
        self.prefix.get(p).copied().unwrap_or(EMPTY_QUOTIENT)
    }

    pub fn quotient(&self, id: QuotientId) -> &IpomsetSet {
        &self.values[id]
    }

    pub fn prefix_quotient(&self, p: &Ipomset) -> &IpomsetSet {
        &self.values[self.quotient_id(p)]
    }

    /// Number of distinct prefix quotients, `∅` included.
    pub fn distinct_quotients(&self) -> usize {
        self.values.len()
    }
}
