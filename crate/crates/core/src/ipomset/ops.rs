use crate::bits::PosSet;
use crate::error::{Error, Result};
use crate::label::{Label, Loset};

use super::{Ipomset, StarterTerminator, StepKind};

impl Ipomset {
    /// The discrete ipomset `id_U` with every event in both interfaces.
    pub fn identity(u: &Loset) -> Ipomset {
        let all = PosSet::full(u.len());
        discrete(u, all, all).expect("identity is always valid")
    }

    /// `U↑A`: the events at positions `A` start, the others continue.
    pub fn starter(u: &Loset, a: PosSet) -> Result<Ipomset> {
        check_positions(u, a)?;
        let all = PosSet::full(u.len());
        discrete(u, all.difference(a), all)
    }

    /// `U↓A`: the events at positions `A` terminate, the others continue.
    pub fn terminator(u: &Loset, a: PosSet) -> Result<Ipomset> {
        check_positions(u, a)?;
        let all = PosSet::full(u.len());
        discrete(u, all, all.difference(a))
    }

    pub fn is_isomorphic(&self, other: &Ipomset) -> bool {
        self == other
    }

    /// Serial composition `P * Q`, identifying the target interface of `self`
    /// with the source interface of `other`.
    pub fn glue(&self, other: &Ipomset) -> Result<Ipomset> {
        let tp = self.target_events();
        let sq = other.source_events();
        let matches = tp.len() == sq.len()
            && tp
                .iter()
                .zip(&sq)
                .all(|(&x, &y)| self.label(x) == other.label(y));
        if !matches {
            return Err(Error::InterfaceMismatch {
                left_target: self.target_loset(),
                right_source: other.source_loset(),
            });
        }
        let np = self.len();
        let mut map = vec![usize::MAX; other.len()];
        for (&x, &y) in tp.iter().zip(&sq) {
            map[y] = x;
        }
        let mut labels: Vec<Label> = self.labels().to_vec();
        for y in 0..other.len() {
            if map[y] == usize::MAX {
                map[y] = labels.len();
                labels.push(other.label(y).clone());
            }
        }
        let n = labels.len();
        let mut prec = vec![PosSet::EMPTY; n];
        let mut evord = vec![PosSet::EMPTY; n];
        for x in 0..np {
            prec[x] = self.successors(x);
            evord[x] = self.evord[x];
        }
        let map_set = |s: PosSet| -> PosSet { s.iter().map(|i| map[i]).collect() };
        for y in 0..other.len() {
            prec[map[y]] = prec[map[y]].union(map_set(other.successors(y)));
            evord[map[y]] = evord[map[y]].union(map_set(other.evord[y]));
        }
        let p_only = PosSet::full(np).difference(self.target_set());
        let q_only = PosSet::full(n).difference(PosSet::full(np));
        for x in p_only.iter() {
            prec[x] = prec[x].union(q_only);
        }
        Ipomset::from_parts(labels, self.source_set(), map_set(other.target_set()), prec, evord)
    }

    /// Positions in the target interface whose events are not sources.
    pub fn rfin(&self) -> PosSet {
        self.target_events()
            .iter()
            .enumerate()
            .filter(|&(_, &x)| !self.is_source(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// The signature `T_P↑rfin(P)`.
    pub fn fin(&self) -> StarterTerminator {
        StarterTerminator {
            kind: StepKind::Starter,
            loset: self.target_loset(),
            active: self.rfin(),
        }
    }

    /// `P − A` for `A` given as positions in the target interface.
    pub fn remove_targets(&self, a: PosSet) -> Result<Ipomset> {
        let t = self.target_events();
        let mut events = PosSet::EMPTY;
        for pos in a.iter() {
            let &x = t.get(pos).ok_or(Error::NotRemovable { pos })?;
            if self.is_source(x) {
                return Err(Error::NotRemovable { pos });
            }
            events.insert(x);
        }
        if events.is_empty() {
            return Ok(self.clone());
        }
        let keep = self.events().difference(events);
        self.restrict(keep, self.source_set(), self.target_set().difference(events))
    }
}

fn check_positions(u: &Loset, a: PosSet) -> Result<()> {
    match a.max() {
        Some(m) if m >= u.len() => Err(Error::OutOfRange { pos: m, len: u.len() }),
        _ => Ok(()),
    }
}

fn discrete(u: &Loset, source: PosSet, target: PosSet) -> Result<Ipomset> {
    let n = u.len();
    let evord = (0..n)
        .map(|i| PosSet::full(n).difference(PosSet::full(i + 1)))
        .collect();
    Ipomset::from_parts(
        u.labels().to_vec(),
        source,
        target,
        vec![PosSet::EMPTY; n],
        evord,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ipomset as p;

    fn set(v: &[usize]) -> PosSet {
        v.iter().copied().collect()
    }

    #[test]
    fn identity_of_empty_loset_is_epsilon() {
        assert_eq!(Ipomset::identity(&Loset::empty()), Ipomset::empty());
    }

    #[test]
    fn starters_and_terminators() {
        let ab = Loset::from_chars("ab");
        assert_eq!(Ipomset::starter(&ab, set(&[0])).unwrap(), p("[a•∥•b•]").unwrap());
        assert_eq!(Ipomset::terminator(&ab, set(&[1])).unwrap(), p("[•a•∥•b]").unwrap());
        assert_eq!(Ipomset::starter(&ab, PosSet::EMPTY).unwrap(), Ipomset::identity(&ab));
        assert!(matches!(
            Ipomset::starter(&ab, set(&[2])),
            Err(Error::OutOfRange { pos: 2, len: 2 })
        ));
    }

    #[test]
    fn glue_basics() {
        assert_eq!(p("a•").unwrap().glue(&p("•ab").unwrap()).unwrap(), p("ab").unwrap());
        assert!(matches!(
            p("a•").unwrap().glue(&p("•b").unwrap()),
            Err(Error::InterfaceMismatch { .. })
        ));
        let q = p("[a•∥b•]").unwrap();
        assert_eq!(q.glue(&Ipomset::identity(&q.target_loset())).unwrap(), q);
        // ab• * •bc = abc
        assert_eq!(p("ab•").unwrap().glue(&p("•bc").unwrap()).unwrap(), p("abc").unwrap());
    }

    #[test]
    fn glue_against_concurrent_interface() {
        // c is concurrent with a because a continues through the second part
        let r = p("[a•∥b•]").unwrap().glue(&p("[•a∥•bc]").unwrap()).unwrap();
        assert_eq!(r, p("[a∥bc]").unwrap());
    }

    #[test]
    fn signatures() {
        let x = p("[•a•∥•a∥c•]").unwrap();
        assert_eq!(x.fin().to_ipomset(), p("[•a•∥c•]").unwrap());
        let y = p("[•ac•∥•b•]").unwrap();
        assert_eq!(y.fin().to_ipomset(), p("[c•∥•b•]").unwrap());
        assert_eq!(y.rfin().len(), 1);
        let z = p("[ac•∥b•]").unwrap();
        assert_eq!(z.fin().to_ipomset(), p("[c•∥b•]").unwrap());
        assert_eq!(z.rfin().len(), 2);
    }

    #[test]
    fn remove_targets_examples() {
        let ab = p("ab•").unwrap();
        assert_eq!(ab.remove_targets(set(&[0])).unwrap(), p("a").unwrap());
        assert_eq!(ab.remove_targets(PosSet::EMPTY).unwrap(), ab);
        let y = p("[•ac•∥•b•]").unwrap();
        let c_pos = y.target_events().iter().position(|&x| y.label(x).as_str() == "c").unwrap();
        assert_eq!(
            y.remove_targets(PosSet::singleton(c_pos)).unwrap(),
            p("[•a∥•b•]").unwrap()
        );
        let b_pos = 1 - c_pos;
        assert!(matches!(
            y.remove_targets(PosSet::singleton(b_pos)),
            Err(Error::NotRemovable { .. })
        ));
    }
}
