use num_rational::Rational64;

use crate::bits::PosSet;
use crate::error::{Error, Result};
use crate::label::Label;

use super::Ipomset;

/// One activity interval. `source` and `target` mark interface membership:
/// the event was already running at the start, or is still running at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub label: Label,
    pub begin: Rational64,
    pub end: Rational64,
    pub source: bool,
    pub target: bool,
}

/// Intervals listed in event order: for concurrent events the earlier entry
/// comes first in `⋖`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalRep {
    pub intervals: Vec<Interval>,
}

impl IntervalRep {
    pub fn to_ipomset(&self) -> Result<Ipomset> {
        Ipomset::from_intervals(self)
    }
}

impl Ipomset {
    /// Integer endpoints derived from the sparse step timing: an event that
    /// starts at step `i` begins at `2i+1` and one that ends at step `j` ends
    /// at `2j+2`; interface events are clamped to `0` and `2k+3`.
    pub fn interval_representation(&self) -> IntervalRep {
        let t = self.timing();
        let last = 2 * t.last as i64 + 3;
        let intervals = self
            .linear_event_order()
            .into_iter()
            .map(|x| Interval {
                label: self.label(x).clone(),
                begin: Rational64::from_integer(if self.is_source(x) {
                    0
                } else {
                    2 * t.begin[x] as i64 + 1
                }),
                end: Rational64::from_integer(if self.is_target(x) {
                    last
                } else {
                    2 * t.end[x] as i64 + 2
                }),
                source: self.is_source(x),
                target: self.is_target(x),
            })
            .collect();
        IntervalRep { intervals }
    }

    /// A total order extending the stored event order, ties broken by index.
    pub fn linear_event_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = PosSet::EMPTY;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&x| {
                    !placed.contains(x)
                        && (0..n).all(|y| placed.contains(y) || !self.event_order(y, x))
                })
                .expect("event order is acyclic");
            placed.insert(next);
            out.push(next);
        }
        out
    }

    /// Builds an ipomset from intervals: `x < y` iff `end(x) < begin(y)`;
    /// concurrent events are ordered by their position in `rep`.
    pub fn from_intervals(rep: &IntervalRep) -> Result<Ipomset> {
        let iv = &rep.intervals;
        let n = iv.len();
        if n > crate::bits::MAX_BITS {
            return Err(Error::TooLarge(n));
        }
        for (x, i) in iv.iter().enumerate() {
            if i.begin > i.end {
                return Err(Error::MalformedInterval {
                    event: x,
                    reason: format!("begin {} is after end {}", i.begin, i.end),
                });
            }
        }
        let mut prec = vec![PosSet::EMPTY; n];
        let mut evord = vec![PosSet::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                if iv[x].end < iv[y].begin {
                    prec[x].insert(y);
                } else if x < y && iv[y].end >= iv[x].begin {
                    evord[x].insert(y);
                }
            }
        }
        let source = (0..n).filter(|&x| iv[x].source).collect();
        let target = (0..n).filter(|&x| iv[x].target).collect();
        Ipomset::from_parts(
            iv.iter().map(|i| i.label.clone()).collect(),
            source,
            target,
            prec,
            evord,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ipomset as p;

    fn r(num: i64, den: i64) -> Rational64 {
        Rational64::new(num, den)
    }

    fn iv(label: &str, b: Rational64, e: Rational64, s: bool, t: bool) -> Interval {
        Interval { label: Label::new(label), begin: b, end: e, source: s, target: t }
    }

    #[test]
    fn single_interior_interval() {
        let rep = IntervalRep { intervals: vec![iv("a", r(1, 1), r(2, 1), false, false)] };
        assert_eq!(rep.to_ipomset().unwrap(), p("a").unwrap());
    }

    #[test]
    fn reversed_interval_is_malformed() {
        let rep = IntervalRep { intervals: vec![iv("a", r(2, 1), r(1, 1), false, false)] };
        assert!(matches!(rep.to_ipomset(), Err(Error::MalformedInterval { event: 0, .. })));
    }

    #[test]
    fn disjoint_intervals_are_sequential() {
        let rep = IntervalRep {
            intervals: vec![
                iv("a", r(0, 1), r(1, 1), false, false),
                iv("b", r(2, 1), r(3, 1), false, false),
            ],
        };
        assert_eq!(rep.to_ipomset().unwrap(), p("ab").unwrap());
    }

    #[test]
    fn round_trip_on_examples() {
        for s in ["ε", "ab•", "[•a∥b•]", "[a∥bc]", "[•a•∥•a∥c•]", "•abc"] {
            let q = p(s).unwrap();
            assert_eq!(q.interval_representation().to_ipomset().unwrap(), q, "{s}");
        }
    }
}
