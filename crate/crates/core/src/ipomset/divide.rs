use crate::bits::PosSet;

use super::Ipomset;

/// A pair `(left, right)` with `left * right ≅` the divided ipomset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Division {
    pub left: Ipomset,
    pub right: Ipomset,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Left,
    Interface,
    Right,
}

impl Ipomset {
    /// All ways to write `self` as a gluing `P * Q`, sorted.
    pub fn enumerate_divisions(&self) -> Vec<Division> {
        let mut out = Vec::new();
        let mut parts = Vec::with_capacity(self.len());
        self.divide_from(&mut parts, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn divide_from(&self, parts: &mut Vec<Part>, out: &mut Vec<Division>) {
        let x = parts.len();
        if x == self.len() {
            if let Some(d) = self.split(parts) {
                out.push(d);
            }
            return;
        }
        for part in [Part::Left, Part::Interface, Part::Right] {
            if (part == Part::Right && self.is_source(x)) || (part == Part::Left && self.is_target(x)) {
                continue;
            }
            let ok = parts.iter().enumerate().all(|(w, &pw)| allowed(self, w, pw, x, part));
            if ok {
                parts.push(part);
                self.divide_from(parts, out);
                parts.pop();
            }
        }
    }

    fn split(&self, parts: &[Part]) -> Option<Division> {
        let select = |f: &dyn Fn(Part) -> bool| -> PosSet {
            parts.iter().enumerate().filter(|&(_, &p)| f(p)).map(|(i, _)| i).collect()
        };
        let iface = select(&|p| p == Part::Interface);
        let left_events = select(&|p| p != Part::Right);
        let right_events = select(&|p| p != Part::Left);
        let left = self.restrict(left_events, self.source_set(), iface).ok()?;
        let right = self.restrict(right_events, iface, self.target_set()).ok()?;
        let d = Division { left, right };
        (d.left.glue(&d.right).ok()? == *self).then_some(d)
    }
}

/// Pairwise constraints: left events precede right events, the interface is
/// an antichain, and nothing in a later part precedes something earlier.
fn allowed(p: &Ipomset, w: usize, pw: Part, x: usize, px: Part) -> bool {
    let rank = |q: Part| q as u8;
    let ordered = |a: usize, pa: Part, b: usize, pb: Part| -> bool {
        // a < b
        if !p.precedes(a, b) {
            return true;
        }
        rank(pa) < rank(pb) || (pa == pb && pa != Part::Interface)
    };
    if p.concurrent(w, x) {
        return rank(pw).abs_diff(rank(px)) != 2;
    }
    ordered(w, pw, x, px) && ordered(x, px, w, pw)
}

#[cfg(test)]
mod tests {
    use crate::format::parse_ipomset as p;
    use crate::ipomset::Ipomset;

    #[test]
    fn divisions_of_ab() {
        let got: Vec<(String, String)> = p("ab")
            .unwrap()
            .enumerate_divisions()
            .into_iter()
            .map(|d| (d.left.to_string(), d.right.to_string()))
            .collect();
        let mut want: Vec<(String, String)> = [
            ("ε", "ab"),
            ("a", "b"),
            ("ab", "ε"),
            ("a•", "•ab"),
            ("ab•", "•b"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn divisions_of_empty() {
        let d = Ipomset::empty().enumerate_divisions();
        assert_eq!(d.len(), 1);
        assert!(d[0].left.is_empty() && d[0].right.is_empty());
    }

    #[test]
    fn identity_divides_into_identities() {
        let id = p("[•a•∥•b•]").unwrap();
        assert!(id
            .enumerate_divisions()
            .iter()
            .any(|d| d.left == id && d.right == id));
    }
}
