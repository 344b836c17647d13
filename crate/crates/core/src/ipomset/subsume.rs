use super::Ipomset;

impl Ipomset {
    /// `self ⊑ other`: `self` has at least the precedence of `other`.
    pub fn subsumes(&self, other: &Ipomset) -> bool {
        self.subsumption(other).is_some()
    }

    /// A bijection `f` from events of `self` to events of `other` that keeps
    /// labels and interfaces, reflects precedence and preserves event order on
    /// pairs concurrent in `self`.
    pub fn subsumption(&self, other: &Ipomset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len()
            || self.source_set().len() != other.source_set().len()
            || self.target_set().len() != other.target_set().len()
            || self.prec_count() < other.prec_count()
        {
            return None;
        }
        let mut f = vec![usize::MAX; n];
        let mut used = crate::PosSet::EMPTY;
        if self.extend(other, 0, &mut f, &mut used) {
            Some(f)
        } else {
            None
        }
    }

    fn extend(&self, q: &Ipomset, x: usize, f: &mut [usize], used: &mut crate::PosSet) -> bool {
        if x == self.len() {
            return true;
        }
        for y in 0..q.len() {
            if used.contains(y)
                || self.label(x) != q.label(y)
                || self.is_source(x) != q.is_source(y)
                || self.is_target(x) != q.is_target(y)
            {
                continue;
            }
            let compatible = (0..x).all(|w| {
                let fw = f[w];
                if q.precedes(fw, y) && !self.precedes(w, x) {
                    return false;
                }
                if q.precedes(y, fw) && !self.precedes(x, w) {
                    return false;
                }
                if self.concurrent(w, x) {
                    if self.event_order(w, x) && !q.event_order(fw, y) {
                        return false;
                    }
                    if self.event_order(x, w) && !q.event_order(y, fw) {
                        return false;
                    }
                }
                true
            });
            if compatible {
                f[x] = y;
                used.insert(y);
                if self.extend(q, x + 1, f, used) {
                    return true;
                }
                used.remove(y);
            }
        }
        false
    }
}
