//! Fixtures, brute-force oracles and the seeded random corpus shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hda_core::format::{parse_hda, parse_ipomset};
use hda_core::{Hda, Interval, IntervalRep, Ipomset, Label, LanguageSet, RawIposet};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(s: &str) -> Ipomset {
    parse_ipomset(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn set(items: &[&str]) -> BTreeSet<Ipomset> {
    items.iter().map(|s| p(s)).collect()
}

pub fn lang(gens: &[&str]) -> LanguageSet {
    LanguageSet::from_generators(gens.iter().map(|s| p(s)), None).unwrap()
}

pub const FILLED_SQUARE: &str = "hda filled_square {
    cell v : []; cell w : []; cell x : []; cell y : [];
    cell e : [a] d0(1)=v d1(1)=w;
    cell f : [a] d0(1)=x d1(1)=y;
    cell g : [b] d0(1)=v d1(1)=x;
    cell h : [b] d0(1)=w d1(1)=y;
    cell q : [a b] d0(1)=g d1(1)=h d0(2)=e d1(2)=f;
    start: v;
    accept: h, y;
}";

/// Three squares `x = [a b]`, `y = [c b]`, `z = [c d]` glued along edges.
pub const THREE_SQUARES: &str = "hda Y {
    cell v00 : []; cell v20 : []; cell v40 : []; cell v02 : [];
    cell v22 : []; cell v42 : []; cell v24 : []; cell v44 : [];
    cell aB : [a] d0(1)=v00 d1(1)=v20;
    cell aT : [a] d0(1)=v02 d1(1)=v22;
    cell cB : [c] d0(1)=v20 d1(1)=v40;
    cell cM : [c] d0(1)=v22 d1(1)=v42;
    cell cT : [c] d0(1)=v24 d1(1)=v44;
    cell bL : [b] d0(1)=v00 d1(1)=v02;
    cell bM : [b] d0(1)=v20 d1(1)=v22;
    cell bR : [b] d0(1)=v40 d1(1)=v42;
    cell dL : [d] d0(1)=v22 d1(1)=v24;
    cell dR : [d] d0(1)=v42 d1(1)=v44;
    cell x : [a b] d0(1)=bL d1(1)=bM d0(2)=aB d1(2)=aT;
    cell y : [c b] d0(1)=bM d1(1)=bR d0(2)=cB d1(2)=cM;
    cell z : [c d] d0(1)=dL d1(1)=dR d0(2)=cM d1(2)=cT;
    start: bL;
    accept: cT;
}";

/// Two `[a b]` squares side by side whose bottom-left and top-right
/// `a`-edges are identified; that edge is both start and accept.
pub const LOOP: &str = "hda loop {
    cell p : []; cell q : []; cell r : []; cell s : [];
    cell e : [a] d0(1)=p d1(1)=q;
    cell t : [a] d0(1)=r d1(1)=p;
    cell u : [a] d0(1)=q d1(1)=s;
    cell lb : [b] d0(1)=p d1(1)=r;
    cell m : [b] d0(1)=q d1(1)=p;
    cell rb : [b] d0(1)=s d1(1)=q;
    cell L1 : [a b] d0(1)=lb d1(1)=m d0(2)=e d1(2)=t;
    cell R1 : [a b] d0(1)=m d1(1)=rb d0(2)=u d1(2)=e;
    start: e;
    accept: e;
}";

pub const NSHAPE: &str = "ipomset nshape {
    events: a:a, b:b, c:c, d:d;
    source: b; target: d;
    prec: a<c, a<d, b<d;
    evord: a<b, c<b, c<d;
}";

pub fn hda(text: &str) -> Hda {
    parse_hda(text).unwrap().1
}

// Oracles

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for y in 0..n {
            if !cur.contains(&y) {
                cur.push(y);
                go(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

/// `a ⊑ b` straight from the definition, over every bijection.
pub fn brute_subsumes(a: &Ipomset, b: &Ipomset) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    permutations(n).into_iter().any(|f| {
        (0..n).all(|x| {
            a.label(x) == b.label(f[x]) && a.is_source(x) == b.is_source(f[x]) && a.is_target(x) == b.is_target(f[x])
        }) && (0..n).all(|x| {
            (0..n).all(|y| {
                let reflects = !b.precedes(f[x], f[y]) || a.precedes(x, y);
                let concurrent = !a.precedes(x, y) && !a.precedes(y, x);
                let keeps = !(concurrent && a.event_order(x, y)) || b.event_order(f[x], f[y]);
                reflects && keeps
            })
        })
    })
}

/// Every `Q ⊑ p`: choose an order for each pair of events concurrent in
/// `p` (three choices), keep the choices whose union with `p`'s precedence
/// is a strict partial order, build the iposet with `p`'s event order on
/// the pairs left concurrent, and filter by [`brute_subsumes`].
pub fn brute_refinements(a: &Ipomset) -> BTreeSet<Ipomset> {
    let n = a.len();
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).filter(|&(x, y)| a.concurrent(x, y)).collect();
    let mut out = BTreeSet::new();
    let mut choice = vec![0u8; free.len()];
    let mut rel = vec![vec![false; n]; n];
    loop {
        for (x, row) in rel.iter_mut().enumerate() {
            for (y, r) in row.iter_mut().enumerate() {
                *r = a.precedes(x, y);
            }
        }
        for (k, &(x, y)) in free.iter().enumerate() {
            match choice[k] {
                1 => rel[x][y] = true,
                2 => rel[y][x] = true,
                _ => {}
            }
        }
        let transitive = (0..n).all(|x| (0..n).all(|y| !rel[x][y] || (0..n).all(|z| !rel[y][z] || rel[x][z])));
        if transitive {
            let mut raw = RawIposet::new();
            for x in 0..n {
                raw.event(a.label(x).clone());
            }
            raw.source = (0..n).filter(|&x| a.is_source(x)).collect();
            raw.target = (0..n).filter(|&x| a.is_target(x)).collect();
            for x in 0..n {
                for y in 0..n {
                    if rel[x][y] {
                        raw.prec.push((x, y));
                    } else if !rel[y][x] && x != y && a.event_order(x, y) {
                        raw.evord.push((x, y));
                    }
                }
            }
            if let Ok(q) = raw.canonicalize() {
                if brute_subsumes(&q, a) {
                    out.insert(q);
                }
            }
        }
        // next choice vector in base 3
        let mut k = 0;
        while k < choice.len() && choice[k] == 2 {
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
        choice[k] += 1;
    }
    out
}

/// The sub-iposet on `keep` with the given interfaces, built from scratch.
fn restrict_raw(a: &Ipomset, keep: &[usize], source: &[usize], target: &[usize]) -> RawIposet {
    let mut raw = RawIposet::new();
    for &x in keep {
        raw.event(a.label(x).clone());
    }
    let idx = |x: usize| keep.iter().position(|&k| k == x).unwrap();
    raw.source = source.iter().map(|&x| idx(x)).collect();
    raw.target = target.iter().map(|&x| idx(x)).collect();
    for &x in keep {
        for &y in keep {
            if a.precedes(x, y) {
                raw.prec.push((idx(x), idx(y)));
            }
            if a.event_order(x, y) {
                raw.evord.push((idx(x), idx(y)));
            }
        }
    }
    raw
}

/// All `(left, right)` with `left * right = a`, from all `3^n` assignments of
/// events to left only, interface, or right only.
pub fn brute_divisions(a: &Ipomset) -> BTreeSet<(Ipomset, Ipomset)> {
    let n = a.len();
    let mut out = BTreeSet::new();
    for code in 0..3usize.pow(n as u32) {
        let part: Vec<usize> = (0..n).map(|x| code / 3usize.pow(x as u32) % 3).collect();
        let left: Vec<usize> = (0..n).filter(|&x| part[x] != 2).collect();
        let right: Vec<usize> = (0..n).filter(|&x| part[x] != 0).collect();
        let iface: Vec<usize> = (0..n).filter(|&x| part[x] == 1).collect();
        let src: Vec<usize> = (0..n).filter(|&x| a.is_source(x)).collect();
        let tgt: Vec<usize> = (0..n).filter(|&x| a.is_target(x)).collect();
        if src.iter().any(|x| part[*x] == 2) || tgt.iter().any(|x| part[*x] == 0) {
            continue;
        }
        let (Ok(l), Ok(r)) = (
            restrict_raw(a, &left, &src, &iface).canonicalize(),
            restrict_raw(a, &right, &iface, &tgt).canonicalize(),
        ) else {
            continue;
        };
        if l.glue(&r).as_ref() == Ok(a) {
            out.insert((l, r));
        }
    }
    out
}

/// All quotients by definition: for every division `left * right` of a
/// member, `right ∈ left \ L`.
pub fn brute_quotients(l: &LanguageSet) -> BTreeMap<Ipomset, BTreeSet<Ipomset>> {
    let mut out: BTreeMap<Ipomset, BTreeSet<Ipomset>> = BTreeMap::new();
    for m in l.members() {
        for (left, right) in brute_divisions(m) {
            out.entry(left).or_default().insert(right);
        }
    }
    out
}

// Corpus

/// A random ipomset with at most `max_events` events over the first
/// `labels` letters, built from integer intervals.
pub fn random_ipomset(rng: &mut impl Rng, max_events: usize, labels: usize) -> Ipomset {
    let n = rng.gen_range(1..=max_events);
    let intervals = (0..n)
        .map(|_| {
            let source = rng.gen_bool(0.15);
            let target = rng.gen_bool(0.15);
            let begin = if source { 0 } else { rng.gen_range(1..=8) };
            let end = if target { 10 } else { rng.gen_range(begin.max(1)..=9) };
            let letter = (b'a' + rng.gen_range(0..labels) as u8) as char;
            Interval {
                label: Label::new(&letter.to_string()),
                begin: Rational64::from_integer(begin),
                end: Rational64::from_integer(end),
                source,
                target,
            }
        })
        .collect();
    Ipomset::from_intervals(&IntervalRep { intervals }).expect("integer intervals form an iposet")
}

pub const CORPUS_SIZE: usize = 60;
pub const CORPUS_SEED: u64 = 0x5eed_2024;

/// Seeded random languages: up to 3 generators, at most 4 labels, at most
/// 5 events each.
pub fn corpus() -> Vec<LanguageSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let labels = rng.gen_range(1..=4);
            let gens: Vec<Ipomset> = (0..rng.gen_range(1..=3)).map(|_| random_ipomset(&mut rng, 5, labels)).collect();
            LanguageSet::from_generators(gens, None).unwrap()
        })
        .collect()
}
