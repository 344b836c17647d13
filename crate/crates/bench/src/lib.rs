//! Benchmark fixtures: parametrized ipomsets, languages and HDAs.

use hda_core::format::{parse_hda, parse_ipomset};
use hda_core::{Hda, Ipomset, LanguageSet};

pub fn ipomset(text: &str) -> Ipomset {
    parse_ipomset(text).expect("fixture parses")
}

/// `n` concurrent events labelled `a`, `b`, … cycling through four letters.
pub fn parallel(n: usize) -> Ipomset {
    let rows: Vec<String> = (0..n).map(|i| letter(i).to_string()).collect();
    ipomset(&format!("[{}]", rows.join("∥")))
}

/// A chain of `len` events alongside one long `d` event. Two parallel
/// chains would form a 2+2, which is not an interval order.
pub fn chain_beside(len: usize) -> Ipomset {
    let chain: String = (0..len).map(|i| letter(i % 3)).collect();
    ipomset(&format!("[{chain}∥d]"))
}

fn letter(i: usize) -> char {
    (b'a' + (i % 4) as u8) as char
}

/// The N-shaped ipomset with a source and a target event.
pub fn n_shape() -> Ipomset {
    ipomset("ipomset n { events: a:a, b:b, c:c, d:d; source: b; target: d; prec: a<c, a<d, b<d; evord: a<b, c<b, c<d; }")
}

/// The language generated by `[a∥b]` and `abc`.
pub fn small_language() -> LanguageSet {
    language(&["[a∥b]", "abc"])
}

/// Generated by a chain beside an event, a chain over the same letters.
pub fn medium_language() -> LanguageSet {
    language(&["[abc∥d]", "abcd", "[a∥b•]"])
}

pub fn language(gens: &[&str]) -> LanguageSet {
    LanguageSet::from_generators(gens.iter().map(|s| ipomset(s)), None).expect("fixture closes")
}

/// The full square on `[a b]` with one start and one accept corner.
pub fn square() -> Hda {
    parse_hda(
        "hda sq {
            cell v : []; cell w : []; cell x : []; cell y : [];
            cell e : [a] d0(1)=v d1(1)=w; cell f : [a] d0(1)=x d1(1)=y;
            cell g : [b] d0(1)=v d1(1)=x; cell h : [b] d0(1)=w d1(1)=y;
            cell q : [a b] d0(1)=g d1(1)=h d0(2)=e d1(2)=f;
            start: v; accept: y;
        }",
    )
    .expect("fixture parses")
    .1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(parallel(5).len(), 5);
        assert_eq!(chain_beside(3).len(), 4);
        assert_eq!(n_shape().sparse_decomposition().steps.len(), 6);
        assert_eq!(small_language().len(), 4);
        assert!(medium_language().len() > 10);
        square().validate().unwrap();
    }
}
