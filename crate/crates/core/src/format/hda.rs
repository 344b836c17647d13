//! The `.hda` format:
//!
//! ```text
//! hda NAME {
//!   cell v : [];
//!   cell e : [a] d0(1)=v d1(1)=w;
//!   start: v;
//!   accept: w;
//! }
//! ```
//!
//! Positions are 1-based. `#` starts a comment.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::hda::{Hda, HdaBuilder};
use crate::label::{Label, Loset};

use super::{line_of, strip_comments};

pub fn parse_hda(text: &str) -> Result<(String, Hda)> {
    let text = strip_comments(text);
    let err = |offset: usize, msg: String| Error::Parse { line: line_of(&text, offset), msg };
    let open = text.find('{').ok_or_else(|| err(0, "missing '{'".into()))?;
    let close = text.rfind('}').ok_or_else(|| err(open, "missing '}'".into()))?;
    let header: Vec<&str> = text[..open].split_whitespace().collect();
    if header.first() != Some(&"hda") || header.len() > 2 {
        return Err(err(0, "expected 'hda NAME {'".into()));
    }
    if !text[close + 1..].trim().is_empty() {
        return Err(err(close, "text after closing '}'".into()));
    }
    let name = header.get(1).unwrap_or(&"").to_string();
    let mut b = HdaBuilder::new();
    let mut offset = open + 1;
    for stmt in text[open + 1..close].split(';') {
        let at = offset;
        offset += stmt.len() + 1;
        let s = stmt.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix("cell") {
            parse_cell(rest, &mut b).map_err(|m| err(at + leading(stmt), m))?;
        } else if let Some(rest) = s.strip_prefix("start:") {
            for id in list(rest) {
                b.push_start(id);
            }
        } else if let Some(rest) = s.strip_prefix("accept:") {
            for id in list(rest) {
                b.push_accept(id);
            }
        } else {
            return Err(err(at + leading(stmt), format!("unexpected statement {s:?}")));
        }
    }
    Ok((name, b.build()?))
}

fn leading(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn list(s: &str) -> impl Iterator<Item = &str> {
    s.split([',', ' ', '\t', '\n', '\r']).filter(|x| !x.is_empty())
}

fn parse_cell(rest: &str, b: &mut HdaBuilder) -> std::result::Result<(), String> {
    let (id, rest) = rest.split_once(':').ok_or("cell needs 'ID : [labels]'")?;
    let id = id.trim();
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(format!("bad cell id {id:?}"));
    }
    let rest = rest.trim();
    let rest = rest.strip_prefix('[').ok_or_else(|| format!("cell {id}: expected '['"))?;
    let (labels, faces) = rest.split_once(']').ok_or_else(|| format!("cell {id}: expected ']'"))?;
    let loset: Loset = list(labels).map(Label::new).collect();
    let n = loset.len();
    let mut lower: Vec<Option<String>> = vec![None; n];
    let mut upper: Vec<Option<String>> = vec![None; n];
    for f in faces.split_whitespace() {
        let bad = || format!("cell {id}: bad face {f:?}, expected d0(i)=ID or d1(i)=ID");
        let (lhs, target) = f.split_once('=').ok_or_else(bad)?;
        let (kind, pos) = lhs.split_once('(').ok_or_else(bad)?;
        let pos: usize = pos.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if pos == 0 || pos > n {
            return Err(format!("cell {id}: face position {pos} out of range 1..={n}"));
        }
        let slot = match kind {
            "d0" => &mut lower[pos - 1],
            "d1" => &mut upper[pos - 1],
            _ => return Err(bad()),
        };
        if slot.replace(target.to_string()).is_some() {
            return Err(format!("cell {id}: face {lhs} given twice"));
        }
    }
    let complete = |v: Vec<Option<String>>, kind: &str| -> std::result::Result<Vec<String>, String> {
        v.into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| format!("cell {id}: missing {kind}({})", i + 1)))
            .collect()
    };
    let lower = complete(lower, "d0")?;
    let upper = complete(upper, "d1")?;
    let lower: Vec<&str> = lower.iter().map(String::as_str).collect();
    let upper: Vec<&str> = upper.iter().map(String::as_str).collect();
    b.push_cell(id, loset, &lower, &upper);
    Ok(())
}

pub fn write_hda(name: &str, x: &Hda) -> String {
    let mut s = String::new();
    writeln!(s, "hda {name} {{").unwrap();
    for c in x.cells() {
        let labels: Vec<&str> = c.loset.labels().iter().map(|l| l.as_str()).collect();
        write!(s, "  cell {} : [{}]", c.name, labels.join(" ")).unwrap();
        for i in 0..c.dim() {
            write!(s, " d0({})={} d1({})={}", i + 1, x.name(c.lower[i]), i + 1, x.name(c.upper[i])).unwrap();
        }
        s.push_str(";\n");
    }
    let names = |set: &std::collections::BTreeSet<usize>| -> String {
        set.iter().map(|&c| x.name(c)).collect::<Vec<_>>().join(", ")
    };
    writeln!(s, "  start: {};", names(x.start())).unwrap();
    writeln!(s, "  accept: {};", names(x.accept())).unwrap();
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const FILLED_SQUARE: &str = "hda filled_square {
        # vertices
        cell v : []; cell w : []; cell x : []; cell y : [];
        cell e : [a] d0(1)=v d1(1)=w;
        cell f : [a] d0(1)=x d1(1)=y;
        cell g : [b] d0(1)=v d1(1)=x;
        cell h : [b] d0(1)=w d1(1)=y;
        cell q : [a b] d0(1)=g d1(1)=h d0(2)=e d1(2)=f;
        start: v;
        accept: h, y;
    }";

    #[test]
    fn parses_and_round_trips() {
        let (name, x) = parse_hda(FILLED_SQUARE).unwrap();
        assert_eq!(name, "filled_square");
        x.validate().unwrap();
        assert_eq!(x.len(), 9);
        let (_, y) = parse_hda(&write_hda("filled_square", &x)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn missing_face_is_an_error() {
        let e = parse_hda("hda h {\n cell v : [];\n cell e : [a] d0(1)=v;\n }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn unknown_face_target() {
        let e = parse_hda("hda h { cell e : [a] d0(1)=v d1(1)=v; }").unwrap_err();
        assert_eq!(e, Error::UnknownCell("v".into()));
    }

    #[test]
    fn empty_hda() {
        let (_, x) = parse_hda("hda nothing { }").unwrap();
        assert!(x.is_empty());
    }
}
