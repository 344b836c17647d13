//! Ipomset text: shorthand expressions and `ipomset NAME { … }` blocks.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::ipomset::{Ipomset, RawIposet};
use crate::label::Label;

use super::line_of;

/// Parses a block if the text starts with `ipomset`, otherwise a shorthand.
pub fn parse_ipomset(text: &str) -> Result<Ipomset> {
    let t = text.trim();
    if t.starts_with("ipomset") {
        let mut blocks = parse_ipo_blocks(t)?;
        match blocks.len() {
            1 => Ok(blocks.pop().unwrap().1),
            n => Err(Error::Parse { line: 1, msg: format!("expected one ipomset block, found {n}") }),
        }
    } else {
        parse_shorthand(t)
    }
}

fn is_bullet(c: char) -> bool {
    c == '•' || c == '.'
}

/// Shorthand: rows separated by `|` or `∥` in event order, each row a
/// precedence chain of labels (a letter plus optional digits). A bullet
/// before a label makes it a source, after a label a target.
pub fn parse_shorthand(text: &str) -> Result<Ipomset> {
    let body: String = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '[' && *c != ']')
        .collect();
    if body.is_empty() || body == "ε" || body == "eps" {
        return Ok(Ipomset::empty());
    }
    let err = |msg: String| Error::Parse { line: 1, msg };
    let mut raw = RawIposet::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for row in body.split(['|', '∥']) {
        let chars: Vec<char> = row.chars().collect();
        let mut events = Vec::new();
        let mut i = 0;
        let mut pending_source = false;
        while i < chars.len() {
            let c = chars[i];
            if is_bullet(c) {
                if events.is_empty() || pending_source {
                    pending_source = true;
                } else if i > 0 && !is_bullet(chars[i - 1]) {
                    raw.target.push(*events.last().unwrap());
                } else {
                    pending_source = true;
                }
                i += 1;
            } else if c.is_alphabetic() {
                let mut label = c.to_string();
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    label.push(chars[i]);
                    i += 1;
                }
                let e = raw.event(Label::new(&label));
                if pending_source {
                    raw.source.push(e);
                    pending_source = false;
                }
                events.push(e);
            } else {
                return Err(err(format!("unexpected character {c:?} in {text:?}")));
            }
        }
        if pending_source || events.is_empty() {
            return Err(err(format!("empty or dangling row {row:?} in {text:?}")));
        }
        for w in events.windows(2) {
            raw.prec.push((w[0], w[1]));
        }
        rows.push(events);
    }
    for (i, r) in rows.iter().enumerate() {
        for s in &rows[i + 1..] {
            for &x in r {
                for &y in s {
                    raw.evord.push((x, y));
                }
            }
        }
    }
    raw.canonicalize()
}

/// Parses one or more `ipomset NAME { … }` blocks.
pub fn parse_ipo_blocks(text: &str) -> Result<Vec<(String, Ipomset)>> {
    let mut out = Vec::new();
    let mut rest = 0;
    loop {
        let tail = &text[rest..];
        let skip = tail.len() - tail.trim_start().len();
        let start = rest + skip;
        if start >= text.len() {
            break;
        }
        let open = text[start..]
            .find('{')
            .map(|i| start + i)
            .ok_or_else(|| Error::Parse { line: line_of(text, start), msg: "missing '{'".into() })?;
        let header: Vec<&str> = text[start..open].split_whitespace().collect();
        if header.first() != Some(&"ipomset") || header.len() > 2 {
            return Err(Error::Parse {
                line: line_of(text, start),
                msg: format!("expected 'ipomset NAME {{', found {:?}", text[start..open].trim()),
            });
        }
        let name = header.get(1).unwrap_or(&"").to_string();
        let close = text[open..]
            .find('}')
            .map(|i| open + i)
            .ok_or_else(|| Error::Parse { line: line_of(text, open), msg: "missing '}'".into() })?;
        let p = parse_block_body(&text[open + 1..close], line_of(text, open))?;
        out.push((name, p));
        rest = close + 1;
    }
    Ok(out)
}

fn parse_block_body(body: &str, line: usize) -> Result<Ipomset> {
    let err = |msg: String| Error::Parse { line, msg };
    let mut raw = RawIposet::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut sections: Vec<(String, String)> = Vec::new();
    for part in body.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| err(format!("section without ':' in {part:?}")))?;
        sections.push((key.trim().to_string(), value.trim().to_string()));
    }
    // events first, so later sections may refer to ids in any order
    for (key, value) in &sections {
        if key != "events" {
            continue;
        }
        for item in split_list(value) {
            let (id, label) = item
                .split_once(':')
                .ok_or_else(|| err(format!("event {item:?} must be id:label")))?;
            let (id, label) = (id.trim(), label.trim());
            if id.is_empty() || label.is_empty() {
                return Err(err(format!("event {item:?} must be id:label")));
            }
            if ids.insert(id.to_string(), raw.labels.len()).is_some() {
                return Err(err(format!("duplicate event id {id:?}")));
            }
            raw.event(Label::new(label));
        }
    }
    let lookup = |id: &str| -> Result<usize> {
        ids.get(id.trim())
            .copied()
            .ok_or_else(|| err(format!("unknown event id {:?}", id.trim())))
    };
    for (key, value) in &sections {
        match key.as_str() {
            "events" => {}
            "source" | "target" => {
                for id in split_list(value) {
                    let e = lookup(id)?;
                    if key == "source" {
                        raw.source.push(e);
                    } else {
                        raw.target.push(e);
                    }
                }
            }
            "prec" | "evord" => {
                for chain in split_list(value) {
                    let items: Vec<&str> = chain.split(['<', '⋖']).collect();
                    if items.len() < 2 {
                        return Err(err(format!("{key} entry {chain:?} must be id<id")));
                    }
                    for w in items.windows(2) {
                        let pair = (lookup(w[0])?, lookup(w[1])?);
                        if key == "prec" {
                            raw.prec.push(pair);
                        } else {
                            raw.evord.push(pair);
                        }
                    }
                }
            }
            other => return Err(err(format!("unknown section {other:?}"))),
        }
    }
    raw.canonicalize()
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split([',', ' ', '\t', '\n', '\r']).filter(|s| !s.trim().is_empty())
}

/// Emits a block with events `e0, e1, …` in canonical order and covering
/// pairs only.
pub fn write_ipo_block(name: &str, p: &Ipomset) -> String {
    let mut s = String::new();
    let id = |x: usize| format!("e{x}");
    let list = |v: Vec<String>| v.join(", ");
    writeln!(s, "ipomset {name} {{").unwrap();
    let events: Vec<String> = (0..p.len()).map(|x| format!("{}:{}", id(x), p.label(x))).collect();
    writeln!(s, "  events: {};", list(events)).unwrap();
    writeln!(s, "  source: {};", list(p.source_set().iter().map(id).collect())).unwrap();
    writeln!(s, "  target: {};", list(p.target_set().iter().map(id).collect())).unwrap();
    let pairs = |v: Vec<(usize, usize)>| -> String {
        list(v.into_iter().map(|(x, y)| format!("{}<{}", id(x), id(y))).collect())
    };
    writeln!(s, "  prec: {};", pairs(p.prec_covers())).unwrap();
    writeln!(s, "  evord: {};", pairs(p.evord_covers())).unwrap();
    s.push_str("}\n");
    s
}
