//! The `.lang` format:
//!
//! ```text
//! alphabet: a b
//! closed: false
//! members:
//! [a∥b•]
//! ab•
//! ba
//! ```
//!
//! With `closed: false` (the default) the members generate the language
//! by subsumption closure; with `closed: true` they must already be
//! down-closed. A member is a shorthand on one line or an `ipomset` block.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::ipomset::Ipomset;
use crate::label::Label;
use crate::language::LanguageSet;

use super::ipo::{parse_ipo_blocks, parse_shorthand, write_ipo_block};
use super::strip_comments;

/// Contents of a `.lang` file before closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangFile {
    pub alphabet: Option<BTreeSet<Label>>,
    pub closed: bool,
    pub members: Vec<Ipomset>,
}

impl LangFile {
    pub fn into_language(self) -> Result<LanguageSet> {
        if self.closed {
            LanguageSet::from_closed(self.members, self.alphabet)
        } else {
            LanguageSet::from_generators(self.members, self.alphabet)
        }
    }
}

pub fn parse_lang_file(text: &str) -> Result<LangFile> {
    let text = strip_comments(text);
    let mut out = LangFile { alphabet: None, closed: false, members: Vec::new() };
    let mut in_members = false;
    let mut lines = text.lines().enumerate();
    while let Some((i, line)) = lines.next() {
        let lineno = i + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if !in_members {
            let (key, value) = t.split_once(':').ok_or_else(|| err(format!("expected 'key: value', found {t:?}")))?;
            match key.trim() {
                "alphabet" => {
                    let labels = value.split([',', ' ', '\t']).filter(|s| !s.is_empty()).map(Label::new);
                    out.alphabet = Some(labels.collect());
                }
                "closed" => {
                    out.closed = match value.trim() {
                        "true" => true,
                        "false" => false,
                        v => return Err(err(format!("closed must be true or false, found {v:?}"))),
                    }
                }
                "members" => {
                    in_members = true;
                    if !value.trim().is_empty() {
                        return Err(err("members start on the line after 'members:'".into()));
                    }
                }
                k => return Err(err(format!("unknown key {k:?}"))),
            }
        } else if t.starts_with("ipomset") {
            let mut block = line.to_string();
            while !block.contains('}') {
                let (_, more) = lines.next().ok_or_else(|| err("unterminated ipomset block".into()))?;
                block.push('\n');
                block.push_str(more);
            }
            let parsed = parse_ipo_blocks(&block).map_err(|e| shift(e, lineno - 1))?;
            out.members.extend(parsed.into_iter().map(|(_, p)| p));
        } else {
            out.members.push(parse_shorthand(t).map_err(|e| shift(e, lineno - 1))?);
        }
    }
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { line, msg } => Error::Parse { line: line + by, msg },
        e => e,
    }
}

pub fn parse_lang(text: &str) -> Result<LanguageSet> {
    parse_lang_file(text)?.into_language()
}

/// Writes all members with `closed: true`.
pub fn write_lang(l: &LanguageSet) -> String {
    let mut s = String::new();
    let alphabet: Vec<&str> = l.alphabet().iter().map(|a| a.as_str()).collect();
    writeln!(s, "alphabet: {}", alphabet.join(" ")).unwrap();
    s.push_str("closed: true\nmembers:\n");
    for m in l.members() {
        match m.shorthand() {
            Some(text) => writeln!(s, "{text}").unwrap(),
            None => s.push_str(&write_ipo_block("", m)),
        }
    }
    s
}
