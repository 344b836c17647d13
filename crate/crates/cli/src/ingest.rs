//! Timestamped event logs to ipomsets.
//!
//! CSV columns, with a header row: `event_id,label,begin,end,open_left,open_right`.
//! Timestamps are decimal strings read exactly.

use std::io::Read;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use hda_core::{Interval, IntervalRep, Ipomset, Label};
use num_rational::Rational64;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct LogRecord {
    pub event_id: String,
    pub label: String,
    #[serde(deserialize_with = "decimal")]
    pub begin: Rational64,
    #[serde(deserialize_with = "decimal")]
    pub end: Rational64,
    #[serde(deserialize_with = "flag")]
    pub open_left: bool,
    #[serde(deserialize_with = "flag")]
    pub open_right: bool,
}

/// How concurrent events are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TieBreak {
    /// Ascending begin, then input order.
    #[default]
    Begin,
    /// Input order.
    Input,
}

pub fn parse_decimal(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !ok(int) || !ok(frac) {
        bail!("not a decimal number: {s:?}");
    }
    let scale = 10i64.checked_pow(frac.len() as u32).context("too many decimal places")?;
    let whole = format!("{int}{frac}");
    let num = i64::from_str(if whole.is_empty() { "0" } else { &whole }).with_context(|| format!("{s:?} is too large"))?;
    let r = Rational64::new(num, scale);
    Ok(if neg { -r } else { r })
}

fn decimal<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational64, D::Error> {
    let s = String::deserialize(d)?;
    parse_decimal(&s).map_err(serde::de::Error::custom)
}

fn flag<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<bool, D::Error> {
    let s = String::deserialize(d)?;
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" | "" => Ok(false),
        other => Err(serde::de::Error::custom(format!("not a boolean: {other:?}"))),
    }
}

pub fn read_log(input: impl Read) -> Result<Vec<LogRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut out = Vec::new();
    for (i, row) in reader.deserialize().enumerate() {
        // header is line 1
        out.push(row.with_context(|| format!("log line {}", i + 2))?);
    }
    Ok(out)
}

pub fn ingest_log(records: &[LogRecord], rule: TieBreak) -> Result<Ipomset> {
    let mut order: Vec<usize> = (0..records.len()).collect();
    if rule == TieBreak::Begin {
        order.sort_by_key(|&i| records[i].begin);
    }
    let mut seen = std::collections::HashSet::new();
    for r in records {
        if !seen.insert(&r.event_id) {
            bail!("duplicate event id {:?}", r.event_id);
        }
    }
    let intervals = order
        .iter()
        .map(|&i| {
            let r = &records[i];
            Interval {
                label: Label::new(&r.label),
                begin: r.begin,
                end: r.end,
                source: r.open_left,
                target: r.open_right,
            }
        })
        .collect();
    let p = Ipomset::from_intervals(&IntervalRep { intervals }).map_err(|e| match e {
        hda_core::Error::MalformedInterval { event, reason } => {
            anyhow::anyhow!("malformed interval for event {}: {reason}", records[order[event]].event_id)
        }
        e => e.into(),
    })?;
    Ok(p)
}
