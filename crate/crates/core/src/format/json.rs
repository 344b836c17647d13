//! JSON forms of ipomsets and of the MN class table. See `docs/json.md`
//! for the schema.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ipomset::{Ipomset, RawIposet};
use crate::label::Label;
use crate::mn::{MnAutomaton, MnCellKind};

/// An ipomset in canonical event order. `prec[x][y]` and `evord[x][y]` are
/// the full relation matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IpomsetJson {
    pub labels: Vec<String>,
    pub source: Vec<bool>,
    pub target: Vec<bool>,
    pub prec: Vec<Vec<bool>>,
    pub evord: Vec<Vec<bool>>,
    pub text: String,
}

impl From<&Ipomset> for IpomsetJson {
    fn from(p: &Ipomset) -> Self {
        let n = p.len();
        let matrix = |f: &dyn Fn(usize, usize) -> bool| -> Vec<Vec<bool>> {
            (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
        };
        IpomsetJson {
            labels: p.labels().iter().map(|l| l.to_string()).collect(),
            source: (0..n).map(|x| p.is_source(x)).collect(),
            target: (0..n).map(|x| p.is_target(x)).collect(),
            prec: matrix(&|x, y| p.precedes(x, y)),
            evord: matrix(&|x, y| p.event_order(x, y)),
            text: p.to_string(),
        }
    }
}

impl IpomsetJson {
    /// Rebuilds and re-canonicalizes; `text` is ignored.
    pub fn to_ipomset(&self) -> Result<Ipomset> {
        let mut raw = RawIposet::new();
        for l in &self.labels {
            raw.event(Label::new(l));
        }
        let flagged = |v: &[bool]| -> Vec<usize> { (0..v.len()).filter(|&x| v[x]).collect() };
        raw.source = flagged(&self.source);
        raw.target = flagged(&self.target);
        let pairs = |m: &[Vec<bool>]| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for (x, row) in m.iter().enumerate() {
                out.extend(row.iter().enumerate().filter(|(_, &b)| b).map(|(y, _)| (x, y)));
            }
            out
        };
        raw.prec = pairs(&self.prec);
        raw.evord = pairs(&self.evord);
        raw.canonicalize()
    }
}

pub fn ipomset_to_json(p: &Ipomset) -> serde_json::Value {
    serde_json::to_value(IpomsetJson::from(p)).expect("ipomset serializes")
}

/// One row of the MN class table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub id: usize,
    pub name: String,
    pub loset: Vec<String>,
    pub subsidiary: bool,
    /// Nonempty quotient, equivalently lying on an accepting path.
    pub essential: bool,
    pub start: bool,
    pub accept: bool,
    /// `ipomset` block of the representative; absent for subsidiary cells.
    pub representative: Option<String>,
    pub representative_text: Option<String>,
    pub quotient: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub classes: Vec<ClassJson>,
}

impl From<&MnAutomaton> for ClassTable {
    fn from(m: &MnAutomaton) -> Self {
        let classes = m
            .cells
            .iter()
            .enumerate()
            .map(|(id, c)| {
                let rep = match &c.kind {
                    MnCellKind::Regular { representative, .. } => Some(representative),
                    MnCellKind::Subsidiary => None,
                };
                ClassJson {
                    id,
                    name: m.hda.name(id).to_string(),
                    loset: c.loset.labels().iter().map(|l| l.to_string()).collect(),
                    subsidiary: c.is_subsidiary(),
                    essential: c.has_future(),
                    start: m.hda.start().contains(&id),
                    accept: m.hda.accept().contains(&id),
                    representative: rep.map(|p| super::write_ipo_block(m.hda.name(id), p)),
                    representative_text: rep.map(|p| p.to_string()),
                    quotient: c.quotient.iter().map(|q| q.to_string()).collect(),
                }
            })
            .collect();
        ClassTable { classes }
    }
}
