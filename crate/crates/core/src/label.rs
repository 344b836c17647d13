use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// An event label, a short printable token.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: &str) -> Self {
        Label(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A list of concurrently active events, in event order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Loset(Vec<Label>);

impl Loset {
    pub fn new(labels: Vec<Label>) -> Self {
        Loset(labels)
    }

    pub fn empty() -> Self {
        Loset(Vec::new())
    }

    /// One single-character label per character, e.g. `"ab"` is `[a b]`.
    pub fn from_chars(s: &str) -> Self {
        Loset(s.chars().map(|c| Label::new(&c.to_string())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn get(&self, pos: usize) -> Option<&Label> {
        self.0.get(pos)
    }

    /// The loset with the given positions deleted.
    pub fn without(&self, removed: crate::PosSet) -> Loset {
        Loset(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(*i))
                .map(|(_, l)| l.clone())
                .collect(),
        )
    }

    pub fn positions(&self) -> crate::PosSet {
        crate::PosSet::full(self.len())
    }
}

impl FromIterator<Label> for Loset {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        Loset(iter.into_iter().collect())
    }
}

impl fmt::Display for Loset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Loset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
