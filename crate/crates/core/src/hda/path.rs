use std::fmt::Write;

use crate::bits::PosSet;
use crate::error::{Error, Result};
use crate::ipomset::Ipomset;

use super::{CellId, Hda};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down,
}

/// An upstep `↗A` (positions in the later cell) or downstep `↘B`
/// (positions in the earlier cell).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathStep {
    pub dir: Direction,
    pub set: PosSet,
}

impl PathStep {
    pub fn up(set: PosSet) -> Self {
        PathStep { dir: Direction::Up, set }
    }

    pub fn down(set: PosSet) -> Self {
        PathStep { dir: Direction::Down, set }
    }
}

/// `(x₀, φ₁, x₁, …, φₙ, xₙ)`: `cells` has one more entry than `steps`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub cells: Vec<CellId>,
    pub steps: Vec<PathStep>,
}

impl Path {
    pub fn trivial(x: CellId) -> Path {
        Path { cells: vec![x], steps: Vec::new() }
    }

    pub fn first(&self) -> CellId {
        self.cells[0]
    }

    pub fn last(&self) -> CellId {
        *self.cells.last().expect("paths are nonempty")
    }

    pub fn push(&mut self, step: PathStep, cell: CellId) {
        self.steps.push(step);
        self.cells.push(cell);
    }

    pub fn is_sparse(&self) -> bool {
        self.steps.iter().all(|s| !s.set.is_empty())
            && self.steps.windows(2).all(|w| w[0].dir != w[1].dir)
    }

    /// Concatenation; `self` must end where `other` begins.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.last() != other.first() {
            return Err(Error::InvalidPath("paths do not meet".into()));
        }
        let mut out = self.clone();
        out.steps.extend_from_slice(&other.steps);
        out.cells.extend_from_slice(&other.cells[1..]);
        Ok(out)
    }
}

impl Hda {
    /// Checks the face conditions of every step.
    pub fn check_path(&self, path: &Path) -> Result<()> {
        if path.cells.len() != path.steps.len() + 1 {
            return Err(Error::InvalidPath("cells and steps do not alternate".into()));
        }
        if let Some(&c) = path.cells.iter().find(|&&c| c >= self.len()) {
            return Err(Error::UnknownCell(c.to_string()));
        }
        for (k, s) in path.steps.iter().enumerate() {
            let (x, y) = (path.cells[k], path.cells[k + 1]);
            let ok = match s.dir {
                Direction::Up => self.lower_face(y, s.set).ok() == Some(x),
                Direction::Down => self.upper_face(x, s.set).ok() == Some(y),
            };
            if !ok {
                return Err(Error::InvalidPath(format!(
                    "step {} from {} to {} is not a face map",
                    k + 1,
                    self.name(x),
                    self.name(y)
                )));
            }
        }
        Ok(())
    }

    pub fn is_accepting(&self, path: &Path) -> bool {
        self.start().contains(&path.first()) && self.accept().contains(&path.last())
    }

    /// The event ipomset: starters for upsteps, terminators for downsteps,
    /// glued in order.
    pub fn ev_of_path(&self, path: &Path) -> Result<Ipomset> {
        self.check_path(path)?;
        let mut acc = Ipomset::identity(self.loset(path.first()));
        for (k, s) in path.steps.iter().enumerate() {
            let piece = match s.dir {
                Direction::Up => Ipomset::starter(self.loset(path.cells[k + 1]), s.set)?,
                Direction::Down => Ipomset::terminator(self.loset(path.cells[k]), s.set)?,
            };
            acc = acc.glue(&piece)?;
        }
        Ok(acc)
    }

    /// Merges runs of upsteps and runs of downsteps and drops empty steps.
    pub fn sparse_normalize(&self, path: &Path) -> Result<Path> {
        self.check_path(path)?;
        let mut out = Path::trivial(path.first());
        for (k, s) in path.steps.iter().enumerate() {
            let next = path.cells[k + 1];
            if s.set.is_empty() {
                continue;
            }
            match out.steps.last_mut() {
                Some(prev) if prev.dir == s.dir => {
                    prev.set = match s.dir {
                        // earlier positions live in the smaller, middle cell
                        Direction::Up => s.set.union(prev.set.lift(s.set)),
                        Direction::Down => prev.set.union(s.set.lift(prev.set)),
                    };
                    *out.cells.last_mut().unwrap() = next;
                }
                _ => out.push(*s, next),
            }
        }
        Ok(out)
    }

    pub fn format_path(&self, path: &Path) -> String {
        let mut s = self.name(path.first()).to_string();
        for (k, step) in path.steps.iter().enumerate() {
            let (arrow, owner) = match step.dir {
                Direction::Up => ('↗', path.cells[k + 1]),
                Direction::Down => ('↘', path.cells[k]),
            };
            let labels: String = step
                .set
                .iter()
                .map(|i| self.loset(owner).labels()[i].to_string())
                .collect();
            write!(s, " {arrow}{labels} {}", self.name(path.cells[k + 1])).unwrap();
        }
        s
    }
}
