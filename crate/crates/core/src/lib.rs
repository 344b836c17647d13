//! Higher-dimensional automata and their ipomset languages.
//!
//! The crate is organised bottom-up:
//!
//! - [`ipomset`]: labelled interval posets with event order and interfaces,
//!   their canonical form, gluing, subsumption, step decompositions and
//!   refinement closure.
//! - [`language`]: finite subsumption-closed languages, prefix and suffix
//!   quotients, weak and strong equivalence, swap-invariance.
//! - [`hda`]: finite precubical sets with start and accept cells, paths,
//!   essential cells, membership, bounded language enumeration and the
//!   determinism check.
//! - [`mn`]: the Myhill-Nerode automaton of a finite language.
//! - [`format`]: the `.ipo`, `.hda` and `.lang` text formats, JSON and DOT
//!   emission.

pub mod bits;
pub mod error;
pub mod format;
pub mod hda;
pub mod ipomset;
pub mod label;
pub mod language;
pub mod mn;

pub use bits::PosSet;
pub use error::{Error, Result, Violation};
pub use hda::{Cell, CellId, Determinism, Direction, EssentialReport, Hda, HdaBuilder, Membership, Path, PathStep};
pub use ipomset::{
    down_close, Division, Interval, IntervalRep, Ipomset, RawIposet, StarterTerminator, StepKind, StepSequence,
};
pub use label::{Label, Loset};
pub use language::{LanguageSet, QuotientId, QuotientIndex, SwapViolation};
pub use mn::{classify, verify_mn, ClassKey, MnAutomaton, MnCell, MnCellKind, MnReport};
