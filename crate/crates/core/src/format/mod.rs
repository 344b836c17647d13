//! Text formats and emitters.

pub mod dot;
pub mod hda;
pub mod ipo;
pub mod json;
pub mod lang;

pub use dot::write_dot;
pub use hda::{parse_hda, write_hda};
pub use ipo::{parse_ipo_blocks, parse_ipomset, parse_shorthand, write_ipo_block};
pub use lang::{parse_lang, write_lang};

/// 1-based line number of a byte offset.
pub(crate) fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Blanks out `#` comments, keeping line structure.
pub(crate) fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split_once('#').map_or(l, |(code, _)| code))
        .collect::<Vec<_>>()
        .join("\n")
}
