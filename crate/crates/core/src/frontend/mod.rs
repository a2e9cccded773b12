//! Input parsing, system files and output rendering.

mod parse;
mod render;
mod system;

pub use parse::{parse_expression, parse_scalar, Scope};
pub use render::{Format, Renderer};
pub use system::{load_system, RankingFile, SystemFile, SystemSpec};
