//! A machine for categorical primitive recursion: typed map terms, their
//! untyped codes over nested numerals, a single-step evaluator with strictly
//! descending ordinal complexity, budgeted partial maps, and a checker for
//! internal equality deduction trees.

pub mod codec;
pub mod deduction;
pub mod evaluator;
pub mod ordinal;
pub mod partial;
pub mod term;
