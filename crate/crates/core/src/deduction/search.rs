//! Desk-scale soundness and consistency search over enumerated trees.

use std::fmt::Write;

use rayon::prelude::*;

use super::{enumerate_trees, eval_tree, print_tree, ArgVerdict, DTree};
use crate::codec::{Code, XValue};
use crate::term::{erase_unchecked, stdlib};

const CHUNK: usize = 4096;

/// A tree and argument on which the two sides of some root disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Position of the tree in the searched sequence, from 0.
    pub index: u64,
    pub tree: DTree,
    pub arg: XValue,
    pub lhs_value: XValue,
    pub rhs_value: XValue,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub bounds: Option<(usize, usize)>,
    pub budget: u64,
    pub args: Vec<XValue>,
    pub trees: u64,
    pub evaluations: u64,
    pub sound: u64,
    pub unsound: u64,
    pub exhausted: u64,
    pub ill_argumented: u64,
    /// Trees whose root equates the codes of `true` and `false`.
    pub truth_roots: u64,
    pub first_counterexample: Option<Counterexample>,
    pub first_truth_root: Option<DTree>,
}

impl SearchReport {
    pub fn is_clean(&self) -> bool {
        self.unsound == 0 && self.truth_roots == 0
    }

    fn bounds_text(&self) -> String {
        match self.bounds {
            Some((n, s)) => format!("{n} {s}"),
            None => "- -".to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let args: Vec<String> = self.args.iter().map(XValue::to_string).collect();
        let _ = writeln!(out, "soundness search");
        let _ = writeln!(out, "  bounds (nodes, code size): {}", self.bounds_text());
        let _ = writeln!(out, "  budget: {}", self.budget);
        let _ = writeln!(out, "  arguments: {}", args.join(" "));
        let _ = writeln!(out, "  trees: {}", self.trees);
        let _ = writeln!(out, "  evaluations: {}", self.evaluations);
        let _ = writeln!(out, "  sound: {}", self.sound);
        let _ = writeln!(out, "  unsound: {}", self.unsound);
        let _ = writeln!(out, "  exhausted: {}", self.exhausted);
        let _ = writeln!(out, "  ill-argumented: {}", self.ill_argumented);
        let _ = writeln!(out, "  roots equating true and false: {}", self.truth_roots);
        match &self.first_counterexample {
            None => out.push_str("  first counterexample: none\n"),
            Some(c) => {
                let _ = writeln!(
                    out,
                    "  first counterexample: tree #{} at {}: {} vs {}",
                    c.index, c.arg, c.lhs_value, c.rhs_value
                );
                for line in print_tree(&c.tree).lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        let _ = writeln!(out, "  verdict: {}", if self.is_clean() { "CLEAN" } else { "COUNTEREXAMPLE" });
        out
    }

    /// The machine-readable summary block.
    pub fn to_sexp(&self) -> String {
        let mut out = String::from("(search-report\n");
        let args: Vec<String> = self.args.iter().map(XValue::to_string).collect();
        let _ = writeln!(out, "  (bounds {})", self.bounds_text());
        let _ = writeln!(out, "  (budget {})", self.budget);
        let _ = writeln!(out, "  (args {})", args.join(" "));
        for (k, v) in [
            ("trees", self.trees),
            ("evaluations", self.evaluations),
            ("sound", self.sound),
            ("unsound", self.unsound),
            ("exhausted", self.exhausted),
            ("ill-argumented", self.ill_argumented),
            ("truth-roots", self.truth_roots),
        ] {
            let _ = writeln!(out, "  ({k} {v})");
        }
        match &self.first_counterexample {
            None => out.push_str("  (first-counterexample)"),
            Some(c) => {
                let _ = write!(
                    out,
                    "  (first-counterexample {} {} {} {}\n{})",
                    c.index,
                    c.arg,
                    c.lhs_value,
                    c.rhs_value,
                    indent(&print_tree(&c.tree), 4)
                );
            }
        }
        out.push_str(")\n");
        out
    }
}

fn indent(text: &str, by: usize) -> String {
    let pad = " ".repeat(by);
    text.lines().map(|l| format!("{pad}{l}")).collect::<Vec<_>>().join("\n")
}

fn truth_codes() -> (Code, Code) {
    let code = |name| erase_unchecked(&stdlib(name).expect("library entry").term);
    (code("true"), code("false"))
}

/// Per-tree findings, merged in tree order.
struct Tally {
    verdicts: Vec<ArgVerdict>,
    truth_root: bool,
}

fn merge(report: &mut SearchReport, index: u64, tree: &DTree, tally: Tally) {
    report.trees += 1;
    if tally.truth_root {
        report.truth_roots += 1;
        report.first_truth_root.get_or_insert_with(|| tree.clone());
    }
    for (arg, v) in report.args.clone().iter().zip(tally.verdicts) {
        report.evaluations += 1;
        match v {
            ArgVerdict::Sound(..) => report.sound += 1,
            ArgVerdict::Unsound(a, b) => {
                report.unsound += 1;
                report.first_counterexample.get_or_insert_with(|| Counterexample {
                    index,
                    tree: tree.clone(),
                    arg: arg.clone(),
                    lhs_value: a,
                    rhs_value: b,
                });
            }
            ArgVerdict::Exhausted(_) => report.exhausted += 1,
            ArgVerdict::IllArgumented => report.ill_argumented += 1,
        }
    }
}

/// Evaluates every tree of `trees` on every argument. Work is spread over the
/// rayon pool; the report depends only on the inputs.
pub fn soundness_search_trees(trees: impl IntoIterator<Item = DTree>, args: &[XValue], m: u64) -> SearchReport {
    let (t, f) = truth_codes();
    let mut report = SearchReport { budget: m, args: args.to_vec(), ..SearchReport::default() };
    let mut trees = trees.into_iter().peekable();
    let mut index = 0u64;
    while trees.peek().is_some() {
        let chunk: Vec<DTree> = trees.by_ref().take(CHUNK).collect();
        let tallies: Vec<Tally> = chunk
            .par_iter()
            .map(|tree| Tally {
                verdicts: args.iter().map(|x| eval_tree(tree, x, m)).collect(),
                truth_root: (tree.lhs == t && tree.rhs == f) || (tree.lhs == f && tree.rhs == t),
            })
            .collect();
        for (tree, tally) in chunk.iter().zip(tallies) {
            merge(&mut report, index, tree, tally);
            index += 1;
        }
    }
    report
}

pub fn soundness_search(max_nodes: usize, max_code_size: usize, args: &[XValue], m: u64) -> SearchReport {
    let mut report = soundness_search_trees(enumerate_trees(max_nodes, max_code_size), args, m);
    report.bounds = Some((max_nodes, max_code_size));
    report
}
