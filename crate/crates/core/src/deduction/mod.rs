//! Internal equality deduction trees over codes: rule schemas and checking,
//! argumented evaluation, ordered enumeration and the desk-scale soundness
//! search.

mod curated;
mod enumerate;
mod evaluate;
mod search;
mod sexp;

use std::fmt;

use thiserror::Error;

pub use curated::{curated_trees, freyd_addition, freyd_by_hand};
pub use enumerate::{enumerate_rule, enumerate_trees, TreeStream};
pub use evaluate::{eval_tree, ArgVerdict};
pub use search::{soundness_search, soundness_search_trees, Counterexample, SearchReport};
pub use sexp::{parse_tree, print_tree, ProofSyntaxError};

use crate::codec::{Basic, Code};

/// Inference rules. The declaration order is the tag index used by the
/// enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleTag {
    Refl,
    Sym,
    Trans,
    CompatCompFirst,
    CompatCompSecond,
    CompatInd,
    AxAssoc,
    AxNeutralL,
    AxNeutralR,
    AxGodementL,
    AxGodementR,
    AxSP,
    AxDistr,
    AxIterAnchor,
    AxIterStep,
    FreydUniq,
    /// ⟨u#v⟩ = ⟨⟨u⊙l⟩;⟨v⊙r⟩⟩, the definition of the product of maps.
    AxProd,
}

impl RuleTag {
    pub const ALL: [RuleTag; 17] = [
        RuleTag::Refl,
        RuleTag::Sym,
        RuleTag::Trans,
        RuleTag::CompatCompFirst,
        RuleTag::CompatCompSecond,
        RuleTag::CompatInd,
        RuleTag::AxAssoc,
        RuleTag::AxNeutralL,
        RuleTag::AxNeutralR,
        RuleTag::AxGodementL,
        RuleTag::AxGodementR,
        RuleTag::AxSP,
        RuleTag::AxDistr,
        RuleTag::AxIterAnchor,
        RuleTag::AxIterStep,
        RuleTag::FreydUniq,
        RuleTag::AxProd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Refl => "Refl",
            RuleTag::Sym => "Sym",
            RuleTag::Trans => "Trans",
            RuleTag::CompatCompFirst => "CompatCompFirst",
            RuleTag::CompatCompSecond => "CompatCompSecond",
            RuleTag::CompatInd => "CompatInd",
            RuleTag::AxAssoc => "AxAssoc",
            RuleTag::AxNeutralL => "AxNeutralL",
            RuleTag::AxNeutralR => "AxNeutralR",
            RuleTag::AxGodementL => "AxGodementL",
            RuleTag::AxGodementR => "AxGodementR",
            RuleTag::AxSP => "AxSP",
            RuleTag::AxDistr => "AxDistr",
            RuleTag::AxIterAnchor => "AxIterAnchor",
            RuleTag::AxIterStep => "AxIterStep",
            RuleTag::FreydUniq => "FreydUniq",
            RuleTag::AxProd => "AxProd",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleTag> {
        RuleTag::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Number of premises the rule takes.
    pub fn arity(self) -> usize {
        match self {
            RuleTag::Sym | RuleTag::CompatCompFirst | RuleTag::CompatCompSecond => 1,
            RuleTag::Trans | RuleTag::CompatInd | RuleTag::FreydUniq => 2,
            _ => 0,
        }
    }

    pub fn is_axiom(self) -> bool {
        self.arity() == 0 && self != RuleTag::Refl
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A deduction tree for the internal equation `lhs ≐ rhs`. The derived order
/// compares rule tag, then root codes, then premises.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DTree {
    pub rule: RuleTag,
    pub lhs: Code,
    pub rhs: Code,
    pub premises: Vec<DTree>,
}

fn b(x: Basic) -> Code {
    Code::Ba(x)
}

/// ⟨zero ⊙ pi⟩, the internal constant 0.
pub fn zero_const() -> Code {
    Code::comp(b(Basic::Zero), b(Basic::Pi))
}

/// ⟨id ; ⟨zero ⊙ pi⟩⟩, pairing an argument with 0.
pub fn anchor_arg() -> Code {
    Code::ind(Code::ID, zero_const())
}

/// ⟨id # s⟩, incrementing the counter of a pair.
pub fn step_arg() -> Code {
    Code::prod(Code::ID, b(Basic::Succ))
}

fn comp_parts(c: &Code) -> Option<(&Code, &Code)> {
    match c {
        Code::Comp(v, u) => Some((v, u)),
        _ => None,
    }
}

fn ind_parts(c: &Code) -> Option<(&Code, &Code)> {
    match c {
        Code::Ind(u, v) => Some((u, v)),
        _ => None,
    }
}

fn prod_parts(c: &Code) -> Option<(&Code, &Code)> {
    match c {
        Code::Prod(u, v) => Some((u, v)),
        _ => None,
    }
}

fn iter_part(c: &Code) -> Option<&Code> {
    match c {
        Code::Iter(u) => Some(u),
        _ => None,
    }
}

/// The right-hand side an axiom assigns to a left-hand side, if the left
/// side matches the schema.
pub fn axiom_rhs(rule: RuleTag, lhs: &Code) -> Option<Code> {
    match rule {
        RuleTag::AxAssoc => {
            let (wv, u) = comp_parts(lhs)?;
            let (w, v) = comp_parts(wv)?;
            Some(Code::comp(w.clone(), Code::comp(v.clone(), u.clone())))
        }
        RuleTag::AxNeutralL => {
            let (id, u) = comp_parts(lhs)?;
            id.is_id().then(|| u.clone())
        }
        RuleTag::AxNeutralR => {
            let (u, id) = comp_parts(lhs)?;
            id.is_id().then(|| u.clone())
        }
        RuleTag::AxGodementL | RuleTag::AxGodementR => {
            let (proj, pair) = comp_parts(lhs)?;
            let (u, v) = ind_parts(pair)?;
            match (rule, proj) {
                (RuleTag::AxGodementL, Code::Ba(Basic::L)) => Some(u.clone()),
                (RuleTag::AxGodementR, Code::Ba(Basic::R)) => Some(v.clone()),
                _ => None,
            }
        }
        RuleTag::AxSP => {
            let (left, right) = ind_parts(lhs)?;
            let (l, h) = comp_parts(left)?;
            let (r, h2) = comp_parts(right)?;
            (*l == b(Basic::L) && *r == b(Basic::R) && h == h2).then(|| h.clone())
        }
        RuleTag::AxDistr => {
            let (pair, h) = comp_parts(lhs)?;
            let (u, v) = ind_parts(pair)?;
            Some(Code::ind(Code::comp(u.clone(), h.clone()), Code::comp(v.clone(), h.clone())))
        }
        RuleTag::AxIterAnchor => {
            let (it, arg) = comp_parts(lhs)?;
            iter_part(it)?;
            (*arg == anchor_arg()).then_some(Code::ID)
        }
        RuleTag::AxIterStep => {
            let (it, arg) = comp_parts(lhs)?;
            let u = iter_part(it)?;
            (*arg == step_arg()).then(|| Code::comp(u.clone(), it.clone()))
        }
        RuleTag::AxProd => {
            let (u, v) = prod_parts(lhs)?;
            Some(Code::ind(
                Code::comp(u.clone(), b(Basic::L)),
                Code::comp(v.clone(), b(Basic::R)),
            ))
        }
        _ => None,
    }
}

impl DTree {
    pub fn new(rule: RuleTag, lhs: Code, rhs: Code, premises: Vec<DTree>) -> Self {
        DTree { rule, lhs, rhs, premises }
    }

    fn axiom(rule: RuleTag, lhs: Code) -> Self {
        let rhs = axiom_rhs(rule, &lhs).expect("axiom builders produce schema instances");
        DTree::new(rule, lhs, rhs, Vec::new())
    }

    pub fn refl(u: Code) -> Self {
        DTree::new(RuleTag::Refl, u.clone(), u, Vec::new())
    }

    pub fn sym(t: DTree) -> Self {
        DTree::new(RuleTag::Sym, t.rhs.clone(), t.lhs.clone(), vec![t])
    }

    /// Root (lhs of `a`, rhs of `b`); valid when the middle codes agree.
    pub fn trans(a: DTree, b: DTree) -> Self {
        DTree::new(RuleTag::Trans, a.lhs.clone(), b.rhs.clone(), vec![a, b])
    }

    /// Chains a nonempty sequence of trees with left-nested transitivity.
    pub fn trans_chain(trees: impl IntoIterator<Item = DTree>) -> Self {
        let mut it = trees.into_iter();
        let first = it.next().expect("empty chain");
        it.fold(first, DTree::trans)
    }

    /// From u ≐ u' infer ⟨v⊙u⟩ ≐ ⟨v⊙u'⟩.
    pub fn compat_comp_first(v: Code, t: DTree) -> Self {
        DTree::new(
            RuleTag::CompatCompFirst,
            Code::comp(v.clone(), t.lhs.clone()),
            Code::comp(v, t.rhs.clone()),
            vec![t],
        )
    }

    /// From v ≐ v' infer ⟨v⊙u⟩ ≐ ⟨v'⊙u⟩.
    pub fn compat_comp_second(t: DTree, u: Code) -> Self {
        DTree::new(
            RuleTag::CompatCompSecond,
            Code::comp(t.lhs.clone(), u.clone()),
            Code::comp(t.rhs.clone(), u),
            vec![t],
        )
    }

    /// From u ≐ u' and v ≐ v' infer ⟨u;v⟩ ≐ ⟨u';v'⟩.
    pub fn compat_ind(a: DTree, b: DTree) -> Self {
        DTree::new(
            RuleTag::CompatInd,
            Code::ind(a.lhs.clone(), b.lhs.clone()),
            Code::ind(a.rhs.clone(), b.rhs.clone()),
            vec![a, b],
        )
    }

    /// Freyd uniqueness from an anchor premise ⟨w⊙⟨id;0⟩⟩ ≐ u and a step
    /// premise ⟨w⊙⟨id#s⟩⟩ ≐ ⟨v⊙w⟩, concluding w ≐ ⟨v^$⊙⟨u#id⟩⟩.
    pub fn freyd_uniq(anchor: DTree, step: DTree) -> Option<Self> {
        let (w, arg) = comp_parts(&anchor.lhs)?;
        let (w2, arg2) = comp_parts(&step.lhs)?;
        let (v, w3) = comp_parts(&step.rhs)?;
        if *arg != anchor_arg() || *arg2 != step_arg() || w != w2 || w != w3 {
            return None;
        }
        let rhs = Code::comp(Code::iter(v.clone()), Code::prod(anchor.rhs.clone(), Code::ID));
        Some(DTree::new(RuleTag::FreydUniq, w.clone(), rhs, vec![anchor, step]))
    }

    pub fn ax_assoc(w: Code, v: Code, u: Code) -> Self {
        DTree::axiom(RuleTag::AxAssoc, Code::comp(Code::comp(w, v), u))
    }

    pub fn ax_neutral_l(u: Code) -> Self {
        DTree::axiom(RuleTag::AxNeutralL, Code::comp(Code::ID, u))
    }

    pub fn ax_neutral_r(u: Code) -> Self {
        DTree::axiom(RuleTag::AxNeutralR, Code::comp(u, Code::ID))
    }

    pub fn ax_godement_l(u: Code, v: Code) -> Self {
        DTree::axiom(RuleTag::AxGodementL, Code::comp(b(Basic::L), Code::ind(u, v)))
    }

    pub fn ax_godement_r(u: Code, v: Code) -> Self {
        DTree::axiom(RuleTag::AxGodementR, Code::comp(b(Basic::R), Code::ind(u, v)))
    }

    pub fn ax_sp(h: Code) -> Self {
        let lhs = Code::ind(Code::comp(b(Basic::L), h.clone()), Code::comp(b(Basic::R), h));
        DTree::axiom(RuleTag::AxSP, lhs)
    }

    pub fn ax_distr(u: Code, v: Code, h: Code) -> Self {
        DTree::axiom(RuleTag::AxDistr, Code::comp(Code::ind(u, v), h))
    }

    pub fn ax_iter_anchor(u: Code) -> Self {
        DTree::axiom(RuleTag::AxIterAnchor, Code::comp(Code::iter(u), anchor_arg()))
    }

    pub fn ax_iter_step(u: Code) -> Self {
        DTree::axiom(RuleTag::AxIterStep, Code::comp(Code::iter(u), step_arg()))
    }

    pub fn ax_prod(u: Code, v: Code) -> Self {
        DTree::axiom(RuleTag::AxProd, Code::prod(u, v))
    }

    /// Number of nodes.
    pub fn nodes(&self) -> usize {
        1 + self.premises.iter().map(DTree::nodes).sum::<usize>()
    }

    /// Largest root code size anywhere in the tree.
    pub fn max_code_size(&self) -> usize {
        let own = self.lhs.size().max(self.rhs.size());
        self.premises.iter().map(DTree::max_code_size).fold(own, usize::max)
    }
}

impl fmt::Display for DTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_tree(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct Violation {
    /// `/` for the root, `/i/j` for premise j of premise i.
    pub path: String,
    pub message: String,
}

fn child_path(path: &str, i: usize) -> String {
    if path == "/" {
        format!("/{i}")
    } else {
        format!("{path}/{i}")
    }
}

fn root_eq(t: &DTree, lhs: &Code, rhs: &Code) -> bool {
    t.lhs == *lhs && t.rhs == *rhs
}

fn check_shape(t: &DTree) -> Result<(), String> {
    let p = &t.premises;
    let schema = || format!("root does not match the {} schema", t.rule);
    match t.rule {
        RuleTag::Refl => (t.lhs == t.rhs).then_some(()).ok_or_else(|| "sides differ".to_string()),
        RuleTag::Sym => root_eq(&p[0], &t.rhs, &t.lhs)
            .then_some(())
            .ok_or_else(|| "premise is not the reversed root".to_string()),
        RuleTag::Trans => {
            if p[0].rhs != p[1].lhs {
                Err(format!("middle codes differ: {} vs {}", p[0].rhs, p[1].lhs))
            } else if p[0].lhs != t.lhs || p[1].rhs != t.rhs {
                Err("root does not join the premises".to_string())
            } else {
                Ok(())
            }
        }
        RuleTag::CompatCompFirst => {
            let ((v, u), (v2, u2)) = comp_parts(&t.lhs).zip(comp_parts(&t.rhs)).ok_or_else(schema)?;
            (v == v2 && root_eq(&p[0], u, u2)).then_some(()).ok_or_else(schema)
        }
        RuleTag::CompatCompSecond => {
            let ((v, u), (v2, u2)) = comp_parts(&t.lhs).zip(comp_parts(&t.rhs)).ok_or_else(schema)?;
            (u == u2 && root_eq(&p[0], v, v2)).then_some(()).ok_or_else(schema)
        }
        RuleTag::CompatInd => {
            let ((u, v), (u2, v2)) = ind_parts(&t.lhs).zip(ind_parts(&t.rhs)).ok_or_else(schema)?;
            (root_eq(&p[0], u, u2) && root_eq(&p[1], v, v2)).then_some(()).ok_or_else(schema)
        }
        RuleTag::FreydUniq => {
            let expected = DTree::freyd_uniq(p[0].clone(), p[1].clone())
                .ok_or_else(|| "premises are not an anchor/step pair for one map".to_string())?;
            root_eq(&expected, &t.lhs, &t.rhs).then_some(()).ok_or_else(schema)
        }
        rule => match axiom_rhs(rule, &t.lhs) {
            Some(rhs) if rhs == t.rhs => Ok(()),
            Some(rhs) => Err(format!("right side should be {rhs}")),
            None => Err(schema()),
        },
    }
}

fn check_node(t: &DTree, path: &str, out: &mut Vec<Violation>) {
    let arity = t.rule.arity();
    if t.premises.len() != arity {
        out.push(Violation {
            path: path.to_string(),
            message: format!("{} takes {arity} premises, found {}", t.rule, t.premises.len()),
        });
    } else if let Err(message) = check_shape(t) {
        out.push(Violation { path: path.to_string(), message });
    }
    for (i, p) in t.premises.iter().enumerate() {
        check_node(p, &child_path(path, i), out);
    }
}

/// Checks every node against its rule schema.
pub fn check_tree(t: &DTree) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    check_node(t, "/", &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}
