//! The single-step evaluator on (code, argument) states, its ordinal
//! complexity measure, budgeted evaluation and descent-checked traces.

mod denote;

use std::fmt::{self, Write as _};
use std::sync::Arc;

use thiserror::Error;

pub use denote::{denote, DenoteError, Val};

use crate::codec::{Basic, Code, XValue};
use crate::ordinal::OrdPoly;

/// Complexity c(u) ∈ ℕ[ω] of a code.
pub fn complexity(u: &Code) -> OrdPoly {
    match u {
        Code::Ba(Basic::Id) => OrdPoly::zero(),
        Code::Ba(_) => OrdPoly::one(),
        Code::Comp(a, b) | Code::Ind(a, b) | Code::Prod(a, b) => {
            complexity(a).add(&complexity(b)).succ()
        }
        Code::Iter(a) => complexity(a).succ().mul_omega(),
    }
}

/// A basic map on X⊥. Ill-shaped inputs and trash go to trash.
pub fn apply_basic(b: Basic, x: &XValue) -> XValue {
    if x.is_bottom() {
        return XValue::Bottom;
    }
    match (b, x) {
        (Basic::Id, _) => x.clone(),
        (Basic::Zero | Basic::Pi, _) => XValue::Num(0),
        (Basic::Succ, XValue::Num(n)) => n.checked_add(1).map_or(XValue::Bottom, XValue::Num),
        (Basic::Delta, _) => XValue::pair(x.clone(), x.clone()),
        (Basic::L, XValue::Pair(a, _)) => (**a).clone(),
        (Basic::R, XValue::Pair(_, b)) => (**b).clone(),
        _ => XValue::Bottom,
    }
}

/// Code expansion: u^[0] = id, u^[n+1] = ⟨u ⊙ u^[n]⟩.
pub fn expand(u: &Code, n: u64) -> Code {
    let u = Arc::new(u.clone());
    (0..n).fold(Code::ID, |acc, _| Code::Comp(u.clone(), Arc::new(acc)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalState {
    pub code: Code,
    pub arg: XValue,
}

impl EvalState {
    pub fn new(code: Code, arg: XValue) -> Self {
        EvalState { code, arg }
    }
}

impl fmt::Display for EvalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.code, self.arg)
    }
}

fn step_parts(u: &Code, x: &XValue) -> (Code, XValue) {
    match u {
        Code::Ba(b) => (Code::ID, apply_basic(*b, x)),
        Code::Comp(v, inner) => match &**inner {
            Code::Ba(b) => ((**v).clone(), apply_basic(*b, x)),
            _ => {
                let (inner, x) = step_parts(inner, x);
                (Code::Comp(v.clone(), Arc::new(inner)), x)
            }
        },
        Code::Prod(a, b) => match x {
            XValue::Pair(y, z) => {
                if a.is_id() && b.is_id() {
                    (Code::ID, x.clone())
                } else {
                    let (a, y) = step_parts(a, y);
                    let (b, z) = step_parts(b, z);
                    (Code::prod(a, b), XValue::pair(y, z))
                }
            }
            _ => (Code::ID, XValue::Bottom),
        },
        Code::Ind(a, b) => {
            if a.is_id() && b.is_id() {
                (Code::ID, XValue::pair(x.clone(), x.clone()))
            } else {
                // The argument is now a pair of partial results, so the two
                // components continue as a product map.
                let (a, y) = step_parts(a, x);
                let (b, z) = step_parts(b, x);
                (Code::prod(a, b), XValue::pair(y, z))
            }
        }
        Code::Iter(a) => match x {
            XValue::Pair(y, n) => match **n {
                XValue::Num(n) => (expand(a, n), (**y).clone()),
                _ => (Code::ID, XValue::Bottom),
            },
            _ => (Code::ID, XValue::Bottom),
        },
    }
}

/// One evaluation step e(u, x) = (e_map(u, x), e_arg(u, x)).
pub fn step(s: &EvalState) -> EvalState {
    let (code, arg) = step_parts(&s.code, &s.arg);
    EvalState { code, arg }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("budget of {budget} steps exhausted at {last}")]
pub struct Exhausted {
    pub budget: u64,
    pub last: EvalState,
}

/// Runs steps until the code is `id` (complexity 0), returning the value
/// and the number of steps taken.
pub fn eval_counted(u: &Code, x: &XValue, budget: u64) -> Result<(XValue, u64), Exhausted> {
    let mut state = EvalState::new(u.clone(), x.clone());
    let mut used = 0;
    while !state.code.is_id() {
        if used == budget {
            return Err(Exhausted { budget, last: state });
        }
        state = step(&state);
        used += 1;
    }
    Ok((state.arg, used))
}

/// ev(u, x) with at most `budget` steps.
pub fn eval(u: &Code, x: &XValue, budget: u64) -> Result<XValue, Exhausted> {
    eval_counted(u, x, budget).map(|(v, _)| v)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DescentViolation {
    #[error("complexity did not decrease at step {step}: {before} to {after}")]
    NoDecrease { step: usize, before: OrdPoly, after: OrdPoly },
    #[error("zero-complexity state moved at step {step}")]
    NotStationary { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<(EvalState, OrdPoly)>,
    pub exhausted: bool,
}

impl Trace {
    pub fn complexities(&self) -> Vec<OrdPoly> {
        self.steps.iter().map(|(_, c)| c.clone()).collect()
    }

    /// The argument of the last recorded state.
    pub fn result(&self) -> &XValue {
        &self.steps.last().expect("traces are never empty").0.arg
    }

    /// Tab-separated export, one line per state:
    /// `step  complexity  code_size  code_text  value_text`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (i, (s, c)) in self.steps.iter().enumerate() {
            let _ = writeln!(out, "{i}\t{c}\t{}\t{}\t{}", s.code.size(), s.code, s.arg);
        }
        out
    }
}

/// The full step history of ev(u, x) under budget `m`, checking strict
/// descent at every step and stationarity of the final zero-complexity state.
pub fn trace(u: &Code, x: &XValue, m: u64) -> Result<Trace, DescentViolation> {
    let mut state = EvalState::new(u.clone(), x.clone());
    let mut c = complexity(&state.code);
    let mut steps = Vec::new();
    let mut taken = 0u64;
    while !c.is_zero() {
        if taken == m {
            steps.push((state, c));
            return Ok(Trace { steps, exhausted: true });
        }
        let next = step(&state);
        let c_next = complexity(&next.code);
        taken += 1;
        if c_next >= c {
            return Err(DescentViolation::NoDecrease { step: taken as usize, before: c, after: c_next });
        }
        steps.push((std::mem::replace(&mut state, next), std::mem::replace(&mut c, c_next)));
    }
    if step(&state) != state {
        return Err(DescentViolation::NotStationary { step: taken as usize + 1 });
    }
    steps.push((state, c));
    Ok(Trace { steps, exhausted: false })
}
