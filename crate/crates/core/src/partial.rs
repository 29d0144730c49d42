//! Partial maps as budgeted computations: the μ-operator, while loops, and a
//! runner for complexity controlled iterations that checks descent and
//! stationarity as it goes.

use std::fmt;
use std::marker::PhantomData;

use thiserror::Error;

use crate::evaluator::{self, denote, DenoteError, EvalState, Val};
use crate::ordinal::OrdPoly;
use crate::term::{comp, id, iter, prod, stdlib, typecheck, ObjType, TypeError, TypedTerm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PartialResult<T> {
    Defined(T),
    /// Nothing found within the budget; carries the budget spent.
    Undefined(u64),
}

impl<T> PartialResult<T> {
    pub fn defined(self) -> Option<T> {
        match self {
            PartialResult::Defined(v) => Some(v),
            PartialResult::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, PartialResult::Defined(_))
    }
}

impl<T: fmt::Display> fmt::Display for PartialResult<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialResult::Defined(v) => write!(f, "{v}"),
            PartialResult::Undefined(spent) => write!(f, "UNDEFINED after {spent}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PartialError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Denote(#[from] DenoteError),
}

fn nat_id() -> TypedTerm {
    TypedTerm::Id(Some(ObjType::Nat))
}

fn holds(t: &TypedTerm, x: &Val) -> Result<bool, PartialError> {
    match denote(t, x)? {
        Val::Nat(n) => Ok(n != 0),
        other => Err(DenoteError::ShapeMismatch { term: t.to_string(), arg: other.to_string() }.into()),
    }
}

/// μn ≤ bound. φ(a, n) ≠ 0: the least witness, or `Undefined(bound + 1)`
/// after all candidates failed.
pub fn mu(phi: &TypedTerm, a: &Val, bound: u64) -> Result<PartialResult<u64>, PartialError> {
    typecheck(&comp(nat_id(), comp(phi.clone(), prod(id(), nat_id()))))?;
    for n in 0..=bound {
        if holds(phi, &Val::pair(a.clone(), Val::Nat(n)))? {
            return Ok(PartialResult::Defined(n));
        }
    }
    Ok(PartialResult::Undefined(bound + 1))
}

fn check_loop(chi: &TypedTerm, f: &TypedTerm) -> Result<(), PartialError> {
    // iteration forces f to be an endo map on the domain of χ
    typecheck(&comp(nat_id(), comp(chi.clone(), iter(f.clone()))))?;
    Ok(())
}

/// `while χ do f od` on `a`, applying `f` at most `bound` times.
pub fn while_loop(
    chi: &TypedTerm,
    f: &TypedTerm,
    a: &Val,
    bound: u64,
) -> Result<PartialResult<Val>, PartialError> {
    check_loop(chi, f)?;
    let mut x = a.clone();
    for k in 0..=bound {
        if !holds(chi, &x)? {
            return Ok(PartialResult::Defined(x));
        }
        if k < bound {
            x = denote(f, &x)?;
        }
    }
    Ok(PartialResult::Undefined(bound + 1))
}

/// The static form of the while loop: f^§ applied to (a, μn. ¬χ(f^n a)).
pub fn while_loop_static(
    chi: &TypedTerm,
    f: &TypedTerm,
    a: &Val,
    bound: u64,
) -> Result<PartialResult<Val>, PartialError> {
    check_loop(chi, f)?;
    let f_iter = iter(f.clone());
    let neg = stdlib("neg").expect("library entry").term.clone();
    let phi = comp(neg, comp(chi.clone(), f_iter.clone()));
    match mu(&phi, a, bound)? {
        PartialResult::Defined(n) => Ok(PartialResult::Defined(denote(&f_iter, &Val::pair(a.clone(), Val::Nat(n)))?)),
        PartialResult::Undefined(spent) => Ok(PartialResult::Undefined(spent)),
    }
}

/// A complexity controlled iteration: a step function together with an
/// ℕ[ω]-valued complexity that is supposed to descend until it hits 0.
pub trait Cci {
    type State: Clone + PartialEq;

    fn complexity(&self, s: &Self::State) -> OrdPoly;

    fn step(&self, s: &Self::State) -> Self::State;
}

/// A CCI given by two closures over states of type `S`.
pub struct CciSpec<S, C, F> {
    complexity: C,
    step: F,
    _state: PhantomData<fn(&S) -> S>,
}

impl<S, C, F> CciSpec<S, C, F>
where
    C: Fn(&S) -> OrdPoly,
    F: Fn(&S) -> S,
{
    pub fn new(complexity: C, step: F) -> Self {
        CciSpec { complexity, step, _state: PhantomData }
    }
}

impl<S, C, F> Cci for CciSpec<S, C, F>
where
    S: Clone + PartialEq,
    C: Fn(&S) -> OrdPoly,
    F: Fn(&S) -> S,
{
    type State = S;

    fn complexity(&self, s: &S) -> OrdPoly {
        (self.complexity)(s)
    }

    fn step(&self, s: &S) -> S {
        (self.step)(s)
    }
}

/// The evaluator as a CCI on (code, argument) states.
pub struct EvaluatorCci;

impl Cci for EvaluatorCci {
    type State = EvalState;

    fn complexity(&self, s: &EvalState) -> OrdPoly {
        evaluator::complexity(&s.code)
    }

    fn step(&self, s: &EvalState) -> EvalState {
        evaluator::step(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CciError {
    #[error("not a CCI: complexity did not descend at step {step}")]
    DescentViolation { step: u64 },
    #[error("not a CCI: zero-complexity state is not stationary (after {step} steps)")]
    StationarityViolation { step: u64 },
}

/// Iterates `spec` from `a` while the complexity is positive, at most
/// `bound` steps, checking descent at every step and stationarity at the end.
pub fn cci_run<C: Cci>(spec: &C, a: C::State, bound: u64) -> Result<PartialResult<C::State>, CciError> {
    let mut s = a;
    let mut c = spec.complexity(&s);
    let mut taken = 0;
    while !c.is_zero() {
        if taken == bound {
            return Ok(PartialResult::Undefined(taken));
        }
        let next = spec.step(&s);
        let c_next = spec.complexity(&next);
        taken += 1;
        if c_next >= c {
            return Err(CciError::DescentViolation { step: taken });
        }
        s = next;
        c = c_next;
    }
    if spec.step(&s) != s {
        return Err(CciError::StationarityViolation { step: taken });
    }
    Ok(PartialResult::Defined(s))
}
