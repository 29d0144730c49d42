//! Direct set-theoretic interpretation of typed terms, independent of codes
//! and of the step function.

use std::fmt;

use thiserror::Error;

use crate::codec::XValue;
use crate::term::{ObjType, TypedTerm};

/// An element of an object built from 𝟙, ℕ and products.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Unit,
    Nat(u64),
    Pair(Box<Val>, Box<Val>),
}

impl Val {
    pub fn pair(a: Val, b: Val) -> Val {
        Val::Pair(Box::new(a), Box::new(b))
    }

    /// The left-nested tuple ((n₀,n₁),n₂)…; the empty tuple is the unit.
    pub fn tuple(ns: &[u64]) -> Val {
        match ns.split_first() {
            None => Val::Unit,
            Some((&first, rest)) => rest.iter().fold(Val::Nat(first), |acc, &n| Val::pair(acc, Val::Nat(n))),
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Val::Nat(n) => Some(*n),
            _ => None,
        }
    }

    /// Embeds into X. The unit goes to the numeral 0, which is what the
    /// terminal map produces there.
    pub fn to_x(&self) -> XValue {
        match self {
            Val::Unit => XValue::Num(0),
            Val::Nat(n) => XValue::Num(*n),
            Val::Pair(a, b) => XValue::pair(a.to_x(), b.to_x()),
        }
    }

    /// Reads an X value back at a given object, if it has that shape.
    pub fn from_x(x: &XValue, ty: &ObjType) -> Option<Val> {
        match (ty, x) {
            (ObjType::Terminal, XValue::Num(0)) => Some(Val::Unit),
            (ObjType::Nat, XValue::Num(n)) => Some(Val::Nat(*n)),
            (ObjType::Prod(ta, tb), XValue::Pair(a, b)) => {
                Some(Val::pair(Val::from_x(a, ta)?, Val::from_x(b, tb)?))
            }
            _ => None,
        }
    }

    /// Whether the value inhabits the object.
    pub fn has_type(&self, ty: &ObjType) -> bool {
        match (self, ty) {
            (Val::Unit, ObjType::Terminal) | (Val::Nat(_), ObjType::Nat) => true,
            (Val::Pair(a, b), ObjType::Prod(ta, tb)) => a.has_type(ta) && b.has_type(tb),
            _ => false,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Unit => f.write_str("()"),
            Val::Nat(n) => write!(f, "{n}"),
            Val::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DenoteError {
    #[error("shape mismatch: {term} cannot be applied to {arg}")]
    ShapeMismatch { term: String, arg: String },
    #[error("numeral overflow")]
    Overflow,
}

fn mismatch(t: &TypedTerm, x: &Val) -> DenoteError {
    DenoteError::ShapeMismatch { term: t.to_string(), arg: x.to_string() }
}

/// The function denoted by `t`, applied to `x`. Iteration runs natively.
pub fn denote(t: &TypedTerm, x: &Val) -> Result<Val, DenoteError> {
    match (t, x) {
        (TypedTerm::Id(_), _) => Ok(x.clone()),
        (TypedTerm::Zero, Val::Unit) => Ok(Val::Nat(0)),
        (TypedTerm::Succ, Val::Nat(n)) => n.checked_add(1).map(Val::Nat).ok_or(DenoteError::Overflow),
        (TypedTerm::Terminal(_), _) => Ok(Val::Unit),
        (TypedTerm::Diag(_), _) => Ok(Val::pair(x.clone(), x.clone())),
        (TypedTerm::ProjL(_), Val::Pair(a, _)) => Ok((**a).clone()),
        (TypedTerm::ProjR(_), Val::Pair(_, b)) => Ok((**b).clone()),
        (TypedTerm::Comp(g, f), _) => denote(g, &denote(f, x)?),
        (TypedTerm::Induced(f, g), _) => Ok(Val::pair(denote(f, x)?, denote(g, x)?)),
        (TypedTerm::Prod(f, g), Val::Pair(a, b)) => Ok(Val::pair(denote(f, a)?, denote(g, b)?)),
        (TypedTerm::Iter(f), Val::Pair(a, n)) => {
            let Val::Nat(n) = **n else { return Err(mismatch(t, x)) };
            let mut acc = (**a).clone();
            for _ in 0..n {
                acc = denote(f, &acc)?;
            }
            Ok(acc)
        }
        _ => Err(mismatch(t, x)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{induced, iter, proj_l, proj_r, succ, zero};

    #[test]
    fn examples() {
        assert_eq!(denote(&iter(succ()), &Val::tuple(&[4, 2])).unwrap(), Val::Nat(6));
        assert_eq!(
            denote(&induced(proj_r(), proj_l()), &Val::tuple(&[1, 2])).unwrap(),
            Val::tuple(&[2, 1])
        );
        assert!(matches!(
            denote(&zero(), &Val::Nat(1)),
            Err(DenoteError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn x_round_trip() {
        let ty = ObjType::nat_power(3);
        let v = Val::tuple(&[1, 2, 3]);
        assert!(v.has_type(&ty));
        assert_eq!(Val::from_x(&v.to_x(), &ty), Some(v));
        assert_eq!(Val::from_x(&XValue::Num(0), &ObjType::Terminal), Some(Val::Unit));
        assert_eq!(Val::from_x(&XValue::Num(1), &ObjType::Terminal), None);
    }
}
