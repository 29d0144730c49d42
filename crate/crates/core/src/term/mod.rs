//! Typed primitive-recursive map terms over objects built from 𝟙, ℕ and
//! binary products, and their erasure into untyped universe codes.

mod stdlib;
mod syntax;
mod typecheck;

use std::fmt;

pub use stdlib::{desugar_if, desugar_pr, stdlib, stdlib_entries, StdlibEntry, UnknownName};
pub use syntax::{parse_code, parse_term, print_monoidal, print_term, SyntaxError};
pub use typecheck::{elaborate, typecheck, TypeError};

use crate::codec::{Basic, Code};

/// Objects: the terminal object, the natural numbers, binary products.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjType {
    Terminal,
    Nat,
    Prod(Box<ObjType>, Box<ObjType>),
}

impl ObjType {
    pub fn prod(a: ObjType, b: ObjType) -> ObjType {
        ObjType::Prod(Box::new(a), Box::new(b))
    }

    /// Left-nested power ℕ^m = ((ℕ×ℕ)×ℕ)…; ℕ^0 is 𝟙.
    pub fn nat_power(m: usize) -> ObjType {
        match m {
            0 => ObjType::Terminal,
            _ => (1..m).fold(ObjType::Nat, |acc, _| ObjType::prod(acc, ObjType::Nat)),
        }
    }
}

impl fmt::Display for ObjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjType::Terminal => f.write_str("1"),
            ObjType::Nat => f.write_str("N"),
            ObjType::Prod(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

/// A typed map term. Constants carry optional object annotations; the
/// checker fills in whatever is left open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypedTerm {
    Id(Option<ObjType>),
    Zero,
    Succ,
    Terminal(Option<ObjType>),
    Diag(Option<ObjType>),
    ProjL(Option<(ObjType, ObjType)>),
    ProjR(Option<(ObjType, ObjType)>),
    /// `Comp(g, f)` is g ∘ f.
    Comp(Box<TypedTerm>, Box<TypedTerm>),
    /// The induced map (f, g) into a product.
    Induced(Box<TypedTerm>, Box<TypedTerm>),
    /// The product map f × g.
    Prod(Box<TypedTerm>, Box<TypedTerm>),
    /// The iterated f^§ : A × ℕ → A of an endo map f : A → A.
    Iter(Box<TypedTerm>),
}

// Unannotated constructors, used by the stdlib and desugarings.

pub fn id() -> TypedTerm {
    TypedTerm::Id(None)
}

pub fn zero() -> TypedTerm {
    TypedTerm::Zero
}

pub fn succ() -> TypedTerm {
    TypedTerm::Succ
}

pub fn pi() -> TypedTerm {
    TypedTerm::Terminal(None)
}

pub fn delta() -> TypedTerm {
    TypedTerm::Diag(None)
}

pub fn proj_l() -> TypedTerm {
    TypedTerm::ProjL(None)
}

pub fn proj_r() -> TypedTerm {
    TypedTerm::ProjR(None)
}

pub fn comp(g: TypedTerm, f: TypedTerm) -> TypedTerm {
    TypedTerm::Comp(Box::new(g), Box::new(f))
}

/// Right-to-left composition chain: `chain([h, g, f])` is h ∘ g ∘ f.
pub fn chain<I: IntoIterator<Item = TypedTerm>>(maps: I) -> TypedTerm
where
    I::IntoIter: DoubleEndedIterator,
{
    let mut it = maps.into_iter().rev();
    let first = it.next().expect("empty composition chain");
    it.fold(first, |acc, g| comp(g, acc))
}

pub fn induced(f: TypedTerm, g: TypedTerm) -> TypedTerm {
    TypedTerm::Induced(Box::new(f), Box::new(g))
}

pub fn prod(f: TypedTerm, g: TypedTerm) -> TypedTerm {
    TypedTerm::Prod(Box::new(f), Box::new(g))
}

pub fn iter(f: TypedTerm) -> TypedTerm {
    TypedTerm::Iter(Box::new(f))
}

/// The constant map with value `k`, from any object: s^k ∘ 0 ∘ Π.
pub fn constant(k: u64) -> TypedTerm {
    (0..k).fold(comp(zero(), pi()), |acc, _| comp(succ(), acc))
}

impl TypedTerm {
    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            TypedTerm::Comp(a, b) | TypedTerm::Induced(a, b) | TypedTerm::Prod(a, b) => {
                1 + a.size() + b.size()
            }
            TypedTerm::Iter(a) => 1 + a.size(),
            _ => 1,
        }
    }
}

/// Structural erasure to a universe code, without type checking. Any term
/// erases, including ill-typed ones; [`erase`] is the checked variant.
pub fn erase_unchecked(t: &TypedTerm) -> Code {
    match t {
        TypedTerm::Id(_) => Code::Ba(Basic::Id),
        TypedTerm::Zero => Code::Ba(Basic::Zero),
        TypedTerm::Succ => Code::Ba(Basic::Succ),
        TypedTerm::Terminal(_) => Code::Ba(Basic::Pi),
        TypedTerm::Diag(_) => Code::Ba(Basic::Delta),
        TypedTerm::ProjL(_) => Code::Ba(Basic::L),
        TypedTerm::ProjR(_) => Code::Ba(Basic::R),
        TypedTerm::Comp(g, f) => Code::comp(erase_unchecked(g), erase_unchecked(f)),
        TypedTerm::Induced(f, g) => Code::ind(erase_unchecked(f), erase_unchecked(g)),
        TypedTerm::Prod(f, g) => Code::prod(erase_unchecked(f), erase_unchecked(g)),
        TypedTerm::Iter(f) => Code::iter(erase_unchecked(f)),
    }
}

/// Embeds a well-typed term into the universe monoid.
pub fn erase(t: &TypedTerm) -> Result<Code, TypeError> {
    typecheck(t)?;
    Ok(erase_unchecked(t))
}
