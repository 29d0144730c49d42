//! First-order unification over object types. Annotated constants make the
//! check purely syntax-directed; open annotations become type variables,
//! and variables still free at the end default to ℕ.

use std::fmt;

use thiserror::Error;

use super::{ObjType, TypedTerm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("type mismatch at {location}: expected {expected}, found {found}")]
pub struct TypeError {
    /// Slash-separated child path from the root term, `/` for the root.
    pub location: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    Var(usize),
    One,
    Nat,
    Prod(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }

    fn of(o: &ObjType) -> Ty {
        match o {
            ObjType::Terminal => Ty::One,
            ObjType::Nat => Ty::Nat,
            ObjType::Prod(a, b) => Ty::prod(Ty::of(a), Ty::of(b)),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Var(v) => write!(f, "?{v}"),
            Ty::One => f.write_str("1"),
            Ty::Nat => f.write_str("N"),
            Ty::Prod(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

#[derive(Default)]
struct Unifier {
    subst: Vec<Option<Ty>>,
}

impl Unifier {
    fn fresh(&mut self) -> Ty {
        self.subst.push(None);
        Ty::Var(self.subst.len() - 1)
    }

    fn annotated(&mut self, ann: &Option<ObjType>) -> Ty {
        match ann {
            Some(o) => Ty::of(o),
            None => self.fresh(),
        }
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut t = t.clone();
        while let Ty::Var(v) = t {
            match &self.subst[v] {
                Some(next) => t = next.clone(),
                None => break,
            }
        }
        t
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match self.shallow(t) {
            Ty::Prod(a, b) => Ty::prod(self.resolve(&a), self.resolve(&b)),
            other => other,
        }
    }

    fn occurs(&self, v: usize, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Var(w) => v == w,
            Ty::Prod(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
            _ => false,
        }
    }

    fn unify(&mut self, expected: &Ty, found: &Ty, location: &str) -> Result<(), TypeError> {
        let (a, b) = (self.shallow(expected), self.shallow(found));
        let ok = match (&a, &b) {
            (Ty::Var(v), Ty::Var(w)) if v == w => true,
            (Ty::Var(v), other) | (other, Ty::Var(v)) => {
                if self.occurs(*v, other) {
                    false
                } else {
                    self.subst[*v] = Some(other.clone());
                    true
                }
            }
            (Ty::One, Ty::One) | (Ty::Nat, Ty::Nat) => true,
            (Ty::Prod(a1, a2), Ty::Prod(b1, b2)) => {
                return self
                    .unify(a1, b1, location)
                    .and_then(|_| self.unify(a2, b2, location))
                    .map_err(|_| self.mismatch(expected, found, location));
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(expected, found, location))
        }
    }

    fn mismatch(&self, expected: &Ty, found: &Ty, location: &str) -> TypeError {
        TypeError {
            location: location.to_string(),
            expected: self.resolve(expected).to_string(),
            found: self.resolve(found).to_string(),
        }
    }

    fn to_obj(&self, t: &Ty) -> ObjType {
        match self.shallow(t) {
            Ty::Var(_) | Ty::Nat => ObjType::Nat,
            Ty::One => ObjType::Terminal,
            Ty::Prod(a, b) => ObjType::prod(self.to_obj(&a), self.to_obj(&b)),
        }
    }

    fn infer(&mut self, t: &TypedTerm, path: &str) -> Result<(Ty, Ty), TypeError> {
        let child = |i: usize| {
            if path == "/" {
                format!("/{i}")
            } else {
                format!("{path}/{i}")
            }
        };
        Ok(match t {
            TypedTerm::Id(a) => {
                let a = self.annotated(a);
                (a.clone(), a)
            }
            TypedTerm::Zero => (Ty::One, Ty::Nat),
            TypedTerm::Succ => (Ty::Nat, Ty::Nat),
            TypedTerm::Terminal(a) => (self.annotated(a), Ty::One),
            TypedTerm::Diag(a) => {
                let a = self.annotated(a);
                (a.clone(), Ty::prod(a.clone(), a))
            }
            TypedTerm::ProjL(ab) | TypedTerm::ProjR(ab) => {
                let (a, b) = match ab {
                    Some((a, b)) => (Ty::of(a), Ty::of(b)),
                    None => (self.fresh(), self.fresh()),
                };
                let cod = if matches!(t, TypedTerm::ProjL(_)) { a.clone() } else { b.clone() };
                (Ty::prod(a, b), cod)
            }
            TypedTerm::Comp(g, f) => {
                let (fa, fb) = self.infer(f, &child(1))?;
                let (ga, gb) = self.infer(g, &child(0))?;
                self.unify(&ga, &fb, path)?;
                (fa, gb)
            }
            TypedTerm::Induced(f, g) => {
                let (fa, fb) = self.infer(f, &child(0))?;
                let (ga, gb) = self.infer(g, &child(1))?;
                self.unify(&fa, &ga, path)?;
                (fa, Ty::prod(fb, gb))
            }
            TypedTerm::Prod(f, g) => {
                let (fa, fb) = self.infer(f, &child(0))?;
                let (ga, gb) = self.infer(g, &child(1))?;
                (Ty::prod(fa, ga), Ty::prod(fb, gb))
            }
            TypedTerm::Iter(f) => {
                let (a, b) = self.infer(f, &child(0))?;
                self.unify(&a, &b, path)?;
                (Ty::prod(a.clone(), Ty::Nat), a)
            }
        })
    }

    fn annotate(&self, t: &TypedTerm, dom: &Ty) -> TypedTerm {
        // push resolved domain types down into the constants
        match t {
            TypedTerm::Id(_) => TypedTerm::Id(Some(self.to_obj(dom))),
            TypedTerm::Terminal(_) => TypedTerm::Terminal(Some(self.to_obj(dom))),
            TypedTerm::Diag(_) => TypedTerm::Diag(Some(self.to_obj(dom))),
            TypedTerm::ProjL(_) | TypedTerm::ProjR(_) => {
                let (a, b) = match self.to_obj(dom) {
                    ObjType::Prod(a, b) => (*a, *b),
                    other => (other, ObjType::Nat),
                };
                if matches!(t, TypedTerm::ProjL(_)) {
                    TypedTerm::ProjL(Some((a, b)))
                } else {
                    TypedTerm::ProjR(Some((a, b)))
                }
            }
            other => other.clone(),
        }
    }
}

/// Domain and codomain of a term, or the first mismatch found.
///
/// Composition requires cod(f) = dom(g), and the components of an induced
/// map need equal domains. Iteration needs an endo map f : A → A, and f^§
/// gets signature A × ℕ → A.
pub fn typecheck(t: &TypedTerm) -> Result<(ObjType, ObjType), TypeError> {
    let mut u = Unifier::default();
    let (a, b) = u.infer(t, "/")?;
    Ok((u.to_obj(&a), u.to_obj(&b)))
}

/// Returns a copy of `t` with every constant annotation filled in.
pub fn elaborate(t: &TypedTerm) -> Result<TypedTerm, TypeError> {
    typecheck(t)?;
    let mut u = Unifier::default();
    let mut doms = Vec::new();
    collect_leaf_domains(&mut u, t, &mut doms)?;
    let mut leaves = doms.into_iter();
    Ok(annotate_leaves(&u, t, &mut leaves))
}

/// Same traversal as `infer`, additionally recording each leaf's domain in
/// left-to-right (evaluation) order.
fn collect_leaf_domains(u: &mut Unifier, t: &TypedTerm, doms: &mut Vec<Ty>) -> Result<(Ty, Ty), TypeError> {
    Ok(match t {
        TypedTerm::Comp(g, f) => {
            let (fa, fb) = collect_leaf_domains(u, f, doms)?;
            let (ga, gb) = collect_leaf_domains(u, g, doms)?;
            u.unify(&ga, &fb, "/")?;
            (fa, gb)
        }
        TypedTerm::Induced(f, g) => {
            let (fa, fb) = collect_leaf_domains(u, f, doms)?;
            let (ga, gb) = collect_leaf_domains(u, g, doms)?;
            u.unify(&fa, &ga, "/")?;
            (fa, Ty::prod(fb, gb))
        }
        TypedTerm::Prod(f, g) => {
            let (fa, fb) = collect_leaf_domains(u, f, doms)?;
            let (ga, gb) = collect_leaf_domains(u, g, doms)?;
            (Ty::prod(fa, ga), Ty::prod(fb, gb))
        }
        TypedTerm::Iter(f) => {
            let (a, b) = collect_leaf_domains(u, f, doms)?;
            u.unify(&a, &b, "/")?;
            (Ty::prod(a.clone(), Ty::Nat), a)
        }
        leaf => {
            let (a, b) = u.infer(leaf, "/")?;
            doms.push(a.clone());
            (a, b)
        }
    })
}

fn annotate_leaves(u: &Unifier, t: &TypedTerm, doms: &mut impl Iterator<Item = Ty>) -> TypedTerm {
    match t {
        TypedTerm::Comp(g, f) => {
            let f2 = annotate_leaves(u, f, doms);
            let g2 = annotate_leaves(u, g, doms);
            TypedTerm::Comp(Box::new(g2), Box::new(f2))
        }
        TypedTerm::Induced(f, g) => {
            let f2 = annotate_leaves(u, f, doms);
            let g2 = annotate_leaves(u, g, doms);
            TypedTerm::Induced(Box::new(f2), Box::new(g2))
        }
        TypedTerm::Prod(f, g) => {
            let f2 = annotate_leaves(u, f, doms);
            let g2 = annotate_leaves(u, g, doms);
            TypedTerm::Prod(Box::new(f2), Box::new(g2))
        }
        TypedTerm::Iter(f) => TypedTerm::Iter(Box::new(annotate_leaves(u, f, doms))),
        leaf => {
            let dom = doms.next().expect("one domain per leaf");
            u.annotate(leaf, &dom)
        }
    }
}
