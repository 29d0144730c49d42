//! Argumented evaluation of deduction trees: the argument is spread over the
//! tree, every root is evaluated on its share, and all work draws on one
//! shared step budget.

use std::fmt;

use super::{comp_parts, ind_parts, DTree, RuleTag};
use crate::codec::{Code, XValue};
use crate::evaluator::eval_counted;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArgVerdict {
    /// Every sub-evaluation terminated and the root sides agree.
    Sound(XValue, XValue),
    /// Every sub-evaluation terminated but some root's sides disagree.
    Unsound(XValue, XValue),
    Exhausted(u64),
    /// The argument is outside the domain some rule needs.
    IllArgumented,
}

impl fmt::Display for ArgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgVerdict::Sound(a, b) => write!(f, "SOUND {a} {b}"),
            ArgVerdict::Unsound(a, b) => write!(f, "UNSOUND {a} {b}"),
            ArgVerdict::Exhausted(m) => write!(f, "EXHAUSTED {m}"),
            ArgVerdict::IllArgumented => f.write_str("ILL-ARGUMENTED"),
        }
    }
}

enum Stop {
    Exhausted,
    Ill,
    Unsound(XValue, XValue),
}

struct Run {
    limit: u64,
    used: u64,
}

impl Run {
    fn tick(&mut self) -> Result<(), Stop> {
        if self.used == self.limit {
            return Err(Stop::Exhausted);
        }
        self.used += 1;
        Ok(())
    }

    fn ev(&mut self, u: &Code, x: &XValue) -> Result<XValue, Stop> {
        match eval_counted(u, x, self.limit - self.used) {
            Ok((v, n)) => {
                self.used += n;
                Ok(v)
            }
            Err(_) => {
                self.used = self.limit;
                Err(Stop::Exhausted)
            }
        }
    }

    fn node(&mut self, t: &DTree, x: &XValue) -> Result<XValue, Stop> {
        self.tick()?;
        match t.rule {
            RuleTag::Sym | RuleTag::Trans | RuleTag::CompatCompFirst | RuleTag::CompatInd => {
                for p in &t.premises {
                    self.node(p, x)?;
                }
            }
            RuleTag::CompatCompSecond => {
                let (_, u) = comp_parts(&t.lhs).ok_or(Stop::Ill)?;
                let y = self.ev(u, x)?;
                self.node(&t.premises[0], &y)?;
            }
            RuleTag::FreydUniq => {
                let XValue::Pair(y, n) = x else { return Err(Stop::Ill) };
                let XValue::Num(n) = **n else { return Err(Stop::Ill) };
                self.node(&t.premises[0], y)?;
                for k in 0..n {
                    self.node(&t.premises[1], &XValue::pair((**y).clone(), XValue::Num(k)))?;
                }
            }
            RuleTag::AxGodementL | RuleTag::AxGodementR => {
                let (_, pair) = comp_parts(&t.lhs).ok_or(Stop::Ill)?;
                let (u, v) = ind_parts(pair).ok_or(Stop::Ill)?;
                let (kept, dropped) = if t.rule == RuleTag::AxGodementL { (u, v) } else { (v, u) };
                if self.ev(dropped, x)?.is_bottom() && !self.ev(kept, x)?.is_bottom() {
                    return Err(Stop::Ill);
                }
            }
            RuleTag::AxSP => {
                if matches!(self.ev(&t.rhs, x)?, XValue::Num(_)) {
                    return Err(Stop::Ill);
                }
            }
            _ => {}
        }
        let a = self.ev(&t.lhs, x)?;
        let b = self.ev(&t.rhs, x)?;
        if a == b {
            Ok(a)
        } else {
            Err(Stop::Unsound(a, b))
        }
    }
}

/// ev_d(t/x) under a shared budget of `m` units: one per visited node plus
/// one per evaluation step.
pub fn eval_tree(t: &DTree, x: &XValue, m: u64) -> ArgVerdict {
    let mut run = Run { limit: m, used: 0 };
    match run.node(t, x) {
        Ok(v) => ArgVerdict::Sound(v.clone(), v),
        Err(Stop::Exhausted) => ArgVerdict::Exhausted(run.used),
        Err(Stop::Ill) => ArgVerdict::IllArgumented,
        Err(Stop::Unsound(a, b)) => ArgVerdict::Unsound(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::Basic;

    fn s() -> Code {
        Code::Ba(Basic::Succ)
    }

    fn pair(a: u64, b: u64) -> XValue {
        XValue::pair(XValue::Num(a), XValue::Num(b))
    }

    #[test]
    fn examples() {
        let assoc = DTree::ax_assoc(s(), s(), s());
        assert_eq!(eval_tree(&assoc, &XValue::Num(0), 64), ArgVerdict::Sound(XValue::Num(3), XValue::Num(3)));
        let step = DTree::ax_iter_step(s());
        assert_eq!(eval_tree(&step, &pair(2, 1), 64), ArgVerdict::Sound(XValue::Num(4), XValue::Num(4)));
        assert_eq!(eval_tree(&step, &pair(2, 1), 0), ArgVerdict::Exhausted(0));
    }

    #[test]
    fn freyd_needs_a_counter() {
        let t = DTree::freyd_uniq(DTree::ax_iter_anchor(s()), DTree::ax_iter_step(s())).unwrap();
        assert_eq!(eval_tree(&t, &pair(3, 2), 10_000), ArgVerdict::Sound(XValue::Num(5), XValue::Num(5)));
        assert_eq!(eval_tree(&t, &XValue::Num(3), 10_000), ArgVerdict::IllArgumented);
    }

    #[test]
    fn trash_domains() {
        let l = Code::Ba(Basic::L);
        // ⟨l⊙⟨s;l⟩⟩ on a numeral: the dropped component is trash
        let g = DTree::ax_godement_l(s(), l.clone());
        assert_eq!(eval_tree(&g, &XValue::Num(1), 100), ArgVerdict::IllArgumented);
        assert_eq!(eval_tree(&g, &pair(1, 1), 100), ArgVerdict::Sound(XValue::Bottom, XValue::Bottom));
        let sp = DTree::ax_sp(Code::ID);
        assert_eq!(eval_tree(&sp, &XValue::Num(1), 100), ArgVerdict::IllArgumented);
        assert_eq!(eval_tree(&sp, &pair(1, 2), 100), ArgVerdict::Sound(pair(1, 2), pair(1, 2)));
    }

    #[test]
    fn unequal_roots_are_reported() {
        let bogus = DTree::new(RuleTag::Refl, s(), Code::ID, Vec::new());
        assert_eq!(eval_tree(&bogus, &XValue::Num(1), 100), ArgVerdict::Unsound(XValue::Num(2), XValue::Num(1)));
    }

    #[test]
    fn second_compatibility_feeds_the_intermediate_value() {
        let t = DTree::compat_comp_second(DTree::ax_neutral_l(s()), Code::iter(s()));
        assert_eq!(eval_tree(&t, &pair(1, 2), 1000), ArgVerdict::Sound(XValue::Num(4), XValue::Num(4)));
    }
}
