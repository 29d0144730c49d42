//! Hand-built deduction trees.

use super::{anchor_arg, step_arg, DTree};
use crate::codec::{Basic, Code};

fn s() -> Code {
    Code::Ba(Basic::Succ)
}

fn l() -> Code {
    Code::Ba(Basic::L)
}

fn r() -> Code {
    Code::Ba(Basic::R)
}

/// Addition by iteration is the unique map with the iteration equations:
/// iter(s) ≐ ⟨iter(s) ⊙ ⟨id # id⟩⟩.
pub fn freyd_addition() -> DTree {
    DTree::freyd_uniq(DTree::ax_iter_anchor(s()), DTree::ax_iter_step(s())).expect("matching premises")
}

/// ⟨l;r⟩ ≐ id.
fn pairing_is_identity() -> DTree {
    DTree::trans(
        DTree::sym(DTree::compat_ind(DTree::ax_neutral_r(l()), DTree::ax_neutral_r(r()))),
        DTree::ax_sp(Code::ID),
    )
}

/// ⟨⟨id # id⟩ ⊙ h⟩ ≐ h.
fn identity_product_absorbed(h: Code) -> DTree {
    DTree::trans_chain([
        DTree::compat_comp_second(DTree::ax_prod(Code::ID, Code::ID), h.clone()),
        DTree::compat_comp_second(
            DTree::compat_ind(DTree::ax_neutral_l(l()), DTree::ax_neutral_l(r())),
            h.clone(),
        ),
        DTree::ax_distr(l(), r(), h.clone()),
        DTree::ax_sp(h),
    ])
}

/// A larger uniqueness proof: w := ⟨iter(s) ⊙ ⟨id # id⟩⟩ satisfies the
/// iteration equations of iter(s) with anchor id, derived from the axioms.
pub fn freyd_by_hand() -> DTree {
    let it = Code::iter(s());
    let pp = Code::prod(Code::ID, Code::ID);
    let anchor = DTree::trans_chain([
        DTree::ax_assoc(it.clone(), pp.clone(), anchor_arg()),
        DTree::compat_comp_first(it.clone(), identity_product_absorbed(anchor_arg())),
        DTree::ax_iter_anchor(s()),
    ]);
    let drop_product = DTree::trans_chain([
        DTree::compat_comp_first(it.clone(), DTree::ax_prod(Code::ID, Code::ID)),
        DTree::compat_comp_first(
            it.clone(),
            DTree::compat_ind(DTree::ax_neutral_l(l()), DTree::ax_neutral_l(r())),
        ),
        DTree::compat_comp_first(it.clone(), pairing_is_identity()),
        DTree::ax_neutral_r(it.clone()),
    ]);
    let step = DTree::trans_chain([
        DTree::ax_assoc(it.clone(), pp, step_arg()),
        DTree::compat_comp_first(it, identity_product_absorbed(step_arg())),
        DTree::ax_iter_step(s()),
        DTree::compat_comp_first(s(), DTree::sym(drop_product)),
    ]);
    DTree::freyd_uniq(anchor, step).expect("matching premises")
}

/// Small valid trees used as completeness witnesses for the enumeration.
pub fn curated_trees() -> Vec<DTree> {
    vec![
        DTree::ax_neutral_l(s()),
        DTree::trans(DTree::ax_neutral_l(s()), DTree::sym(DTree::ax_neutral_r(s()))),
        DTree::compat_comp_first(s(), DTree::refl(Code::Ba(Basic::Zero))),
        DTree::compat_ind(DTree::refl(l()), DTree::ax_neutral_l(r())),
        freyd_addition(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::XValue;
    use crate::deduction::{check_tree, eval_tree, ArgVerdict};

    #[test]
    fn curated_trees_are_valid() {
        for t in curated_trees().iter().chain([&freyd_by_hand()]) {
            assert_eq!(check_tree(t), Ok(()), "{t}");
        }
    }

    #[test]
    fn hand_proof_is_sound_on_samples() {
        let t = freyd_by_hand();
        for (a, n) in [(0, 0), (2, 3), (5, 1)] {
            let x = XValue::pair(XValue::Num(a), XValue::Num(n));
            assert!(matches!(eval_tree(&t, &x, 1_000_000), ArgVerdict::Sound(..)), "({a},{n})");
        }
    }
}
