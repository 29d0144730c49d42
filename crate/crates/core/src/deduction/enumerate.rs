//! Ordered enumeration of valid deduction trees.
//!
//! Trees come in layers by node count. Within a layer they are sorted by
//! rule tag index, then root codes (structural order), then premises, which
//! is the derived order on [`DTree`]. Every root code in an emitted tree has
//! size at most the code-size bound.

use std::collections::HashMap;

use super::{anchor_arg, comp_parts, step_arg, DTree, RuleTag};
use crate::codec::{codes_by_size, Code};

struct Generator {
    max_nodes: usize,
    max_size: usize,
    codes: Vec<Vec<Code>>,
    layers: Vec<Option<Vec<DTree>>>,
}

impl Generator {
    fn new(max_nodes: usize, max_size: usize) -> Self {
        Generator {
            max_nodes,
            max_size,
            codes: codes_by_size(max_size),
            layers: vec![None; max_nodes + 1],
        }
    }

    /// Codes of size `1..=k` (nothing when `k` is 0).
    fn codes_upto(&self, k: usize) -> impl Iterator<Item = &Code> {
        self.codes[1..=k.min(self.max_size)].iter().flatten()
    }

    fn layer(&mut self, n: usize) -> &[DTree] {
        if self.layers[n].is_none() {
            let mut all = Vec::new();
            for rule in RuleTag::ALL {
                all.extend(self.group(n, rule));
            }
            self.layers[n] = Some(all);
        }
        self.layers[n].as_deref().unwrap()
    }

    fn ensure(&mut self, n: usize) {
        self.layer(n);
    }

    fn stored(&self, n: usize) -> &[DTree] {
        self.layers[n].as_deref().expect("layer computed")
    }

    fn fits(&self, t: &DTree) -> bool {
        t.lhs.size() <= self.max_size && t.rhs.size() <= self.max_size
    }

    /// All valid trees of exactly `n` nodes whose root rule is `rule`, sorted.
    fn group(&mut self, n: usize, rule: RuleTag) -> Vec<DTree> {
        let mut out = if n == 1 { self.leaves(rule) } else { self.inner(n, rule) };
        out.sort();
        out
    }

    fn leaves(&self, rule: RuleTag) -> Vec<DTree> {
        let s = self.max_size;
        let mut out = Vec::new();
        match rule {
            RuleTag::Refl => out.extend(self.codes_upto(s).cloned().map(DTree::refl)),
            RuleTag::AxNeutralL | RuleTag::AxNeutralR => {
                for u in self.codes_upto(s.saturating_sub(2)) {
                    out.push(if rule == RuleTag::AxNeutralL {
                        DTree::ax_neutral_l(u.clone())
                    } else {
                        DTree::ax_neutral_r(u.clone())
                    });
                }
            }
            RuleTag::AxAssoc => {
                for w in self.codes_upto(s.saturating_sub(4)) {
                    for v in self.codes_upto(s.saturating_sub(3 + w.size())) {
                        for u in self.codes_upto(s.saturating_sub(2 + w.size() + v.size())) {
                            out.push(DTree::ax_assoc(w.clone(), v.clone(), u.clone()));
                        }
                    }
                }
            }
            RuleTag::AxGodementL | RuleTag::AxGodementR | RuleTag::AxProd => {
                let frame = if rule == RuleTag::AxProd { 5 } else { 3 };
                for u in self.codes_upto(s.saturating_sub(frame + 1)) {
                    for v in self.codes_upto(s.saturating_sub(frame + u.size())) {
                        out.push(match rule {
                            RuleTag::AxGodementL => DTree::ax_godement_l(u.clone(), v.clone()),
                            RuleTag::AxGodementR => DTree::ax_godement_r(u.clone(), v.clone()),
                            _ => DTree::ax_prod(u.clone(), v.clone()),
                        });
                    }
                }
            }
            RuleTag::AxSP => {
                for h in self.codes_upto(s.saturating_sub(5) / 2) {
                    out.push(DTree::ax_sp(h.clone()));
                }
            }
            RuleTag::AxDistr => {
                for h in self.codes_upto(s.saturating_sub(5) / 2) {
                    for u in self.codes_upto(s.saturating_sub(4 + 2 * h.size())) {
                        for v in self.codes_upto(s.saturating_sub(3 + 2 * h.size() + u.size())) {
                            out.push(DTree::ax_distr(u.clone(), v.clone(), h.clone()));
                        }
                    }
                }
            }
            RuleTag::AxIterAnchor => {
                out.extend(self.codes_upto(s.saturating_sub(7)).cloned().map(DTree::ax_iter_anchor));
            }
            RuleTag::AxIterStep => {
                let k = s.saturating_sub(5).min(s.saturating_sub(2) / 2);
                out.extend(self.codes_upto(k).cloned().map(DTree::ax_iter_step));
            }
            _ => {}
        }
        out
    }

    fn inner(&mut self, n: usize, rule: RuleTag) -> Vec<DTree> {
        let s = self.max_size;
        let mut out = Vec::new();
        match rule {
            RuleTag::Sym => {
                self.ensure(n - 1);
                out.extend(self.stored(n - 1).iter().cloned().map(DTree::sym));
            }
            RuleTag::CompatCompFirst | RuleTag::CompatCompSecond => {
                self.ensure(n - 1);
                for t in self.stored(n - 1) {
                    let room = s.saturating_sub(1 + t.lhs.size().max(t.rhs.size()));
                    for c in self.codes_upto(room) {
                        out.push(if rule == RuleTag::CompatCompFirst {
                            DTree::compat_comp_first(c.clone(), t.clone())
                        } else {
                            DTree::compat_comp_second(t.clone(), c.clone())
                        });
                    }
                }
            }
            RuleTag::Trans | RuleTag::CompatInd | RuleTag::FreydUniq => {
                for a in 1..n - 1 {
                    let b = n - 1 - a;
                    self.ensure(a);
                    self.ensure(b);
                    let (left, right) = (self.stored(a), self.stored(b));
                    match rule {
                        RuleTag::Trans => join_trans(left, right, &mut out),
                        RuleTag::CompatInd => join_ind(left, right, s, &mut out),
                        _ => join_freyd(left, right, &mut out),
                    }
                }
                out.retain(|t| self.fits(t));
            }
            _ => {}
        }
        out
    }
}

fn join_trans(left: &[DTree], right: &[DTree], out: &mut Vec<DTree>) {
    let mut by_lhs: HashMap<&Code, Vec<&DTree>> = HashMap::new();
    for t in right {
        by_lhs.entry(&t.lhs).or_default().push(t);
    }
    for t1 in left {
        for t2 in by_lhs.get(&t1.rhs).into_iter().flatten() {
            out.push(DTree::trans(t1.clone(), (*t2).clone()));
        }
    }
}

fn join_ind(left: &[DTree], right: &[DTree], max_size: usize, out: &mut Vec<DTree>) {
    let mut by_sizes: HashMap<(usize, usize), Vec<&DTree>> = HashMap::new();
    for t in right {
        by_sizes.entry((t.lhs.size(), t.rhs.size())).or_default().push(t);
    }
    for t1 in left {
        let (room_l, room_r) = (
            max_size.saturating_sub(1 + t1.lhs.size()),
            max_size.saturating_sub(1 + t1.rhs.size()),
        );
        for (&(ls, rs), ts) in &by_sizes {
            if ls <= room_l && rs <= room_r {
                out.extend(ts.iter().map(|t2| DTree::compat_ind(t1.clone(), (*t2).clone())));
            }
        }
    }
}

fn join_freyd(left: &[DTree], right: &[DTree], out: &mut Vec<DTree>) {
    let (anchor, step) = (anchor_arg(), step_arg());
    let mut steps: HashMap<&Code, Vec<&DTree>> = HashMap::new();
    for t in right {
        if let (Some((w, arg)), Some((_, w2))) = (comp_parts(&t.lhs), comp_parts(&t.rhs)) {
            if *arg == step && w == w2 {
                steps.entry(w).or_default().push(t);
            }
        }
    }
    for t1 in left {
        let Some((w, arg)) = comp_parts(&t1.lhs) else { continue };
        if *arg != anchor {
            continue;
        }
        for t2 in steps.get(w).into_iter().flatten() {
            out.extend(DTree::freyd_uniq(t1.clone(), (*t2).clone()));
        }
    }
}

/// The ordered stream of all valid trees with at most `max_nodes` nodes and
/// root codes of size at most `max_code_size`.
pub struct TreeStream {
    gen: Generator,
    layer: usize,
    pos: usize,
}

impl Iterator for TreeStream {
    type Item = DTree;

    fn next(&mut self) -> Option<DTree> {
        while self.layer <= self.gen.max_nodes {
            let layer = self.gen.layer(self.layer);
            if let Some(t) = layer.get(self.pos) {
                self.pos += 1;
                return Some(t.clone());
            }
            self.layer += 1;
            self.pos = 0;
        }
        None
    }
}

pub fn enumerate_trees(max_nodes: usize, max_code_size: usize) -> TreeStream {
    TreeStream { gen: Generator::new(max_nodes, max_code_size), layer: 1, pos: 0 }
}

/// The subsequence of `enumerate_trees(max_nodes, max_code_size)` whose root
/// rule is `rule`, computing only the layers that rule depends on.
pub fn enumerate_rule(rule: RuleTag, max_nodes: usize, max_code_size: usize) -> Vec<DTree> {
    let mut gen = Generator::new(max_nodes, max_code_size);
    (1..=max_nodes).flat_map(|n| gen.group(n, rule)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::check_tree;

    #[test]
    fn single_nodes_of_single_symbols_are_reflexivities() {
        let trees: Vec<DTree> = enumerate_trees(1, 1).collect();
        assert_eq!(trees.len(), 7);
        assert!(trees.iter().all(|t| t.rule == RuleTag::Refl && t.lhs.size() == 1));
    }

    #[test]
    fn emitted_trees_are_valid_unique_and_bounded() {
        let trees: Vec<DTree> = enumerate_trees(3, 4).collect();
        let mut seen = std::collections::HashSet::new();
        for t in &trees {
            assert_eq!(check_tree(t), Ok(()), "{t}");
            assert!(t.nodes() <= 3 && t.max_code_size() <= 4);
            assert!(seen.insert(t.clone()));
        }
        for w in trees.windows(2) {
            assert!((w[0].nodes(), &w[0]) < (w[1].nodes(), &w[1]));
        }
    }

    #[test]
    fn larger_bounds_extend_smaller_ones() {
        let small: Vec<DTree> = enumerate_trees(1, 3).collect();
        let mut big: Vec<DTree> = enumerate_trees(2, 3).collect();
        big.sort_by_key(DTree::nodes);
        assert_eq!(&big[..small.len()], &small[..]);
        assert!(big[small.len()..].iter().all(|t| t.nodes() == 2));
    }

    #[test]
    fn rule_filter_agrees_with_the_stream() {
        let all: Vec<DTree> = enumerate_trees(3, 5).collect();
        for rule in RuleTag::ALL {
            let filtered: Vec<DTree> = all.iter().filter(|t| t.rule == rule).cloned().collect();
            assert_eq!(enumerate_rule(rule, 3, 5), filtered, "{rule}");
        }
    }
}
