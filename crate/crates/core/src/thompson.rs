//! The Brown–Thompson group F(n) as reduced tree pairs.
//!
//! Products are read left to right: `f.then(g)` is the map `ξ ↦ g(f(ξ))`.

use std::fmt::Write as _;

use crate::cantor::{Alphabet, EvPeriodicWord, FiniteWord};
use crate::error::{Error, Result};

/// A homeomorphism `a_i η ↦ b_i η` given by two complete prefix-free leaf
/// sets paired in lexicographic order. Always stored reduced, so equal
/// elements have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreePair {
    alphabet: Alphabet,
    /// Sorted by domain leaf; range leaves are then sorted too.
    pairs: Vec<(Vec<u8>, Vec<u8>)>,
}

fn is_complete(n: u8, leaves: &[Vec<u8>], depth: usize) -> bool {
    if leaves.len() == 1 && leaves[0].len() == depth {
        return true;
    }
    if leaves.iter().any(|l| l.len() <= depth) {
        return false;
    }
    let mut start = 0;
    for c in 0..n {
        let end = start + leaves[start..].iter().take_while(|l| l[depth] == c).count();
        if end == start || !is_complete(n, &leaves[start..end], depth + 1) {
            return false;
        }
        start = end;
    }
    start == leaves.len()
}

fn validate_tree(alphabet: Alphabet, leaves: &mut [Vec<u8>]) -> Result<()> {
    for l in leaves.iter() {
        alphabet.check(l)?;
    }
    leaves.sort();
    if leaves.is_empty() || !is_complete(alphabet.arity() as u8, leaves, 0) {
        return Err(Error::SideCondition(
            "leaf set is not a complete prefix-free tree".into(),
        ));
    }
    Ok(())
}

/// Leaves of the tree made of carets at `path`'s proper prefixes and at
/// `path` itself with the children of `path` attached: all off-path siblings
/// plus `path·c` for every letter.
fn spine_leaves(n: u8, path: &[u8]) -> Vec<Vec<u8>> {
    let mut leaves = Vec::new();
    for (d, &a) in path.iter().enumerate() {
        for c in 0..n {
            if c != a {
                let mut l = path[..d].to_vec();
                l.push(c);
                leaves.push(l);
            }
        }
    }
    for c in 0..n {
        let mut l = path.to_vec();
        l.push(c);
        leaves.push(l);
    }
    leaves.sort();
    leaves
}

impl TreePair {
    pub fn identity(alphabet: Alphabet) -> Self {
        TreePair {
            alphabet,
            pairs: vec![(Vec::new(), Vec::new())],
        }
    }

    /// Builds the element from two leaf sets; leaves are paired after sorting.
    pub fn from_leaves(
        alphabet: Alphabet,
        mut domain: Vec<Vec<u8>>,
        mut range: Vec<Vec<u8>>,
    ) -> Result<Self> {
        validate_tree(alphabet, &mut domain)?;
        validate_tree(alphabet, &mut range)?;
        if domain.len() != range.len() {
            return Err(Error::SideCondition(format!(
                "trees have {} and {} leaves",
                domain.len(),
                range.len()
            )));
        }
        Ok(Self::from_sorted_pairs(
            alphabet,
            domain.into_iter().zip(range).collect(),
        ))
    }

    fn from_sorted_pairs(alphabet: Alphabet, pairs: Vec<(Vec<u8>, Vec<u8>)>) -> Self {
        let mut t = TreePair { alphabet, pairs };
        t.reduce();
        t
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn pairs(&self) -> &[(Vec<u8>, Vec<u8>)] {
        &self.pairs
    }

    pub fn leaf_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.len() == 1
    }

    pub fn domain_leaves(&self) -> impl Iterator<Item = &[u8]> {
        self.pairs.iter().map(|(a, _)| a.as_slice())
    }

    pub fn range_leaves(&self) -> impl Iterator<Item = &[u8]> {
        self.pairs.iter().map(|(_, b)| b.as_slice())
    }

    fn reduce(&mut self) {
        let n = self.alphabet.arity();
        let mut stack: Vec<(Vec<u8>, Vec<u8>)> = Vec::with_capacity(self.pairs.len());
        for p in self.pairs.drain(..) {
            stack.push(p);
            while stack.len() >= n {
                let block = &stack[stack.len() - n..];
                if !is_sibling_block(block.iter().map(|p| p.0.as_slice()))
                    || !is_sibling_block(block.iter().map(|p| p.1.as_slice()))
                {
                    break;
                }
                let (mut a, mut b) = stack.pop().expect("block");
                a.pop();
                b.pop();
                stack.truncate(stack.len() - (n - 1));
                stack.push((a, b));
            }
        }
        self.pairs = stack;
    }

    /// Index of the pair whose domain leaf is a prefix of `t`.
    fn leaf_index_for(&self, t: &[u8]) -> Option<usize> {
        let k = self.pairs.partition_point(|(a, _)| a.as_slice() <= t);
        if k == 0 {
            return None;
        }
        t.starts_with(&self.pairs[k - 1].0).then_some(k - 1)
    }

    /// `f(t)` for a finite word `t`, defined when `t` extends a domain leaf.
    pub fn apply_prefix(&self, t: &FiniteWord) -> Result<Option<FiniteWord>> {
        self.alphabet.same_as(t.alphabet())?;
        Ok(self
            .apply_prefix_raw(t.letters())
            .map(|w| FiniteWord::from_trusted(self.alphabet, w)))
    }

    pub(crate) fn apply_prefix_raw(&self, t: &[u8]) -> Option<Vec<u8>> {
        let k = self.leaf_index_for(t)?;
        let (a, b) = &self.pairs[k];
        let mut out = b.clone();
        out.extend_from_slice(&t[a.len()..]);
        Some(out)
    }

    pub fn apply_ep(&self, x: &EvPeriodicWord) -> Result<EvPeriodicWord> {
        self.alphabet.same_as(x.alphabet())?;
        let depth = self.pairs.iter().map(|(a, _)| a.len()).max().unwrap_or(0);
        let head = x.expand(depth);
        let k = self
            .leaf_index_for(&head)
            .ok_or_else(|| Error::InvariantBreach("domain leaves are not complete".into()))?;
        let (a, b) = &self.pairs[k];
        Ok(x.suffix(a.len()).prepend(b))
    }

    /// The composite "first `self`, then `g`".
    pub fn then(&self, g: &TreePair) -> Result<TreePair> {
        self.alphabet.same_as(g.alphabet)?;
        let mut out = Vec::with_capacity(self.pairs.len() + g.pairs.len());
        for (a, b) in &self.pairs {
            if let Some(k) = g.leaf_index_for(b) {
                let (c, d) = &g.pairs[k];
                let mut img = d.clone();
                img.extend_from_slice(&b[c.len()..]);
                out.push((a.clone(), img));
            } else {
                let start = g.pairs.partition_point(|(c, _)| c.as_slice() < b.as_slice());
                for (c, d) in g.pairs[start..].iter().take_while(|(c, _)| c.starts_with(b)) {
                    let mut dom = a.clone();
                    dom.extend_from_slice(&c[b.len()..]);
                    out.push((dom, d.clone()));
                }
            }
        }
        out.sort();
        Ok(Self::from_sorted_pairs(self.alphabet, out))
    }

    pub fn inverse(&self) -> TreePair {
        let mut pairs: Vec<_> = self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        pairs.sort();
        TreePair {
            alphabet: self.alphabet,
            pairs,
        }
    }

    pub fn pow(&self, k: i64) -> TreePair {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = TreePair::identity(self.alphabet);
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base).expect("same alphabet");
        }
        acc
    }

    /// Graphviz rendering: domain tree on the left, range tree on the right,
    /// paired leaves numbered alike.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        let _ = writeln!(s, "  node [shape=point];");
        for (side, leaves) in [
            ("d", self.domain_leaves().collect::<Vec<_>>()),
            ("r", self.range_leaves().collect::<Vec<_>>()),
        ] {
            let _ = writeln!(s, "  subgraph cluster_{side} {{");
            let mut internal: Vec<&[u8]> = Vec::new();
            for l in &leaves {
                for d in 0..l.len() {
                    internal.push(&l[..d]);
                }
            }
            internal.sort();
            internal.dedup();
            let node = |w: &[u8]| {
                let tag: String = w.iter().map(|c| format!("_{c}")).collect();
                format!("{side}{tag}")
            };
            for v in &internal {
                for c in 0..self.alphabet.arity() as u8 {
                    let mut child = v.to_vec();
                    child.push(c);
                    let _ = writeln!(s, "    {} -> {} [label=\"{c}\"];", node(v), node(&child));
                }
            }
            for (i, l) in leaves.iter().enumerate() {
                let _ = writeln!(s, "    {} [shape=plaintext, label=\"{i}\"];", node(l));
            }
            let _ = writeln!(s, "  }}");
        }
        let _ = writeln!(s, "}}");
        s
    }
}

fn is_sibling_block<'a>(mut leaves: impl ExactSizeIterator<Item = &'a [u8]>) -> bool {
    let Some(first) = leaves.next() else {
        return false;
    };
    if first.last() != Some(&0) {
        return false;
    }
    let parent = &first[..first.len() - 1];
    leaves.enumerate().all(|(i, l)| {
        l.len() == first.len() && l.starts_with(parent) && l[l.len() - 1] as usize == i + 1
    })
}

/// `x_{i[α]}`: acts as `x_i` inside the cone at `α` and fixes everything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XGenerator {
    pub i: usize,
    pub alpha: FiniteWord,
}

impl XGenerator {
    pub fn new(i: usize, alpha: FiniteWord) -> Result<Self> {
        let n = alpha.alphabet().arity();
        if i + 2 > n {
            return Err(Error::GeneratorIndex { index: i, arity: n });
        }
        Ok(XGenerator { i, alpha })
    }

    /// `X_k = x_{i[(n-1)^j]}` with `k = j(n-1) + i`.
    pub fn indexed(alphabet: Alphabet, k: usize) -> Self {
        let m = alphabet.arity() - 1;
        let alpha = vec![alphabet.top(); k / m];
        XGenerator {
            i: k % m,
            alpha: FiniteWord::from_trusted(alphabet, alpha),
        }
    }

    pub fn tree_pair(&self) -> TreePair {
        let alphabet = self.alpha.alphabet();
        let n = alphabet.arity() as u8;
        let alpha = self.alpha.letters();
        let mut dpath = alpha.to_vec();
        dpath.push(self.i as u8);
        let mut rpath = alpha.to_vec();
        rpath.push(n - 1);
        let mut domain = spine_leaves(n, &dpath);
        let mut range = spine_leaves(n, &rpath);
        domain.sort();
        range.sort();
        TreePair::from_sorted_pairs(alphabet, domain.into_iter().zip(range).collect())
    }
}

pub fn generator(i: usize, alpha: &FiniteWord) -> Result<TreePair> {
    Ok(XGenerator::new(i, alpha.clone())?.tree_pair())
}

/// `X_{i_1}^{r_1} ⋯ X_{i_m}^{r_m} X_{j_k}^{-s_k} ⋯ X_{j_1}^{-s_1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XNormalForm {
    /// Increasing indices with positive exponents.
    pub positive: Vec<(usize, u32)>,
    /// Decreasing indices (word order) with the absolute values of their
    /// negative exponents.
    pub negative: Vec<(usize, u32)>,
}

impl XNormalForm {
    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    /// The form as a word of `(index, exponent)` syllables.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        self.positive
            .iter()
            .map(|&(k, r)| (k, r as i64))
            .chain(self.negative.iter().map(|&(k, s)| (k, -(s as i64))))
            .collect()
    }

    /// Checks the shape and the extra occurrence condition.
    pub fn is_valid(&self, arity: usize) -> bool {
        let inc = self.positive.windows(2).all(|w| w[0].0 < w[1].0);
        let dec = self.negative.windows(2).all(|w| w[0].0 > w[1].0);
        let nonzero = self.syllables().iter().all(|&(_, e)| e != 0);
        let junction = match (self.positive.last(), self.negative.first()) {
            (Some(a), Some(b)) => a.0 != b.0,
            _ => true,
        };
        let occurs = |k: usize| {
            self.positive.iter().any(|p| p.0 == k) || self.negative.iter().any(|p| p.0 == k)
        };
        let extra = self.positive.iter().all(|&(i, _)| {
            !self.negative.iter().any(|q| q.0 == i) || (i + 1..i + arity).any(occurs)
        });
        inc && dec && nonzero && junction && extra
    }
}

/// Exponents of the positive element `(tree, right vine)`: leaf `k` gets one
/// for each caret off the right spine whose leftmost leaf it is.
fn vine_exponents(alphabet: Alphabet, leaves: &[&[u8]]) -> Vec<(usize, u32)> {
    let top = alphabet.top();
    let mut counts = vec![0u32; leaves.len()];
    for (k, l) in leaves.iter().enumerate() {
        // Carets whose leftmost leaf is `l` sit at `l` minus a run of trailing zeros.
        let zeros = l.iter().rev().take_while(|&&c| c == 0).count();
        for z in 1..=zeros {
            let caret = &l[..l.len() - z];
            if !caret.iter().all(|&c| c == top) {
                counts[k] += 1;
            }
        }
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect()
}

pub fn to_x_normal_form(f: &TreePair) -> XNormalForm {
    let domain: Vec<&[u8]> = f.domain_leaves().collect();
    let range: Vec<&[u8]> = f.range_leaves().collect();
    let positive = vine_exponents(f.alphabet, &domain);
    let mut negative = vine_exponents(f.alphabet, &range);
    negative.reverse();
    XNormalForm { positive, negative }
}

/// Product of `X_k^e` syllables, left to right.
pub fn from_x_word(alphabet: Alphabet, word: &[(usize, i64)]) -> TreePair {
    let mut acc = TreePair::identity(alphabet);
    for &(k, e) in word {
        let g = XGenerator::indexed(alphabet, k).tree_pair().pow(e);
        acc = acc.then(&g).expect("same alphabet");
    }
    acc
}

/// An `X`-word, as `(index, exponent)` syllables read left to right.
pub type XWord = Vec<(usize, i64)>;

fn conjugate(k: usize, by: &[usize]) -> XWord {
    let mut w: XWord = by.iter().rev().map(|&g| (g, -1)).collect();
    w.push((k, 1));
    w.extend(by.iter().map(|&g| (g, 1)));
    w
}

/// `X_i^{-1} X_j X_i = X_{j+n-1}` for `i < j ≤ max_index`.
pub fn infinite_presentation(n: usize, max_index: usize) -> Vec<(XWord, XWord)> {
    let mut out = Vec::new();
    for j in 1..=max_index {
        for i in 0..j {
            out.push((vec![(i, -1), (j, 1), (i, 1)], vec![(j + n - 1, 1)]));
        }
    }
    out
}

/// The finite presentation on `X_0, …, X_{n-1}`, with `x^y = y^{-1} x y`.
pub fn finite_presentation(n: usize) -> Vec<(XWord, XWord)> {
    let top = n - 1;
    let mut out = Vec::new();
    for k in 1..=top {
        for i in 1..k {
            out.push((conjugate(k, &[0]), conjugate(k, &[i])));
        }
    }
    for k in 1..=top {
        for i in k.saturating_sub(1).max(1)..=top {
            out.push((conjugate(k, &[0, 0]), conjugate(k, &[0, i])));
        }
    }
    out.push((conjugate(1, &[0, 0, 0]), conjugate(1, &[0, 0, top])));
    out
}

/// The abelianization `F(n) → Z^n`: the `X_0` exponent, then the exponent
/// sums over the classes `X_j`, `j ≥ 1`, by `j mod (n-1)`.
pub fn abelianization_a(f: &TreePair) -> Vec<i64> {
    let n = f.alphabet.arity();
    let mut v = vec![0i64; n];
    for (k, e) in to_x_normal_form(f).syllables() {
        v[x_class(n, k)] += e;
    }
    v
}

pub(crate) fn x_class(n: usize, k: usize) -> usize {
    if k == 0 {
        0
    } else {
        (k - 1) % (n - 1) + 1
    }
}

/// An element whose support is exactly the open interval `(s0̄, (n-1)̄)`.
pub fn right_support_element(s: &FiniteWord) -> Result<TreePair> {
    let alphabet = s.alphabet();
    if s.is_empty() {
        return Err(Error::SideCondition("right_support_element needs s ≠ ε".into()));
    }
    let top = alphabet.top();
    let mut s = s.letters().to_vec();
    if s.last() == Some(&top) {
        s.push(0);
    }
    let (&i, prefix) = s.split_last().expect("nonempty");
    let x = XGenerator {
        i: i as usize,
        alpha: FiniteWord::from_trusted(alphabet, prefix.to_vec()),
    }
    .tree_pair();
    if prefix.iter().all(|&c| c == top) {
        return Ok(x);
    }
    // Graft a caret at the domain leaf s(n-1) and at the rightmost range leaf,
    // then pair the leaves afresh.
    let n = alphabet.arity() as u8;
    let mut domain: Vec<Vec<u8>> = x.domain_leaves().map(<[u8]>::to_vec).collect();
    let mut range: Vec<Vec<u8>> = x.range_leaves().map(<[u8]>::to_vec).collect();
    let mut graft = s.clone();
    graft.push(top);
    if !domain.contains(&graft) {
        // Refine both trees until s(n-1) is a domain leaf.
        let expanded = expand_to_leaf(&x, &graft);
        domain = expanded.0;
        range = expanded.1;
    }
    let pos = domain.iter().position(|l| *l == graft).expect("leaf present");
    let leaf = domain.remove(pos);
    domain.extend((0..n).map(|c| {
        let mut l = leaf.clone();
        l.push(c);
        l
    }));
    let last = range.pop().expect("nonempty");
    range.extend((0..n).map(|c| {
        let mut l = last.clone();
        l.push(c);
        l
    }));
    TreePair::from_leaves(alphabet, domain, range)
}

/// Unreduced leaf lists of `f` refined so that `target` is a domain leaf.
fn expand_to_leaf(f: &TreePair, target: &[u8]) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
    let n = f.alphabet.arity() as u8;
    let mut pairs = f.pairs.clone();
    loop {
        let k = pairs
            .iter()
            .position(|(a, _)| target.starts_with(a))
            .expect("complete domain");
        if pairs[k].0.len() == target.len() {
            break;
        }
        let (a, b) = pairs.remove(k);
        for c in (0..n).rev() {
            let mut a2 = a.clone();
            a2.push(c);
            let mut b2 = b.clone();
            b2.push(c);
            pairs.insert(k, (a2, b2));
        }
    }
    pairs.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(n: usize) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    fn w(n: usize, s: &str) -> FiniteWord {
        FiniteWord::parse(al(n), s).unwrap()
    }

    fn x(n: usize, i: usize, s: &str) -> TreePair {
        generator(i, &w(n, s)).unwrap()
    }

    #[test]
    fn x0_rule_table() {
        for n in 2..7 {
            let x0 = x(n, 0, "");
            let top = (n - 1) as u8;
            for k in 0..top {
                assert_eq!(x0.apply_prefix_raw(&[0, k]), Some(vec![k]));
            }
            assert_eq!(x0.apply_prefix_raw(&[0, top]), Some(vec![top, 0]));
            for k in 1..=top {
                assert_eq!(x0.apply_prefix_raw(&[k]), Some(vec![top, k]));
            }
            let inv = x0.inverse();
            for k in 0..top {
                assert_eq!(inv.apply_prefix_raw(&[k]), Some(vec![0, k]));
            }
        }
    }

    #[test]
    fn x_last_rule_table() {
        // x_{n-2} for n = 4: 20η ↦ 2η, 21η ↦ 30η, 22η ↦ 31η, 23η ↦ 32η, 3η ↦ 33η
        let g = x(4, 2, "");
        assert_eq!(g.apply_prefix_raw(&[2, 0]), Some(vec![2]));
        assert_eq!(g.apply_prefix_raw(&[2, 1]), Some(vec![3, 0]));
        assert_eq!(g.apply_prefix_raw(&[2, 3]), Some(vec![3, 2]));
        assert_eq!(g.apply_prefix_raw(&[3]), Some(vec![3, 3]));
        assert_eq!(g.apply_prefix_raw(&[1]), Some(vec![1]));
    }

    #[test]
    fn bracket_generator() {
        for n in 2..6 {
            let top = (n - 1) as u8;
            let g = x(n, 0, &top.to_string());
            for k in 0..top {
                assert_eq!(g.apply_prefix_raw(&[k]), Some(vec![k]));
            }
            assert_eq!(g.apply_prefix_raw(&[top, top]), Some(vec![top, top, top]));
            assert_eq!(g.apply_prefix_raw(&[top, 0]), None);
        }
    }

    #[test]
    fn compose_and_invert() {
        let f = x(3, 1, "20");
        let id = TreePair::identity(al(3));
        assert_eq!(f.then(&f.inverse()).unwrap(), id);
        assert_eq!(id.then(&f).unwrap(), f);
        assert_eq!(f.inverse().inverse(), f);
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn conjugation_relation() {
        for n in 2..5 {
            let a = al(n);
            for i in 0..6 {
                for j in i + 1..7 {
                    let lhs = from_x_word(a, &[(i, -1), (j, 1), (i, 1)]);
                    let rhs = from_x_word(a, &[(j + n - 1, 1)]);
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn presentations_hold() {
        for n in 2..7 {
            let a = al(n);
            for (l, r) in finite_presentation(n).into_iter().chain(infinite_presentation(n, 3 * n)) {
                assert_eq!(from_x_word(a, &l), from_x_word(a, &r), "n={n} {l:?} = {r:?}");
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let a = al(3);
        assert!(to_x_normal_form(&TreePair::identity(a)).is_identity());
        let x3 = from_x_word(a, &[(3, 1)]);
        assert_eq!(to_x_normal_form(&x3).syllables(), vec![(3, 1)]);
        let g = from_x_word(a, &[(0, 1), (4, 1), (0, -1)]);
        assert_eq!(to_x_normal_form(&g).syllables(), vec![(2, 1)]);
    }

    #[test]
    fn abelianization_examples() {
        for n in 2..6 {
            let a = al(n);
            assert_eq!(abelianization_a(&TreePair::identity(a)), vec![0; n]);
            for k in 0..n {
                let mut e = vec![0; n];
                e[k] = 1;
                assert_eq!(abelianization_a(&from_x_word(a, &[(k, 1)])), e);
            }
        }
    }

    #[test]
    fn prefix_action_undefined() {
        assert_eq!(x(3, 0, "2").apply_prefix(&w(3, "20")).unwrap(), None);
        let f = x(3, 1, "01");
        for (a, b) in f.pairs() {
            assert_eq!(f.apply_prefix_raw(a).as_ref(), Some(b));
        }
    }

    #[test]
    fn right_support_examples() {
        assert_eq!(right_support_element(&w(3, "0")).unwrap(), x(3, 0, ""));
        assert_eq!(right_support_element(&w(3, "221")).unwrap(), x(3, 1, "22"));
        assert!(right_support_element(&w(3, "")).is_err());
    }

    #[test]
    fn from_leaves_rejects_bad_trees() {
        let a = al(2);
        assert!(TreePair::from_leaves(a, vec![vec![0], vec![1]], vec![vec![0]]).is_err());
        assert!(TreePair::from_leaves(a, vec![vec![0], vec![0, 1]], vec![vec![0], vec![1]]).is_err());
        let t = TreePair::from_leaves(a, vec![vec![0], vec![1]], vec![vec![0], vec![1]]).unwrap();
        assert!(t.is_identity());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = (usize, Vec<(usize, i64)>)> {
            (2usize..5).prop_flat_map(|n| {
                (
                    Just(n),
                    prop::collection::vec((0usize..3 * n, prop_oneof![Just(1i64), Just(-1i64)]), 0..12),
                )
            })
        }

        proptest! {
            #[test]
            fn normal_form_round_trip((n, wd) in word()) {
                let f = from_x_word(al(n), &wd);
                let nf = to_x_normal_form(&f);
                prop_assert!(nf.is_valid(n), "{:?}", nf);
                prop_assert_eq!(from_x_word(al(n), &nf.syllables()), f);
            }

            #[test]
            fn a_is_additive((n, u) in word(), v in prop::collection::vec((0usize..6, prop_oneof![Just(1i64), Just(-1i64)]), 0..8)) {
                let f = from_x_word(al(n), &u);
                let g = from_x_word(al(n), &v);
                let sum: Vec<i64> = abelianization_a(&f).iter().zip(abelianization_a(&g)).map(|(a, b)| a + b).collect();
                prop_assert_eq!(abelianization_a(&f.then(&g).unwrap()), sum);
            }

            #[test]
            fn prefix_action_matches_points((n, wd) in word(), t in prop::collection::vec(0u8..2, 0..6), per in prop::collection::vec(0u8..2, 1..4)) {
                let a = al(n);
                let f = from_x_word(a, &wd);
                let t: Vec<u8> = t.into_iter().map(|c| c * a.top()).collect();
                if let Some(img) = f.apply_prefix_raw(&t) {
                    let eta = EvPeriodicWord::from_letters(a, vec![], per).unwrap();
                    prop_assert_eq!(f.apply_ep(&eta.prepend(&t)).unwrap(), eta.prepend(&img));
                }
            }
        }
    }
}
