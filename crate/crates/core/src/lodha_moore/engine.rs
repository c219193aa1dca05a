//! The four-step normalization.
//!
//! Work happens on `f · Π y_s^{e_s}`, the y-part kept as a map from index to
//! total exponent. Iterating the map in index order spells a standard form,
//! so merging equal indices is a sequence of commuting and cancellation moves.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use crate::cantor::{std_cmp, Alphabet};
use crate::error::{Error, Result};
use crate::thompson::{TreePair, XGenerator};
use crate::transducer::{pc_raw, YSign};

use super::moves::ContractionKind as Kind;
use super::{GroupWord, Letter, NormalForm, StandardForm, YFactor};

/// Generous cap on ER and contraction moves for one normalization.
const STEP_LIMIT: usize = 2_000_000;

pub(crate) struct Engine {
    alphabet: Alphabet,
    pub(crate) f: TreePair,
    /// Keyed lexicographically, so a subtree is a contiguous range.
    pub(crate) m: BTreeMap<Vec<u8>, i64>,
    steps: usize,
}

fn child(u: &[u8], tail: &[u8]) -> Vec<u8> {
    let mut v = u.to_vec();
    v.extend_from_slice(tail);
    v
}

pub(crate) fn x0_at(alphabet: Alphabet, u: &[u8], sign: YSign) -> TreePair {
    let g = XGenerator {
        i: 0,
        alpha: crate::cantor::FiniteWord::from_trusted(alphabet, u.to_vec()),
    }
    .tree_pair();
    match sign {
        YSign::Pos => g,
        YSign::Neg => g.inverse(),
    }
}

impl Engine {
    pub(crate) fn new(f: TreePair) -> Self {
        Engine {
            alphabet: f.alphabet(),
            f,
            m: BTreeMap::new(),
            steps: 0,
        }
    }

    pub(crate) fn from_form(form: &StandardForm) -> Self {
        let mut e = Engine::new(form.f.clone());
        for y in &form.ys {
            e.add(y.s.letters().to_vec(), y.t);
        }
        e
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > STEP_LIMIT {
            return Err(Error::InvariantBreach(format!(
                "normalization exceeded {STEP_LIMIT} moves"
            )));
        }
        Ok(())
    }

    fn add(&mut self, s: Vec<u8>, t: i64) {
        match self.m.entry(s) {
            Entry::Vacant(v) => {
                if t != 0 {
                    v.insert(t);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += t;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    fn proper_subtree(&self, u: &[u8]) -> Vec<(Vec<u8>, i64)> {
        self.m
            .range(u.to_vec()..)
            .skip_while(|(k, _)| k.as_slice() == u)
            .take_while(|(k, _)| k.starts_with(u))
            .map(|(k, &v)| (k.clone(), v))
            .collect()
    }

    /// Conjugates the proper subtree of `u` by `g`, which must be defined on it.
    fn map_subtree(&mut self, u: &[u8], g: &TreePair) -> Result<()> {
        let nodes = self.proper_subtree(u);
        for (k, _) in &nodes {
            self.m.remove(k);
        }
        for (k, v) in nodes {
            let img = g.apply_prefix_raw(&k).ok_or_else(|| {
                Error::InvariantBreach(format!("prefix action undefined at {k:?}"))
            })?;
            self.add(img, v);
        }
        Ok(())
    }

    /// One ER move on the first letter of `y_u^e`; blockers are expanded first.
    pub(crate) fn er(&mut self, u: &[u8]) -> Result<()> {
        self.tick()?;
        let e = *self
            .m
            .get(u)
            .ok_or_else(|| Error::InvariantBreach(format!("ER at absent index {u:?}")))?;
        let sign = YSign::of(e).expect("stored exponents are nonzero");
        let top = self.alphabet.top();
        let blocker = match sign {
            YSign::Pos => child(u, &[0]),
            YSign::Neg => child(u, &[top]),
        };
        self.clear(&blocker)?;
        let g = x0_at(self.alphabet, u, sign);
        self.map_subtree(u, &g)?;
        self.add(u.to_vec(), -sign.value());
        let v = sign.value();
        match sign {
            YSign::Pos => {
                self.add(child(u, &[0]), v);
                self.add(child(u, &[top, 0]), -v);
                self.add(child(u, &[top, top]), v);
            }
            YSign::Neg => {
                self.add(child(u, &[0, 0]), v);
                self.add(child(u, &[0, top]), -v);
                self.add(child(u, &[top]), v);
            }
        }
        self.f = self.f.then(&g)?;
        Ok(())
    }

    fn clear(&mut self, u: &[u8]) -> Result<()> {
        while self.m.contains_key(u) {
            self.er(u)?;
        }
        Ok(())
    }

    /// Expands, shallowest first, every index on which `g` is undefined.
    fn raise_undefined(&mut self, g: &TreePair) -> Result<()> {
        let max = g.domain_leaves().map(<[u8]>::len).max().unwrap_or(0);
        for d in 0..max {
            let nodes: Vec<Vec<u8>> = self
                .m
                .keys()
                .filter(|k| k.len() == d && g.apply_prefix_raw(k).is_none())
                .cloned()
                .collect();
            for k in nodes {
                self.clear(&k)?;
            }
        }
        Ok(())
    }

    fn raise_ancestors(&mut self, u: &[u8]) -> Result<()> {
        for d in 0..u.len() {
            self.clear(&u[..d])?;
        }
        Ok(())
    }

    pub(crate) fn raise_depth(&mut self, l: usize) -> Result<()> {
        for d in 0..l {
            let nodes: Vec<Vec<u8>> = self.m.keys().filter(|k| k.len() == d).cloned().collect();
            for k in nodes {
                self.clear(&k)?;
            }
        }
        Ok(())
    }

    /// Right multiplication by an element of F(n).
    pub(crate) fn append_x(&mut self, g: &TreePair) -> Result<()> {
        self.raise_undefined(g)?;
        let old = std::mem::take(&mut self.m);
        for (k, v) in old {
            let img = g.apply_prefix_raw(&k).ok_or_else(|| {
                Error::InvariantBreach(format!("prefix action undefined at {k:?} after raising"))
            })?;
            self.add(img, v);
        }
        self.f = self.f.then(g)?;
        Ok(())
    }

    /// Right multiplication by `y_u^t`.
    pub(crate) fn append_y(&mut self, u: &[u8], t: i64) -> Result<()> {
        self.raise_ancestors(u)?;
        self.add(u.to_vec(), t);
        Ok(())
    }

    pub(crate) fn append_letter(&mut self, l: &Letter) -> Result<()> {
        match l {
            Letter::Y { s, sign } => self.append_y(s.letters(), sign.value()),
            Letter::X { .. } => self.append_x(&l.tree_pair().expect("x letter")),
        }
    }

    fn nearest_ancestor(&self, p: &[u8]) -> Option<Vec<u8>> {
        (0..p.len())
            .rev()
            .map(|d| &p[..d])
            .find(|a| self.m.contains_key(*a))
            .map(<[u8]>::to_vec)
    }

    /// An adjacent pair `(inner, outer)` forming a potential cancellation.
    pub(crate) fn find_pc(&self) -> Option<(Vec<u8>, Vec<u8>)> {
        self.find_pc_in(&[])
    }

    /// Same, restricted to pairs whose inner index extends `root`.
    fn find_pc_in(&self, root: &[u8]) -> Option<(Vec<u8>, Vec<u8>)> {
        let nodes = self
            .m
            .range(root.to_vec()..)
            .take_while(|(k, _)| k.starts_with(root));
        for (p, &ep) in nodes {
            let Some(o) = self.nearest_ancestor(p) else {
                continue;
            };
            let eo = self.m[&o];
            let (so, sp) = (YSign::of(eo).unwrap(), YSign::of(ep).unwrap());
            if pc_raw(self.alphabet, so, &p[o.len()..], sp) {
                return Some((p.clone(), o));
            }
        }
        None
    }

    /// Step 2: re-append the y-part in index order, clearing each new
    /// potential cancellation by ER moves on its outer factor. Ancestors of a
    /// new index come later in the order, so every new pair lies under it.
    pub(crate) fn remove_pcs(&mut self) -> Result<()> {
        let mut items: Vec<(Vec<u8>, i64)> = std::mem::take(&mut self.m).into_iter().collect();
        items.sort_by(|a, b| std_cmp(&a.0, &b.0));
        for (u, e) in items {
            self.raise_ancestors(&u)?;
            self.add(u.clone(), e);
            while let Some((_, outer)) = self.find_pc_in(&u) {
                self.er(&outer)?;
            }
        }
        Ok(())
    }

    pub(crate) fn contraction_at(&self, s: &[u8]) -> Option<Kind> {
        let top = self.alphabet.top();
        let get = |tail: &[u8]| self.m.get(&child(s, tail)).copied().unwrap_or(0);
        if get(&[0]) > 0 && get(&[top, 0]) < 0 && get(&[top, top]) > 0 && get(&[top]) == 0 {
            return Some(Kind::Type1);
        }
        if get(&[0, 0]) < 0 && get(&[0, top]) > 0 && get(&[top]) < 0 && get(&[0]) == 0 {
            return Some(Kind::Type2);
        }
        None
    }

    /// All potential contractions, deepest first, ties broken by index order.
    fn contraction_sites(&self) -> Vec<(Vec<u8>, Kind)> {
        let mut candidates: BTreeSet<&[u8]> = BTreeSet::new();
        for k in self.m.keys() {
            for d in 0..k.len() {
                candidates.insert(&k[..d]);
            }
        }
        let mut found: Vec<(Vec<u8>, Kind)> = candidates
            .into_iter()
            .filter_map(|s| self.contraction_at(s).map(|kind| (s.to_vec(), kind)))
            .collect();
        found.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(std_cmp(&a.0, &b.0)));
        found
    }

    pub(crate) fn find_contraction(&self) -> Option<(Vec<u8>, Kind)> {
        self.contraction_sites().into_iter().next()
    }

    pub(crate) fn contract(&mut self, s: &[u8], kind: Kind) -> Result<()> {
        self.tick()?;
        if self.contraction_at(s) != Some(kind) {
            return Err(Error::NoPotentialContraction(self.alphabet.format_letters(s)));
        }
        let top = self.alphabet.top();
        let (g, y_sign) = match kind {
            Kind::Type1 => {
                self.add(child(s, &[0]), -1);
                self.add(child(s, &[top, 0]), 1);
                self.add(child(s, &[top, top]), -1);
                (x0_at(self.alphabet, s, YSign::Neg), 1)
            }
            Kind::Type2 => {
                self.add(child(s, &[0, 0]), 1);
                self.add(child(s, &[0, top]), -1);
                self.add(child(s, &[top]), 1);
                (x0_at(self.alphabet, s, YSign::Pos), -1)
            }
        };
        self.map_subtree(s, &g)?;
        self.f = self.f.then(&g)?;
        self.add(s.to_vec(), y_sign);
        Ok(())
    }

    /// Step 3, in rounds: every site found by one scan is contracted,
    /// deepest first, if it is still a site when its turn comes.
    pub(crate) fn remove_contractions(&mut self) -> Result<()> {
        loop {
            let sites = self.contraction_sites();
            if sites.is_empty() {
                return Ok(());
            }
            for (s, _) in sites {
                if let Some(kind) = self.contraction_at(&s) {
                    self.contract(&s, kind)?;
                }
            }
        }
    }

    pub(crate) fn form(&self) -> StandardForm {
        let mut ys: Vec<YFactor> = self
            .m
            .iter()
            .map(|(k, &v)| YFactor::from_trusted(self.alphabet, k.clone(), v))
            .collect();
        ys.sort_by(|a, b| std_cmp(a.s.letters(), b.s.letters()));
        StandardForm {
            f: self.f.clone(),
            ys,
        }
    }

    fn finish(mut self) -> Result<NormalForm> {
        self.remove_pcs()?;
        self.remove_contractions()?;
        if let Some((p, o)) = self.find_pc() {
            return Err(Error::InvariantBreach(format!(
                "potential cancellation between {o:?} and {p:?} survived contraction"
            )));
        }
        Ok(NormalForm::from_form_unchecked(self.form()))
    }
}

/// Rewrites `w` into a standard form of depth at least `min_depth`.
pub fn standardize(w: &GroupWord, min_depth: usize) -> Result<StandardForm> {
    let mut e = Engine::new(TreePair::identity(w.alphabet()));
    for l in w.letters() {
        e.append_letter(l)?;
    }
    e.raise_depth(min_depth)?;
    Ok(e.form())
}

pub fn remove_potential_cancellations(form: &StandardForm) -> Result<StandardForm> {
    let mut e = Engine::from_form(&weak_to_standard(form)?);
    e.remove_pcs()?;
    Ok(e.form())
}

pub fn remove_potential_contractions(form: &StandardForm) -> Result<StandardForm> {
    let mut e = Engine::from_form(&weak_to_standard(form)?);
    if e.find_pc().is_some() {
        return Err(Error::PotentialCancellation);
    }
    e.remove_contractions()?;
    Ok(e.form())
}

/// Re-reads an arbitrary `f · Π y` through the word pipeline unless it is
/// already weak standard, in which case sorting is only commuting moves.
fn weak_to_standard(form: &StandardForm) -> Result<StandardForm> {
    if form.is_weak_standard() {
        let mut e = Engine::new(form.f.clone());
        for y in &form.ys {
            e.add(y.s.letters().to_vec(), y.t);
        }
        Ok(e.form())
    } else {
        let mut e = Engine::new(form.f.clone());
        for y in &form.ys {
            e.append_y(y.s.letters(), y.t)?;
        }
        Ok(e.form())
    }
}

pub fn normalize(w: &GroupWord) -> Result<NormalForm> {
    let mut e = Engine::new(TreePair::identity(w.alphabet()));
    for l in w.letters() {
        e.append_letter(l)?;
    }
    e.finish()
}

pub(crate) fn multiply(a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    a.alphabet().same_as(b.alphabet())?;
    let mut e = Engine::from_form(a.form());
    e.append_x(b.f())?;
    for y in b.ys() {
        e.append_y(y.s.letters(), y.t)?;
    }
    e.finish()
}

pub(crate) fn invert(a: &NormalForm) -> Result<NormalForm> {
    let mut e = Engine::new(TreePair::identity(a.alphabet()));
    for y in a.ys().iter().rev() {
        e.append_y(y.s.letters(), -y.t)?;
    }
    e.append_x(&a.f().inverse())?;
    e.finish()
}

/// Whether an index set is closed under the ER/contraction moves' Y(n)
/// bookkeeping; used by tests.
#[cfg(test)]
pub(crate) fn all_in_y(form: &StandardForm) -> bool {
    form.ys
        .iter()
        .all(|y| super::check_y_index(form.alphabet(), y.s.letters()).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lodha_moore::parse_word;

    fn nf(n: usize, s: &str) -> NormalForm {
        normalize(&parse_word(s, Some(n)).unwrap()).unwrap()
    }

    #[test]
    fn contraction_example() {
        // indices outside Y(4), as in the worked example
        let form = crate::lodha_moore::test_form(4, &[("300", 1), ("3030", -1), ("3031", 1), ("3033", 1), ("30", 1)]);
        let got = remove_potential_contractions(&form).unwrap();
        let ys: Vec<String> = got.ys.iter().map(|y| y.to_string()).collect();
        assert_eq!(ys, ["y[301]", "y[30]^2"]);
        let expect_f = x0_at(Alphabet::new(4).unwrap(), &[3, 0], YSign::Neg);
        assert_eq!(got.f, expect_f);
    }

    #[test]
    fn inverse_cancels() {
        for (n, s) in [(2, "y[10] x0 y[01]^-1 x0[1]"), (3, "y[20] x1 y[11]^2"), (4, "x2[3] y[30] y[21]")] {
            let w = parse_word(s, Some(n)).unwrap();
            let id = normalize(&w.concat(&w.inverse()).unwrap()).unwrap();
            assert!(id.is_identity(), "{s}: {id}");
        }
    }

    #[test]
    fn pure_f_has_no_y_part() {
        let g = nf(3, "x0 x1[2] x0^-1 x1[00]");
        assert!(g.ys().is_empty());
    }

    #[test]
    fn expansion_relation_normalizes_equal() {
        for n in 2..6 {
            let top = n - 1;
            let s = format!("{top}0");
            let lhs = nf(n, &format!("y[{s}]"));
            let rhs = nf(
                n,
                &format!("x0[{s}] y[{s}0] y[{s}{top}0]^-1 y[{s}{top}{top}]"),
            );
            assert_eq!(lhs, rhs);
            assert!(all_in_y(lhs.form()));
        }
    }

    #[test]
    fn standardize_reaches_depth() {
        let w = parse_word("y[10] x0 y[01]^-1", Some(2)).unwrap();
        let f = standardize(&w, 5).unwrap();
        assert!(f.depth().unwrap() >= 5);
        assert!(f.is_standard());
    }
}
