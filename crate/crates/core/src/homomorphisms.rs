//! Arity-changing embeddings `I_{p,q}: G₀(p) → G₀(q)` and the
//! abelianization `G₀(n) → Z^{n+1}`.

use std::collections::BTreeSet;

use crate::cantor::{Alphabet, EvPeriodicWord, FiniteWord};
use crate::error::{Error, Result};
use crate::lodha_moore::{NormalForm, StandardForm, YFactor};
use crate::thompson::{abelianization_a, TreePair};

/// `p, q ≥ 2` with `q - 1 = d (p - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArityPair {
    p: Alphabet,
    q: Alphabet,
    d: u8,
}

impl ArityPair {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let bad = Error::InvalidArityPair { p, q };
        if p < 2 || q < p || (q - 1) % (p - 1) != 0 {
            return Err(bad);
        }
        Ok(ArityPair {
            p: Alphabet::new(p)?,
            q: Alphabet::new(q)?,
            d: ((q - 1) / (p - 1)) as u8,
        })
    }

    pub fn source(&self) -> Alphabet {
        self.p
    }

    pub fn target(&self) -> Alphabet {
        self.q
    }

    pub fn stretch(&self) -> usize {
        self.d as usize
    }

    fn raw(&self, s: &[u8]) -> Vec<u8> {
        s.iter().map(|&c| c * self.d).collect()
    }
}

/// `w_1 ⋯ w_k ↦ (d w_1) ⋯ (d w_k)`.
pub fn letter_stretch(pair: &ArityPair, s: &FiniteWord) -> Result<FiniteWord> {
    pair.p.same_as(s.alphabet())?;
    FiniteWord::new(pair.q, pair.raw(s.letters()))
}

/// The continuous extension of the letter stretch to points.
pub fn stretch_point(pair: &ArityPair, x: &EvPeriodicWord) -> Result<EvPeriodicWord> {
    pair.p.same_as(x.alphabet())?;
    EvPeriodicWord::from_letters(pair.q, pair.raw(x.pre_letters()), pair.raw(x.per_letters()))
}

/// Leaves of the `q`-ary tree obtained by widening every caret of the tree
/// with the given leaves.
fn widen(pair: &ArityPair, leaves: &[&[u8]]) -> Vec<Vec<u8>> {
    let mut internal = BTreeSet::new();
    for l in leaves {
        for k in 0..l.len() {
            internal.insert(&l[..k]);
        }
    }
    let mut out: Vec<Vec<u8>> = leaves.iter().map(|l| pair.raw(l)).collect();
    for v in internal {
        let base = pair.raw(v);
        for c in 0..pair.q.arity() as u8 {
            if c % pair.d != 0 {
                let mut w = base.clone();
                w.push(c);
                out.push(w);
            }
        }
    }
    out
}

/// Caret replacement: `d - 1` new edges between adjacent edges of each caret.
pub fn embed_f(pair: &ArityPair, f: &TreePair) -> Result<TreePair> {
    pair.p.same_as(f.alphabet())?;
    let dom: Vec<&[u8]> = f.domain_leaves().collect();
    let ran: Vec<&[u8]> = f.range_leaves().collect();
    TreePair::from_leaves(pair.q, widen(pair, &dom), widen(pair, &ran))
}

/// `I_{p,q}` on normal forms. The image is re-checked against the three
/// normal-form clauses rather than trusted.
pub fn embed(pair: &ArityPair, g: &NormalForm) -> Result<NormalForm> {
    let f = embed_f(pair, g.f())?;
    let ys = g
        .ys()
        .iter()
        .map(|y| Ok(YFactor::new(letter_stretch(pair, y.index())?, y.exponent())?))
        .collect::<Result<Vec<_>>>()?;
    let image = NormalForm::from_form_unchecked(StandardForm::new(f, ys)?);
    image.validate().map_err(|e| {
        Error::InvariantBreach(format!("image of {g} is not in normal form: {e}"))
    })?;
    Ok(image)
}

/// `π(g) = (a(f), Σ t_i)`.
pub fn abelianize(g: &NormalForm) -> Vec<i64> {
    let mut v = abelianization_a(g.f());
    v.push(g.ys().iter().map(YFactor::exponent).sum());
    v
}
