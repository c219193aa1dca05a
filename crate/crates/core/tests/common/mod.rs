#![allow(dead_code)]

use lodha_moore::cantor::{Alphabet, EvPeriodicWord, FiniteWord};
use lodha_moore::lodha_moore::{check_y_index, GroupWord, Letter, NormalForm, normalize};
use lodha_moore::thompson::XGenerator;
use lodha_moore::transducer::YSign;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::new(n).unwrap()
}

pub fn random_letters(rng: &mut StdRng, n: usize, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..n as u8)).collect()
}

/// A random index in Y(n) of length at most `max_len`.
pub fn random_y_index(rng: &mut StdRng, n: usize, max_len: usize) -> FiniteWord {
    let a = alphabet(n);
    loop {
        let len = rng.gen_range(2..=max_len.max(2));
        // bias toward the extreme letters, where the interesting structure is
        let s: Vec<u8> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.7) {
                    if rng.gen_bool(0.5) { 0 } else { (n - 1) as u8 }
                } else {
                    rng.gen_range(0..n as u8)
                }
            })
            .collect();
        if check_y_index(a, &s).is_ok() {
            return FiniteWord::new(a, s).unwrap();
        }
    }
}

pub fn random_letter(rng: &mut StdRng, n: usize) -> Letter {
    let a = alphabet(n);
    let top = (n - 1) as u8;
    let inverse = rng.gen_bool(0.5);
    let sign = if inverse { YSign::Neg } else { YSign::Pos };
    match rng.gen_range(0..6) {
        0 | 1 => Letter::x(XGenerator::new(rng.gen_range(0..n - 1), FiniteWord::empty(a)).unwrap(), inverse),
        2 => Letter::x(XGenerator::new(0, FiniteWord::new(a, vec![top]).unwrap()).unwrap(), inverse),
        3 => {
            let len = rng.gen_range(1..=3);
            let alpha = FiniteWord::new(a, random_letters(rng, n, len)).unwrap();
            Letter::x(XGenerator::new(rng.gen_range(0..n - 1), alpha).unwrap(), inverse)
        }
        4 => Letter::y(FiniteWord::new(a, vec![top, 0]).unwrap(), sign).unwrap(),
        _ => Letter::y(random_y_index(rng, n, 4), sign).unwrap(),
    }
}

pub fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len).map(|_| random_letter(rng, n)).collect();
    GroupWord::new(alphabet(n), letters).unwrap()
}

pub fn random_element(rng: &mut StdRng, n: usize, max_len: usize) -> NormalForm {
    normalize(&random_word(rng, n, max_len)).unwrap()
}

pub fn random_point(rng: &mut StdRng, n: usize) -> EvPeriodicWord {
    let a = alphabet(n);
    let pre_len = rng.gen_range(0..=8);
    let per_len = rng.gen_range(1..=4);
    let pre = random_letters(rng, n, pre_len);
    let per = random_letters(rng, n, per_len);
    EvPeriodicWord::from_letters(a, pre, per).unwrap()
}

use lodha_moore::cantor::PrefixRelation;
use lodha_moore::lodha_moore::{
    cancellation_move, commuting_move, expansion_move, rearranging_move, relation_oracle, Relation,
};

pub fn random_relation(rng: &mut StdRng, n: usize) -> Relation {
    let a = alphabet(n);
    loop {
        let rel = match rng.gen_range(0..5) {
            0 => {
                let j = rng.gen_range(1..=2 * n);
                Relation::FConjugation { i: rng.gen_range(0..j), j }
            }
            1 => {
                let len = rng.gen_range(0..=3);
                Relation::FGenerator {
                    i: rng.gen_range(0..n - 1),
                    alpha: FiniteWord::new(a, random_letters(rng, n, len)).unwrap(),
                }
            }
            2 => {
                let len = rng.gen_range(0..=2);
                Relation::Rearrange {
                    t: random_y_index(rng, n, 5),
                    i: rng.gen_range(0..n - 1),
                    alpha: FiniteWord::new(a, random_letters(rng, n, len)).unwrap(),
                    inverse: rng.gen_bool(0.5),
                }
            }
            3 => {
                let s = random_y_index(rng, n, 4);
                let t = random_y_index(rng, n, 4);
                if lodha_moore::cantor::prefix_relation(&s, &t).unwrap() != PrefixRelation::Independent {
                    continue;
                }
                Relation::Commute { s, t }
            }
            _ => Relation::Expansion { s: random_y_index(rng, n, 4) },
        };
        if relation_oracle(a, &rel).is_ok() {
            return rel;
        }
    }
}

fn find_sub(w: &GroupWord, pat: &GroupWord) -> Option<usize> {
    let (h, p) = (w.letters(), pat.letters());
    if p.is_empty() || p.len() > h.len() {
        return None;
    }
    (0..=h.len() - p.len()).find(|&i| h[i..i + p.len()] == *p)
}

fn splice(w: &GroupWord, at: usize, remove: usize, with: &GroupWord) -> GroupWord {
    let mut letters = w.letters().to_vec();
    letters.splice(at..at + remove, with.letters().iter().cloned());
    GroupWord::new(w.alphabet(), letters).unwrap()
}

/// One rewrite that does not change the element: a relator inserted, a
/// relator side replaced by the other, a free pair inserted, or a move.
pub fn random_rewrite(rng: &mut StdRng, w: &GroupWord) -> GroupWord {
    let n = w.alphabet().arity();
    loop {
        let pos = rng.gen_range(0..=w.len());
        let out = match rng.gen_range(0..4) {
            0 => {
                let (l, r) = relation_oracle(w.alphabet(), &random_relation(rng, n)).unwrap();
                let rel = if rng.gen_bool(0.5) {
                    l.concat(&r.inverse()).unwrap()
                } else {
                    r.concat(&l.inverse()).unwrap()
                };
                Some(splice(w, pos, 0, &rel))
            }
            1 => {
                let (l, r) = relation_oracle(w.alphabet(), &random_relation(rng, n)).unwrap();
                let (from, to) = if rng.gen_bool(0.5) { (l, r) } else { (r, l) };
                find_sub(w, &from).map(|i| splice(w, i, from.len(), &to))
            }
            2 => {
                let l = random_letter(rng, n);
                let pair = GroupWord::new(w.alphabet(), vec![l.clone(), l.inverse()]).unwrap();
                Some(splice(w, pos, 0, &pair))
            }
            _ => {
                let p = pos.min(w.len().saturating_sub(1));
                let m = match rng.gen_range(0..4) {
                    0 => expansion_move(w, p),
                    1 => rearranging_move(w, p),
                    2 => commuting_move(w, p),
                    _ => cancellation_move(w, p),
                };
                m.ok()
            }
        };
        if let Some(v) = out {
            return v;
        }
    }
}
