//! The five moves on words, ER and contraction moves on forms, and the
//! relators they come from.

use crate::cantor::{independent, std_cmp, Alphabet, FiniteWord};
use crate::error::{Error, Result};
use crate::thompson::XGenerator;
use crate::transducer::{pc_raw, YSign};

use super::engine::{x0_at, Engine};
use super::{check_y_index, GroupWord, Letter, StandardForm, YFactor};

fn letter_at(w: &GroupWord, position: usize) -> Result<&Letter> {
    w.letters().get(position).ok_or_else(|| {
        Error::SideCondition(format!("position {position} is outside a word of length {}", w.len()))
    })
}

fn y_letter(alphabet: Alphabet, s: Vec<u8>, sign: YSign) -> Letter {
    Letter::Y {
        s: FiniteWord::from_trusted(alphabet, s),
        sign,
    }
}

fn x0_letter(alphabet: Alphabet, s: &[u8], inverse: bool) -> Letter {
    Letter::x(
        XGenerator {
            i: 0,
            alpha: FiniteWord::from_trusted(alphabet, s.to_vec()),
        },
        inverse,
    )
}

/// `y_s^{±1}` as the four letters of its expansion.
fn expansion_letters(alphabet: Alphabet, s: &[u8], sign: YSign) -> Vec<Letter> {
    let top = alphabet.top();
    let ext = |tail: &[u8]| {
        let mut v = s.to_vec();
        v.extend_from_slice(tail);
        v
    };
    match sign {
        YSign::Pos => vec![
            x0_letter(alphabet, s, false),
            y_letter(alphabet, ext(&[0]), YSign::Pos),
            y_letter(alphabet, ext(&[top, 0]), YSign::Neg),
            y_letter(alphabet, ext(&[top, top]), YSign::Pos),
        ],
        YSign::Neg => vec![
            x0_letter(alphabet, s, true),
            y_letter(alphabet, ext(&[0, 0]), YSign::Neg),
            y_letter(alphabet, ext(&[0, top]), YSign::Pos),
            y_letter(alphabet, ext(&[top]), YSign::Neg),
        ],
    }
}

/// `y_t^i x^δ → x^δ y_{x(t)}^i`.
pub fn rearranging_move(w: &GroupWord, position: usize) -> Result<GroupWord> {
    let (Letter::Y { s, sign }, x @ Letter::X { .. }) = (letter_at(w, position)?, letter_at(w, position + 1)?)
    else {
        return Err(Error::SideCondition(format!(
            "rearranging needs y then x at {position}"
        )));
    };
    let g = x.tree_pair().expect("x letter");
    let img = g
        .apply_prefix_raw(s.letters())
        .ok_or_else(|| Error::UndefinedPrefixAction {
            element: x.to_string(),
            word: s.to_string(),
        })?;
    check_y_index(w.alphabet(), &img)?;
    let moved = y_letter(w.alphabet(), img, *sign);
    Ok(w.splice(position..position + 2, vec![x.clone(), moved]))
}

/// Replaces `y_s^{±1}` by its four-letter expansion.
pub fn expansion_move(w: &GroupWord, position: usize) -> Result<GroupWord> {
    let Letter::Y { s, sign } = letter_at(w, position)? else {
        return Err(Error::SideCondition(format!("no y letter at {position}")));
    };
    let rep = expansion_letters(w.alphabet(), s.letters(), *sign);
    Ok(w.splice(position..position + 1, rep))
}

/// Swaps two adjacent y letters with independent indices.
pub fn commuting_move(w: &GroupWord, position: usize) -> Result<GroupWord> {
    match (letter_at(w, position)?, letter_at(w, position + 1)?) {
        (a @ Letter::Y { s, .. }, b @ Letter::Y { s: t, .. })
            if independent(s.letters(), t.letters()) =>
        {
            Ok(w.splice(position..position + 2, vec![b.clone(), a.clone()]))
        }
        _ => Err(Error::SideCondition(format!(
            "letters at {position} are not y's with independent indices"
        ))),
    }
}

/// Deletes an adjacent pair `a a^{-1}`.
pub fn cancellation_move(w: &GroupWord, position: usize) -> Result<GroupWord> {
    let a = letter_at(w, position)?;
    let b = letter_at(w, position + 1)?;
    if a.inverse() != *b {
        return Err(Error::SideCondition(format!(
            "letters at {position} are not mutually inverse"
        )));
    }
    Ok(w.splice(position..position + 2, Vec::new()))
}

/// ER move on the first letter of `ys[index]`: expand it and rearrange the
/// new `x_{0[u]}^{±1}` to the front, through all earlier factors and into `f`.
pub fn er_move(form: &StandardForm, index: usize) -> Result<StandardForm> {
    let alphabet = form.alphabet();
    let target = form
        .ys
        .get(index)
        .ok_or_else(|| Error::SideCondition(format!("no y factor at {index}")))?;
    let u = target.s.letters();
    let sign = target.sign();
    let g = x0_at(alphabet, u, sign);
    let mut ys = Vec::with_capacity(form.ys.len() + 3);
    for y in &form.ys[..index] {
        let img = g
            .apply_prefix_raw(y.s.letters())
            .ok_or_else(|| Error::BlockedErMove {
                target: alphabet.format_letters(u),
                blocker: y.s.to_string(),
            })?;
        ys.push(YFactor::from_trusted(alphabet, img, y.t));
    }
    for l in expansion_letters(alphabet, u, sign).into_iter().skip(1) {
        let Letter::Y { s, sign } = l else { unreachable!() };
        ys.push(YFactor::from_trusted(alphabet, s.into_letters(), sign.value()));
    }
    let rest = target.t - sign.value();
    if rest != 0 {
        ys.push(YFactor::from_trusted(alphabet, u.to_vec(), rest));
    }
    ys.extend_from_slice(&form.ys[index + 1..]);
    Ok(StandardForm {
        f: form.f.then(&g)?,
        ys,
    })
}

/// Positions `(inner, outer)` in `ys` of nested indices with no index
/// strictly between; `inner` is the longer one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjacentPair {
    pub inner: usize,
    pub outer: usize,
}

fn adjacent_pairs(form: &StandardForm) -> Vec<AdjacentPair> {
    let ys = &form.ys;
    let mut pairs = Vec::new();
    for (j, p) in ys.iter().enumerate() {
        let p = p.s.letters();
        // nearest present proper prefix; first occurrence if repeated
        let outer = (0..p.len())
            .rev()
            .find_map(|d| ys.iter().position(|y| y.s.letters() == &p[..d]));
        if let Some(i) = outer {
            pairs.push(AdjacentPair { inner: j, outer: i });
        }
    }
    pairs.sort_by(|a, b| {
        std_cmp(ys[a.outer].s.letters(), ys[b.outer].s.letters())
            .then(std_cmp(ys[a.inner].s.letters(), ys[b.inner].s.letters()))
    });
    pairs
}

/// The first adjacent pair that is a potential cancellation.
pub fn has_potential_cancellation(form: &StandardForm) -> Option<AdjacentPair> {
    let alphabet = form.alphabet();
    adjacent_pairs(form).into_iter().find(|p| {
        let (o, i) = (&form.ys[p.outer], &form.ys[p.inner]);
        let sigma = &i.s.letters()[o.s.len()..];
        pc_raw(alphabet, o.sign(), sigma, i.sign())
    })
}

/// The two shapes of a potential contraction at `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionKind {
    /// `y_{s0} y_{s(n-1)0}^{-1} y_{s(n-1)(n-1)}`, no factor at `s(n-1)`.
    Type1,
    /// `y_{s00}^{-1} y_{s0(n-1)} y_{s(n-1)}^{-1}`, no factor at `s0`.
    Type2,
}

/// Deepest potential contraction site, found by scanning the multiset of
/// factors; for standard forms this is exactly the commuting-move closure.
pub fn find_potential_contraction(form: &StandardForm) -> Option<(FiniteWord, ContractionKind)> {
    Engine::from_form(form)
        .find_contraction()
        .map(|(s, k)| (FiniteWord::from_trusted(form.alphabet(), s), k))
}

pub fn contraction_move(form: &StandardForm, site: &FiniteWord) -> Result<StandardForm> {
    form.alphabet().same_as(site.alphabet())?;
    if !form.is_standard() {
        return Err(Error::SideCondition("contraction moves act on standard forms".into()));
    }
    let mut e = Engine::from_form(form);
    let kind = e
        .contraction_at(site.letters())
        .ok_or_else(|| Error::NoPotentialContraction(site.to_string()))?;
    e.contract(site.letters(), kind)?;
    Ok(e.form())
}

/// Relators of G₀(n), instantiated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `X_i^{-1} X_j X_i = X_{j+n-1}` for `i < j`.
    FConjugation { i: usize, j: usize },
    /// `x_{i[α]}` equals the word of its X normal form.
    FGenerator { i: usize, alpha: FiniteWord },
    /// `y_t x^δ = x^δ y_{x(t)}` with `x = x_{i[α]}`.
    Rearrange {
        t: FiniteWord,
        i: usize,
        alpha: FiniteWord,
        inverse: bool,
    },
    /// `y_s y_t = y_t y_s` for `s ⊥ t`.
    Commute { s: FiniteWord, t: FiniteWord },
    /// `y_s = x_{0[s]} y_{s0} y_{s(n-1)0}^{-1} y_{s(n-1)(n-1)}`.
    Expansion { s: FiniteWord },
}

pub fn relation_oracle(alphabet: Alphabet, rel: &Relation) -> Result<(GroupWord, GroupWord)> {
    let word = |letters: Vec<Letter>| GroupWord::new(alphabet, letters);
    match rel {
        Relation::FConjugation { i, j } => {
            if i >= j {
                return Err(Error::SideCondition(format!("need i < j, got {i}, {j}")));
            }
            let x = |k| XGenerator::indexed(alphabet, k);
            let lhs = word(vec![
                Letter::x(x(*i), true),
                Letter::x(x(*j), false),
                Letter::x(x(*i), false),
            ])?;
            let rhs = word(vec![Letter::x(x(j + alphabet.arity() - 1), false)])?;
            Ok((lhs, rhs))
        }
        Relation::FGenerator { i, alpha } => {
            let gen = XGenerator::new(*i, alpha.clone())?;
            let lhs = word(vec![Letter::x(gen.clone(), false)])?;
            Ok((lhs, GroupWord::from_tree_pair(&gen.tree_pair())))
        }
        Relation::Rearrange {
            t,
            i,
            alpha,
            inverse,
        } => {
            let y = Letter::y(t.clone(), YSign::Pos)?;
            let x = Letter::x(XGenerator::new(*i, alpha.clone())?, *inverse);
            let lhs = word(vec![y, x])?;
            let rhs = rearranging_move(&lhs, 0)?;
            Ok((lhs, rhs))
        }
        Relation::Commute { s, t } => {
            if !independent(s.letters(), t.letters()) {
                return Err(Error::SideCondition(format!("{s} and {t} are not independent")));
            }
            let (a, b) = (Letter::y(s.clone(), YSign::Pos)?, Letter::y(t.clone(), YSign::Pos)?);
            Ok((word(vec![a.clone(), b.clone()])?, word(vec![b, a])?))
        }
        Relation::Expansion { s } => {
            let lhs = word(vec![Letter::y(s.clone(), YSign::Pos)?])?;
            let rhs = expansion_move(&lhs, 0)?;
            Ok((lhs, rhs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::EvPeriodicWord;
    use crate::lodha_moore::{evaluate_form, evaluate_word, parse_word};
    use proptest::prelude::*;

    fn fw(n: usize, s: &str) -> FiniteWord {
        FiniteWord::parse(Alphabet::new(n).unwrap(), s).unwrap()
    }

    fn ep(n: usize, s: &str) -> EvPeriodicWord {
        EvPeriodicWord::parse(Alphabet::new(n).unwrap(), s).unwrap()
    }

    fn points(n: usize) -> Vec<EvPeriodicWord> {
        let top = n - 1;
        [
            "(0)*".to_string(),
            format!("({top})*"),
            format!("0{top}(0)*"),
            format!("{top}0({top}0)*"),
            format!("{top}00{top}0(0{top})*"),
            format!("{top}0{top}{top}0(1)*"),
            format!("{top}{top}0(0)*"),
            format!("00{top}0{top}({top}00)*"),
        ]
        .iter()
        .map(|s| ep(n, s))
        .collect()
    }

    fn same_action(a: &GroupWord, b: &GroupWord) {
        for x in points(a.alphabet().arity()) {
            assert_eq!(
                evaluate_word(a, &x).unwrap(),
                evaluate_word(b, &x).unwrap(),
                "{a} vs {b} at {x}"
            );
        }
    }

    #[test]
    fn oracle_examples() {
        let a = Alphabet::new(2).unwrap();
        let (l, r) = relation_oracle(a, &Relation::Commute { s: fw(2, "01"), t: fw(2, "10") }).unwrap();
        assert_eq!(l.to_string(), "y[01] y[10]");
        assert_eq!(r.to_string(), "y[10] y[01]");
        let a4 = Alphabet::new(4).unwrap();
        let (l, r) = relation_oracle(a4, &Relation::Expansion { s: fw(4, "30") }).unwrap();
        assert_eq!(l.to_string(), "y[30]");
        assert_eq!(r.to_string(), "x0[30] y[300] y[3030]^-1 y[3033]");
        same_action(&l, &r);
        let bad = Relation::Rearrange {
            t: fw(4, "30"),
            i: 0,
            alpha: fw(4, "3"),
            inverse: false,
        };
        assert!(matches!(
            relation_oracle(a4, &bad),
            Err(Error::UndefinedPrefixAction { .. })
        ));
        assert!(relation_oracle(a, &Relation::Commute { s: fw(2, "01"), t: fw(2, "010") }).is_err());
    }

    #[test]
    fn simple_moves() {
        let w = parse_word("y[10] y[10]^-1", Some(2)).unwrap();
        assert!(cancellation_move(&w, 0).unwrap().is_empty());
        let w = parse_word("y[10] y[100]", Some(2)).unwrap();
        assert!(commuting_move(&w, 0).is_err());
        let w = parse_word("y[30]^-1", Some(4)).unwrap();
        let e = expansion_move(&w, 0).unwrap();
        assert_eq!(e.to_string(), "x0[30]^-1 y[3000]^-1 y[3003] y[303]^-1");
        same_action(&w, &e);
        let w = parse_word("y[30] x0", Some(4)).unwrap();
        let r = rearranging_move(&w, 0).unwrap();
        same_action(&w, &r);
    }

    #[test]
    fn er_move_blocked_then_unblocked() {
        let w = parse_word("y[300] y[30]", Some(4)).unwrap();
        let form = StandardForm::new(
            crate::thompson::TreePair::identity(w.alphabet()),
            vec![
                YFactor::new(fw(4, "300"), 1).unwrap(),
                YFactor::new(fw(4, "30"), 1).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(er_move(&form, 1), Err(Error::BlockedErMove { .. })));
        let first = er_move(&form, 0).unwrap();
        assert!(first.is_weak_standard());
        let idx = first.ys.iter().position(|y| y.s.letters() == [3, 0]).unwrap();
        let second = er_move(&first, idx).unwrap();
        assert!(second.is_weak_standard());
        for x in points(4) {
            assert_eq!(evaluate_form(&form, &x).unwrap(), evaluate_form(&second, &x).unwrap());
        }
    }

    #[test]
    fn contraction_examples() {
        let n = 4;
        let form = crate::lodha_moore::test_form(n, &[("300", 1), ("3030", -1), ("3031", 1), ("3033", 1), ("30", 1)]);
        assert!(has_potential_cancellation(&form).is_none());
        let (site, kind) = find_potential_contraction(&form).unwrap();
        assert_eq!(site.letters(), [3, 0]);
        assert_eq!(kind, ContractionKind::Type1);
        let c = contraction_move(&form, &site).unwrap();
        let ys: Vec<String> = c.ys.iter().map(|y| y.to_string()).collect();
        assert_eq!(ys, ["y[301]", "y[30]^2"]);
        assert_eq!(c.f, x0_at(form.alphabet(), &[3, 0], YSign::Neg));

        let w = parse_word("y[3000]^-1 y[3003] y[303]^-1", Some(n)).unwrap();
        let form = crate::lodha_moore::standardize(&w, 0).unwrap();
        let (site, kind) = find_potential_contraction(&form).unwrap();
        assert_eq!((site.letters(), kind), (&[3u8, 0][..], ContractionKind::Type2));
        let c = contraction_move(&form, &site).unwrap();
        assert_eq!(c.ys.len(), 1);
        for x in points(n) {
            assert_eq!(evaluate_form(&form, &x).unwrap(), evaluate_form(&c, &x).unwrap());
        }

        let w = parse_word("y[300] y[3030]^-1 y[3033] y[303]", Some(n)).unwrap();
        let form = crate::lodha_moore::standardize(&w, 0).unwrap();
        assert!(find_potential_contraction(&form).is_none());
        assert!(contraction_move(&form, &fw(n, "30")).is_err());
    }

    #[test]
    fn form_level_pcs() {
        let form = |s: &str| crate::lodha_moore::standardize(&parse_word(s, Some(3)).unwrap(), 0).unwrap();
        assert!(has_potential_cancellation(&form("y[2002] y[20]")).is_some());
        assert!(has_potential_cancellation(&form("y[2000]^-1 y[20]")).is_some());
        assert!(has_potential_cancellation(&form("y[2011] y[20]")).is_none());
    }

    fn letter(n: usize) -> impl Strategy<Value = String> {
        let top = n - 1;
        prop_oneof![
            (0..n - 1).prop_map(|i| format!("x{i}")),
            Just(format!("x0[{top}]")),
            Just(format!("x0[{top}0]")),
            Just(format!("y[{top}0]")),
            Just(format!("y[0{top}]")),
            Just(format!("y[{top}0{top}0]")),
            Just(format!("y[{top}00]")),
        ]
        .prop_flat_map(|l| prop_oneof![Just(l.clone()), Just(format!("{l}^-1"))])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn moves_are_sound(n in 2usize..6, pos in 0usize..12, ls in proptest::collection::vec(letter(5), 1..10)) {
            // letters built for n=5; keep those valid for n
            let text: Vec<String> = ls.into_iter().map(|l| l.replace('4', &(n - 1).to_string())).collect();
            let Ok(w) = parse_word(&text.join(" "), Some(n)) else { return Ok(()); };
            let p = pos % w.len();
            let cands = [
                rearranging_move(&w, p),
                expansion_move(&w, p),
                commuting_move(&w, p),
                cancellation_move(&w, p),
            ];
            for v in cands.into_iter().flatten() {
                same_action(&w, &v);
                for l in v.letters() {
                    if let Letter::Y { s, .. } = l {
                        prop_assert!(check_y_index(w.alphabet(), s.letters()).is_ok());
                    }
                }
            }
            let form = crate::lodha_moore::standardize(&w, 0).unwrap();
            for k in 0..form.ys.len() {
                if let Ok(g) = er_move(&form, k) {
                    prop_assert!(g.is_weak_standard());
                    for x in points(n) {
                        prop_assert_eq!(evaluate_form(&form, &x).unwrap(), evaluate_form(&g, &x).unwrap());
                    }
                }
            }
        }
    }
}
