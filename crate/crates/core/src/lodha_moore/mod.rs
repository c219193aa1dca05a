//! Elements of G₀(n) as words over the generators `x_{i[α]}` and `y_s`, and
//! their unique normal forms.

mod engine;
mod evaluate;
mod moves;
mod syntax;

use std::cmp::Ordering;
use std::fmt;

use crate::cantor::{digit_sum_mod_raw, std_cmp, Alphabet, FiniteWord};
use crate::error::{Error, Result, YViolation};
use crate::thompson::{to_x_normal_form, TreePair, XGenerator, XNormalForm};
use crate::transducer::YSign;

pub use engine::{
    normalize, remove_potential_cancellations, remove_potential_contractions, standardize,
};
pub use evaluate::{
    calculation_of, calculation_of_finite, evaluate_form, evaluate_word, exponent_of_element_at,
};
pub use moves::{
    cancellation_move, commuting_move, contraction_move, er_move, expansion_move,
    find_potential_contraction, has_potential_cancellation, rearranging_move, relation_oracle,
    AdjacentPair, ContractionKind, Relation,
};
pub use syntax::parse_word;

/// Checks the three clauses of membership in `Y(n)`.
pub fn check_y_index(alphabet: Alphabet, s: &[u8]) -> Result<()> {
    alphabet.check(s)?;
    let violation = if s.is_empty() {
        Some(YViolation::Empty)
    } else if s.iter().all(|&c| c == 0) {
        Some(YViolation::AllZeros)
    } else if s.iter().all(|&c| c == alphabet.top()) {
        Some(YViolation::AllTop)
    } else {
        let modulus = alphabet.arity() - 1;
        let sum_mod = digit_sum_mod_raw(s, modulus);
        (sum_mod != 0).then_some(YViolation::DigitSum { sum_mod, modulus })
    };
    match violation {
        Some(reason) => Err(Error::NotInY {
            word: alphabet.format_letters(s),
            reason,
        }),
        None => Ok(()),
    }
}

/// `y_s^t` with `y_s ∈ Y(n)` and `t ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YFactor {
    s: FiniteWord,
    t: i64,
}

impl YFactor {
    pub fn new(s: FiniteWord, t: i64) -> Result<Self> {
        check_y_index(s.alphabet(), s.letters())?;
        if t == 0 {
            return Err(Error::SideCondition("y exponent must be nonzero".into()));
        }
        Ok(YFactor { s, t })
    }

    /// `y_s^t` for any nonempty `s`. The map is a homeomorphism for every
    /// such `s`, but only Y(n) indices are generators of G₀(n); forms built
    /// from other indices normalize and evaluate all the same.
    pub fn unrestricted(s: FiniteWord, t: i64) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::NotInY {
                word: s.to_string(),
                reason: YViolation::Empty,
            });
        }
        if t == 0 {
            return Err(Error::SideCondition("y exponent must be nonzero".into()));
        }
        Ok(YFactor { s, t })
    }

    pub(crate) fn from_trusted(alphabet: Alphabet, s: Vec<u8>, t: i64) -> Self {
        debug_assert!(!s.is_empty() && t != 0);
        YFactor {
            s: FiniteWord::from_trusted(alphabet, s),
            t,
        }
    }

    pub fn index(&self) -> &FiniteWord {
        &self.s
    }

    pub fn exponent(&self) -> i64 {
        self.t
    }

    pub fn sign(&self) -> YSign {
        YSign::of(self.t).expect("nonzero")
    }
}

impl fmt::Display for YFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y[{}]", syntax::index_text(&self.s))?;
        if self.t != 1 {
            write!(f, "^{}", self.t)?;
        }
        Ok(())
    }
}

/// A single generator letter or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X { gen: XGenerator, inverse: bool },
    Y { s: FiniteWord, sign: YSign },
}

impl Letter {
    pub fn x(gen: XGenerator, inverse: bool) -> Self {
        Letter::X { gen, inverse }
    }

    pub fn y(s: FiniteWord, sign: YSign) -> Result<Self> {
        check_y_index(s.alphabet(), s.letters())?;
        Ok(Letter::Y { s, sign })
    }

    pub fn inverse(&self) -> Letter {
        match self {
            Letter::X { gen, inverse } => Letter::X {
                gen: gen.clone(),
                inverse: !inverse,
            },
            Letter::Y { s, sign } => Letter::Y {
                s: s.clone(),
                sign: sign.flip(),
            },
        }
    }

    pub(crate) fn tree_pair(&self) -> Option<TreePair> {
        match self {
            Letter::X { gen, inverse } => {
                let t = gen.tree_pair();
                Some(if *inverse { t.inverse() } else { t })
            }
            Letter::Y { .. } => None,
        }
    }

    fn alphabet(&self) -> Alphabet {
        match self {
            Letter::X { gen, .. } => gen.alpha.alphabet(),
            Letter::Y { s, .. } => s.alphabet(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X { gen, inverse } => {
                write!(f, "x{}", gen.i)?;
                if !gen.alpha.is_empty() {
                    write!(f, "[{}]", syntax::index_text(&gen.alpha))?;
                }
                if *inverse {
                    f.write_str("^-1")?;
                }
                Ok(())
            }
            Letter::Y { s, sign } => {
                write!(f, "y[{}]", syntax::index_text(s))?;
                if *sign == YSign::Neg {
                    f.write_str("^-1")?;
                }
                Ok(())
            }
        }
    }
}

/// A word over `Z(n)^{±1}`, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            alphabet.same_as(l.alphabet())?;
        }
        Ok(GroupWord { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        GroupWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        self.alphabet.same_as(other.alphabet)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GroupWord {
            alphabet: self.alphabet,
            letters,
        })
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    pub(crate) fn splice(&self, range: std::ops::Range<usize>, with: Vec<Letter>) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.splice(range, with);
        GroupWord {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// The word spelling the X normal form of `f`.
    pub fn from_tree_pair(f: &TreePair) -> GroupWord {
        let alphabet = f.alphabet();
        let mut letters = Vec::new();
        for (k, e) in to_x_normal_form(f).syllables() {
            let gen = XGenerator::indexed(alphabet, k);
            for _ in 0..e.unsigned_abs() {
                letters.push(Letter::x(gen.clone(), e < 0));
            }
        }
        GroupWord { alphabet, letters }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `f · y_{s_1}^{t_1} ⋯ y_{s_m}^{t_m}` with `f ∈ F(n)`.
///
/// Standard when the indices strictly increase in the index order; weak
/// standard when no index is preceded by one of its proper prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardForm {
    pub f: TreePair,
    pub ys: Vec<YFactor>,
}

impl StandardForm {
    pub fn new(f: TreePair, ys: Vec<YFactor>) -> Result<Self> {
        for y in &ys {
            f.alphabet().same_as(y.s.alphabet())?;
        }
        Ok(StandardForm { f, ys })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.f.alphabet()
    }

    pub fn is_standard(&self) -> bool {
        self.ys
            .windows(2)
            .all(|w| std_cmp(w[0].s.letters(), w[1].s.letters()) == Ordering::Less)
    }

    pub fn is_weak_standard(&self) -> bool {
        self.ys.iter().enumerate().all(|(i, a)| {
            self.ys[i + 1..].iter().all(|b| {
                !crate::cantor::is_proper_prefix(a.s.letters(), b.s.letters())
            })
        })
    }

    /// Minimum index length, `None` standing for ∞.
    pub fn depth(&self) -> Option<usize> {
        self.ys.iter().map(|y| y.s.len()).min()
    }

    pub fn to_word(&self) -> GroupWord {
        let mut w = GroupWord::from_tree_pair(&self.f);
        for y in &self.ys {
            for _ in 0..y.t.unsigned_abs() {
                w.letters.push(Letter::Y {
                    s: y.s.clone(),
                    sign: y.sign(),
                });
            }
        }
        w
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = syntax::x_syllables(&self.f);
        parts.extend(self.ys.iter().map(|y| y.to_string()));
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" "))
    }
}

/// The unique normal form of an element of G₀(n). Equality of elements is
/// structural equality of normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    form: StandardForm,
}

impl NormalForm {
    pub fn identity(alphabet: Alphabet) -> Self {
        NormalForm {
            form: StandardForm {
                f: TreePair::identity(alphabet),
                ys: Vec::new(),
            },
        }
    }

    pub(crate) fn from_form_unchecked(form: StandardForm) -> Self {
        NormalForm { form }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.form.alphabet()
    }

    pub fn form(&self) -> &StandardForm {
        &self.form
    }

    pub fn f(&self) -> &TreePair {
        &self.form.f
    }

    pub fn ys(&self) -> &[YFactor] {
        &self.form.ys
    }

    pub fn x_normal_form(&self) -> XNormalForm {
        to_x_normal_form(&self.form.f)
    }

    pub fn is_identity(&self) -> bool {
        self.form.f.is_identity() && self.form.ys.is_empty()
    }

    pub fn to_word(&self) -> GroupWord {
        self.form.to_word()
    }

    pub fn multiply(&self, other: &NormalForm) -> Result<NormalForm> {
        engine::multiply(self, other)
    }

    pub fn inverse(&self) -> NormalForm {
        engine::invert(self).expect("inverting a normal form stays within the step budget")
    }

    pub fn pow(&self, k: i64) -> Result<NormalForm> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = NormalForm::identity(self.alphabet());
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    /// Re-checks the three defining clauses without trusting the pipeline.
    pub fn validate(&self) -> Result<()> {
        let form = &self.form;
        if !form.is_standard() {
            return Err(Error::InvariantBreach(format!("{form} is not standard")));
        }
        if let Some(p) = has_potential_cancellation(form) {
            return Err(Error::InvariantBreach(format!(
                "{form} has a potential cancellation at {:?}",
                p
            )));
        }
        if let Some((s, _)) = find_potential_contraction(form) {
            return Err(Error::InvariantBreach(format!(
                "{form} has a potential contraction at {s}"
            )));
        }
        let arity = self.alphabet().arity();
        if !self.x_normal_form().is_valid(arity) {
            return Err(Error::InvariantBreach(format!(
                "F-part of {form} is not an X normal form"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

/// The `n + 1` generators `x_0, …, x_{n-2}, x_{0[n-1]}, y_{(n-1)0}`.
pub fn generators(alphabet: Alphabet) -> Vec<NormalForm> {
    let top = alphabet.top();
    let n = alphabet.arity();
    let mut out: Vec<NormalForm> = (0..n - 1)
        .map(|i| XGenerator::new(i, FiniteWord::empty(alphabet)).expect("in range"))
        .chain(std::iter::once(
            XGenerator::new(0, FiniteWord::from_trusted(alphabet, vec![top])).expect("in range"),
        ))
        .map(|g| NormalForm::from_form_unchecked(StandardForm { f: g.tree_pair(), ys: Vec::new() }))
        .collect();
    out.push(NormalForm::from_form_unchecked(StandardForm {
        f: TreePair::identity(alphabet),
        ys: vec![YFactor::from_trusted(alphabet, vec![top, 0], 1)],
    }));
    out
}

#[cfg(test)]
pub(crate) fn test_form(n: usize, ys: &[(&str, i64)]) -> StandardForm {
    let a = Alphabet::new(n).unwrap();
    let ys = ys
        .iter()
        .map(|(s, t)| YFactor::unrestricted(FiniteWord::parse(a, s).unwrap(), *t).unwrap())
        .collect();
    StandardForm::new(TreePair::identity(a), ys).unwrap()
}

pub fn equals(a: &NormalForm, b: &NormalForm) -> Result<bool> {
    a.alphabet().same_as(b.alphabet())?;
    Ok(a == b)
}
