//! Points and cones of the n-ary Cantor space.
//!
//! Finite words name cones; eventually periodic words are the points we can
//! compute with exactly. Every word carries its [`Alphabet`], and operations on
//! two words reject mismatched arities.
//!
//! Text syntax: for arity at most 10 a word is a string of decimal digits
//! (`ε` or the empty string for the empty word); for larger arities it is a
//! bracketed comma list such as `[3,11,0]`. Eventually periodic words are
//! written `pre(per)*`, e.g. `30(12)*`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(arity: usize) -> Result<Self> {
        if !(2..=255).contains(&arity) {
            return Err(Error::InvalidArity(arity));
        }
        Ok(Alphabet(arity as u8))
    }

    pub fn arity(self) -> usize {
        self.0 as usize
    }

    /// The largest letter, `n - 1`.
    pub fn top(self) -> u8 {
        self.0 - 1
    }

    /// Letters strictly between `0` and `n - 1`.
    pub fn is_middle(self, letter: u8) -> bool {
        letter != 0 && letter != self.top()
    }

    pub fn check(self, letters: &[u8]) -> Result<()> {
        match letters.iter().find(|&&c| c >= self.0) {
            Some(&c) => Err(Error::LetterOutOfRange {
                letter: c as usize,
                arity: self.arity(),
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn same_as(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.arity(),
                right: other.arity(),
            })
        }
    }

    /// Whether words over this alphabet are printed as bare digit strings.
    pub(crate) fn uses_digits(self) -> bool {
        self.0 <= 10
    }

    pub(crate) fn format_letters(self, letters: &[u8]) -> String {
        if self.uses_digits() {
            if letters.is_empty() {
                "ε".to_string()
            } else {
                letters.iter().map(|&c| char::from(b'0' + c)).collect()
            }
        } else {
            let inner: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
            format!("[{}]", inner.join(","))
        }
    }

    /// Parses letters in this alphabet's syntax. Digit strings are accepted
    /// for small arities, bracketed lists always.
    pub(crate) fn parse_letters(self, text: &str, offset: usize) -> Result<Vec<u8>> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        let letters = if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::syntax(offset, "unterminated '['"))?;
            let mut out = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let v: usize = part
                    .parse()
                    .map_err(|_| Error::syntax(offset, format!("bad letter {part:?}")))?;
                if v >= self.arity() {
                    return Err(Error::LetterOutOfRange {
                        letter: v,
                        arity: self.arity(),
                    });
                }
                out.push(v as u8);
            }
            out
        } else if self.uses_digits() {
            let mut out = Vec::with_capacity(text.len());
            for (i, ch) in text.char_indices() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::syntax(offset + i, format!("unexpected {ch:?}")))?;
                out.push(d as u8);
            }
            self.check(&out)?;
            out
        } else {
            return Err(Error::syntax(
                offset,
                "words over arity > 10 must be bracketed lists",
            ));
        };
        Ok(letters)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<u8>) -> Result<Self> {
        alphabet.check(&letters)?;
        Ok(FiniteWord { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let letters = alphabet.parse_letters(text, 0)?;
        Ok(FiniteWord { alphabet, letters })
    }

    pub(crate) fn from_trusted(alphabet: Alphabet, letters: Vec<u8>) -> Self {
        debug_assert!(alphabet.check(&letters).is_ok());
        FiniteWord { alphabet, letters }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        self.alphabet.same_as(other.alphabet)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FiniteWord {
            alphabet: self.alphabet,
            letters,
        })
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        other.letters.starts_with(&self.letters)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_letters(&self.letters))
    }
}

/// How two finite words sit relative to each other in the tree of cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixRelation {
    /// The first word is a proper prefix of the second.
    ProperPrefix,
    Equal,
    /// The first word properly extends the second.
    Extends,
    Independent,
}

pub(crate) fn relation_raw(s: &[u8], t: &[u8]) -> PrefixRelation {
    let common = s.iter().zip(t).take_while(|(a, b)| a == b).count();
    if common == s.len() && common == t.len() {
        PrefixRelation::Equal
    } else if common == s.len() {
        PrefixRelation::ProperPrefix
    } else if common == t.len() {
        PrefixRelation::Extends
    } else {
        PrefixRelation::Independent
    }
}

pub fn prefix_relation(s: &FiniteWord, t: &FiniteWord) -> Result<PrefixRelation> {
    s.alphabet.same_as(t.alphabet)?;
    Ok(relation_raw(&s.letters, &t.letters))
}

pub(crate) fn is_proper_prefix(s: &[u8], t: &[u8]) -> bool {
    s.len() < t.len() && t.starts_with(s)
}

pub(crate) fn independent(s: &[u8], t: &[u8]) -> bool {
    relation_raw(s, t) == PrefixRelation::Independent
}

/// Total order on finite words in which extensions come before their
/// prefixes and independent words compare at their first difference.
///
/// This is lexicographic order after appending a letter larger than every
/// letter of the alphabet.
pub(crate) fn std_cmp(s: &[u8], t: &[u8]) -> Ordering {
    for (a, b) in s.iter().zip(t) {
        match a.cmp(b) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    t.len().cmp(&s.len())
}

/// `s < t` in the index order: `t` is a proper prefix of `s`, or the words
/// are independent and `s` is smaller at the first difference.
pub fn word_lt(s: &FiniteWord, t: &FiniteWord) -> Result<bool> {
    s.alphabet.same_as(t.alphabet)?;
    match std_cmp(&s.letters, &t.letters) {
        Ordering::Equal => Err(Error::EqualWords(s.to_string())),
        ord => Ok(ord == Ordering::Less),
    }
}

pub fn digit_sum_mod(s: &FiniteWord, modulus: usize) -> usize {
    digit_sum_mod_raw(&s.letters, modulus)
}

pub(crate) fn digit_sum_mod_raw(s: &[u8], modulus: usize) -> usize {
    s.iter().map(|&c| c as usize).sum::<usize>() % modulus
}

/// A point `pre · per · per · …` of the Cantor space, kept canonical: the
/// period is primitive and the preperiod is as short as possible, so equal
/// points have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvPeriodicWord {
    alphabet: Alphabet,
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl EvPeriodicWord {
    pub fn new(pre: &FiniteWord, per: &FiniteWord) -> Result<Self> {
        canonicalize_ep(pre, per)
    }

    pub fn from_letters(alphabet: Alphabet, pre: Vec<u8>, per: Vec<u8>) -> Result<Self> {
        alphabet.check(&pre)?;
        alphabet.check(&per)?;
        if per.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self::canonical(alphabet, pre, per))
    }

    /// The constant point `c c c …`.
    pub fn constant(alphabet: Alphabet, letter: u8) -> Result<Self> {
        Self::from_letters(alphabet, Vec::new(), vec![letter])
    }

    pub(crate) fn canonical(alphabet: Alphabet, mut pre: Vec<u8>, mut per: Vec<u8>) -> Self {
        debug_assert!(!per.is_empty());
        let p = primitive_root_len(&per);
        per.truncate(p);
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        EvPeriodicWord { alphabet, pre, per }
    }

    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let open = text
            .find('(')
            .ok_or_else(|| Error::syntax(0, "expected pre(per)*"))?;
        let close = text
            .rfind(")*")
            .ok_or_else(|| Error::syntax(text.len(), "expected ')*' at the end"))?;
        if close + 2 != text.len() || close < open {
            return Err(Error::syntax(close, "expected ')*' at the end"));
        }
        let pre = alphabet.parse_letters(&text[..open], 0)?;
        let per = alphabet.parse_letters(&text[open + 1..close], open + 1)?;
        if per.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self::canonical(alphabet, pre, per))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn preperiod(&self) -> FiniteWord {
        FiniteWord::from_trusted(self.alphabet, self.pre.clone())
    }

    pub fn period(&self) -> FiniteWord {
        FiniteWord::from_trusted(self.alphabet, self.per.clone())
    }

    pub(crate) fn pre_letters(&self) -> &[u8] {
        &self.pre
    }

    pub(crate) fn per_letters(&self) -> &[u8] {
        &self.per
    }

    pub fn letter_at(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn expand(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.letter_at(i)).collect()
    }

    pub fn has_prefix(&self, prefix: &[u8]) -> bool {
        prefix.iter().enumerate().all(|(i, &c)| self.letter_at(i) == c)
    }

    pub fn prepend(&self, prefix: &[u8]) -> Self {
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&self.pre);
        Self::canonical(self.alphabet, pre, self.per.clone())
    }

    /// Drops the first `k` letters.
    pub fn suffix(&self, k: usize) -> Self {
        if k <= self.pre.len() {
            return Self::canonical(self.alphabet, self.pre[k..].to_vec(), self.per.clone());
        }
        let shift = (k - self.pre.len()) % self.per.len();
        let mut per = self.per.clone();
        per.rotate_left(shift);
        Self::canonical(self.alphabet, Vec::new(), per)
    }

    pub fn strip_prefix(&self, prefix: &[u8]) -> Option<Self> {
        self.has_prefix(prefix).then(|| self.suffix(prefix.len()))
    }

    /// Whether any letter of the point lies strictly between `0` and `n - 1`.
    pub fn has_middle_letter(&self) -> bool {
        self.pre
            .iter()
            .chain(&self.per)
            .any(|&c| self.alphabet.is_middle(c))
    }

    /// Length after which two points with these shapes must have differed.
    pub(crate) fn comparison_horizon(&self, other: &Self) -> usize {
        let l = lcm(self.per.len(), other.per.len());
        self.pre.len().max(other.pre.len()) + l
    }
}

impl fmt::Display for EvPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = if self.pre.is_empty() {
            String::new()
        } else {
            self.alphabet.format_letters(&self.pre)
        };
        write!(f, "{pre}({})*", self.alphabet.format_letters(&self.per))
    }
}

pub fn canonicalize_ep(pre: &FiniteWord, per: &FiniteWord) -> Result<EvPeriodicWord> {
    pre.alphabet.same_as(per.alphabet)?;
    if per.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    Ok(EvPeriodicWord::canonical(
        pre.alphabet,
        pre.letters.clone(),
        per.letters.clone(),
    ))
}

/// Lexicographic order on points.
pub fn ep_point_lt(x: &EvPeriodicWord, y: &EvPeriodicWord) -> Result<bool> {
    x.alphabet.same_as(y.alphabet)?;
    if x == y {
        return Err(Error::EqualPoints(x.to_string()));
    }
    let horizon = x.comparison_horizon(y);
    for i in 0..horizon {
        let (a, b) = (x.letter_at(i), y.letter_at(i));
        if a != b {
            return Ok(a < b);
        }
    }
    Err(Error::InvariantBreach(format!(
        "distinct canonical points {x} and {y} agree up to the horizon"
    )))
}

fn primitive_root_len(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| w[i] == w[i - d]))
        .unwrap_or(n)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> FiniteWord {
        FiniteWord::parse(Alphabet::new(n).unwrap(), s).unwrap()
    }

    fn ep(n: usize, s: &str) -> EvPeriodicWord {
        EvPeriodicWord::parse(Alphabet::new(n).unwrap(), s).unwrap()
    }

    #[test]
    fn prefix_relation_examples() {
        assert_eq!(
            prefix_relation(&w(3, ""), &w(3, "01")).unwrap(),
            PrefixRelation::ProperPrefix
        );
        assert_eq!(
            prefix_relation(&w(3, "01"), &w(3, "01")).unwrap(),
            PrefixRelation::Equal
        );
        assert_eq!(
            prefix_relation(&w(3, "02"), &w(3, "01")).unwrap(),
            PrefixRelation::Independent
        );
        assert_eq!(
            prefix_relation(&w(3, "012"), &w(3, "01")).unwrap(),
            PrefixRelation::Extends
        );
        assert!(matches!(
            prefix_relation(&w(3, "0"), &w(4, "0")),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn word_order_examples() {
        assert!(word_lt(&w(2, "01"), &w(2, "0")).unwrap());
        assert!(word_lt(&w(2, "0"), &w(2, "1")).unwrap());
        assert!(!word_lt(&w(2, "1"), &w(2, "01")).unwrap());
        assert!(matches!(
            word_lt(&w(2, "10"), &w(2, "10")),
            Err(Error::EqualWords(_))
        ));
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum_mod(&w(4, ""), 3), 0);
        assert_eq!(digit_sum_mod(&w(4, "30"), 3), 0);
        assert_eq!(digit_sum_mod(&w(4, "21"), 3), 0);
        assert_eq!(digit_sum_mod(&w(4, "2"), 3), 2);
    }

    #[test]
    fn canonical_forms() {
        let a = Alphabet::new(2).unwrap();
        let x = canonicalize_ep(&w(2, "0"), &w(2, "11")).unwrap();
        assert_eq!(x.preperiod(), w(2, "0"));
        assert_eq!(x.period(), w(2, "1"));
        let y = canonicalize_ep(&w(2, "01"), &w(2, "0")).unwrap();
        assert_eq!(y.preperiod(), w(2, "01"));
        assert_eq!(y.period(), w(2, "0"));
        let z = canonicalize_ep(&w(2, ""), &w(2, "01")).unwrap();
        assert_eq!(z.preperiod(), FiniteWord::empty(a));
        assert_eq!(z.period(), w(2, "01"));
        // 1 0 1 0 ... written with a redundant preperiod
        let r = canonicalize_ep(&w(2, "1010"), &w(2, "1010")).unwrap();
        assert_eq!(r, z.prepend(&[1]));
        assert_eq!(r.to_string(), "(10)*");
        assert!(matches!(
            canonicalize_ep(&w(2, "0"), &w(2, "")),
            Err(Error::EmptyPeriod)
        ));
    }

    #[test]
    fn point_order_examples() {
        for n in 2..6 {
            let a = Alphabet::new(n).unwrap();
            let zero = EvPeriodicWord::constant(a, 0).unwrap();
            let top = EvPeriodicWord::constant(a, a.top()).unwrap();
            assert!(ep_point_lt(&zero, &top).unwrap());
            let l = top.prepend(&[0]);
            let r = zero.prepend(&[a.top()]);
            assert!(ep_point_lt(&l, &r).unwrap());
        }
        // 010101… vs 010000…
        assert!(!ep_point_lt(&ep(2, "0(10)*"), &ep(2, "01(0)*")).unwrap());
        assert!(ep_point_lt(&ep(2, "(0)*"), &ep(2, "(0)*")).is_err());
    }

    #[test]
    fn large_arity_syntax() {
        let a = Alphabet::new(12).unwrap();
        let s = FiniteWord::parse(a, "[11,0,3]").unwrap();
        assert_eq!(s.letters(), &[11, 0, 3]);
        assert_eq!(s.to_string(), "[11,0,3]");
        let x = EvPeriodicWord::parse(a, "[1]([11,2])*").unwrap();
        assert_eq!(x.to_string(), "[1]([11,2])*");
        assert!(FiniteWord::parse(a, "12").is_err());
    }

    #[test]
    fn suffix_and_prefix_helpers() {
        let x = ep(3, "21(012)*");
        assert_eq!(x.suffix(1), ep(3, "1(012)*"));
        assert_eq!(x.suffix(4), ep(3, "(201)*"));
        assert!(x.has_prefix(&[2, 1, 0, 1]));
        assert_eq!(x.strip_prefix(&[2, 1]).unwrap(), ep(3, "(012)*"));
        assert!(x.strip_prefix(&[1]).is_none());
        assert!(x.has_middle_letter());
        assert!(!ep(3, "20(2)*").has_middle_letter());
    }
}
