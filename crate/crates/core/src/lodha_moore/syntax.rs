//! Text syntax for words: `n=3 x0 x1[21]^-2 y[10] X4^2`.
//!
//! `x{i}[α]` is `x_{i[α]}`, `X{k}` is the k-th generator of the X-indexed
//! family, `y[s]` is `y_s`, and `^k` repeats a letter (negative k inverts).
//! Indices are digit strings for arity ≤ 10 and comma lists otherwise.
//! `1` and `ε` denote the empty word.

use crate::cantor::{Alphabet, FiniteWord};
use crate::error::{Error, Result};
use crate::thompson::{to_x_normal_form, TreePair, XGenerator};
use crate::transducer::YSign;

use super::{GroupWord, Letter};

pub(crate) fn index_text(w: &FiniteWord) -> String {
    let a = w.alphabet();
    if a.uses_digits() {
        w.letters().iter().map(|&c| char::from(b'0' + c)).collect()
    } else {
        let parts: Vec<String> = w.letters().iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

/// `x{i}[(n-1)^j]^e` syllables of the X normal form of `f`.
pub(crate) fn x_syllables(f: &TreePair) -> Vec<String> {
    let a = f.alphabet();
    to_x_normal_form(f)
        .syllables()
        .into_iter()
        .map(|(k, e)| {
            let g = XGenerator::indexed(a, k);
            let mut s = format!("x{}", g.i);
            if !g.alpha.is_empty() {
                s.push_str(&format!("[{}]", index_text(&g.alpha)));
            }
            if e != 1 {
                s.push_str(&format!("^{e}"));
            }
            s
        })
        .collect()
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn skip_space(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '·' || c == '*') {
            self.bump();
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::syntax(start, "expected a number"))
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let v = self.number()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('^') {
            self.signed()
        } else {
            Ok(1)
        }
    }

    fn bracket(&mut self, alphabet: Alphabet) -> Result<FiniteWord> {
        let start = self.pos;
        if !self.eat('[') {
            return Err(Error::syntax(start, "expected '['"));
        }
        let close = self.text[self.pos..]
            .find(']')
            .ok_or_else(|| Error::syntax(start, "unterminated '['"))?
            + self.pos;
        let inner = &self.text[self.pos..close];
        let letters = if alphabet.uses_digits() {
            alphabet.parse_letters(inner, self.pos)?
        } else {
            alphabet.parse_letters(&format!("[{inner}]"), self.pos)?
        };
        self.pos = close + 1;
        Ok(FiniteWord::from_trusted(alphabet, letters))
    }
}

fn repeat(letter: Letter, k: i64, out: &mut Vec<Letter>) {
    let l = if k < 0 { letter.inverse() } else { letter };
    for _ in 0..k.unsigned_abs() {
        out.push(l.clone());
    }
}

/// Parses a word. The arity comes from an `n=<k>` header or from `arity`;
/// when both are present they must agree.
pub fn parse_word(text: &str, arity: Option<usize>) -> Result<GroupWord> {
    let mut cur = Cursor { text, pos: 0 };
    cur.skip_space();
    let mut n = arity;
    if cur.text[cur.pos..].starts_with("n=") {
        cur.pos += 2;
        let at = cur.pos;
        let header = cur.number()?;
        if let Some(given) = arity {
            if given != header {
                return Err(Error::syntax(at, format!("header says n={header}, expected n={given}")));
            }
        }
        n = Some(header);
        cur.skip_space();
        if cur.eat(':') || cur.eat(';') || cur.eat(',') {
            cur.skip_space();
        }
    }
    let n = n.ok_or_else(|| Error::syntax(0, "arity unknown: pass n or start with n=<arity>"))?;
    let alphabet = Alphabet::new(n)?;
    let mut letters = Vec::new();
    loop {
        cur.skip_space();
        let start = cur.pos;
        let Some(c) = cur.bump() else { break };
        match c {
            'x' => {
                let i = cur.number()?;
                let alpha = if cur.peek() == Some('[') {
                    cur.bracket(alphabet)?
                } else {
                    FiniteWord::empty(alphabet)
                };
                let gen = XGenerator::new(i, alpha)?;
                let k = cur.exponent()?;
                repeat(Letter::x(gen, false), k, &mut letters);
            }
            'X' => {
                let k = cur.number()?;
                let gen = XGenerator::indexed(alphabet, k);
                let e = cur.exponent()?;
                repeat(Letter::x(gen, false), e, &mut letters);
            }
            'y' => {
                let s = cur.bracket(alphabet)?;
                let letter = Letter::y(s, YSign::Pos)?;
                let k = cur.exponent()?;
                repeat(letter, k, &mut letters);
            }
            '1' | 'ε' => {
                if matches!(cur.peek(), Some(d) if !d.is_whitespace()) {
                    return Err(Error::syntax(start, "'1' must stand alone"));
                }
            }
            other => {
                return Err(Error::syntax(start, format!("unexpected {other:?}")));
            }
        }
    }
    GroupWord::new(alphabet, letters)
}
