//! The homeomorphism `y` as a finite-state transducer, and calculations:
//! words over the letters and `y^{±1}` that record deferred applications of `y`.

use std::collections::HashMap;
use std::fmt;

use crate::cantor::{Alphabet, EvPeriodicWord, FiniteWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YSign {
    Pos,
    Neg,
}

impl YSign {
    pub fn flip(self) -> Self {
        match self {
            YSign::Pos => YSign::Neg,
            YSign::Neg => YSign::Pos,
        }
    }

    pub fn of(exponent: i64) -> Option<Self> {
        match exponent.signum() {
            1 => Some(YSign::Pos),
            -1 => Some(YSign::Neg),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            YSign::Pos => 1,
            YSign::Neg => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransducerState {
    Y(YSign),
    /// `y` has vanished; the rest of the input is copied verbatim.
    Copy,
    /// A rule that inspects two letters has seen its first one.
    Buffered(YSign, u8),
}

/// One rule application: what was emitted and how many letters were read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub emitted: Vec<u8>,
    pub consumed: usize,
    pub next: TransducerState,
}

fn needs_lookahead(alphabet: Alphabet, sign: YSign, first: u8) -> bool {
    match sign {
        YSign::Pos => first == 0,
        YSign::Neg => first == alphabet.top(),
    }
}

/// Applies the rule of `y^sign` whose left side starts with `first`.
pub fn y_step(alphabet: Alphabet, sign: YSign, first: u8, second: Option<u8>) -> Result<Step> {
    alphabet.check(&[first])?;
    if let Some(c) = second {
        alphabet.check(&[c])?;
    }
    let top = alphabet.top();
    let one = |emitted: Vec<u8>, next| Step {
        emitted,
        consumed: 1,
        next,
    };
    let two = |emitted: Vec<u8>, next| Step {
        emitted,
        consumed: 2,
        next,
    };
    if needs_lookahead(alphabet, sign, first) {
        let b = second.ok_or(Error::InsufficientLookahead)?;
        let step = match sign {
            YSign::Pos if b == 0 => two(vec![0], TransducerState::Y(YSign::Pos)),
            YSign::Pos if b == top => two(vec![top, 0], TransducerState::Y(YSign::Neg)),
            YSign::Neg if b == 0 => two(vec![0, top], TransducerState::Y(YSign::Pos)),
            YSign::Neg if b == top => two(vec![top], TransducerState::Y(YSign::Neg)),
            _ => two(vec![b], TransducerState::Copy),
        };
        return Ok(step);
    }
    let step = match sign {
        YSign::Pos if first == top => one(vec![top, top], TransducerState::Y(YSign::Pos)),
        YSign::Pos => one(vec![top, first], TransducerState::Copy),
        YSign::Neg if first == 0 => one(vec![0, 0], TransducerState::Y(YSign::Neg)),
        YSign::Neg => one(vec![0, first], TransducerState::Copy),
    };
    Ok(step)
}

/// Streams one letter through the transducer.
pub(crate) fn feed(alphabet: Alphabet, state: TransducerState, c: u8, out: &mut Vec<u8>) -> TransducerState {
    match state {
        TransducerState::Copy => {
            out.push(c);
            TransducerState::Copy
        }
        TransducerState::Buffered(sign, a) => {
            let step = y_step(alphabet, sign, a, Some(c)).expect("letters validated");
            out.extend_from_slice(&step.emitted);
            step.next
        }
        TransducerState::Y(sign) => {
            if needs_lookahead(alphabet, sign, c) {
                TransducerState::Buffered(sign, c)
            } else {
                let step = y_step(alphabet, sign, c, None).expect("letters validated");
                out.extend_from_slice(&step.emitted);
                step.next
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YResidue {
    Pending(YSign),
    Vanished,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteApplication {
    pub out: FiniteWord,
    pub residue: YResidue,
    /// With `Pending`, the letters still waiting in front of the residual `y`
    /// (at most one). With `Vanished`, the verbatim tail already in `out`.
    pub unconsumed: FiniteWord,
}

pub fn y_apply_finite(sign: YSign, w: &FiniteWord) -> FiniteApplication {
    let alphabet = w.alphabet();
    let (out, residue, unconsumed) = y_apply_raw(alphabet, sign, w.letters());
    FiniteApplication {
        out: FiniteWord::from_trusted(alphabet, out),
        residue,
        unconsumed: FiniteWord::from_trusted(alphabet, unconsumed),
    }
}

pub(crate) fn y_apply_raw(alphabet: Alphabet, sign: YSign, w: &[u8]) -> (Vec<u8>, YResidue, Vec<u8>) {
    let mut out = Vec::with_capacity(w.len() + 2);
    let mut state = TransducerState::Y(sign);
    for (i, &c) in w.iter().enumerate() {
        state = feed(alphabet, state, c, &mut out);
        if state == TransducerState::Copy {
            out.extend_from_slice(&w[i + 1..]);
            return (out, YResidue::Vanished, w[i + 1..].to_vec());
        }
    }
    match state {
        TransducerState::Y(s) => (out, YResidue::Pending(s), Vec::new()),
        TransducerState::Buffered(s, a) => (out, YResidue::Pending(s), vec![a]),
        TransducerState::Copy => unreachable!(),
    }
}

/// The image `y^sign(x)`.
pub fn y_apply_ep(sign: YSign, x: &EvPeriodicWord) -> EvPeriodicWord {
    let alphabet = x.alphabet();
    let pre = x.pre_letters().len();
    let per = x.per_letters().len();
    let mut out = Vec::new();
    let mut state = TransducerState::Y(sign);
    let mut seen: HashMap<(TransducerState, usize), usize> = HashMap::new();
    let mut i = 0;
    loop {
        if state == TransducerState::Copy {
            let rest = x.suffix(i);
            return rest.prepend(&out);
        }
        if i >= pre {
            let key = (state, (i - pre) % per);
            if let Some(&start) = seen.get(&key) {
                let period = out[start..].to_vec();
                out.truncate(start);
                return EvPeriodicWord::canonical(alphabet, out, period);
            }
            seen.insert(key, out.len());
        }
        state = feed(alphabet, state, x.letter_at(i), &mut out);
        i += 1;
    }
}

/// `y^t(x)` for any integer `t`.
pub fn y_power_ep(t: i64, x: &EvPeriodicWord) -> EvPeriodicWord {
    let Some(sign) = YSign::of(t) else {
        return x.clone();
    };
    let mut p = x.clone();
    for _ in 0..t.unsigned_abs() {
        p = y_apply_ep(sign, &p);
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CalcSymbol {
    Letter(u8),
    Y(YSign),
}

/// A word over the letters and `y^{±1}`, optionally followed by an infinite
/// tail of plain letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Calculation {
    alphabet: Alphabet,
    symbols: Vec<CalcSymbol>,
    tail: Option<EvPeriodicWord>,
}

impl Calculation {
    pub fn new(
        alphabet: Alphabet,
        symbols: Vec<CalcSymbol>,
        tail: Option<EvPeriodicWord>,
    ) -> Result<Self> {
        for s in &symbols {
            if let CalcSymbol::Letter(c) = s {
                alphabet.check(&[*c])?;
            }
        }
        if let Some(t) = &tail {
            alphabet.same_as(t.alphabet())?;
        }
        Ok(Calculation {
            alphabet,
            symbols,
            tail,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[CalcSymbol] {
        &self.symbols
    }

    pub fn tail(&self) -> Option<&EvPeriodicWord> {
        self.tail.as_ref()
    }

    pub fn y_count(&self) -> usize {
        self.symbols
            .iter()
            .filter(|s| matches!(s, CalcSymbol::Y(_)))
            .count()
    }

    /// The first `k` symbols, unrolling the tail as needed.
    pub fn prefix_symbols(&self, k: usize) -> Vec<CalcSymbol> {
        let mut v: Vec<CalcSymbol> = self.symbols.iter().take(k).copied().collect();
        if let Some(t) = &self.tail {
            let need = k.saturating_sub(v.len());
            v.extend(t.expand(need).into_iter().map(CalcSymbol::Letter));
        }
        v
    }

    /// Moves one letter from the tail into the finite part.
    fn unroll(&mut self) -> bool {
        match &self.tail {
            Some(t) => {
                let c = t.letter_at(0);
                self.tail = Some(t.suffix(1));
                self.symbols.push(CalcSymbol::Letter(c));
                true
            }
            None => false,
        }
    }

    fn letter_after(&mut self, pos: usize) -> Option<u8> {
        while pos >= self.symbols.len() {
            if !self.unroll() {
                return None;
            }
        }
        match self.symbols[pos] {
            CalcSymbol::Letter(c) => Some(c),
            CalcSymbol::Y(_) => None,
        }
    }

    /// One substitution at the rightmost `y` that admits one.
    pub fn substitute_once(&self) -> Option<Calculation> {
        let mut c = self.clone();
        let positions: Vec<usize> = (0..c.symbols.len())
            .filter(|&i| matches!(c.symbols[i], CalcSymbol::Y(_)))
            .collect();
        for &p in positions.iter().rev() {
            let CalcSymbol::Y(sign) = c.symbols[p] else {
                unreachable!()
            };
            let Some(a) = c.letter_after(p + 1) else {
                continue;
            };
            let b = if needs_lookahead(c.alphabet, sign, a) {
                match c.letter_after(p + 2) {
                    Some(b) => Some(b),
                    None => continue,
                }
            } else {
                None
            };
            let step = y_step(c.alphabet, sign, a, b).expect("lookahead supplied");
            let mut replacement: Vec<CalcSymbol> =
                step.emitted.iter().map(|&l| CalcSymbol::Letter(l)).collect();
            if let TransducerState::Y(s) = step.next {
                replacement.push(CalcSymbol::Y(s));
            }
            c.symbols.splice(p..p + 1 + step.consumed, replacement);
            return Some(c);
        }
        None
    }

    fn is_finite(&self) -> bool {
        self.tail.is_none()
    }
}

impl fmt::Display for Calculation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut run: Vec<u8> = Vec::new();
        let flush = |run: &mut Vec<u8>, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !run.is_empty() {
                f.write_str(&self.alphabet.format_letters(run))?;
                run.clear();
            }
            Ok(())
        };
        let mut wrote = false;
        for s in &self.symbols {
            match s {
                CalcSymbol::Letter(c) => run.push(*c),
                CalcSymbol::Y(sign) => {
                    flush(&mut run, f)?;
                    f.write_str(if *sign == YSign::Pos { "y" } else { "y'" })?;
                }
            }
            wrote = true;
        }
        flush(&mut run, f)?;
        match &self.tail {
            Some(t) => write!(f, "{t}"),
            None if !wrote => f.write_str("ε"),
            None => Ok(()),
        }
    }
}

/// Parses `y 0 y' 2 (0)*`-style text; whitespace is optional.
pub fn parse_calculation(alphabet: Alphabet, text: &str) -> Result<Calculation> {
    let mut symbols = Vec::new();
    let mut tail = None;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            _ if text[i..].starts_with('ε') => i += 'ε'.len_utf8(),
            b'y' => {
                if bytes.get(i + 1) == Some(&b'\'') {
                    symbols.push(CalcSymbol::Y(YSign::Neg));
                    i += 2;
                } else {
                    symbols.push(CalcSymbol::Y(YSign::Pos));
                    i += 1;
                }
            }
            b'(' => {
                let t = EvPeriodicWord::parse(alphabet, &text[i..])
                    .map_err(|e| match e {
                        Error::Syntax { position, message } => Error::Syntax {
                            position: position + i,
                            message,
                        },
                        other => other,
                    })?;
                tail = Some(t);
                i = bytes.len();
            }
            b'[' => {
                let end = text[i..]
                    .find(']')
                    .ok_or_else(|| Error::syntax(i, "unterminated '['"))?
                    + i;
                let letters = alphabet.parse_letters(&text[i..=end], i)?;
                symbols.extend(letters.into_iter().map(CalcSymbol::Letter));
                i = end + 1;
            }
            b'0'..=b'9' if alphabet.uses_digits() => {
                let d = ch - b'0';
                alphabet.check(&[d])?;
                symbols.push(CalcSymbol::Letter(d));
                i += 1;
            }
            _ => {
                let c = text[i..].chars().next().unwrap_or('?');
                return Err(Error::syntax(i, format!("unexpected {c:?}")));
            }
        }
    }
    Calculation::new(alphabet, symbols, tail)
}

/// Runs every possible substitution. A finite calculation comes back with
/// its surviving `y`s stuck in place; one with an infinite tail comes back as
/// the fully evaluated point.
pub fn substitute_all(c: &Calculation) -> Calculation {
    let alphabet = c.alphabet;
    if let Some(tail) = &c.tail {
        let mut point = tail.clone();
        for s in c.symbols.iter().rev() {
            point = match s {
                CalcSymbol::Letter(l) => point.prepend(&[*l]),
                CalcSymbol::Y(sign) => y_apply_ep(*sign, &point),
            };
        }
        return Calculation {
            alphabet,
            symbols: Vec::new(),
            tail: Some(point),
        };
    }
    // Innermost first: everything right of the current y is already stuck.
    let mut done: Vec<CalcSymbol> = Vec::new();
    for s in c.symbols.iter().rev() {
        match s {
            CalcSymbol::Letter(_) => done.push(*s),
            CalcSymbol::Y(sign) => {
                let mut letters = Vec::new();
                while let Some(CalcSymbol::Letter(l)) = done.last() {
                    letters.push(*l);
                    done.pop();
                }
                let (out, residue, unconsumed) = y_apply_raw(alphabet, *sign, &letters);
                let mut rebuilt: Vec<CalcSymbol> = out.into_iter().map(CalcSymbol::Letter).collect();
                if let YResidue::Pending(s2) = residue {
                    rebuilt.push(CalcSymbol::Y(s2));
                    rebuilt.extend(unconsumed.into_iter().map(CalcSymbol::Letter));
                }
                done.extend(rebuilt.into_iter().rev());
            }
        }
    }
    done.reverse();
    debug_assert!(c.is_finite());
    Calculation {
        alphabet,
        symbols: done,
        tail: None,
    }
}

pub fn is_potential_cancellation(t1: YSign, sigma: &FiniteWord, t2: YSign) -> bool {
    pc_raw(sigma.alphabet(), t1, sigma.letters(), t2)
}

pub(crate) fn pc_raw(alphabet: Alphabet, t1: YSign, sigma: &[u8], t2: YSign) -> bool {
    let (_, residue, unconsumed) = y_apply_raw(alphabet, t1, sigma);
    residue == YResidue::Pending(t2.flip()) && unconsumed.is_empty()
}

/// The first `y^{t1} σ y^{t2}` subword that is a potential cancellation, as
/// the symbol positions of its two `y`s.
pub fn find_potential_cancellation(c: &Calculation) -> Option<(usize, usize)> {
    let mut last: Option<(usize, YSign)> = None;
    let mut sigma = Vec::new();
    for (i, s) in c.symbols.iter().enumerate() {
        match s {
            CalcSymbol::Letter(l) => sigma.push(*l),
            CalcSymbol::Y(t2) => {
                if let Some((j, t1)) = last {
                    if pc_raw(c.alphabet, t1, &sigma, *t2) {
                        return Some((j, i));
                    }
                }
                last = Some((i, *t2));
                sigma.clear();
            }
        }
    }
    None
}

/// Number of `y^{±1}` whose entire suffix avoids the middle letters.
pub fn exponent(c: &Calculation) -> Result<usize> {
    if find_potential_cancellation(c).is_some() {
        return Err(Error::PotentialCancellation);
    }
    let mut clean = c.tail.as_ref().map_or(true, |t| !t.has_middle_letter());
    let mut count = 0;
    for s in c.symbols.iter().rev() {
        match s {
            CalcSymbol::Letter(l) => {
                if c.alphabet.is_middle(*l) {
                    clean = false;
                }
            }
            CalcSymbol::Y(_) => {
                if clean {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
