//! Action on eventually periodic points, and calculations of forms.

use crate::cantor::{EvPeriodicWord, FiniteWord};
use crate::error::{Error, Result};
use crate::transducer::{exponent, y_apply_ep, y_power_ep, CalcSymbol, Calculation, YSign};

use super::{GroupWord, Letter, StandardForm};

fn y_at(s: &[u8], t: i64, x: &EvPeriodicWord) -> EvPeriodicWord {
    match x.strip_prefix(s) {
        Some(rest) => y_power_ep(t, &rest).prepend(s),
        None => x.clone(),
    }
}

pub fn evaluate_word(w: &GroupWord, x: &EvPeriodicWord) -> Result<EvPeriodicWord> {
    w.alphabet().same_as(x.alphabet())?;
    let mut p = x.clone();
    for l in w.letters() {
        p = match l {
            Letter::Y { s, sign } => match p.strip_prefix(s.letters()) {
                Some(rest) => y_apply_ep(*sign, &rest).prepend(s.letters()),
                None => p,
            },
            Letter::X { .. } => l.tree_pair().expect("x letter").apply_ep(&p)?,
        };
    }
    Ok(p)
}

pub fn evaluate_form(form: &StandardForm, x: &EvPeriodicWord) -> Result<EvPeriodicWord> {
    let mut p = form.f.apply_ep(x)?;
    for y in &form.ys {
        p = y_at(y.index().letters(), y.exponent(), &p);
    }
    Ok(p)
}

/// Inserts `|t|` copies of `y^{sign t}` after the leading `s`, if the letters
/// before the first pending `y` start with `s`.
fn insert_y(c: &mut Vec<CalcSymbol>, tail: &mut Option<EvPeriodicWord>, s: &[u8], t: i64) -> Result<()> {
    let lead = c.iter().take_while(|x| matches!(x, CalcSymbol::Letter(_))).count();
    let blocked = lead < c.len();
    if lead < s.len() {
        if blocked || tail.is_none() {
            let agrees = c[..lead]
                .iter()
                .zip(s)
                .all(|(a, b)| *a == CalcSymbol::Letter(*b));
            if !agrees {
                return Ok(());
            }
            return Err(Error::UndefinedCalculation(format!(
                "index of length {} reaches past the determined prefix",
                s.len()
            )));
        }
        let tl = tail.take().expect("checked");
        let need = s.len() - lead;
        c.extend(tl.expand(need).into_iter().map(CalcSymbol::Letter));
        *tail = Some(tl.suffix(need));
    }
    let matches = c[..s.len()]
        .iter()
        .zip(s)
        .all(|(a, b)| *a == CalcSymbol::Letter(*b));
    if matches {
        let sign = YSign::of(t).expect("nonzero");
        let ins = std::iter::repeat(CalcSymbol::Y(sign)).take(t.unsigned_abs() as usize);
        c.splice(s.len()..s.len(), ins);
    }
    Ok(())
}

/// The calculation of `x` under `form`: apply `f`, then record each factor
/// as pending `y`s without substituting.
pub fn calculation_of(form: &StandardForm, x: &EvPeriodicWord) -> Result<Calculation> {
    let p = form.f.apply_ep(x)?;
    let mut symbols = Vec::new();
    let mut tail = Some(p);
    for y in &form.ys {
        insert_y(&mut symbols, &mut tail, y.index().letters(), y.exponent())?;
    }
    Calculation::new(form.alphabet(), symbols, tail)
}

/// Same for a finite word; undefined when `f` is undefined on it or it stops
/// short of some index it agrees with.
pub fn calculation_of_finite(form: &StandardForm, w: &FiniteWord) -> Result<Calculation> {
    let img = form
        .f
        .apply_prefix(w)?
        .ok_or_else(|| Error::UndefinedCalculation(format!("f is not defined on {w}")))?;
    let mut symbols: Vec<CalcSymbol> = img.letters().iter().map(|&c| CalcSymbol::Letter(c)).collect();
    let mut tail = None;
    for y in &form.ys {
        insert_y(&mut symbols, &mut tail, y.index().letters(), y.exponent())?;
    }
    Calculation::new(form.alphabet(), symbols, None)
}

pub fn exponent_of_element_at(form: &StandardForm, x: &EvPeriodicWord) -> Result<usize> {
    exponent(&calculation_of(form, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::Alphabet;
    use crate::lodha_moore::{normalize, parse_word, standardize};
    use crate::transducer::substitute_all;

    fn ep(n: usize, s: &str) -> EvPeriodicWord {
        EvPeriodicWord::parse(Alphabet::new(n).unwrap(), s).unwrap()
    }

    fn form(n: usize, s: &str) -> StandardForm {
        standardize(&parse_word(s, Some(n)).unwrap(), 0).unwrap()
    }

    #[test]
    fn y001_example() {
        let f = form(2, "y[001]");
        let x = ep(2, "00101101(0)*");
        let c = calculation_of(&f, &x).unwrap();
        assert_eq!(c.to_string(), "001y01101(0)*");
        let c2 = c.substitute_once().and_then(|c| c.substitute_once()).unwrap();
        assert!(c2.to_string().starts_with("0011001y1"), "{c2}");
        let full = substitute_all(&c);
        assert_eq!(full.tail().unwrap(), &evaluate_form(&f, &x).unwrap());
    }

    #[test]
    fn n4_calculation() {
        let f = crate::lodha_moore::test_form(4, &[("300", -1), ("30", 1), ("1", 1)]);
        let c = calculation_of(&f, &ep(4, "3002(0)*")).unwrap();
        assert_eq!(c.to_string(), "30y0y'2(0)*");
        let a = crate::cantor::Alphabet::new(4).unwrap();
        let fin = calculation_of_finite(&f, &FiniteWord::parse(a, "3002").unwrap()).unwrap();
        assert_eq!(fin.to_string(), "30y0y'2");
        assert!(calculation_of_finite(&f, &FiniteWord::parse(a, "3").unwrap()).is_err());
    }

    #[test]
    fn fixed_off_support() {
        let f = form(3, "y[20]");
        let x = ep(3, "1(02)*");
        assert_eq!(evaluate_form(&f, &x).unwrap(), x);
    }

    #[test]
    fn exponents() {
        let n = 3;
        let g = normalize(&parse_word("x0 x1 x0[2]^-1", Some(n)).unwrap()).unwrap();
        assert_eq!(exponent_of_element_at(g.form(), &ep(n, "0(2)*")).unwrap(), 0);
        let h = form(n, "y[20]");
        assert!(exponent_of_element_at(&h, &ep(n, "20(0)*")).unwrap() >= 1);
    }

    #[test]
    fn finite_calculations() {
        let f = form(3, "y[2002]");
        let a = Alphabet::new(3).unwrap();
        assert!(calculation_of_finite(&f, &FiniteWord::parse(a, "20").unwrap()).is_err());
        let c = calculation_of_finite(&f, &FiniteWord::parse(a, "200201").unwrap()).unwrap();
        assert_eq!(c.to_string(), "2002y01");
        let c = calculation_of_finite(&f, &FiniteWord::parse(a, "1").unwrap()).unwrap();
        assert_eq!(c.to_string(), "1");
    }
}
