//! Deterministic text forms of normal-ordered polynomials.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::normal::{display_order, NormalPoly};
use crate::quantize::QpPoly;
use crate::scalar::{write_magnitude, Rational, Scalar, Unit};
use crate::word::{BosonWord, Ladder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Latex,
    Structured,
}

/// `"num/den"`, always with an explicit denominator.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub m: u32,
    pub n: u32,
    pub x_re: String,
    pub x_im: String,
    pub y_re: String,
    pub y_im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarRecord {
    pub x_re: String,
    pub x_im: String,
    pub y_re: String,
    pub y_im: String,
}

impl From<&Scalar> for ScalarRecord {
    fn from(c: &Scalar) -> Self {
        ScalarRecord {
            x_re: rational_string(&c.x_re),
            x_im: rational_string(&c.x_im),
            y_re: rational_string(&c.y_re),
            y_im: rational_string(&c.y_im),
        }
    }
}

/// Terms in display order as structured records.
pub fn term_records(poly: &NormalPoly) -> Vec<TermRecord> {
    poly.sorted_terms()
        .into_iter()
        .map(|((m, n), c)| {
            let s = ScalarRecord::from(c);
            TermRecord { m, n, x_re: s.x_re, x_im: s.x_im, y_re: s.y_re, y_im: s.y_im }
        })
        .collect()
}

/// A coefficient split into an overall sign and a printable magnitude.
struct SignedText {
    negative: bool,
    text: String,
    /// Magnitude is exactly one; dropped in front of an operator.
    unit: bool,
    /// Can sit in front of an operator without parentheses.
    bare: bool,
}

fn single_component(c: &Scalar) -> Option<(&Rational, Unit)> {
    let mut nonzero = c.components().into_iter().filter(|(r, _)| !r.is_zero());
    let first = nonzero.next()?;
    nonzero.next().is_none().then_some(first)
}

fn plain_coefficient(c: &Scalar) -> SignedText {
    match single_component(c) {
        Some((r, unit)) => {
            let mut text = String::new();
            write_magnitude(&mut text, r, unit).expect("writing to a String");
            let integral = r.is_integer();
            SignedText {
                negative: r.is_negative(),
                unit: unit == Unit::One && r.abs().is_one(),
                bare: unit == Unit::One && integral,
                text,
            }
        }
        None => SignedText { negative: false, text: format!("({c})"), unit: false, bare: true },
    }
}

fn latex_magnitude(r: &Rational, unit: Unit) -> String {
    let num = r.numer().abs();
    let unit_text = match unit {
        Unit::One => "",
        Unit::I => "i",
        Unit::Sqrt2 => "\\sqrt{2}",
        Unit::ISqrt2 => "i\\sqrt{2}",
    };
    let top = if unit == Unit::One {
        num.to_string()
    } else if num.is_one() {
        unit_text.to_string()
    } else {
        format!("{num}{unit_text}")
    };
    if r.denom().is_one() {
        top
    } else {
        format!("\\frac{{{top}}}{{{}}}", r.denom())
    }
}

fn latex_coefficient(c: &Scalar) -> SignedText {
    match single_component(c) {
        Some((r, unit)) => SignedText {
            negative: r.is_negative(),
            unit: unit == Unit::One && r.abs().is_one(),
            bare: true,
            text: latex_magnitude(r, unit),
        },
        None => {
            let mut text = String::from("\\left(");
            for (i, (r, unit)) in c.components().into_iter().filter(|(r, _)| !r.is_zero()).enumerate() {
                if i == 0 {
                    if r.is_negative() {
                        text.push('-');
                    }
                } else {
                    text.push_str(if r.is_negative() { " - " } else { " + " });
                }
                text.push_str(&latex_magnitude(r, unit));
            }
            text.push_str("\\right)");
            SignedText { negative: false, text, unit: false, bare: true }
        }
    }
}

fn plain_monomial(m: u32, n: u32) -> String {
    let part = |sym: &str, e: u32| match e {
        0 => None,
        1 => Some(sym.to_string()),
        _ => Some(format!("{sym}^{e}")),
    };
    [part("ad", m), part("a", n)].into_iter().flatten().collect::<Vec<_>>().join(" ")
}

fn latex_monomial(m: u32, n: u32) -> String {
    let mut out = String::new();
    match m {
        0 => {}
        1 => out.push_str("\\hat{a}^{\\dagger}"),
        _ => write!(out, "\\hat{{a}}^{{\\dagger {m}}}").expect("writing to a String"),
    }
    match n {
        0 => {}
        1 => out.push_str("\\hat{a}"),
        _ => write!(out, "\\hat{{a}}^{{{n}}}").expect("writing to a String"),
    }
    out
}

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (negative, body)) in parts.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn render_plain(poly: &NormalPoly) -> String {
    let parts = poly
        .sorted_terms()
        .into_iter()
        .map(|((m, n), c)| {
            let coeff = plain_coefficient(c);
            let mono = plain_monomial(m, n);
            let body = if mono.is_empty() {
                coeff.text
            } else if coeff.unit {
                mono
            } else if coeff.bare {
                format!("{} {mono}", coeff.text)
            } else {
                format!("({}) {mono}", coeff.text)
            };
            (coeff.negative, body)
        })
        .collect();
    join_terms(parts)
}

fn render_latex(poly: &NormalPoly) -> String {
    let parts = poly
        .sorted_terms()
        .into_iter()
        .map(|((m, n), c)| {
            let coeff = latex_coefficient(c);
            let mono = latex_monomial(m, n);
            let body = if mono.is_empty() {
                coeff.text
            } else if coeff.unit {
                mono
            } else {
                format!("{}{mono}", coeff.text)
            };
            (coeff.negative, body)
        })
        .collect();
    join_terms(parts)
}

#[derive(Serialize)]
struct TermsDoc {
    terms: Vec<TermRecord>,
}

/// Renders in the requested format. Structured output is a compact JSON
/// object `{"terms":[...]}`.
pub fn render(poly: &NormalPoly, format: Format) -> String {
    match format {
        Format::Plain => render_plain(poly),
        Format::Latex => render_latex(poly),
        Format::Structured => {
            serde_json::to_string(&TermsDoc { terms: term_records(poly) }).expect("plain data serializes")
        }
    }
}

/// Plain form of a q/p polynomial, readable back by `parse_qp_poly`.
pub fn render_qp_poly(poly: &QpPoly) -> String {
    let mut entries: Vec<_> = poly.iter().filter(|(_, c)| !c.is_zero()).collect();
    entries.sort_by(|a, b| display_order(a.0, b.0));
    let parts = entries
        .into_iter()
        .map(|(&(j, k), c)| {
            let part = |sym: &str, e: u32| match e {
                0 => None,
                1 => Some(sym.to_string()),
                _ => Some(format!("{sym}^{e}")),
            };
            let mono = [part("q", j), part("p", k)].into_iter().flatten().collect::<Vec<_>>().join(" ");
            let mag = c.abs();
            let mag_text = if mag.denom().is_one() { mag.numer().to_string() } else { rational_string(&mag) };
            let body = if mono.is_empty() {
                mag_text
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag_text} {mono}")
            };
            (c.is_negative(), body)
        })
        .collect();
    join_terms(parts)
}

/// Plain form of a boson word using runs, e.g. `ad^2 a ad`; the empty word is `1`.
pub fn render_boson_word(word: &BosonWord) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.0.len() {
        let letter = word.0[i];
        let mut run = 0;
        while i < word.0.len() && word.0[i] == letter {
            run += 1;
            i += 1;
        }
        let sym = match letter {
            Ladder::Create => "ad",
            Ladder::Annihilate => "a",
        };
        parts.push(if run == 1 { sym.to_string() } else { format!("{sym}^{run}") });
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::{weyl_normal_form, WeylSpec};
    use crate::scalar::ratio;

    #[test]
    fn plain_examples() {
        assert_eq!(render(&weyl_normal_form(WeylSpec::new(1, 1)), Format::Plain), "(i/2) ad^2 - (i/2) a^2");
        assert_eq!(render(&NormalPoly::zero(), Format::Plain), "0");
        assert_eq!(
            render(&weyl_normal_form(WeylSpec::new(2, 0)), Format::Plain),
            "(1/2) ad^2 + ad a + (1/2) a^2 + 1/2"
        );
        assert_eq!(render(&weyl_normal_form(WeylSpec::new(0, 1)), Format::Plain), "(i*sqrt2/2) ad - (i*sqrt2/2) a");
        let p = NormalPoly::from_terms([
            ((2, 2), Scalar::one()),
            ((1, 1), Scalar::from_int(4)),
            ((0, 0), Scalar::from_int(2)),
        ]);
        assert_eq!(render(&p, Format::Plain), "ad^2 a^2 + 4 ad a + 2");
        assert_eq!(render(&NormalPoly::monomial(0, 1, Scalar::from_int(-1)), Format::Plain), "-a");
    }

    #[test]
    fn plain_mixed_coefficient() {
        let c = Scalar::one() + Scalar::sqrt2();
        assert_eq!(render(&NormalPoly::monomial(1, 0, c.clone()), Format::Plain), "(1 + sqrt2) ad");
        assert_eq!(render(&NormalPoly::constant(c), Format::Plain), "(1 + sqrt2)");
    }

    #[test]
    fn latex_examples() {
        assert_eq!(
            render(&weyl_normal_form(WeylSpec::new(1, 1)), Format::Latex),
            "\\frac{i}{2}\\hat{a}^{\\dagger 2} - \\frac{i}{2}\\hat{a}^{2}"
        );
        assert_eq!(
            render(&weyl_normal_form(WeylSpec::new(3, 0)), Format::Latex),
            "\\frac{\\sqrt{2}}{4}\\hat{a}^{\\dagger 3} + \\frac{3\\sqrt{2}}{4}\\hat{a}^{\\dagger 2}\\hat{a} \
             + \\frac{3\\sqrt{2}}{4}\\hat{a}^{\\dagger}\\hat{a}^{2} + \\frac{\\sqrt{2}}{4}\\hat{a}^{3} \
             + \\frac{3\\sqrt{2}}{4}\\hat{a}^{\\dagger} + \\frac{3\\sqrt{2}}{4}\\hat{a}"
        );
    }

    #[test]
    fn structured_example() {
        let c = Scalar::one() + Scalar::sqrt2();
        let out = render(&NormalPoly::constant(c), Format::Structured);
        assert_eq!(out, r#"{"terms":[{"m":0,"n":0,"x_re":"1/1","x_im":"0/1","y_re":"1/1","y_im":"0/1"}]}"#);
        assert_eq!(render(&NormalPoly::zero(), Format::Structured), r#"{"terms":[]}"#);
    }

    #[test]
    fn qp_and_word_forms() {
        let p = QpPoly::from([((1, 3), ratio(3, 2)), ((0, 1), ratio(-1, 1)), ((0, 0), ratio(5, 1))]);
        assert_eq!(render_qp_poly(&p), "3/2 q p^3 - p + 5");
        assert_eq!(render_qp_poly(&QpPoly::new()), "0");
        let w = crate::textio::parse_boson_word("ad ad a ad").unwrap();
        assert_eq!(render_boson_word(&w), "ad^2 a ad");
    }
}
