//! Grammars for q/p monomials and polynomials, and for boson words.
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [number ['*']] [q ['^' int]] [p ['^' int]]     (at least one part)
//! word     := factor+
//! factor   := ('a' | 'ad') ['^' int] | '1'
//! ```

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::lexer::{tokenize, ParseError, Span, Token, TokenKind};
use crate::closed::WeylSpec;
use crate::quantize::QpPoly;
use crate::scalar::Rational;
use crate::word::{BosonWord, Ladder};

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    text_len: usize,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token], text_len: usize) -> Self {
        Parser { tokens, pos: 0, text_len }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn end_span(&self) -> Span {
        Span::new(self.text_len, self.text_len)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `['^' int]`; absent means power one.
    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat(&TokenKind::Caret) {
            return Ok(1);
        }
        match self.bump() {
            Some(Token { kind: TokenKind::Integer(n), span }) => {
                n.to_u32().ok_or_else(|| ParseError::new("exponent too large", *span))
            }
            Some(t) => Err(ParseError::new(
                format!("expected a nonnegative integer exponent, found {}", t.kind.describe()),
                t.span,
            )),
            None => Err(ParseError::new("expected an exponent after '^'", self.end_span())),
        }
    }

    fn term(&mut self) -> Result<(Rational, u32, u32), ParseError> {
        let start = self.peek().map(|t| t.span).unwrap_or_else(|| self.end_span());
        let mut coeff = None;
        match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Integer(n)) => {
                coeff = Some(Rational::from_integer(n.clone()));
                self.pos += 1;
            }
            Some(TokenKind::Rational(r)) => {
                coeff = Some(r.clone());
                self.pos += 1;
            }
            _ => {}
        }
        if coeff.is_some() {
            self.eat(&TokenKind::Star);
        }

        let mut j = None;
        let mut k = None;
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::QSym => {
                    if k.is_some() {
                        return Err(ParseError::new(
                            "'q' after 'p': a monomial is written q^j p^k with the q part first",
                            t.span,
                        ));
                    }
                    if j.is_some() {
                        return Err(ParseError::new("repeated 'q' in a monomial; write q^j once", t.span));
                    }
                    self.pos += 1;
                    j = Some(self.exponent()?);
                }
                TokenKind::PSym => {
                    if k.is_some() {
                        return Err(ParseError::new("repeated 'p' in a monomial; write p^k once", t.span));
                    }
                    self.pos += 1;
                    k = Some(self.exponent()?);
                }
                TokenKind::Plus | TokenKind::Minus => break,
                _ => {
                    return Err(ParseError::new(format!("unexpected {} in a q/p monomial", t.kind.describe()), t.span))
                }
            }
        }

        if coeff.is_none() && j.is_none() && k.is_none() {
            return Err(ParseError::new("expected a monomial", start));
        }
        Ok((coeff.unwrap_or_else(Rational::one), j.unwrap_or(0), k.unwrap_or(0)))
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat(&TokenKind::Minus) {
            Some(true)
        } else if self.eat(&TokenKind::Plus) {
            Some(false)
        } else {
            None
        }
    }
}

fn empty_error(text: &str) -> ParseError {
    ParseError::new("empty input", Span::new(0, text.len()))
}

/// Parses `[sign] [coeff] q^j p^k`.
pub fn parse_qp_monomial(text: &str) -> Result<(Rational, WeylSpec), ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(empty_error(text));
    }
    let mut p = Parser::new(&tokens, text.len());
    let negative = p.sign().unwrap_or(false);
    let (c, j, k) = p.term()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(format!("unexpected {} after the monomial", t.kind.describe()), t.span));
    }
    Ok((if negative { -c } else { c }, WeylSpec::new(j, k)))
}

/// Parses a signed sum of q/p monomials; like terms are combined and
/// cancelled terms dropped.
pub fn parse_qp_poly(text: &str) -> Result<QpPoly, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(empty_error(text));
    }
    let mut p = Parser::new(&tokens, text.len());
    let mut out = QpPoly::new();
    let mut first = true;
    while !p.at_end() {
        let negative = match p.sign() {
            Some(neg) => neg,
            None if first => false,
            None => {
                let t = p.peek().expect("not at end");
                return Err(ParseError::new(format!("expected '+' or '-' before {}", t.kind.describe()), t.span));
            }
        };
        let (c, j, k) = p.term()?;
        let slot = out.entry((j, k)).or_insert_with(Rational::zero);
        if negative {
            *slot -= c;
        } else {
            *slot += c;
        }
        first = false;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Parses a product of `a`/`ad` factors in written (left-to-right) order.
/// A bare `1` stands for the identity.
pub fn parse_boson_word(text: &str) -> Result<BosonWord, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(empty_error(text));
    }
    let mut p = Parser::new(&tokens, text.len());
    let mut letters = Vec::new();
    while let Some(t) = p.bump() {
        let letter = match &t.kind {
            TokenKind::ASym => Ladder::Annihilate,
            TokenKind::AdagSym => Ladder::Create,
            TokenKind::Integer(n) if n == &BigInt::one() => continue,
            other => {
                return Err(ParseError::new(
                    format!("unexpected {} in a boson word (expected a or ad)", other.describe()),
                    t.span,
                ))
            }
        };
        let power = p.exponent()?;
        letters.extend(std::iter::repeat_n(letter, power as usize));
    }
    Ok(BosonWord(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use Ladder::{Annihilate as A, Create as C};

    #[test]
    fn monomial_examples() {
        assert_eq!(parse_qp_monomial("q^2 p").unwrap(), (ratio(1, 1), WeylSpec::new(2, 1)));
        assert_eq!(parse_qp_monomial("3/2 p^3").unwrap(), (ratio(3, 2), WeylSpec::new(0, 3)));
        assert_eq!(parse_qp_monomial("-4*q").unwrap(), (ratio(-4, 1), WeylSpec::new(1, 0)));
        assert_eq!(parse_qp_monomial("5").unwrap(), (ratio(5, 1), WeylSpec::new(0, 0)));
        assert!(parse_qp_monomial("q p q").is_err());
    }

    #[test]
    fn reversed_order_names_canonical_form() {
        let e = parse_qp_monomial("p q").unwrap_err();
        assert!(e.message.contains("q^j p^k"), "{e}");
        assert_eq!(e.span, Span::new(2, 3));
    }

    #[test]
    fn poly_examples() {
        let p = parse_qp_poly("3/2 q p^3 - p").unwrap();
        assert_eq!(p, QpPoly::from([((1, 3), ratio(3, 2)), ((0, 1), ratio(-1, 1))]));
        assert!(parse_qp_poly("q - q").unwrap().is_empty());
        let e = parse_qp_poly("").unwrap_err();
        assert_eq!(e.message, "empty input");
        assert_eq!(parse_qp_poly("-q^2 + 1/3 + q^2 p^0").unwrap(), QpPoly::from([((0, 0), ratio(1, 3))]));
    }

    #[test]
    fn poly_errors_carry_spans() {
        let e = parse_qp_poly("q - p q").unwrap_err();
        assert_eq!(e.span, Span::new(6, 7));
        let e = parse_qp_poly("q +").unwrap_err();
        assert_eq!(e.span, Span::new(3, 3));
        let e = parse_qp_poly("q^").unwrap_err();
        assert_eq!(e.span, Span::new(2, 2));
        assert!(parse_qp_poly("q ^ a").is_err());
        assert!(parse_qp_poly("q 3").is_err());
    }

    #[test]
    fn boson_word_examples() {
        assert_eq!(parse_boson_word("ad^2 a").unwrap(), BosonWord(vec![C, C, A]));
        assert_eq!(parse_boson_word("a ad").unwrap(), BosonWord(vec![A, C]));
        assert_eq!(parse_boson_word("ad^0").unwrap(), BosonWord::default());
        assert_eq!(parse_boson_word("1").unwrap(), BosonWord::default());
        assert!(parse_boson_word("a q").is_err());
        assert!(parse_boson_word("  ").is_err());
    }
}
