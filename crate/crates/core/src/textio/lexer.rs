use std::fmt;

use num_bigint::BigInt;

use crate::scalar::Rational;

/// Byte range into the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at {span}")]
pub struct ParseError {
    pub message: String,
    pub span: Span,
}

impl ParseError {
    pub fn new(message: impl Into<String>, span: Span) -> Self {
        ParseError { message: message.into(), span }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    QSym,
    PSym,
    ASym,
    AdagSym,
    Integer(BigInt),
    Rational(Rational),
    Caret,
    Plus,
    Minus,
    Star,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::QSym => "'q'".into(),
            TokenKind::PSym => "'p'".into(),
            TokenKind::ASym => "'a'".into(),
            TokenKind::AdagSym => "'ad'".into(),
            TokenKind::Integer(n) => format!("integer {n}"),
            TokenKind::Rational(r) => format!("rational {r}"),
            TokenKind::Caret => "'^'".into(),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

fn digits_end(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

/// Splits `text` into tokens. Whitespace separates tokens and is otherwise
/// ignored; `3/2` with no interior spaces is a single rational literal.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'^' => {
                i += 1;
                TokenKind::Caret
            }
            b'+' => {
                i += 1;
                TokenKind::Plus
            }
            b'-' => {
                i += 1;
                TokenKind::Minus
            }
            b'*' => {
                i += 1;
                TokenKind::Star
            }
            b'0'..=b'9' => {
                let num_end = digits_end(bytes, i);
                let num: BigInt = text[i..num_end].parse().expect("ascii digits");
                if num_end < bytes.len() && bytes[num_end] == b'.' {
                    return Err(ParseError::new(
                        "decimal literals are not accepted; write an exact fraction like 1/2",
                        Span::new(start, digits_end(bytes, num_end + 1)),
                    ));
                }
                if num_end < bytes.len() && bytes[num_end] == b'/' {
                    let den_end = digits_end(bytes, num_end + 1);
                    if den_end == num_end + 1 {
                        return Err(ParseError::new("expected a denominator after '/'", Span::new(start, den_end)));
                    }
                    let den: BigInt = text[num_end + 1..den_end].parse().expect("ascii digits");
                    if den == BigInt::from(0) {
                        return Err(ParseError::new("zero denominator", Span::new(start, den_end)));
                    }
                    i = den_end;
                    TokenKind::Rational(Rational::new(num, den))
                } else {
                    i = num_end;
                    TokenKind::Integer(num)
                }
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                match &text[start..i] {
                    "q" => TokenKind::QSym,
                    "p" => TokenKind::PSym,
                    "a" => TokenKind::ASym,
                    "ad" => TokenKind::AdagSym,
                    other => {
                        return Err(ParseError::new(
                            format!("unknown symbol '{other}' (expected q, p, a or ad)"),
                            Span::new(start, i),
                        ))
                    }
                }
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(
                    format!("unexpected character '{ch}'"),
                    Span::new(start, start + ch.len_utf8()),
                ));
            }
        };
        tokens.push(Token { kind, span: Span::new(start, i) });
    }
    Ok(tokens)
}
