//! Tokenizer for `.pch` scene files. `#` starts a comment running to the end
//! of the line.

use num_bigint::BigInt;

use super::diagnostic::{Diagnostic, Phase, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
    Eq,
    Semi,
    Comma,
    Colon,
    LBrace,
    RBrace,
    /// `(+)`
    DirectSum,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Int(n) => format!("`{n}`"),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Eq => "`=`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::DirectSum => "`(+)`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
    /// Position just past the last character.
    pub end: Pos,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);

    while i < chars.len() {
        let c = chars[i];
        let start = Pos::new(line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        let advance = |n: usize, i: &mut usize, col: &mut u32| {
            *i += n;
            *col += n as u32;
        };
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let s: String = chars[i..]
                .iter()
                .take_while(|ch| ch.is_ascii_alphanumeric() || **ch == '_')
                .collect();
            advance(s.chars().count(), &mut i, &mut col);
            TokenKind::Ident(s)
        } else if c.is_ascii_digit() {
            let s: String = chars[i..]
                .iter()
                .take_while(|ch| ch.is_ascii_digit())
                .collect();
            advance(s.len(), &mut i, &mut col);
            TokenKind::Int(s.parse().expect("ascii digits"))
        } else if c == '(' {
            if chars.get(i + 1) == Some(&'+') && chars.get(i + 2) == Some(&')') {
                advance(3, &mut i, &mut col);
                TokenKind::DirectSum
            } else {
                errors.push(Diagnostic::error(
                    Phase::Lexical,
                    start,
                    "unexpected `(`; only `(+)` is allowed",
                ));
                advance(1, &mut i, &mut col);
                continue;
            }
        } else {
            let kind = match c {
                '/' => TokenKind::Slash,
                '*' => TokenKind::Star,
                '^' => TokenKind::Caret,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '=' => TokenKind::Eq,
                ';' => TokenKind::Semi,
                ',' => TokenKind::Comma,
                ':' => TokenKind::Colon,
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                other => {
                    errors.push(Diagnostic::error(
                        Phase::Lexical,
                        start,
                        format!("unexpected character `{other}`"),
                    ));
                    advance(1, &mut i, &mut col);
                    continue;
                }
            };
            advance(1, &mut i, &mut col);
            kind
        };
        tokens.push(Token {
            kind,
            pos: start,
            end: Pos::new(line, col),
        });
    }
    let eof = Pos::new(line, col);
    tokens.push(Token {
        kind: TokenKind::Eof,
        pos: eof,
        end: eof,
    });
    if errors.is_empty() {
        Ok(tokens)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            kinds("O{D1:1/3} (+) V # trailing"),
            vec![
                TokenKind::Ident("O".into()),
                TokenKind::LBrace,
                TokenKind::Ident("D1".into()),
                TokenKind::Colon,
                TokenKind::Int(1.into()),
                TokenKind::Slash,
                TokenKind::Int(3.into()),
                TokenKind::RBrace,
                TokenKind::DirectSum,
                TokenKind::Ident("V".into()),
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("variety X dim 2;\n  divisor D1;").unwrap();
        assert_eq!(toks[0].pos, Pos::new(1, 1));
        assert_eq!(toks[4].pos, Pos::new(1, 16));
        assert_eq!(toks[4].end, Pos::new(1, 17));
        assert_eq!(toks[5].pos, Pos::new(2, 3));
    }

    #[test]
    fn lexical_errors_are_positioned() {
        let errs = tokenize("variety X dim 2;\ndivisor D1 $;").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].pos, Pos::new(2, 12));
        assert_eq!(errs[0].phase, Phase::Lexical);
        let errs = tokenize("(D1)").unwrap_err();
        assert_eq!(errs[0].pos, Pos::new(1, 1));
    }
}
