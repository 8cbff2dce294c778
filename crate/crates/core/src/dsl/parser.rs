//! Recursive-descent parser for scene files.
//!
//! ```text
//! program   := stmt*
//! stmt      := variety | divisor | class | relation | integral | bundle | parabolic | command
//! variety   := "variety" NAME "dim" INT ";"
//! divisor   := "divisor" NAME ("," NAME)* ";"
//! class     := "class" NAME "deg" INT ";"
//! relation  := "relation" MONO "=" POLY ";"
//! integral  := "integral" MONO "=" RAT ";"
//! bundle    := "bundle" NAME "rank" INT "chern" POLY ";"
//! parabolic := "parabolic" NAME "=" summand ("(+)" summand)* ";"
//! summand   := (NAME | "O") "{" (NAME ":" RAT ("," NAME ":" RAT)*)? "}"
//! command   := ("compute" ("chern"|"ch"|"ctpoly"|"degree") NAME
//!              | "verify" ("grothendieck" NAME? | "corollary1" NAME? | "prop1" NAME NAME)) ";"
//! POLY      := ("+"|"-")? term (("+"|"-") term)*
//! term      := RAT ("*" MONO)? | MONO
//! MONO      := NAME ("^" INT)? ("*" NAME ("^" INT)?)*
//! RAT       := ("+"|"-")? INT ("/" INT)?
//! ```
//!
//! After a syntax error the parser skips to the next `;` and continues, so
//! one run reports every broken statement.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::ast::*;
use super::diagnostic::{Diagnostic, Phase, Pos};
use super::lexer::{tokenize, Token, TokenKind};
use crate::rational::Rational;

pub const KEYWORDS: &[&str] = &[
    "variety",
    "dim",
    "divisor",
    "class",
    "deg",
    "relation",
    "integral",
    "bundle",
    "rank",
    "chern",
    "parabolic",
    "compute",
    "verify",
];

pub fn parse_program(text: &str) -> Result<Program, Vec<Diagnostic>> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, at: 0 };
    let mut statements = Vec::new();
    let mut errors = Vec::new();
    while !p.at_eof() {
        match p.statement() {
            Ok(s) => statements.push(s),
            Err(d) => {
                errors.push(d);
                p.recover();
            }
        }
    }
    if errors.is_empty() {
        Ok(Program { statements })
    } else {
        Err(errors)
    }
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

type PResult<T> = Result<T, Diagnostic>;

fn syntax(pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(Phase::Syntax, pos, msg)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.at].kind
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek_kind(), TokenKind::Eof)
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if !matches!(t.kind, TokenKind::Eof) {
            self.at += 1;
        }
        t
    }

    fn previous_end(&self) -> Pos {
        if self.at == 0 {
            Pos::new(1, 1)
        } else {
            self.tokens[self.at - 1].end
        }
    }

    fn recover(&mut self) {
        while !self.at_eof() {
            if matches!(self.bump().kind, TokenKind::Semi) {
                break;
            }
        }
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        syntax(
            t.pos,
            format!("expected {expected}, found {}", t.kind.describe()),
        )
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<Token> {
        if self.peek_kind() == &kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    /// A missing `;` is reported right after the previous token.
    fn expect_semi(&mut self) -> PResult<()> {
        if self.eat(&TokenKind::Semi) {
            Ok(())
        } else {
            let found = self.peek().kind.describe();
            Err(syntax(
                self.previous_end(),
                format!("expected `;`, found {found}"),
            ))
        }
    }

    fn is_word(&self, word: &str) -> bool {
        matches!(self.peek_kind(), TokenKind::Ident(s) if s == word)
    }

    fn expect_word(&mut self, word: &str) -> PResult<Pos> {
        if self.is_word(word) {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&format!("`{word}`")))
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek_kind().clone() {
            TokenKind::Ident(s) if KEYWORDS.contains(&s.as_str()) => Err(syntax(
                self.peek().pos,
                format!("expected a name, found keyword `{s}`"),
            )),
            TokenKind::Ident(s) => {
                let t = self.bump();
                Ok(Name::new(s, t.pos))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn small_int(&mut self, what: &str) -> PResult<u32> {
        match self.peek_kind().clone() {
            TokenKind::Int(n) => {
                let pos = self.bump().pos;
                n.to_u32()
                    .ok_or_else(|| syntax(pos, format!("{what} `{n}` is too large")))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let pos = self.peek().pos;
        let word = match self.peek_kind() {
            TokenKind::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a statement")),
        };
        let kind = match word.as_str() {
            "variety" => {
                self.bump();
                let name = self.name()?;
                self.expect_word("dim")?;
                let dim = self.small_int("a dimension")?;
                StmtKind::Variety { name, dim }
            }
            "divisor" => {
                self.bump();
                let mut names = vec![self.name()?];
                while self.eat(&TokenKind::Comma) {
                    names.push(self.name()?);
                }
                StmtKind::Divisor { names }
            }
            "class" => {
                self.bump();
                let name = self.name()?;
                self.expect_word("deg")?;
                let degree = self.small_int("a degree")?;
                StmtKind::Class { name, degree }
            }
            "relation" => {
                self.bump();
                let lhs = self.monomial()?;
                self.expect(TokenKind::Eq)?;
                let rhs = self.polynomial()?;
                StmtKind::Relation { lhs, rhs }
            }
            "integral" => {
                self.bump();
                let monomial = self.monomial()?;
                self.expect(TokenKind::Eq)?;
                let value = self.rational()?;
                StmtKind::Integral { monomial, value }
            }
            "bundle" => {
                self.bump();
                let name = self.name()?;
                self.expect_word("rank")?;
                let rank = self.small_int("a rank")?;
                self.expect_word("chern")?;
                let chern = self.polynomial()?;
                StmtKind::Bundle { name, rank, chern }
            }
            "parabolic" => {
                self.bump();
                let name = self.name()?;
                self.expect(TokenKind::Eq)?;
                let mut summands = vec![self.summand()?];
                while self.eat(&TokenKind::DirectSum) {
                    summands.push(self.summand()?);
                }
                StmtKind::Parabolic { name, summands }
            }
            "compute" => {
                self.bump();
                let kind = match self.peek_kind() {
                    TokenKind::Ident(s) => match s.as_str() {
                        "chern" => ComputeKind::Chern,
                        "ch" => ComputeKind::Ch,
                        "ctpoly" => ComputeKind::CtPoly,
                        "degree" => ComputeKind::Degree,
                        _ => return Err(self.unexpected("`chern`, `ch`, `ctpoly` or `degree`")),
                    },
                    _ => return Err(self.unexpected("`chern`, `ch`, `ctpoly` or `degree`")),
                };
                self.bump();
                let target = self.name()?;
                StmtKind::Command(CommandAst::Compute { kind, target })
            }
            "verify" => {
                self.bump();
                let which = match self.peek_kind() {
                    TokenKind::Ident(s) => s.clone(),
                    _ => return Err(self.unexpected("`grothendieck`, `prop1` or `corollary1`")),
                };
                let cmd = match which.as_str() {
                    "grothendieck" => {
                        self.bump();
                        CommandAst::VerifyGrothendieck {
                            target: self.optional_name()?,
                        }
                    }
                    "corollary1" => {
                        self.bump();
                        CommandAst::VerifyCorollary1 {
                            target: self.optional_name()?,
                        }
                    }
                    "prop1" => {
                        self.bump();
                        let first = self.name()?;
                        let second = self.name()?;
                        CommandAst::VerifyProp1 { first, second }
                    }
                    _ => return Err(self.unexpected("`grothendieck`, `prop1` or `corollary1`")),
                };
                StmtKind::Command(cmd)
            }
            _ => return Err(self.unexpected("a statement keyword")),
        };
        self.expect_semi()?;
        Ok(Stmt { kind, pos })
    }

    fn optional_name(&mut self) -> PResult<Option<Name>> {
        if matches!(self.peek_kind(), TokenKind::Ident(_)) {
            Ok(Some(self.name()?))
        } else {
            Ok(None)
        }
    }

    fn summand(&mut self) -> PResult<SummandAst> {
        let bundle = self.name()?;
        self.expect(TokenKind::LBrace)?;
        let mut weights = Vec::new();
        if !matches!(self.peek_kind(), TokenKind::RBrace) {
            loop {
                let divisor = self.name()?;
                self.expect(TokenKind::Colon)?;
                let value = self.rational()?;
                weights.push(WeightAst { divisor, value });
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect(TokenKind::RBrace)?;
        Ok(SummandAst { bundle, weights })
    }

    fn unsigned_rational(&mut self) -> PResult<Rational> {
        let numer = match self.peek_kind().clone() {
            TokenKind::Int(n) => {
                self.bump();
                n
            }
            _ => return Err(self.unexpected("a number")),
        };
        if self.eat(&TokenKind::Slash) {
            let pos = self.peek().pos;
            let denom = match self.peek_kind().clone() {
                TokenKind::Int(d) => {
                    self.bump();
                    d
                }
                _ => return Err(self.unexpected("a denominator")),
            };
            if denom.is_zero() {
                return Err(syntax(pos, "denominator must be nonzero"));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn rational(&mut self) -> PResult<RatAst> {
        let pos = self.peek().pos;
        let negative = if self.eat(&TokenKind::Minus) {
            true
        } else {
            self.eat(&TokenKind::Plus);
            false
        };
        let v = self.unsigned_rational()?;
        Ok(RatAst {
            value: if negative { -v } else { v },
            pos,
        })
    }

    fn monomial(&mut self) -> PResult<MonoAst> {
        let pos = self.peek().pos;
        let mut factors = vec![self.factor()?];
        while self.eat(&TokenKind::Star) {
            factors.push(self.factor()?);
        }
        Ok(MonoAst { factors, pos })
    }

    fn factor(&mut self) -> PResult<Factor> {
        let name = self.name()?;
        let exp = if self.eat(&TokenKind::Caret) {
            self.small_int("an exponent")?
        } else {
            1
        };
        Ok(Factor { name, exp })
    }

    fn term(&mut self, negative: bool) -> PResult<TermAst> {
        let pos = self.peek().pos;
        let (coeff, monomial) = match self.peek_kind() {
            TokenKind::Int(_) => {
                let c = self.unsigned_rational()?;
                let m = if self.eat(&TokenKind::Star) {
                    Some(self.monomial()?)
                } else {
                    None
                };
                (c, m)
            }
            TokenKind::Ident(_) => (
                Rational::from_integer(BigInt::from(1)),
                Some(self.monomial()?),
            ),
            _ => return Err(self.unexpected("a term")),
        };
        Ok(TermAst {
            coeff: if negative { -coeff } else { coeff },
            monomial,
            pos,
        })
    }

    fn polynomial(&mut self) -> PResult<PolyAst> {
        let pos = self.peek().pos;
        let negative = if self.eat(&TokenKind::Minus) {
            true
        } else {
            self.eat(&TokenKind::Plus);
            false
        };
        let mut terms = vec![self.term(negative)?];
        loop {
            let negative = match self.peek_kind() {
                TokenKind::Plus => false,
                TokenKind::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push(self.term(negative)?);
        }
        Ok(PolyAst { terms, pos })
    }
}
