//! Syntax tree of a scene file, with a canonical pretty-printer.

use std::fmt;

use num_traits::{One, Signed};

use super::diagnostic::Pos;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>, pos: Pos) -> Self {
        Name {
            text: text.into(),
            pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub name: Name,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoAst {
    pub factors: Vec<Factor>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermAst {
    /// Signed coefficient; `D1` alone has coefficient 1.
    pub coeff: Rational,
    pub monomial: Option<MonoAst>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAst {
    pub terms: Vec<TermAst>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatAst {
    pub value: Rational,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAst {
    pub divisor: Name,
    pub value: RatAst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandAst {
    /// A declared bundle, or `O` for the trivial line bundle.
    pub bundle: Name,
    pub weights: Vec<WeightAst>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComputeKind {
    Chern,
    Ch,
    CtPoly,
    Degree,
}

impl ComputeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ComputeKind::Chern => "chern",
            ComputeKind::Ch => "ch",
            ComputeKind::CtPoly => "ctpoly",
            ComputeKind::Degree => "degree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandAst {
    Compute {
        kind: ComputeKind,
        target: Name,
    },
    /// Without a target: every parabolic bundle declared so far.
    VerifyGrothendieck {
        target: Option<Name>,
    },
    VerifyCorollary1 {
        target: Option<Name>,
    },
    VerifyProp1 {
        first: Name,
        second: Name,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Variety {
        name: Name,
        dim: u32,
    },
    Divisor {
        names: Vec<Name>,
    },
    Class {
        name: Name,
        degree: u32,
    },
    Relation {
        lhs: MonoAst,
        rhs: PolyAst,
    },
    Integral {
        monomial: MonoAst,
        value: RatAst,
    },
    Bundle {
        name: Name,
        rank: u32,
        chern: PolyAst,
    },
    Parabolic {
        name: Name,
        summands: Vec<SummandAst>,
    },
    Command(CommandAst),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub statements: Vec<Stmt>,
}

impl Program {
    /// Copy with every position reset, for comparing trees from different
    /// sources.
    pub fn without_positions(&self) -> Program {
        let mut p = self.clone();
        let z = Pos::default();
        let name = |n: &mut Name| n.pos = z;
        let mono = |m: &mut MonoAst| {
            m.pos = z;
            m.factors.iter_mut().for_each(|f| f.name.pos = z);
        };
        let poly = |p: &mut PolyAst| {
            p.pos = z;
            for t in &mut p.terms {
                t.pos = z;
                if let Some(m) = &mut t.monomial {
                    mono(m);
                }
            }
        };
        for s in &mut p.statements {
            s.pos = z;
            match &mut s.kind {
                StmtKind::Variety { name: n, .. } | StmtKind::Class { name: n, .. } => name(n),
                StmtKind::Divisor { names } => names.iter_mut().for_each(name),
                StmtKind::Relation { lhs, rhs } => {
                    mono(lhs);
                    poly(rhs);
                }
                StmtKind::Integral { monomial, value } => {
                    mono(monomial);
                    value.pos = z;
                }
                StmtKind::Bundle { name: n, chern, .. } => {
                    name(n);
                    poly(chern);
                }
                StmtKind::Parabolic { name: n, summands } => {
                    name(n);
                    for s in summands {
                        name(&mut s.bundle);
                        for w in &mut s.weights {
                            name(&mut w.divisor);
                            w.value.pos = z;
                        }
                    }
                }
                StmtKind::Command(c) => match c {
                    CommandAst::Compute { target, .. } => name(target),
                    CommandAst::VerifyGrothendieck { target }
                    | CommandAst::VerifyCorollary1 { target } => {
                        if let Some(t) = target {
                            name(t);
                        }
                    }
                    CommandAst::VerifyProp1 { first, second } => {
                        name(first);
                        name(second);
                    }
                },
            }
        }
        p
    }
}

impl fmt::Display for MonoAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(&factor.name.text)?;
            if factor.exp != 1 {
                write!(f, "^{}", factor.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = t.coeff.abs();
            match &t.monomial {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => write!(f, "{m}")?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for CommandAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandAst::Compute { kind, target } => {
                write!(f, "compute {} {}", kind.keyword(), target.text)
            }
            CommandAst::VerifyGrothendieck { target } => {
                f.write_str("verify grothendieck")?;
                if let Some(t) = target {
                    write!(f, " {}", t.text)?;
                }
                Ok(())
            }
            CommandAst::VerifyCorollary1 { target } => {
                f.write_str("verify corollary1")?;
                if let Some(t) = target {
                    write!(f, " {}", t.text)?;
                }
                Ok(())
            }
            CommandAst::VerifyProp1 { first, second } => {
                write!(f, "verify prop1 {} {}", first.text, second.text)
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Variety { name, dim } => write!(f, "variety {} dim {dim};", name.text),
            StmtKind::Divisor { names } => {
                let list: Vec<&str> = names.iter().map(|n| n.text.as_str()).collect();
                write!(f, "divisor {};", list.join(", "))
            }
            StmtKind::Class { name, degree } => write!(f, "class {} deg {degree};", name.text),
            StmtKind::Relation { lhs, rhs } => write!(f, "relation {lhs} = {rhs};"),
            StmtKind::Integral { monomial, value } => {
                write!(f, "integral {monomial} = {};", value.value)
            }
            StmtKind::Bundle { name, rank, chern } => {
                write!(f, "bundle {} rank {rank} chern {chern};", name.text)
            }
            StmtKind::Parabolic { name, summands } => {
                write!(f, "parabolic {} = ", name.text)?;
                for (i, s) in summands.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" (+) ")?;
                    }
                    let weights: Vec<String> = s
                        .weights
                        .iter()
                        .map(|w| format!("{}: {}", w.divisor.text, w.value.value))
                        .collect();
                    write!(f, "{}{{{}}}", s.bundle.text, weights.join(", "))?;
                }
                f.write_str(";")
            }
            StmtKind::Command(c) => write!(f, "{c};"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
