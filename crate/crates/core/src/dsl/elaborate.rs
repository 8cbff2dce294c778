//! Turns a parsed [`Program`] into a validated [`Scene`]: the variety, the
//! ordinary and parabolic bundle tables, and the command list.

use std::collections::HashMap;

use indexmap::IndexMap;
use num_traits::{One, Signed, Zero};

use super::ast::*;
use super::diagnostic::{Diagnostic, Pos};
use crate::chow_model::{ChowDescription, NamedMonomial, Variety};
use crate::error::Error;
use crate::graded_ring::{Monomial, RingElement};
use crate::parabolic::{Limits, OrdinaryBundleClass, ParabolicBundle, WeightedSummand};
use crate::rational::Rational;

/// Largest variety dimension accepted from a scene file.
pub const MAX_DIM: u32 = 12;
/// Largest rank accepted for a declared bundle.
pub const MAX_RANK: u32 = 64;
/// Upper bound on the number of monomials of degree at most `dim`.
pub const MAX_MONOMIALS: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Compute { what: ComputeKind, target: String },
    VerifyGrothendieck { target: String },
    VerifyCorollary1 { target: String },
    VerifyProp1 { first: String, second: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub pos: Pos,
}

impl Command {
    /// Canonical source form, e.g. `verify grothendieck E`.
    pub fn text(&self) -> String {
        match &self.kind {
            CommandKind::Compute { what, target } => format!("compute {} {target}", what.keyword()),
            CommandKind::VerifyGrothendieck { target } => format!("verify grothendieck {target}"),
            CommandKind::VerifyCorollary1 { target } => format!("verify corollary1 {target}"),
            CommandKind::VerifyProp1 { first, second } => format!("verify prop1 {first} {second}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub variety: Variety,
    pub bundles: IndexMap<String, OrdinaryBundleClass>,
    pub parabolics: IndexMap<String, ParabolicBundle>,
    pub commands: Vec<Command>,
}

impl Scene {
    /// Appends `verify grothendieck` and `verify corollary1` for every
    /// parabolic bundle, in declaration order.
    pub fn append_verify_all(&mut self, pos: Pos) {
        for name in self.parabolics.keys() {
            self.commands.push(Command {
                kind: CommandKind::VerifyGrothendieck {
                    target: name.clone(),
                },
                pos,
            });
            self.commands.push(Command {
                kind: CommandKind::VerifyCorollary1 {
                    target: name.clone(),
                },
                pos,
            });
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Entity {
    Variety,
    Divisor,
    Class,
    Bundle,
    Parabolic,
}

impl Entity {
    fn describe(self) -> &'static str {
        match self {
            Entity::Variety => "the variety",
            Entity::Divisor => "a divisor component",
            Entity::Class => "a class",
            Entity::Bundle => "a bundle",
            Entity::Parabolic => "a parabolic bundle",
        }
    }
}

struct Elaborator<'a> {
    limits: &'a Limits,
    names: HashMap<String, (Entity, Pos)>,
    errors: Vec<Diagnostic>,
}

pub fn elaborate(program: &Program, limits: &Limits) -> Result<Scene, Vec<Diagnostic>> {
    let mut el = Elaborator {
        limits,
        names: HashMap::new(),
        errors: Vec::new(),
    };
    match el.run(program) {
        Some(scene) if el.errors.is_empty() => Ok(scene),
        _ => {
            if el.errors.is_empty() {
                el.errors.push(Diagnostic::semantic(
                    Pos::new(1, 1),
                    "scene could not be elaborated",
                ));
            }
            el.errors.sort_by_key(|d| d.pos);
            Err(el.errors)
        }
    }
}

fn is_ring_statement(kind: &StmtKind) -> bool {
    matches!(
        kind,
        StmtKind::Divisor { .. }
            | StmtKind::Class { .. }
            | StmtKind::Relation { .. }
            | StmtKind::Integral { .. }
    )
}

fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > cap {
            return u64::MAX;
        }
    }
    acc
}

impl<'a> Elaborator<'a> {
    fn error(&mut self, pos: Pos, msg: impl Into<String>) {
        self.errors.push(Diagnostic::semantic(pos, msg));
    }

    /// Rejects a value whose reduced denominator exceeds the configured limit.
    fn within_limit(&mut self, what: &str, value: &Rational, pos: Pos) -> bool {
        if value.denom() > &self.limits.max_denominator {
            let msg = format!(
                "{what} denominator {} exceeds the limit {}",
                value.denom(),
                self.limits.max_denominator
            );
            self.error(pos, msg);
            return false;
        }
        true
    }

    fn declare(&mut self, name: &Name, entity: Entity) -> bool {
        if name.text == "O" {
            self.error(name.pos, "`O` is reserved for the trivial line bundle");
            return false;
        }
        if let Some((prev, at)) = self.names.get(&name.text) {
            let msg = format!(
                "`{}` is already declared as {} at {}",
                name.text,
                prev.describe(),
                at
            );
            self.error(name.pos, msg);
            return false;
        }
        self.names.insert(name.text.clone(), (entity, name.pos));
        true
    }

    fn run(&mut self, program: &Program) -> Option<Scene> {
        let stmts = &program.statements;
        let (var_name, dim, var_pos) = match stmts.first().map(|s| &s.kind) {
            Some(StmtKind::Variety { name, dim }) => (name.clone(), *dim, stmts[0].pos),
            Some(_) => {
                self.error(stmts[0].pos, "the first statement must declare the variety");
                return None;
            }
            None => {
                self.error(
                    Pos::new(1, 1),
                    "empty scene: expected a variety declaration",
                );
                return None;
            }
        };
        self.declare(&var_name, Entity::Variety);
        if dim == 0 || dim > MAX_DIM {
            self.error(var_pos, format!("dimension must lie in 1..={MAX_DIM}"));
            return None;
        }

        let mut desc = ChowDescription::new(var_name.text.clone(), dim);
        let mut first_relation = None;
        let mut integral_seen: HashMap<Vec<u32>, Pos> = HashMap::new();
        let mut ring_part_done = false;
        let mut body_start = stmts.len();

        for (idx, s) in stmts.iter().enumerate().skip(1) {
            if !is_ring_statement(&s.kind) {
                if !matches!(s.kind, StmtKind::Variety { .. }) {
                    ring_part_done = true;
                    body_start = body_start.min(idx);
                }
                if let StmtKind::Variety { name, .. } = &s.kind {
                    self.error(
                        name.pos,
                        format!("a second variety `{}`; a scene has exactly one", name.text),
                    );
                }
                continue;
            }
            if ring_part_done {
                self.error(
                    s.pos,
                    "divisor, class, relation and integral statements must precede bundles and commands",
                );
                continue;
            }
            match &s.kind {
                StmtKind::Divisor { names } => {
                    for n in names {
                        if self.declare(n, Entity::Divisor) {
                            desc = desc.divisor(&n.text);
                        }
                    }
                }
                StmtKind::Class { name, degree } => {
                    if *degree == 0 {
                        self.error(s.pos, "class degree must be at least 1");
                    } else if self.declare(name, Entity::Class) {
                        desc = desc.class(&name.text, *degree);
                    }
                }
                StmtKind::Relation { lhs, rhs } => {
                    first_relation.get_or_insert(s.pos);
                    if let Some((lhs_named, rhs_named)) = self.relation(&desc, lhs, rhs) {
                        desc = desc.relation(lhs_named, rhs_named);
                    }
                }
                StmtKind::Integral { monomial, value } => {
                    let Some((named, deg, exps)) = self.ring_monomial(&desc, monomial) else {
                        continue;
                    };
                    if !self.within_limit("integral", &value.value, value.pos) {
                        continue;
                    }
                    if deg != u64::from(dim) {
                        self.error(
                            monomial.pos,
                            format!("integral of `{monomial}` needs degree {dim}, found {deg}"),
                        );
                    } else if let Some(prev) = integral_seen.get(&exps) {
                        let msg = format!("integral of `{monomial}` already given at {prev}");
                        self.error(monomial.pos, msg);
                    } else {
                        integral_seen.insert(exps, monomial.pos);
                        desc = desc.integral(named, value.value.clone());
                    }
                }
                _ => unreachable!("ring statement"),
            }
        }
        if !self.errors.is_empty() {
            return None;
        }

        let g = desc.generators.len() as u64;
        if binomial_capped(g + u64::from(dim), u64::from(dim), MAX_MONOMIALS) > MAX_MONOMIALS {
            self.error(
                var_pos,
                format!("ring too large: more than {MAX_MONOMIALS} monomials up to degree {dim}"),
            );
            return None;
        }
        let variety = match Variety::new(desc) {
            Ok(v) => v,
            Err(e) => {
                let pos = match e {
                    Error::NonTerminating { .. } | Error::InhomogeneousRelation { .. } => {
                        first_relation.unwrap_or(var_pos)
                    }
                    _ => var_pos,
                };
                self.error(pos, e.to_string());
                return None;
            }
        };

        let mut scene = Scene {
            variety,
            bundles: IndexMap::new(),
            parabolics: IndexMap::new(),
            commands: Vec::new(),
        };
        for s in &stmts[body_start..] {
            match &s.kind {
                StmtKind::Bundle { name, rank, chern } => {
                    self.bundle(&mut scene, name, *rank, chern)
                }
                StmtKind::Parabolic { name, summands } => {
                    self.parabolic(&mut scene, name, summands)
                }
                StmtKind::Command(c) => self.command(&mut scene, c, s.pos),
                _ => {}
            }
        }
        Some(scene)
    }

    /// Resolves a monomial against the declared generators, returning the
    /// named form, its total degree and its exponent vector.
    fn ring_monomial(
        &mut self,
        desc: &ChowDescription,
        m: &MonoAst,
    ) -> Option<(NamedMonomial, u64, Vec<u32>)> {
        let mut exps = vec![0u32; desc.generators.len()];
        let mut degree: u64 = 0;
        let mut ok = true;
        for f in &m.factors {
            match desc.generators.iter().position(|g| g.name == f.name.text) {
                Some(i) => {
                    match exps[i].checked_add(f.exp) {
                        Some(e) => exps[i] = e,
                        None => {
                            self.error(f.name.pos, "exponent too large");
                            ok = false;
                        }
                    }
                    degree = degree
                        .saturating_add(u64::from(desc.generators[i].degree) * u64::from(f.exp));
                }
                None => {
                    let msg = match self.names.get(&f.name.text) {
                        Some((entity, _)) => format!(
                            "`{}` is {}, not a ring generator",
                            f.name.text,
                            entity.describe()
                        ),
                        None => format!("undeclared generator `{}`", f.name.text),
                    };
                    self.error(f.name.pos, msg);
                    ok = false;
                }
            }
        }
        if !ok {
            return None;
        }
        let named = desc
            .generators
            .iter()
            .zip(&exps)
            .filter(|(_, e)| **e > 0)
            .map(|(g, e)| (g.name.clone(), *e))
            .collect();
        Some((named, degree, exps))
    }

    fn relation(
        &mut self,
        desc: &ChowDescription,
        lhs: &MonoAst,
        rhs: &PolyAst,
    ) -> Option<(NamedMonomial, Vec<(Rational, NamedMonomial)>)> {
        let (lhs_named, d, _) = self.ring_monomial(desc, lhs)?;
        if d == 0 {
            self.error(lhs.pos, "relation left side must have positive degree");
            return None;
        }
        if d > u64::from(desc.dim) {
            self.error(
                lhs.pos,
                format!(
                    "relation left side `{lhs}` has degree {d}, above the dimension {}",
                    desc.dim
                ),
            );
            return None;
        }
        let mut out = Vec::new();
        let mut ok = true;
        for t in &rhs.terms {
            if !self.within_limit("coefficient", &t.coeff, t.pos) {
                ok = false;
                continue;
            }
            let (named, deg) = match &t.monomial {
                Some(m) => match self.ring_monomial(desc, m) {
                    Some((named, deg, _)) => (named, deg),
                    None => {
                        ok = false;
                        continue;
                    }
                },
                None => (Vec::new(), 0),
            };
            if deg != d && !t.coeff.is_zero() {
                self.error(
                    t.pos,
                    format!(
                        "inhomogeneous relation: term has degree {deg}, left side has degree {d}"
                    ),
                );
                ok = false;
                continue;
            }
            if named == lhs_named && !t.coeff.is_zero() {
                self.error(t.pos, format!("relation for `{lhs}` refers to itself"));
                ok = false;
                continue;
            }
            out.push((t.coeff.clone(), named));
        }
        ok.then_some((lhs_named, out))
    }

    /// Converts a polynomial over the declared generators into a ring element.
    /// Terms whose degree exceeds the dimension vanish.
    fn ring_polynomial(
        &mut self,
        variety: &Variety,
        p: &PolyAst,
    ) -> Option<(RingElement, Vec<(u64, Pos)>)> {
        let desc = variety.description().clone();
        let ring = variety.ring();
        let mut terms = Vec::new();
        let mut degrees = Vec::new();
        let mut ok = true;
        for t in &p.terms {
            if !self.within_limit("coefficient", &t.coeff, t.pos) {
                ok = false;
                continue;
            }
            let (exps, deg) = match &t.monomial {
                Some(m) => match self.ring_monomial(&desc, m) {
                    Some((_, deg, exps)) => (exps, deg),
                    None => {
                        ok = false;
                        continue;
                    }
                },
                None => (vec![0; desc.generators.len()], 0),
            };
            degrees.push((deg, t.pos));
            if deg <= u64::from(variety.dim()) {
                terms.push((Monomial::from_exponents(exps), t.coeff.clone()));
            }
        }
        ok.then(|| (ring.from_terms(terms), degrees))
    }

    fn bundle(&mut self, scene: &mut Scene, name: &Name, rank: u32, chern: &PolyAst) {
        if !self.declare(name, Entity::Bundle) {
            return;
        }
        if rank == 0 || rank > MAX_RANK {
            self.error(name.pos, format!("rank must lie in 1..={MAX_RANK}"));
            return;
        }
        let Some((c, degrees)) = self.ring_polynomial(&scene.variety, chern) else {
            return;
        };
        if !c.constant_term().is_one() {
            self.error(
                chern.pos,
                format!(
                    "invalid chern polynomial: constant term must be 1, found {}",
                    c.constant_term()
                ),
            );
            return;
        }
        for k in (rank + 1)..=scene.variety.dim() {
            let part = c.graded_part(k).expect("k within cutoff");
            if !part.is_zero() {
                let pos = degrees
                    .iter()
                    .find(|(d, _)| *d == u64::from(k))
                    .map(|(_, p)| *p)
                    .unwrap_or(chern.pos);
                self.error(
                    pos,
                    format!(
                        "invalid chern polynomial: degree-{k} part `{part}` exceeds rank {rank}"
                    ),
                );
                return;
            }
        }
        match OrdinaryBundleClass::new(rank, c) {
            Ok(b) => {
                scene.bundles.insert(name.text.clone(), b);
            }
            Err(e) => self.error(chern.pos, format!("invalid chern polynomial: {e}")),
        }
    }

    fn parabolic(&mut self, scene: &mut Scene, name: &Name, summands: &[SummandAst]) {
        if !self.declare(name, Entity::Parabolic) {
            return;
        }
        let mut built = Vec::with_capacity(summands.len());
        let mut ok = true;
        for s in summands {
            let bundle = if s.bundle.text == "O" {
                OrdinaryBundleClass::trivial(scene.variety.ring(), 1).expect("trivial line bundle")
            } else if let Some(b) = scene.bundles.get(&s.bundle.text) {
                b.clone()
            } else {
                let msg = match self.names.get(&s.bundle.text) {
                    Some((entity, _)) => format!(
                        "`{}` is {}; summands must be ordinary bundles",
                        s.bundle.text,
                        entity.describe()
                    ),
                    None => format!("undeclared bundle `{}`", s.bundle.text),
                };
                self.error(s.bundle.pos, msg);
                ok = false;
                continue;
            };
            let mut weights: Vec<(String, Rational)> = Vec::new();
            for w in &s.weights {
                let d = &w.divisor;
                if scene.variety.divisor_position(&d.text).is_none() {
                    let msg = match self.names.get(&d.text) {
                        Some((entity, _)) => {
                            format!(
                                "`{}` is {}, not a divisor component",
                                d.text,
                                entity.describe()
                            )
                        }
                        None => format!("undeclared divisor `{}`", d.text),
                    };
                    self.error(d.pos, msg);
                    ok = false;
                    continue;
                }
                if weights.iter().any(|(n, _)| n == &d.text) {
                    self.error(
                        d.pos,
                        format!("weight on `{}` given twice in one summand", d.text),
                    );
                    ok = false;
                    continue;
                }
                let v = &w.value.value;
                if v.is_negative() || *v >= Rational::one() {
                    self.error(w.value.pos, format!("weight must lie in [0,1), found {v}"));
                    ok = false;
                    continue;
                }
                if !self.within_limit("weight", v, w.value.pos) {
                    ok = false;
                    continue;
                }
                weights.push((d.text.clone(), v.clone()));
            }
            built.push(WeightedSummand { bundle, weights });
        }
        if !ok {
            return;
        }
        let rank: u64 = built.iter().map(|s| u64::from(s.bundle.rank())).sum();
        if rank > u64::from(MAX_RANK) {
            self.error(name.pos, format!("total rank {rank} exceeds {MAX_RANK}"));
            return;
        }
        match ParabolicBundle::with_limits(&scene.variety, built, self.limits) {
            Ok(p) => {
                scene.parabolics.insert(name.text.clone(), p);
            }
            Err(e) => self.error(name.pos, e.to_string()),
        }
    }

    fn parabolic_target(&mut self, scene: &Scene, target: &Name) -> bool {
        if scene.parabolics.contains_key(&target.text) {
            return true;
        }
        let msg = match self.names.get(&target.text) {
            Some((entity, _)) => format!(
                "`{}` is {}, not a parabolic bundle",
                target.text,
                entity.describe()
            ),
            None => format!("undeclared parabolic bundle `{}`", target.text),
        };
        self.error(target.pos, msg);
        false
    }

    fn command(&mut self, scene: &mut Scene, c: &CommandAst, pos: Pos) {
        match c {
            CommandAst::Compute { kind, target } => {
                if !self.parabolic_target(scene, target) {
                    return;
                }
                if *kind == ComputeKind::Degree {
                    let variety = &scene.variety;
                    if variety.dim() != 1 {
                        self.error(
                            pos,
                            format!(
                                "`compute degree` needs a curve; `{}` has dimension {}",
                                variety.name(),
                                variety.dim()
                            ),
                        );
                        return;
                    }
                    if let Err(e) = scene.parabolics[&target.text].parabolic_degree() {
                        let msg = match e {
                            Error::MissingIntegral(m) => format!("no integral declared for `{m}`"),
                            other => other.to_string(),
                        };
                        self.error(pos, msg);
                        return;
                    }
                }
                scene.commands.push(Command {
                    kind: CommandKind::Compute {
                        what: *kind,
                        target: target.text.clone(),
                    },
                    pos,
                });
            }
            CommandAst::VerifyGrothendieck { target } | CommandAst::VerifyCorollary1 { target } => {
                let grothendieck = matches!(c, CommandAst::VerifyGrothendieck { .. });
                let make = |t: String| {
                    if grothendieck {
                        CommandKind::VerifyGrothendieck { target: t }
                    } else {
                        CommandKind::VerifyCorollary1 { target: t }
                    }
                };
                match target {
                    Some(t) => {
                        if self.parabolic_target(scene, t) {
                            scene.commands.push(Command {
                                kind: make(t.text.clone()),
                                pos,
                            });
                        }
                    }
                    None => {
                        let names: Vec<String> = scene.parabolics.keys().cloned().collect();
                        if names.is_empty() {
                            self.error(pos, "no parabolic bundles declared yet");
                        }
                        for n in names {
                            scene.commands.push(Command { kind: make(n), pos });
                        }
                    }
                }
            }
            CommandAst::VerifyProp1 { first, second } => {
                let a = self.parabolic_target(scene, first);
                let b = self.parabolic_target(scene, second);
                if a && b {
                    scene.commands.push(Command {
                        kind: CommandKind::VerifyProp1 {
                            first: first.text.clone(),
                            second: second.text.clone(),
                        },
                        pos,
                    });
                }
            }
        }
    }
}
