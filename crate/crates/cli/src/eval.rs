//! Evaluates the commands of an elaborated scene into a [`Report`].

use std::time::Instant;

use num_traits::One;
use parchern_core::chow_model::GeneratorKind;
use parchern_core::dsl::ast::ComputeKind;
use parchern_core::dsl::{Command, CommandKind, Diagnostic, Scene};
use parchern_core::grothendieck::{
    verify_corollary1, verify_prop1, verify_relation_with, IdentityCheck,
};
use parchern_core::parabolic::ParabolicBundle;
use parchern_core::{Rational, Result};
use rayon::prelude::*;

use crate::report::{
    Class, CommandResult, DiagnosticInfo, GeneratorInfo, IdentityResult, Outcome, ParabolicInfo,
    Report, Status, VarietyInfo, SCHEMA_VERSION,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Test hook: adds a nonzero degree-`i` class to `C~_i` before checking
    /// the projective-bundle relation.
    pub perturb_tilde: Option<u32>,
    pub timings: bool,
}

fn identity(check: &IdentityCheck) -> IdentityResult {
    IdentityResult {
        name: check.name.to_string(),
        passed: check.passed,
        residual: Class::list(&check.residual),
    }
}

fn grothendieck(e: &ParabolicBundle, perturb: Option<u32>) -> Result<Outcome> {
    let mut tilde = e.tilde_c()?;
    if let Some(i) = perturb {
        let ring = e.variety().ring();
        if i >= 1 && i <= e.rank() && i <= ring.cutoff() {
            if let Some(m) = ring.normal_monomials(i).into_iter().next() {
                let bump = ring.term(m, Rational::one());
                tilde[i as usize] = tilde[i as usize].add(&bump)?;
            }
        }
    }
    let check = verify_relation_with(e, &tilde)?;
    Ok(Outcome::Grothendieck {
        passed: check.passed,
        n: check.n.to_string(),
        tilde: Class::list(&check.tilde),
        residual: Class::list(check.residual.coeffs()),
        residual_text: check.residual.to_string(),
    })
}

fn outcome(scene: &Scene, command: &Command, opts: &EvalOptions) -> Result<Outcome> {
    let get = |name: &str| &scene.parabolics[name];
    Ok(match &command.kind {
        CommandKind::Compute { what, target } => {
            let e = get(target);
            match what {
                ComputeKind::Chern => Outcome::Chern {
                    n: e.big_n().to_string(),
                    classes: Class::list(&e.parabolic_chern()?),
                },
                ComputeKind::Ch => Outcome::Ch {
                    parts: Class::list(&e.chern_character()?),
                },
                ComputeKind::CtPoly => {
                    let p = e.chern_polynomial(e.rank())?;
                    Outcome::Ctpoly {
                        polynomial: p.to_string(),
                        coefficients: Class::list(p.coeffs()),
                    }
                }
                ComputeKind::Degree => Outcome::Degree {
                    value: e.parabolic_degree()?.to_string(),
                },
            }
        }
        CommandKind::VerifyGrothendieck { target } => {
            grothendieck(get(target), opts.perturb_tilde)?
        }
        CommandKind::VerifyCorollary1 { target } => {
            let check = verify_corollary1(get(target))?;
            Outcome::Corollary1 {
                passed: check.passed,
                residual: Class::list(&check.residual),
            }
        }
        CommandKind::VerifyProp1 { first, second } => {
            let check = verify_prop1(get(first), get(second))?;
            Outcome::Prop1 {
                passed: check.passed(),
                checks: check.checks().into_iter().map(identity).collect(),
            }
        }
    })
}

/// Runs every command of `scene`. Commands are evaluated in parallel; the
/// results keep source order. Evaluation errors come back as positioned
/// diagnostics alongside the report.
pub fn evaluate(scene: &Scene, opts: &EvalOptions) -> (Report, Vec<Diagnostic>) {
    let results: Vec<CommandResult> = scene
        .commands
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = outcome(scene, c, opts).unwrap_or_else(|e| Outcome::Error {
                message: e.to_string(),
            });
            CommandResult {
                command: c.text(),
                line: c.pos.line,
                column: c.pos.column,
                outcome,
                elapsed_us: opts
                    .timings
                    .then(|| start.elapsed().as_micros().min(u128::from(u64::MAX)) as u64),
            }
        })
        .collect();

    let mut diagnostics = Vec::new();
    for (c, r) in scene.commands.iter().zip(&results) {
        if let Outcome::Error { message } = &r.outcome {
            diagnostics.push(Diagnostic::semantic(
                c.pos,
                format!("`{}` failed: {message}", c.text()),
            ));
        }
    }
    let status = if !diagnostics.is_empty() {
        Status::SemanticError
    } else if results.iter().any(|r| r.outcome.failed_verification()) {
        Status::VerificationFailed
    } else {
        Status::Ok
    };

    let variety = &scene.variety;
    let report = Report {
        schema: SCHEMA_VERSION,
        variety: Some(VarietyInfo {
            name: variety.name().to_string(),
            dim: variety.dim(),
            generators: variety
                .description()
                .generators
                .iter()
                .map(|g| GeneratorInfo {
                    name: g.name.clone(),
                    degree: g.degree,
                    kind: match g.kind {
                        GeneratorKind::Divisor => "divisor",
                        GeneratorKind::Class => "class",
                    },
                })
                .collect(),
        }),
        parabolics: scene
            .parabolics
            .iter()
            .map(|(name, p)| ParabolicInfo {
                name: name.clone(),
                rank: p.rank(),
                n: p.big_n().to_string(),
            })
            .collect(),
        results,
        status,
        exit_code: status.exit_code(),
        diagnostics: diagnostics.iter().map(DiagnosticInfo::from).collect(),
    };
    (report, diagnostics)
}
