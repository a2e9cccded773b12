use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lda_core::apps::{reduce_to_masters, residue_class_basis, SchemeProblem};
use lda_core::diff::DiffTerm;
use lda_core::frontend::{load_system, parse_expression, Format, Renderer, SystemSpec};
use lda_core::janet::janet_basis;
use lda_core::oracle::{cross_check, probe_terms};
use lda_core::{Error, Result};

/// Janet bases for linear difference systems.
#[derive(Parser)]
#[command(name = "lda", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Janet basis of a system (Groebner basis with --reduced).
    Basis {
        file: PathBuf,
        #[arg(long)]
        reduced: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Express a term through the master terms.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        factor: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Standard terms that survive the boundary conditions.
    Masters {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Difference scheme for a conservation-law problem file.
    Scheme {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Cross-check the basis against brute-force linear algebra.
    Verify {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    #[arg(long)]
    latex: bool,
}

impl Output {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.latex {
            Format::Latex
        } else {
            Format::Text
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_mathematical() { 2 } else { 1 })
        }
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Basis { file, reduced, out } => basis(&load_system(file)?, reduced, out.format()),
        Command::Reduce {
            file,
            target,
            factor,
            out,
        } => reduce(&load_system(file)?, &target, factor, out.format()),
        Command::Masters { file, json } => masters(&load_system(file)?, json),
        Command::Scheme { file, out } => scheme(&SchemeProblem::load(file)?, out.format()),
        Command::Verify { file, degree } => verify(&load_system(file)?, degree),
    }
}

fn join(lines: Vec<String>, format: Format) -> String {
    if format == Format::Json {
        format!("[\n{}\n]", lines.join(",\n"))
    } else {
        lines.join("\n")
    }
}

fn basis(spec: &SystemSpec, reduced: bool, format: Format) -> Result<String> {
    let b = janet_basis(&spec.equations, &spec.ranking)?;
    let r = Renderer::new(&spec.symbols, &spec.functions);
    if reduced {
        let lines = b
            .reduced_groebner_basis()
            .iter()
            .map(|p| r.diff_poly_as(p, &spec.ranking, format))
            .collect();
        return Ok(join(lines, format));
    }
    let lines = b
        .elements()
        .iter()
        .map(|e| {
            let mult: Vec<&str> = e
                .multiplicative()
                .iter()
                .map(|&v| spec.symbols.name(v))
                .collect();
            let body = r.diff_poly_as(e.poly(), &spec.ranking, format);
            match format {
                Format::Json => format!("{{\"polynomial\": {body}, \"multiplicative\": {mult:?}}}"),
                _ => format!("{body}    [{}]", mult.join(", ")),
            }
        })
        .collect();
    Ok(join(lines, format))
}

fn parse_target(spec: &SystemSpec, text: &str) -> Result<DiffTerm> {
    let p = parse_expression(text, spec.scope())?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((t, c)), None) if c.is_one() && p.constant().is_zero() => Ok(t.clone()),
        _ => Err(Error::Validation {
            path: "--target".into(),
            msg: format!("expected a single term such as f(k+3,n+2), got `{text}`"),
        }),
    }
}

fn reduce(spec: &SystemSpec, target: &str, factor: bool, format: Format) -> Result<String> {
    let target = parse_target(spec, target)?;
    let b = janet_basis(&spec.equations, &spec.ranking)?;
    let report = reduce_to_masters(&target, &b, &spec.boundary, factor);
    Ok(Renderer::new(&spec.symbols, &spec.functions).report(&report, &spec.ranking, format))
}

fn masters(spec: &SystemSpec, json: bool) -> Result<String> {
    let b = janet_basis(&spec.equations, &spec.ranking)?;
    let ms = residue_class_basis(&b, &spec.boundary)?;
    let r = Renderer::new(&spec.symbols, &spec.functions);
    if json {
        let names: Vec<String> = ms.iter().map(|t| r.term(t)).collect();
        Ok(format!("{names:?}"))
    } else {
        Ok(r.terms_list(&ms))
    }
}

fn scheme(problem: &SchemeProblem, format: Format) -> Result<String> {
    let pde = &problem.pde;
    let ranking = pde.elimination_ranking();
    let r = Renderer::new(&pde.symbols, &pde.functions);
    let system = problem.discretize()?;
    let scheme = lda_core::apps::generate_scheme(&system, pde.unknown(), &ranking)?;
    let render = |ps: &[lda_core::diff::DiffPoly]| -> Vec<String> {
        ps.iter()
            .map(|p| r.diff_poly_as(p, &ranking, format))
            .collect()
    };
    Ok(match format {
        Format::Json => format!(
            "{{\n\"system\": {},\n\"scheme\": {}\n}}",
            join(render(&system), format),
            join(render(&scheme), format)
        ),
        _ => join(render(&scheme), format),
    })
}

fn verify(spec: &SystemSpec, degree: u32) -> Result<String> {
    let b = janet_basis(&spec.equations, &spec.ranking)?;
    let nsyms = spec.symbols.len();
    let top = b
        .leading_terms()
        .iter()
        .map(|t| t.degree())
        .max()
        .unwrap_or(0);
    let probes = probe_terms(
        spec.ranking.num_functions(),
        spec.ranking.num_variables(),
        top + 1,
        nsyms,
    );
    let check = cross_check(&spec.equations, &b, &probes, degree);
    let r = Renderer::new(&spec.symbols, &spec.functions);
    let mut lines = vec![
        format!("degree bound: {degree}"),
        format!(
            "basis elements in the span: {}/{}",
            b.len() - check.non_members.len(),
            b.len()
        ),
        format!("probes agreeing: {}/{}", check.agreed, probes.len()),
        format!("probes undecided at this bound: {}", check.flagged.len()),
    ];
    for p in &check.non_members {
        lines.push(format!("not in span: {}", r.diff_poly(p, &spec.ranking)));
    }
    for p in &check.mismatches {
        lines.push(format!("mismatch: {}", r.diff_poly(p, &spec.ranking)));
    }
    if check.passed() {
        Ok(lines.join("\n"))
    } else {
        eprintln!("{}", lines.join("\n"));
        Err(Error::VerificationFailed(format!(
            "{} mismatches and {} basis elements outside the span at bound {degree}; a larger bound may be needed",
            check.mismatches.len(),
            check.non_members.len()
        )))
    }
}
