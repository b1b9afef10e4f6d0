//! `omegacat`: command-line front end over the `omegacat` library.
//!
//! Every command prints one JSON document on standard output. Exit codes:
//! 0 when the check passes or the question is decided, 1 when a law fails,
//! 2 on malformed input or bad usage.

mod fixtures;
mod report;

use clap::{Args, Parser, Subcommand};
use omegacat::adjunction::{check_strict_adjunction, hom_iso_from_unit_counit};
use omegacat::construct::{approximation, hom_category, level_category, opposite};
use omegacat::duality::{check_concrete_duality, check_initial_lifting, synthesize_dual_adjunction};
use omegacat::equivalence::{classify_arrow, Equiv};
use omegacat::functor::{check_functor, check_modification, functor_properties};
use omegacat::homotopy::formal_homotopy_group;
use omegacat::io::{self, Loader};
use omegacat::limits::{find_strict_colimit, find_strict_limit};
use omegacat::presheaf::{check_representable_strict, check_representable_weak, validate_presheaf};
use omegacat::validate::{validate_globular, validate_strict};
use omegacat::{Category, CellIx, Error};
use report::Report;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "omegacat", version, about = "Finite truncated strict ω-categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the resulting document here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Globular and strict axioms of a presentation.
    Validate { file: PathBuf },
    /// The hom-category `L(x, y)`.
    Hom {
        file: PathBuf,
        x: String,
        y: String,
        #[command(flatten)]
        out: Output,
    },
    /// The opposite category.
    Op {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The n-th approximation (quotient by `~` above degree n).
    Approx {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The level-n category.
    Level {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Decide `x ~ y`, with a minimal witness tree.
    Equiv {
        file: PathBuf,
        x: String,
        y: String,
        #[arg(long)]
        degree: bool,
    },
    /// Monic, epic and equivalence tests for an arrow.
    Classify { file: PathBuf, cell: String },
    /// Functor laws, weak (`~`) unless `--strict`.
    CheckFunctor {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Modification laws.
    CheckMod { file: PathBuf },
    /// Representability of a presheaf.
    Represent {
        file: PathBuf,
        #[arg(long, requires = "witness")]
        weak: bool,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Strict limit (or colimit) of a diagram.
    Limit {
        file: PathBuf,
        #[arg(long)]
        colimit: bool,
    },
    /// Formal homotopy group at a point `x: I → a`.
    Pi {
        file: PathBuf,
        #[arg(long = "I")]
        i: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: usize,
        /// Unquotiented table.
        #[arg(long)]
        raw: bool,
    },
    /// Strict adjunction laws and the hom-isomorphisms.
    CheckAdj { file: PathBuf },
    /// Concrete dual adjunctions.
    Duality {
        #[command(subcommand)]
        action: DualityAction,
    },
    /// Write the fixture corpus with checksums.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
        /// Largest VecF2 dimension.
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

#[derive(Subcommand)]
enum DualityAction {
    /// Synthesize the dual adjunction and its witness.
    Synth {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Re-verify a witness file.
    Check { file: PathBuf },
}

fn object(p: &Category, name: &str) -> omegacat::Result<CellIx> {
    let v = p.parse(name)?;
    if p.deg(v) != 0 {
        return Err(Error::Malformed(format!("`{name}` is not an object of {}", p.name())));
    }
    Ok(v.base)
}

fn emit(text: &str, out: &Output) -> omegacat::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Construction commands print the category itself unless `-o` is given.
fn construction(name: &str, p: Category, out: &Output) -> omegacat::Result<Option<Report>> {
    let text = io::category_to_string(&p);
    emit(&text, out)?;
    Ok(out.output.as_ref().map(|path| {
        Report::new(name).with(json!({
            "output": path.display().to_string(),
            "name": p.name(),
            "cells": p.len(),
            "sha256": fixtures::sha256_hex(text.as_bytes()),
        }))
    }))
}

fn category(path: &Path) -> omegacat::Result<Category> {
    let mut l = Loader::new();
    Ok((*l.category(path)?).clone())
}

fn run(cmd: Command) -> omegacat::Result<Option<Report>> {
    let mut loader = Loader::new();
    Ok(Some(match cmd {
        Command::Validate { file } => {
            loader.eager_validation = false;
            let p = loader.category(&file)?;
            let mut r = validate_globular(&p);
            r.merge("", validate_strict(&p));
            Report::new("validate").absorb(r).with(json!({"name": p.name(), "cells": p.len()}))
        }
        Command::Hom { file, x, y, out } => {
            let p = category(&file)?;
            return construction("hom", hom_category(&p, object(&p, &x)?, object(&p, &y)?)?, &out);
        }
        Command::Op { file, out } => return construction("op", opposite(&category(&file)?), &out),
        Command::Approx { file, n, out } => return construction("approx", approximation(&category(&file)?, n)?, &out),
        Command::Level { file, n, out } => return construction("level", level_category(&category(&file)?, n)?, &out),
        Command::Equiv { file, x, y, degree } => {
            let p = category(&file)?;
            let (x, y) = (p.parse(&x)?, p.parse(&y)?);
            let mut eq = Equiv::new(&p);
            let w = eq.witness(x, y)?;
            let mut body = json!({"equivalent": w.is_some()});
            if let Some(w) = &w {
                body["witness"] = serde_json::to_value(w.view(&p)).expect("serializable");
                if degree {
                    body["degree"] = json!(w.degree(&p));
                }
            }
            Report::new("equiv").with(body)
        }
        Command::Classify { file, cell } => {
            let p = category(&file)?;
            let f = p.parse(&cell)?;
            let class = classify_arrow(&mut Equiv::new(&p), f)?;
            Report::new("classify").with(class)
        }
        Command::CheckFunctor { file, strict } => {
            let f = loader.functor(&file)?;
            let (faithful, full, essentially_surjective) = functor_properties(&f);
            Report::new("check-functor").absorb(check_functor(&f, strict)).with(json!({
                "name": f.name,
                "strict": strict,
                "faithful": faithful,
                "full": full,
                "essentially_surjective": essentially_surjective,
            }))
        }
        Command::CheckMod { file } => {
            let m = loader.modification(&file)?;
            Report::new("check-mod").absorb(check_modification(&m)).with(json!({"level": m.level}))
        }
        Command::Represent { file, weak, witness } => {
            let fp = loader.presheaf(&file)?;
            let rep = Report::new("represent").absorb(validate_presheaf(&fp));
            if !rep.violations.is_empty() {
                return Ok(Some(rep));
            }
            match (weak, witness) {
                (true, Some(w)) => {
                    let (a, beta, inverses) = loader.represent_witness(&w, &fp)?;
                    match check_representable_weak(&fp, a, beta, &inverses)? {
                        Some(pairs) => rep.with(json!({"representable": true, "a": fp.base.id(a), "pairs": pairs})),
                        None => rep.fail("the witness does not exhibit weak representability"),
                    }
                }
                _ => match check_representable_strict(&fp)? {
                    Some(r) => rep.with(json!({
                        "representable": true,
                        "a": fp.base.id(r.a),
                        "beta": fp.values[r.a].show(r.beta),
                    })),
                    None => rep.with(json!({"representable": false})),
                },
            }
        }
        Command::Limit { file, colimit } => {
            let d = loader.diagram(&file)?;
            let found = if colimit { find_strict_colimit(&d)? } else { find_strict_limit(&d)? };
            let name = if colimit { "colimit" } else { "limit" };
            match found {
                Some((_, cert)) => Report::new("limit").with(json!({"exists": true, "kind": name, "certificate": cert})),
                None => Report::new("limit").with(json!({"exists": false, "kind": name})),
            }
        }
        Command::Pi { file, i, a, x, n, raw } => {
            let p = category(&file)?;
            let (iv, av, xv) = (object(&p, &i)?, object(&p, &a)?, p.parse(&x)?);
            let g = formal_homotopy_group(&p, iv, av, xv, n, !raw)?;
            Report::new("pi").with(json!({"n": n, "quotient": !raw, "group": g.view(&p)}))
        }
        Command::CheckAdj { file } => {
            let adj = loader.adjunction(&file)?;
            let mut rep = check_strict_adjunction(&adj);
            let sizes = if rep.passed() {
                let (isos, r) = hom_iso_from_unit_counit(&adj)?;
                rep.merge("θ", r);
                isos.sizes()
            } else {
                Vec::new()
            };
            Report::new("check-adj").absorb(rep).with(json!({"hom_sizes": sizes}))
        }
        Command::Duality { action: DualityAction::Synth { file, out } } => {
            let input = loader.duality(&file)?;
            match synthesize_dual_adjunction(&input) {
                Ok(w) => {
                    let rep = Report::new("duality synth").absorb(w.report.clone());
                    if rep.violations.is_empty() {
                        let text = io::to_canonical_string(&io::duality_witness_file(&input, &w));
                        emit(&text, &out)?;
                        if out.output.is_none() {
                            return Ok(None);
                        }
                    }
                    rep.with(json!({"hom_sizes": w.hom_isos.sizes(), "witness": w.view()}))
                }
                Err(e) if e.is_input_error() => return Err(e),
                Err(e) => Report::from_error("duality synth", &e).absorb(check_initial_lifting(&input)),
            }
        }
        Command::Duality { action: DualityAction::Check { file } } => {
            let (input, adj, w) = loader.duality_witness(&file)?;
            let mut rep = check_initial_lifting(&input);
            rep.merge("", check_strict_adjunction(&adj));
            if rep.passed() {
                let (isos, r) = hom_iso_from_unit_counit(&adj)?;
                rep.merge("θ", r);
                rep.check("hom-sizes", isos.sizes() == w.hom_sizes, &[]);
            }
            rep.merge("concrete", check_concrete_duality(&input, &adj.f, &adj.g));
            Report::new("duality check").absorb(rep)
        }
        Command::Fixtures { out, d } => {
            let written = fixtures::write(&out, d)?;
            Report::new("fixtures").with(json!({"directory": out.display().to_string(), "files": written}))
        }
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = command_name(&cli.command);
    match run(cli.command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(rep)) => {
            print!("{}", io::to_canonical_string(&rep));
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) if e.is_input_error() => {
            eprintln!("omegacat {command}: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            let rep = Report::from_error(command, &e);
            print!("{}", io::to_canonical_string(&rep));
            ExitCode::from(1)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Hom { .. } => "hom",
        Command::Op { .. } => "op",
        Command::Approx { .. } => "approx",
        Command::Level { .. } => "level",
        Command::Equiv { .. } => "equiv",
        Command::Classify { .. } => "classify",
        Command::CheckFunctor { .. } => "check-functor",
        Command::CheckMod { .. } => "check-mod",
        Command::Represent { .. } => "represent",
        Command::Limit { .. } => "limit",
        Command::Pi { .. } => "pi",
        Command::CheckAdj { .. } => "check-adj",
        Command::Duality { action: DualityAction::Synth { .. } } => "duality synth",
        Command::Duality { action: DualityAction::Check { .. } } => "duality check",
        Command::Fixtures { .. } => "fixtures",
    }
}
