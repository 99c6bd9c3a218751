//! Command-line surface over the lens library: validation, composition,
//! every construction, the brute-force oracles, and DOT export.
//!
//! Exit codes: 0 when the operation succeeds (and any checked property
//! holds), 1 when a checked property fails with a counterexample, 2 on
//! usage, parse, or validation errors. All commands are pure functions of
//! their input files and flags; repeated runs produce byte-identical
//! output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lenslab::constructions::{
    coproduct_lens, distributivity_iso, equaliser_lens, extensivity_check, factorise_lens,
    imported_product, imported_pullback, orthogonal_fill, product_mediator_discrete,
    pullback_mediator_dof, split_idempotent, ExtensivityDiagram,
};
use lenslab::fincat::{coproduct_cat, FinCat};
use lenslab::io::{parse_document, serialize_document, DiagramBundle, Document};
use lenslab::lens::{is_epi_lens, is_mono_lens, Lens};
use lenslab::oracle::{
    self, Bounds, OracleReport, PropertyTag, Verdict,
};
use lenslab::{dot, seeds};

#[derive(Parser)]
#[command(name = "lenslab", version, about = "Finite categories and delta lenses at desk scale")]
struct Cli {
    /// Report format for verdict-producing commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of objects admitted in enumeration sweeps.
    #[arg(long, global = true)]
    bound_objects: Option<usize>,
    /// Maximum number of morphisms admitted in enumeration sweeps.
    #[arg(long, global = true)]
    bound_morphisms: Option<usize>,
    /// Directory of category documents used as oracle test apexes
    /// (overrides the built-in seed family; the LENSLAB_SEED_DIR
    /// environment variable does the same).
    #[arg(long, global = true)]
    seed_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate documents; exit 2 listing violations if any fail.
    Validate { files: Vec<PathBuf> },
    /// Compose two lens documents (first, then second).
    Compose { first: PathBuf, second: PathBuf },
    /// Equalise a parallel pair of lenses; prints the inclusion lens.
    Equalise { first: PathBuf, second: PathBuf },
    /// Factor a lens into a surjective-on-objects part and a cosieve.
    Factorise { lens: PathBuf },
    /// Fill the diagonal of a commuting square (epi, mono, top, bottom).
    Fill {
        epi: PathBuf,
        mono: PathBuf,
        top: PathBuf,
        bottom: PathBuf,
    },
    /// Coproduct of two categories, or of two lenses with a common
    /// codomain (injections plus mediator).
    Coproduct { first: PathBuf, second: PathBuf },
    /// Imported product of two categories: projections with canonical
    /// lifts.
    Product { first: PathBuf, second: PathBuf },
    /// Imported pullback of two lenses with a common codomain.
    Pullback { first: PathBuf, second: PathBuf },
    /// Mediating lenses into products with a discrete factor or pullbacks
    /// along a discrete opfibration.
    Mediator {
        #[command(subcommand)]
        kind: MediatorKind,
    },
    /// Split an idempotent lens through its equaliser with the identity.
    SplitIdempotent { lens: PathBuf },
    /// Check that products distribute over coproducts for three
    /// categories.
    Distributivity {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
    },
    /// Check the extensivity biconditional on a diagram document.
    Extensivity { diagram: PathBuf },
    /// Enumerate functors or lenses between two categories.
    Enumerate {
        #[arg(value_enum)]
        what: EnumWhat,
        source: PathBuf,
        target: PathBuf,
        /// Print each candidate as a document instead of just the count.
        #[arg(long)]
        list: bool,
    },
    /// Brute-force universal-property and cancellation checks.
    Oracle {
        #[command(subcommand)]
        check: OracleKind,
    },
    /// Render a category or lens document as a DOT graph.
    ExportDot { file: PathBuf },
}

#[derive(Subcommand)]
enum MediatorKind {
    /// Mediator into an imported product whose second factor is discrete.
    Product { f: PathBuf, g: PathBuf },
    /// Mediator into an imported pullback whose second leg is a discrete
    /// opfibration; takes the cospan then the cone.
    Pullback {
        f: PathBuf,
        g: PathBuf,
        p: PathBuf,
        q: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumWhat {
    Functors,
    Lenses,
}

#[derive(Subcommand)]
enum OracleKind {
    /// Universal property of the imported product of two categories.
    Product { a: PathBuf, b: PathBuf },
    /// Universal property of the imported pullback of two lenses.
    Pullback { f: PathBuf, g: PathBuf },
    /// Universal property of the equaliser of a parallel pair.
    Equaliser { f: PathBuf, g: PathBuf },
    /// Universal property of the coproduct cospan of two lenses.
    Coproduct { f: PathBuf, g: PathBuf },
    /// Left cancellation, cross-checked against the structural predicate.
    Mono { lens: PathBuf },
    /// Right cancellation, cross-checked against the structural predicate.
    Epi { lens: PathBuf },
}

/// An operational failure: bad usage, unreadable input, failed validation.
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// 0 = success / property holds; 1 = property fails with counterexample.
enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, path.parent())
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_lens(path: &Path) -> Result<Lens, CliError> {
    match load(path)? {
        Document::Lens(l) => Ok(l),
        other => Err(CliError(format!(
            "{}: expected a lens document, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn load_category(path: &Path) -> Result<FinCat, CliError> {
    match load(path)? {
        Document::Category(c) => Ok(c),
        other => Err(CliError(format!(
            "{}: expected a category document, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn bounds(cli: &Cli) -> Bounds {
    let targeted = Bounds::targeted();
    Bounds::new(
        cli.bound_objects.unwrap_or(targeted.max_objects),
        cli.bound_morphisms.unwrap_or(targeted.max_morphisms),
    )
}

/// Test apexes: a seed directory wins over the built-in family; either way
/// only categories within bounds are kept.
fn seed_apexes(cli: &Cli) -> Result<Vec<FinCat>, CliError> {
    let dir = cli
        .seed_dir
        .clone()
        .or_else(|| std::env::var_os("LENSLAB_SEED_DIR").map(PathBuf::from));
    let family = match dir {
        None => seeds::test_apexes(&bounds(cli)),
        Some(dir) => {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| CliError(format!("cannot read seed dir {}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
                .collect();
            entries.sort();
            let mut cats = Vec::new();
            for path in entries {
                cats.push(load_category(&path)?);
            }
            cats
        }
    };
    let b = bounds(cli);
    Ok(family.into_iter().filter(|c| b.admits(c)).collect())
}

fn print_doc(doc: &Document) {
    print!("{}", serialize_document(doc));
}

fn bundle_of(parts: Vec<(&str, Document)>) -> Document {
    let mut bundle = DiagramBundle::default();
    for (name, doc) in parts {
        match doc {
            Document::Category(c) => {
                bundle.categories.insert(name.to_owned(), c);
            }
            Document::Functor(f) => {
                bundle.functors.insert(name.to_owned(), f);
            }
            Document::Lens(l) => {
                bundle.lenses.insert(name.to_owned(), l);
            }
            Document::Diagram(_) => unreachable!("bundles do not nest"),
        }
    }
    Document::Diagram(bundle)
}

fn tag_name(tag: PropertyTag) -> &'static str {
    match tag {
        PropertyTag::ProductUp => "product-UP",
        PropertyTag::PullbackUp => "pullback-UP",
        PropertyTag::EqualiserUp => "equaliser-UP",
        PropertyTag::CoproductUp => "coproduct-UP",
        PropertyTag::MonoCancel => "mono-cancel",
        PropertyTag::EpiCancel => "epi-cancel",
        PropertyTag::Uniqueness => "uniqueness",
        PropertyTag::Existence => "existence",
    }
}

fn report_oracle(cli: &Cli, report: &OracleReport) -> Outcome {
    let holds = report.verdict == Verdict::Holds;
    match cli.format {
        Format::Text => {
            println!(
                "{}: {} (searched {} candidates)",
                tag_name(report.property),
                if holds { "holds" } else { "fails" },
                report.search_size
            );
            if let Some(w) = &report.witness {
                println!("counterexample: {}", w.context);
                for lens in &w.lenses {
                    print!("{}", serialize_document(&Document::Lens(lens.clone())));
                }
            }
        }
        Format::Json => {
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "context": w.context,
                    "lenses": w.lenses.iter()
                        .map(|l| serde_json::from_str::<serde_json::Value>(
                            &serialize_document(&Document::Lens(l.clone()))).unwrap())
                        .collect::<Vec<_>>(),
                })
            });
            let out = json!({
                "command": "oracle",
                "property": tag_name(report.property),
                "verdict": if holds { "holds" } else { "fails" },
                "search_size": report.search_size,
                "witness": witness,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    if holds {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { files } => {
            if files.is_empty() {
                return Err(CliError("validate needs at least one file".into()));
            }
            let mut results = Vec::new();
            for path in files {
                let doc = load(path)?;
                results.push((path, doc));
            }
            match cli.format {
                Format::Text => {
                    for (path, doc) in &results {
                        println!("{}: valid {}", path.display(), doc.kind());
                    }
                }
                Format::Json => {
                    let out = json!({
                        "command": "validate",
                        "results": results.iter()
                            .map(|(p, d)| json!({"file": p.display().to_string(), "kind": d.kind(), "valid": true}))
                            .collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(Outcome::Holds)
        }

        Command::Compose { first, second } => {
            let f = load_lens(first)?;
            let g = load_lens(second)?;
            let composite = f.then(&g)?;
            print_doc(&Document::Lens(composite));
            Ok(Outcome::Holds)
        }

        Command::Equalise { first, second } => {
            let f = load_lens(first)?;
            let g = load_lens(second)?;
            if f.source() != g.source() || f.target() != g.target() {
                return Err(CliError("equalise needs a parallel pair of lenses".into()));
            }
            let eq = equaliser_lens(&f, &g);
            print_doc(&bundle_of(vec![
                ("object", Document::Category(eq.object)),
                ("inclusion", Document::Lens(eq.inclusion)),
            ]));
            Ok(Outcome::Holds)
        }

        Command::Factorise { lens } => {
            let l = load_lens(lens)?;
            let fact = factorise_lens(&l);
            print_doc(&bundle_of(vec![
                ("image", Document::Category(fact.image)),
                ("epi", Document::Lens(fact.epi)),
                ("mono", Document::Lens(fact.mono)),
            ]));
            Ok(Outcome::Holds)
        }

        Command::Fill { epi, mono, top, bottom } => {
            let e = load_lens(epi)?;
            let m = load_lens(mono)?;
            let f = load_lens(top)?;
            let g = load_lens(bottom)?;
            let h = orthogonal_fill(&e, &m, &f, &g)?;
            print_doc(&Document::Lens(h));
            Ok(Outcome::Holds)
        }

        Command::Coproduct { first, second } => match (load(first)?, load(second)?) {
            (Document::Category(a), Document::Category(b)) => {
                let (sum, inj_a, inj_b) = coproduct_cat(&a, &b);
                print_doc(&bundle_of(vec![
                    ("coproduct", Document::Category(sum)),
                    ("inj_left", Document::Functor(inj_a)),
                    ("inj_right", Document::Functor(inj_b)),
                ]));
                Ok(Outcome::Holds)
            }
            (Document::Lens(f), Document::Lens(g)) => {
                if f.target() != g.target() {
                    return Err(CliError("coproduct of lenses needs a common codomain".into()));
                }
                let result = coproduct_lens(&f, &g);
                print_doc(&bundle_of(vec![
                    ("coproduct", Document::Category(result.coproduct)),
                    ("inj_left", Document::Lens(result.inj_left)),
                    ("inj_right", Document::Lens(result.inj_right)),
                    ("mediator", Document::Lens(result.mediator)),
                ]));
                Ok(Outcome::Holds)
            }
            _ => Err(CliError("coproduct needs two categories or two lenses".into())),
        },

        Command::Product { first, second } => {
            let a = load_category(first)?;
            let b = load_category(second)?;
            let cone = imported_product(&a, &b);
            print_doc(&bundle_of(vec![
                ("apex", Document::Category(cone.apex.clone())),
                ("proj_left", Document::Lens(cone.legs[0].clone())),
                ("proj_right", Document::Lens(cone.legs[1].clone())),
            ]));
            Ok(Outcome::Holds)
        }

        Command::Pullback { first, second } => {
            let f = load_lens(first)?;
            let g = load_lens(second)?;
            if f.target() != g.target() {
                return Err(CliError("pullback needs a cospan with a common codomain".into()));
            }
            let cone = imported_pullback(&f, &g);
            print_doc(&bundle_of(vec![
                ("apex", Document::Category(cone.apex.clone())),
                ("proj_left", Document::Lens(cone.legs[0].clone())),
                ("proj_right", Document::Lens(cone.legs[1].clone())),
            ]));
            Ok(Outcome::Holds)
        }

        Command::Mediator { kind } => match kind {
            MediatorKind::Product { f, g } => {
                let f = load_lens(f)?;
                let g = load_lens(g)?;
                let mediator = product_mediator_discrete(&f, &g)?;
                print_doc(&Document::Lens(mediator));
                Ok(Outcome::Holds)
            }
            MediatorKind::Pullback { f, g, p, q } => {
                let f = load_lens(f)?;
                let g = load_lens(g)?;
                let p = load_lens(p)?;
                let q = load_lens(q)?;
                let mediator = pullback_mediator_dof(&f, &g, &p, &q)?;
                print_doc(&Document::Lens(mediator));
                Ok(Outcome::Holds)
            }
        },

        Command::SplitIdempotent { lens } => {
            let e = load_lens(lens)?;
            let split = split_idempotent(&e)?;
            print_doc(&bundle_of(vec![
                ("object", Document::Category(split.object)),
                ("retraction", Document::Lens(split.retraction)),
                ("section", Document::Lens(split.section)),
            ]));
            Ok(Outcome::Holds)
        }

        Command::Distributivity { a, b, c } => {
            let a = load_category(a)?;
            let b = load_category(b)?;
            let c = load_category(c)?;
            let result = distributivity_iso(&a, &b, &c);
            match cli.format {
                Format::Text => {
                    println!(
                        "distributivity comparison is {}an isomorphism",
                        if result.is_iso { "" } else { "not " }
                    );
                }
                Format::Json => {
                    let out = json!({"command": "distributivity", "iso": result.is_iso});
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(if result.is_iso { Outcome::Holds } else { Outcome::Fails })
        }

        Command::Extensivity { diagram } => {
            let doc = load(diagram)?;
            let Document::Diagram(bundle) = doc else {
                return Err(CliError("extensivity needs a diagram document".into()));
            };
            let d = ExtensivityDiagram::from_bundle(&bundle)?;
            let apexes = seed_apexes(cli)?;
            let verdict = extensivity_check(&d, &apexes, &bounds(cli))?;
            match cli.format {
                Format::Text => {
                    println!("squares are pullbacks: {}", verdict.squares_are_pullbacks);
                    println!("top row is a coproduct: {}", verdict.top_row_is_coproduct);
                }
                Format::Json => {
                    let out = json!({
                        "command": "extensivity",
                        "squares_are_pullbacks": verdict.squares_are_pullbacks,
                        "top_row_is_coproduct": verdict.top_row_is_coproduct,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(if verdict.squares_are_pullbacks { Outcome::Holds } else { Outcome::Fails })
        }

        Command::Enumerate { what, source, target, list } => {
            let a = load_category(source)?;
            let b = load_category(target)?;
            let b_ = bounds(cli);
            match what {
                EnumWhat::Functors => {
                    let all = oracle::enumerate_functors(&a, &b, &b_)?;
                    match cli.format {
                        Format::Text => println!("functors: {}", all.len()),
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(
                                &json!({"command": "enumerate", "what": "functors", "count": all.len()})
                            )
                            .unwrap()
                        ),
                    }
                    if *list {
                        for f in all {
                            print_doc(&Document::Functor(f));
                        }
                    }
                }
                EnumWhat::Lenses => {
                    let all = oracle::enumerate_lenses(&a, &b, &b_)?;
                    match cli.format {
                        Format::Text => println!("lenses: {}", all.len()),
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(
                                &json!({"command": "enumerate", "what": "lenses", "count": all.len()})
                            )
                            .unwrap()
                        ),
                    }
                    if *list {
                        for l in all {
                            print_doc(&Document::Lens(l));
                        }
                    }
                }
            }
            Ok(Outcome::Holds)
        }

        Command::Oracle { check } => {
            let apexes = seed_apexes(cli)?;
            let b = bounds(cli);
            let report = match check {
                OracleKind::Product { a: pa, b: pb } => {
                    let a = load_category(pa)?;
                    let bb = load_category(pb)?;
                    let cone = imported_product(&a, &bb);
                    oracle::check_universal_product(&cone, &apexes, &b)?
                }
                OracleKind::Pullback { f, g } => {
                    let f = load_lens(f)?;
                    let g = load_lens(g)?;
                    if f.target() != g.target() {
                        return Err(CliError("pullback oracle needs a cospan".into()));
                    }
                    let cone = imported_pullback(&f, &g);
                    oracle::check_universal_pullback(&cone, (&f, &g), &apexes, &b)?
                }
                OracleKind::Equaliser { f, g } => {
                    let f = load_lens(f)?;
                    let g = load_lens(g)?;
                    if f.source() != g.source() || f.target() != g.target() {
                        return Err(CliError("equaliser oracle needs a parallel pair".into()));
                    }
                    let eq = equaliser_lens(&f, &g);
                    oracle::check_universal_equaliser(&eq, (&f, &g), &apexes, &b)?
                }
                OracleKind::Coproduct { f, g } => {
                    let f = load_lens(f)?;
                    let g = load_lens(g)?;
                    if f.target() != g.target() {
                        return Err(CliError("coproduct oracle needs a common codomain".into()));
                    }
                    oracle::check_universal_coproduct((&f, &g), &apexes, &b)?
                }
                OracleKind::Mono { lens } => {
                    let l = load_lens(lens)?;
                    let report = oracle::brute_force_mono(&l, &apexes, &b)?;
                    let predicted = is_mono_lens(&l);
                    if predicted != (report.verdict == Verdict::Holds) {
                        return Err(CliError(
                            "structural mono predicate disagrees with cancellation".into(),
                        ));
                    }
                    report
                }
                OracleKind::Epi { lens } => {
                    let l = load_lens(lens)?;
                    let report = oracle::brute_force_epi(&l, &apexes, &b)?;
                    let predicted = is_epi_lens(&l);
                    if predicted != (report.verdict == Verdict::Holds) {
                        return Err(CliError(
                            "structural epi predicate disagrees with cancellation".into(),
                        ));
                    }
                    report
                }
            };
            Ok(report_oracle(cli, &report))
        }

        Command::ExportDot { file } => {
            let doc = load(file)?;
            let rendered = dot::export_dot(&doc)?;
            print!("{rendered}");
            Ok(Outcome::Holds)
        }
    }
}
