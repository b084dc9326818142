//! `pinv`: load Γ-category fixtures and workspace files, apply 𝒫 and run the
//! law-checking suites.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pinv_core::gamma::{validate_gamma, validate_modification, validate_multimorphism, GammaCategory, GammaModification, GammaMultimorphism};
use pinv_core::groth::{BoundedPCat, PBounds};
use pinv_core::indexing::{Ordering, Permutation};
use pinv_core::io::Workspace;
use pinv_core::permlin::{mltrans_equal, validate_multilinear, validate_mltrans, validate_permutative, MultilinearTransformation, Permutative};
use pinv_core::pinv::{
    assemble_multilinear, check_composition, check_lex_variant, check_symmetry_failure, p_on_modifications, p_on_morphisms,
    p_on_objects, p_zero_ary, PCats,
};
use pinv_core::report::Report;
use pinv_core::ringcat::{derive_ring, validate_gamma_monoid, validate_ring};
use pinv_core::Error;

#[derive(Parser)]
#[command(name = "pinv", version, about = "Inverse K-theory on finite Γ-categories")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Workspace files to load before resolving names.
    #[arg(long = "workspace", short = 'w', global = true)]
    workspace: Vec<PathBuf>,
    /// Truncation of built-in Γ-categories; defaults to what the command needs.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Longest object sequence in the enumerated pools.
    #[arg(long, global = true, default_value_t = 2)]
    bound_length: usize,
    /// Largest sequence entry in the enumerated pools.
    #[arg(long, global = true, default_value_t = 2)]
    bound_entry: usize,
    #[arg(long, global = true, value_enum, default_value_t = OrderingArg::Revlex)]
    ordering: OrderingArg,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// One summary line per report.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Revlex,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Permutative,
    Multilinear,
    MultifunctorComposition,
    Enrichment,
    Symmetry,
    Lex,
    Ring,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every document in the given workspace files.
    Validate { paths: Vec<PathBuf> },
    /// Dump the bounded category 𝒫X.
    Pcat { gamma: String },
    /// Apply 𝒫F to a tuple of objects or morphisms given as a JSON array.
    Apply {
        multimorphism: String,
        #[arg(long, conflicts_with = "morphisms")]
        objects: Option<String>,
        #[arg(long)]
        morphisms: Option<String>,
    },
    /// Run a law-checking suite.
    Check(CheckArgs),
    /// Build the ring category of a monoid and check its axioms.
    DeriveRing { monoid: String },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    multimorphism: Option<String>,
    /// Comma-separated inner multimorphisms for composition.
    #[arg(long, value_delimiter = ',')]
    inner: Vec<String>,
    #[arg(long)]
    modification: Option<String>,
    /// A second modification, composed after the first.
    #[arg(long)]
    then: Option<String>,
    #[arg(long)]
    monoid: Option<String>,
    /// Images of the permutation, 0-based and comma-separated.
    #[arg(long, value_delimiter = ',')]
    sigma: Vec<usize>,
    /// JSON array of input objects.
    #[arg(long)]
    objects: Option<String>,
}

/// What a command produced: a document plus whether every check passed and
/// whether some check fell outside the truncation.
struct Outcome {
    doc: Value,
    text: Vec<String>,
    ok: bool,
    incomplete: bool,
}

impl Outcome {
    fn from_reports(doc: Value, reports: &[&Report]) -> Self {
        Outcome {
            doc,
            text: reports.iter().map(|r| r.summary()).collect(),
            ok: reports.iter().all(|r| r.is_ok()),
            incomplete: reports.iter().any(|r| r.skipped > 0),
        }
    }
}

fn ordering(o: &Opts) -> Ordering {
    match o.ordering {
        OrderingArg::Revlex => Ordering::RevLex,
        OrderingArg::Lex => Ordering::Lex,
    }
}

fn bounds(o: &Opts) -> PBounds {
    PBounds::standard(o.bound_length, o.bound_entry)
}

fn workspace(o: &Opts, default_truncation: usize) -> Result<Workspace, Error> {
    let mut ws = Workspace::new(o.truncation.unwrap_or(default_truncation));
    for p in &o.workspace {
        let text = std::fs::read_to_string(p).map_err(|e| Error::InvalidDocument(format!("{}: {e}", p.display())))?;
        ws.load_str(&text)?;
    }
    if let Some(t) = o.truncation {
        ws.truncation = t;
    }
    Ok(ws)
}

/// Bounded 𝒫 categories for every Γ-category a multimorphism touches.
fn pcats(o: &Opts, gammas: &[Arc<GammaCategory>]) -> Result<PCats, Error> {
    let mut cats = PCats::new(Vec::new());
    let mut seen: Vec<&str> = Vec::new();
    for x in gammas {
        if !seen.contains(&x.name()) {
            seen.push(x.name());
            cats.push(BoundedPCat::new(x.clone(), bounds(o))?);
        }
    }
    Ok(cats)
}

fn touched(f: &GammaMultimorphism) -> Vec<Arc<GammaCategory>> {
    let mut v = f.sources().to_vec();
    v.push(f.target().clone());
    v
}

fn parse_json(s: &str) -> Result<Value, Error> {
    serde_json::from_str(s).map_err(|e| Error::InvalidDocument(format!("parse error: {e}")))
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Error> {
    v.as_deref().ok_or_else(|| Error::InvalidDocument(format!("--{flag} is required")))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let o = &cli.opts;
    let e = o.bound_entry.max(1);
    match &cli.command {
        Command::Validate { paths } => {
            let mut ws = Workspace::new(o.truncation.unwrap_or(4));
            for p in o.workspace.iter().chain(paths) {
                let text = std::fs::read_to_string(p).map_err(|e| Error::InvalidDocument(format!("{}: {e}", p.display())))?;
                ws.load_str(&text)?;
            }
            let mut reports: Vec<(String, String, Report)> = Vec::new();
            for (name, x) in &ws.gammas {
                reports.push(("gamma".into(), name.clone(), validate_gamma(x, x.truncation())));
            }
            for (name, f) in &ws.multimorphisms {
                reports.push(("multimorphism".into(), name.clone(), validate_multimorphism(f, f.target().truncation())));
            }
            for (name, t) in &ws.modifications {
                reports.push(("modification".into(), name.clone(), validate_modification(t, t.target().target().truncation())));
            }
            for (name, m) in &ws.monoids {
                reports.push(("monoid".into(), name.clone(), validate_gamma_monoid(m, m.x.truncation())?));
            }
            let doc = json!({
                "documents": reports.iter().map(|(k, n, r)| json!({"kind": k, "name": n, "report": r.to_json()})).collect::<Vec<_>>(),
                "ok": reports.iter().all(|(_, _, r)| r.is_ok()),
            });
            let refs: Vec<&Report> = reports.iter().map(|(_, _, r)| r).collect();
            let mut out = Outcome::from_reports(doc, &refs);
            // Validators skip levels above the truncation by design.
            out.incomplete = false;
            Ok(out)
        }
        Command::Pcat { gamma } => {
            let ws = workspace(o, e)?;
            let c = BoundedPCat::new(ws.gamma(gamma)?, bounds(o))?;
            let text = vec![format!(
                "{}: {} objects, {} morphisms",
                c.name(),
                c.object_pool().len(),
                c.morphism_pool().len()
            )];
            Ok(Outcome {
                doc: c.dump(),
                text,
                ok: true,
                incomplete: false,
            })
        }
        Command::Apply { multimorphism, objects, morphisms } => {
            let ws = workspace(o, e.pow(2))?;
            let f = ws.multimorphism(multimorphism)?;
            let cats = pcats(o, &touched(&f))?;
            let z = cats.get(f.target());
            let doc = if let Some(m) = morphisms {
                let args = parse_json(m)?;
                let args = args.as_array().ok_or_else(|| Error::InvalidDocument("--morphisms takes a JSON array".into()))?;
                let inputs = args
                    .iter()
                    .zip(f.sources())
                    .map(|(v, x)| cats.get(x).pcat().morphism_from_json(v))
                    .collect::<Result<Vec<_>, _>>()?;
                if inputs.len() != args.len() || inputs.len() != f.arity() {
                    return Err(Error::DomainMismatch(format!("{} takes {} inputs", f.name(), f.arity())));
                }
                json!({"morphism": z.morphism_json(&p_on_morphisms(&f, &inputs, ordering(o))?)})
            } else {
                let args = parse_json(objects.as_deref().unwrap_or("[]"))?;
                let args = args.as_array().ok_or_else(|| Error::InvalidDocument("--objects takes a JSON array".into()))?;
                if args.len() != f.arity() {
                    return Err(Error::DomainMismatch(format!("{} takes {} inputs", f.name(), f.arity())));
                }
                let a = if f.arity() == 0 {
                    p_zero_ary(&f)?
                } else {
                    let inputs = args
                        .iter()
                        .zip(f.sources())
                        .map(|(v, x)| cats.get(x).pcat().object_from_json(v))
                        .collect::<Result<Vec<_>, _>>()?;
                    p_on_objects(&f, &inputs, ordering(o))?
                };
                json!({"object": z.object_json(&a)})
            };
            Ok(Outcome {
                text: vec![doc.to_string()],
                doc,
                ok: true,
                incomplete: false,
            })
        }
        Command::Check(args) => check(o, args),
        Command::DeriveRing { monoid } => {
            let ws = workspace(o, e.pow(3))?;
            let m = ws.monoid(monoid)?;
            let cats = pcats(o, std::slice::from_ref(&m.x))?;
            let ring = derive_ring(&m, &cats)?;
            let c = cats.get(&m.x);
            let small = c.small_object_pool();
            let mut products = Vec::new();
            for a in small {
                for b in small {
                    products.push(json!([c.object_json(a), c.object_json(b), c.object_json(&ring.mul(a, b)?)]));
                }
            }
            let report = validate_ring(&ring);
            let doc = json!({
                "ring": {
                    "name": ring.name,
                    "zero": c.object_json(&ring.zero()),
                    "one": c.object_json(&ring.one),
                    "products": products,
                },
                "report": report.to_json(),
            });
            let mut text: Vec<String> = report.axioms.values().chain(report.structure.values()).map(Report::summary).collect();
            text.push(format!("tight: {}", report.tight));
            let incomplete = report.axioms.values().any(|r| r.skipped > 0);
            Ok(Outcome {
                doc,
                text,
                ok: report.is_ok(),
                incomplete,
            })
        }
    }
}

fn check(o: &Opts, a: &CheckArgs) -> Result<Outcome, Error> {
    let e = o.bound_entry.max(1);
    let ord = ordering(o);
    match a.suite {
        Suite::Permutative => {
            let ws = workspace(o, e)?;
            let c = BoundedPCat::new(ws.gamma(need(&a.gamma, "gamma")?)?, bounds(o))?;
            let r = validate_permutative(&c);
            Ok(Outcome::from_reports(r.to_json(), &[&r]))
        }
        Suite::Multilinear => {
            let ws0 = workspace(o, e)?;
            let name = need(&a.multimorphism, "multimorphism")?;
            let arity = ws0.multimorphism(name)?.arity();
            let ws = workspace(o, e.pow(arity.max(1) as u32))?;
            let f = ws.multimorphism(name)?;
            let cats = pcats(o, &touched(&f))?;
            let r = validate_multilinear(&assemble_multilinear(&f, &cats, ord)?);
            let reports: Vec<&Report> = r.axioms.values().collect();
            let mut out = Outcome::from_reports(r.to_json(), &reports);
            out.text.push(format!("strong: {}, strict: {}", r.strong, r.strict));
            Ok(out)
        }
        Suite::MultifunctorComposition => {
            let ws0 = workspace(o, e)?;
            let fname = need(&a.multimorphism, "multimorphism")?;
            let f0 = ws0.multimorphism(fname)?;
            let total: usize = a.inner.iter().map(|g| ws0.multimorphism(g).map(|g| g.arity().max(1))).sum::<Result<_, _>>()?;
            let ws = workspace(o, e.pow(total.max(f0.arity()) as u32))?;
            let f = ws.multimorphism(fname)?;
            let gs: Vec<Arc<GammaMultimorphism>> = a.inner.iter().map(|g| ws.multimorphism(g)).collect::<Result<_, _>>()?;
            let mut all = touched(&f);
            for g in &gs {
                all.extend(touched(g));
            }
            let cats = pcats(o, &all)?;
            let r = check_composition(&f, &gs, &cats, ord)?;
            Ok(Outcome::from_reports(r.to_json(), &[&r]))
        }
        Suite::Enrichment => {
            let ws0 = workspace(o, e)?;
            let tname = need(&a.modification, "modification")?;
            let arity = ws0.modification(tname)?.source().arity();
            let ws = workspace(o, e.pow(arity.max(1) as u32))?;
            let theta = ws.modification(tname)?;
            let cats = pcats(o, &touched(theta.source()))?;
            let p_theta = p_on_modifications(&theta, &cats, ord)?;
            let mut valid = validate_mltrans(&p_theta);
            valid.suite = format!("mltrans:{}", p_theta.name());
            let id = Arc::new(GammaModification::identity(theta.source().clone()));
            let p_id = p_on_modifications(&id, &cats, ord)?;
            let mut unit = mltrans_equal(&p_id, &MultilinearTransformation::identity(p_id.source()));
            unit.suite = "identity".into();
            let mut reports = vec![valid, unit];
            if let Some(next) = &a.then {
                let next = ws.modification(next)?;
                let both = Arc::new(GammaModification::vertical(&next, &theta)?);
                let lhs = p_on_modifications(&both, &cats, ord)?;
                let rhs = MultilinearTransformation::vertical(&p_on_modifications(&next, &cats, ord)?, &p_theta)?;
                let mut comp = mltrans_equal(&lhs, &rhs);
                comp.suite = "composition".into();
                reports.push(comp);
            }
            let doc = json!({
                "suite": "enrichment",
                "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            });
            let refs: Vec<&Report> = reports.iter().collect();
            Ok(Outcome::from_reports(doc, &refs))
        }
        Suite::Symmetry => {
            let ws0 = workspace(o, e)?;
            let name = need(&a.multimorphism, "multimorphism")?;
            let arity = ws0.multimorphism(name)?.arity();
            let ws = workspace(o, e.pow(arity.max(1) as u32))?;
            let f = ws.multimorphism(name)?;
            let sigma = if a.sigma.is_empty() { Permutation::identity(f.arity()) } else { Permutation::new(a.sigma.clone())? };
            let cats = pcats(o, &touched(&f))?;
            let args = parse_json(need(&a.objects, "objects")?)?;
            let args = args.as_array().ok_or_else(|| Error::InvalidDocument("--objects takes a JSON array".into()))?;
            if args.len() != f.arity() {
                return Err(Error::DomainMismatch(format!("{} takes {} inputs", f.name(), f.arity())));
            }
            // Input i lands in slot σ(i) of F.
            let inputs = args
                .iter()
                .enumerate()
                .map(|(i, v)| cats.get(&f.sources()[sigma.apply(i)]).pcat().object_from_json(v))
                .collect::<Result<Vec<_>, _>>()?;
            let cmp = check_symmetry_failure(&f, &sigma, &inputs, ord)?;
            let mut doc = cmp.to_json(&cats.get(f.target()));
            doc["suite"] = json!("symmetry");
            Ok(Outcome {
                text: vec![format!("symmetry: equal={} iso_valid={}", cmp.equal, cmp.iso_valid)],
                doc,
                ok: cmp.iso_valid,
                incomplete: false,
            })
        }
        Suite::Lex => {
            let ws0 = workspace(o, e)?;
            let name = need(&a.multimorphism, "multimorphism")?;
            let arity = ws0.multimorphism(name)?.arity();
            let ws = workspace(o, e.pow(arity.max(1) as u32))?;
            let f = ws.multimorphism(name)?;
            let cats = pcats(o, &touched(&f))?;
            let r = check_lex_variant(&f, &cats)?;
            Ok(Outcome::from_reports(r.to_json(), &[&r]))
        }
        Suite::Ring => {
            let ws = workspace(o, e.pow(3))?;
            let m = ws.monoid(need(&a.monoid, "monoid")?)?;
            let cats = pcats(o, std::slice::from_ref(&m.x))?;
            let report = validate_ring(&derive_ring(&m, &cats)?);
            let mut text: Vec<String> = report.axioms.values().chain(report.structure.values()).map(Report::summary).collect();
            text.push(format!("tight: {}", report.tight));
            Ok(Outcome {
                doc: report.to_json(),
                text,
                ok: report.is_ok(),
                incomplete: report.axioms.values().any(|r| r.skipped > 0),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe downstream is not our failure.
            let _ = if cli.opts.text {
                out.text.iter().try_for_each(|line| writeln!(stdout, "{line}"))
            } else {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.doc).expect("reports serialize"))
            };
            if !out.ok {
                ExitCode::from(1)
            } else if out.incomplete {
                eprintln!("some checks need levels above the truncation; raise --truncation");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            let code = match err {
                Error::TruncationExceeded { .. } => 3,
                _ => 2,
            };
            let doc = match &err {
                Error::TruncationExceeded { level, truncation } => {
                    json!({"error": err.to_string(), "level": level, "truncation": truncation})
                }
                _ => json!({"error": err.to_string()}),
            };
            eprintln!("{}", serde_json::to_string_pretty(&doc).expect("errors serialize"));
            ExitCode::from(code)
        }
    }
}
