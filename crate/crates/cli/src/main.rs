use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ver4_forms::classify::{form_invariant, good_pairs};
use ver4_forms::divided::{classify_quadratic, gamma2};
use ver4_forms::io::{parse_form, parse_quadratic, FormDocument};
use ver4_forms::oracle::{orbit_classes, DEFAULT_BUDGET};
use ver4_forms::selfcheck::run_selfcheck;
use ver4_forms::witt::{direct_sum, emit_tables, tensor_product};
use ver4_forms::{canonicalize, classify, make_field, BilinearForm, Error, VerObject};

#[derive(Parser)]
#[command(name = "ver4", version, about = "Bilinear and quadratic forms in Ver4+ over GF(2^k)")]
struct Cli {
    /// Print only JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical class label of a form.
    Classify { file: PathBuf },
    /// Congruence to the canonical representative.
    Canonicalize { file: PathBuf },
    /// Good pairs, hierarchy flags, form invariant and radical rank.
    Invariants { file: PathBuf },
    /// Class of the direct sum of two forms.
    Sum { first: PathBuf, second: PathBuf },
    /// Class of the braided tensor product of two forms.
    Product { first: PathBuf, second: PathBuf },
    /// Hyperbolic part and nil part of a quadratic form.
    QuadClassify { file: PathBuf },
    /// Basis of the second divided power of m𝟙 ⊕ nP.
    Gamma2Basis {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Recompute the sum and product tables and diff them against the rules.
    Tables {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value_t = 24)]
        max_dim: usize,
    },
    /// Brute-force orbit count of forms on m𝟙 ⊕ nP.
    Oracle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
    },
    /// Run the randomised consistency suites.
    Selfcheck {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Output {
        Output { json, text, ok: true }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_form(path: &Path) -> Result<BilinearForm, Failure> {
    Ok(parse_form(&read(path)?)?)
}

fn rows(g: &ver4_forms::Matrix) -> String {
    g.to_rows().iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn combine(first: &Path, second: &Path, product: bool) -> Result<Output, Failure> {
    let (a, b) = (load_form(first)?, load_form(second)?);
    let form = if product { tensor_product(&a, &b)? } else { direct_sum(&a, &b)? };
    let class = classify(&form)?;
    let (ca, cb) = (classify(&a)?, classify(&b)?);
    let op = if product { "×" } else { "⊕" };
    Ok(Output::new(
        json!({"class": class.label(), "form": FormDocument::from_form(&form)}),
        format!("{} {op} {} = {}", ca.label(), cb.label(), class.label()),
    ))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify { file } => {
            let class = classify(&load_form(file)?)?;
            Ok(Output::new(json!({"class": class.label()}), class.label()))
        }
        Command::Canonicalize { file } => {
            let form = load_form(file)?;
            let class = classify(&form)?;
            let (t, canon) = canonicalize(&form)?;
            Ok(Output::new(
                json!({"class": class.label(), "t": t.matrix.to_rows(), "gram": canon.gram().to_rows()}),
                format!("{}\nT =\n{}\ncanonical gram =\n{}", class.label(), rows(&t.matrix), rows(canon.gram())),
            ))
        }
        Command::Invariants { file } => {
            let form = load_form(file)?;
            let pairs = good_pairs(&form)?;
            let invariant = if form.is_alternating() && form.is_nondegenerate() { Some(form_invariant(&form)?.bits()) } else { None };
            let radical = form.radical().dim();
            let doc = json!({
                "good_pairs": pairs.to_string(),
                "alternating": form.is_alternating(),
                "oscillating": form.is_oscillating(),
                "super_alternating": form.is_super_alternating(),
                "form_invariant": invariant,
                "radical_rank": radical,
            });
            let mut text = String::new();
            let _ = writeln!(text, "good pairs: {pairs}");
            let _ = writeln!(text, "alternating: {}", form.is_alternating());
            let _ = writeln!(text, "oscillating: {}", form.is_oscillating());
            let _ = writeln!(text, "super-alternating: {}", form.is_super_alternating());
            match invariant {
                Some(v) => {
                    let _ = writeln!(text, "form invariant: {v}");
                }
                None => text.push_str("form invariant: undefined\n"),
            }
            let _ = write!(text, "radical rank: {radical}");
            Ok(Output::new(doc, text))
        }
        Command::Sum { first, second } => combine(first, second, false),
        Command::Product { first, second } => combine(first, second, true),
        Command::QuadClassify { file } => {
            let q = parse_quadratic(&read(file)?)?;
            let c = classify_quadratic(&q)?;
            let mut text = format!("{}ℍ + {}", c.hyperbolic, c.nil_part.label());
            if let Some(arf) = c.arf {
                let _ = write!(text, " (Arf {arf})");
            }
            Ok(Output::new(serde_json::to_value(&c).expect("serializable"), text))
        }
        Command::Gamma2Basis { m, n } => {
            let obj = VerObject::new(*m, *n);
            let basis = gamma2(&obj);
            let lines: Vec<Value> =
                basis.lines.iter().map(|l| json!({"family": l.family, "top": l.label(&obj), "image": l.image_label(&obj)})).collect();
            let mut text = format!("Γ²({m}𝟙 ⊕ {n}P) has dimension {}\n", basis.dim());
            for l in &basis.lines {
                match l.image_label(&obj) {
                    Some(img) => {
                        let _ = writeln!(text, "  {}  ↦ t: {img}", l.label(&obj));
                    }
                    None => {
                        let _ = writeln!(text, "  {}", l.label(&obj));
                    }
                }
            }
            Ok(Output::new(json!({"dim": basis.dim(), "lines": lines}), text.trim_end().to_string()))
        }
        Command::Tables { k, max_size, max_dim } => {
            let field = make_field(*k)?;
            let report = emit_tables(field, *max_size, *max_dim)?;
            let text = format!("{}\n{}", report.to_markdown(false), report.to_markdown(true));
            let mismatches = report.mismatch_count();
            let mut out = Output::new(serde_json::to_value(&report).expect("serializable"), text.trim_end().to_string());
            out.ok = mismatches == 0;
            Ok(out)
        }
        Command::Oracle { m, n, k, budget } => {
            let field = make_field(*k)?;
            let report = orbit_classes(*m, *n, field, *budget)?;
            let mut text = format!(
                "{} forms on {m}𝟙 ⊕ {n}P over GF(2^{k}), group order {}, {} orbits\n",
                report.total_forms,
                report.group_order,
                report.orbit_count()
            );
            for o in &report.orbits {
                let _ = writeln!(text, "  {:>6} forms  {}", o.size, o.label.as_deref().unwrap_or("(unclassified)"));
            }
            if *k >= 2 {
                let _ = write!(text, "labels agree with classification: {}", report.concordant());
            }
            let mut out = Output::new(serde_json::to_value(&report).expect("serializable"), text.trim_end().to_string());
            out.ok = *k < 2 || report.concordant();
            Ok(out)
        }
        Command::Selfcheck { trials } => {
            let report = run_selfcheck(cli.seed, *trials);
            let mut text = String::new();
            for c in &report.checks {
                let _ = writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let mut out = Output::new(serde_json::to_value(&report).expect("serializable"), text.trim_end().to_string());
            out.ok = report.all_passed();
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).expect("serializable") } else { out.text };
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
