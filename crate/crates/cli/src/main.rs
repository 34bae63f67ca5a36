use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use qcanon::json::{parse_canonical_result, parse_matrix, to_json};
use qcanon::littlewood::{canonical_form, decompose, CanonicalResult, Decomposition};
use qcanon::schur_real::{strengthened_schur, SchurRealForm};
use qcanon::special_forms::{
    assemble_blocks, projector_canonical, square_zero_canonical, BlockSummary,
};
use qcanon::suite::run_acceptance;
use qcanon::testkit::{
    gadget_m5, gadget_ma, gadget_wild, random_matrix, seeded, WildFixture, WildKind,
};
use qcanon::{QMatrix, Tolerance};

#[derive(Parser, Debug)]
#[command(
    name = "qcanon",
    version,
    about = "Canonical forms of quaternion matrices under unitary similarity"
)]
struct Cli {
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_rank: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    eps_eig: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    eps_canon: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical form of a nonderogatory matrix.
    Canon { input: PathBuf },
    /// Decide unitary similarity of two nonderogatory matrices.
    Similar { a: PathBuf, b: PathBuf },
    /// Strengthened Schur form of a matrix with real spectrum.
    Schur { input: PathBuf },
    /// Canonical form of an idempotent matrix.
    Projector { input: PathBuf },
    /// Canonical form of a square-zero matrix.
    Squarezero { input: PathBuf },
    /// Block decomposition of a matrix or of a saved canonical result.
    Decompose { input: PathBuf },
    /// Write a gadget fixture. Missing inputs are drawn from --seed.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        /// Parameter matrices (A for ma; A, B, C, D for m5; M for the wild kinds).
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        /// Size of random parameter matrices.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Eigenvalue for wild-a, as "re,im".
        #[arg(long, default_value = "0,1")]
        lambda: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Selftest,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GadgetKind {
    Ma,
    M5,
    WildA,
    WildB,
    WildC,
    WildD,
}

/// Exit 1 for failed mathematical preconditions, 2 for everything else.
struct Failure {
    code: u8,
    message: String,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let code = if e
            .chain()
            .any(|c| c.downcast_ref::<qcanon::Error>().is_some())
        {
            1
        } else {
            2
        };
        Failure {
            code,
            message: format!("{e:#}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, status)) => {
            print!("{report}");
            if !report.ends_with('\n') {
                println!();
            }
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<QMatrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("{} is not a matrix", path.display()))
}

#[derive(Serialize)]
struct SimilarReport<'a> {
    similar: bool,
    #[serde(rename = "canonA")]
    canon_a: &'a CanonicalResult,
    #[serde(rename = "canonB")]
    canon_b: &'a CanonicalResult,
}

#[derive(Serialize)]
struct SpecialReport<'a> {
    summary: &'a BlockSummary,
    canonical: &'a QMatrix,
    #[serde(rename = "U")]
    u: &'a QMatrix,
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let tol = Tolerance::new(cli.eps_rank, cli.eps_eig, cli.eps_canon)
        .ok_or_else(|| anyhow::anyhow!("tolerances must be positive and finite"))?;
    let text = cli.format == Format::Text;
    let out = match &cli.command {
        Command::Canon { input } => {
            let r = canonical_form(&read_matrix(input)?, &tol).map_err(anyhow::Error::from)?;
            if text {
                canon_text(&r)
            } else {
                to_json(&r)
            }
        }
        Command::Similar { a, b } => {
            let (a, b) = (read_matrix(a)?, read_matrix(b)?);
            if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
                let e = qcanon::Error::ShapeMismatch(format!(
                    "cannot compare {}x{} with {}x{}",
                    a.rows(),
                    a.cols(),
                    b.rows(),
                    b.cols()
                ));
                return Err(anyhow::Error::from(e).into());
            }
            let x = canonical_form(&a, &tol).map_err(anyhow::Error::from)?;
            let y = canonical_form(&b, &tol).map_err(anyhow::Error::from)?;
            let thr = tol.eps_canon * (1.0 + a.frobenius().max(b.frobenius()));
            let similar = qcanon::littlewood::same_canonical(&x, &y, thr);
            if text {
                format!(
                    "similar: {similar}\n\nA:\n{}\nB:\n{}",
                    canon_text(&x),
                    canon_text(&y)
                )
            } else {
                to_json(&SimilarReport {
                    similar,
                    canon_a: &x,
                    canon_b: &y,
                })
            }
        }
        Command::Schur { input } => {
            let f = strengthened_schur(&read_matrix(input)?, &tol).map_err(anyhow::Error::from)?;
            if text {
                schur_text(&f)
            } else {
                to_json(&f)
            }
        }
        Command::Projector { input } | Command::Squarezero { input } => {
            let a = read_matrix(input)?;
            let (u, s) = if matches!(cli.command, Command::Projector { .. }) {
                projector_canonical(&a, &tol)
            } else {
                square_zero_canonical(&a, &tol)
            }
            .map_err(anyhow::Error::from)?;
            let c = assemble_blocks(&s);
            if text {
                special_text(&s, &c)
            } else {
                to_json(&SpecialReport {
                    summary: &s,
                    canonical: &c,
                    u: &u,
                })
            }
        }
        Command::Decompose { input } => {
            let body = std::fs::read_to_string(input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let r = match parse_canonical_result(&body) {
                Ok(r) => r,
                Err(_) => {
                    let a = parse_matrix(&body).with_context(|| {
                        format!(
                            "{} is neither a matrix nor a canonical result",
                            input.display()
                        )
                    })?;
                    canonical_form(&a, &tol).map_err(anyhow::Error::from)?
                }
            };
            let d = decompose(&r).map_err(anyhow::Error::from)?;
            if text {
                decompose_text(&d)
            } else {
                to_json(&d)
            }
        }
        Command::Gadget {
            kind,
            inputs,
            n,
            lambda,
            out,
        } => {
            let fixture = gadget(*kind, inputs, *n, lambda, cli.seed)?;
            let body = to_json(&fixture);
            match out {
                Some(p) => {
                    std::fs::write(p, format!("{body}\n"))
                        .with_context(|| format!("cannot write {}", p.display()))?;
                    format!("wrote {}", p.display())
                }
                None => body,
            }
        }
        Command::Selftest => {
            let outcomes = run_acceptance(cli.seed);
            let mut s = String::new();
            for o in &outcomes {
                writeln!(s, "{o}").unwrap();
            }
            let status = if outcomes.iter().all(|o| o.passed) {
                0
            } else {
                1
            };
            return Ok((s, status));
        }
    };
    Ok((out, 0))
}

fn parse_lambda(s: &str) -> anyhow::Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [re, im] = parts.as_slice() else {
        bail!("--lambda must be \"re,im\", got {s:?}");
    };
    Ok(Complex64::new(
        re.parse().context("bad real part")?,
        im.parse().context("bad imaginary part")?,
    ))
}

fn gadget(
    kind: GadgetKind,
    inputs: &[PathBuf],
    n: usize,
    lambda: &str,
    seed: u64,
) -> anyhow::Result<WildFixture> {
    let need = if kind == GadgetKind::M5 { 4 } else { 1 };
    if !inputs.is_empty() && inputs.len() != need {
        bail!(
            "gadget {kind:?} takes {need} --input matrices, got {}",
            inputs.len()
        );
    }
    if n == 0 {
        bail!("--n must be positive");
    }
    let mut rng = seeded(seed);
    let mut params = Vec::with_capacity(need);
    for k in 0..need {
        params.push(match inputs.get(k) {
            Some(p) => read_matrix(p)?,
            None if kind == GadgetKind::WildA => {
                QMatrix::from_complex(&random_matrix(n, n, &mut rng).to_complex())
            }
            None => random_matrix(n, n, &mut rng),
        });
    }
    let wild = |k| gadget_wild(k, &params[0], parse_lambda(lambda)?).map_err(anyhow::Error::from);
    Ok(match kind {
        GadgetKind::Ma => WildFixture::Single(gadget_ma(&params[0])?),
        GadgetKind::M5 => {
            WildFixture::Single(gadget_m5(&params[0], &params[1], &params[2], &params[3])?)
        }
        GadgetKind::WildA => wild(WildKind::A)?,
        GadgetKind::WildB => wild(WildKind::B)?,
        GadgetKind::WildC => wild(WildKind::C)?,
        GadgetKind::WildD => wild(WildKind::D)?,
    })
}

fn canon_text(r: &CanonicalResult) -> String {
    let mut s = format!("canonical form:\n{}", r.canon);
    let edges: Vec<String> = r
        .edges
        .iter()
        .map(|e| format!("({},{})", e[0], e[1]))
        .collect();
    writeln!(s, "edges: [{}]", edges.join(", ")).unwrap();
    writeln!(s, "log:").unwrap();
    for e in &r.log {
        writeln!(
            s,
            "  ({},{}) {:<5} {}",
            e.entry[0], e.entry[1], e.case, e.delta_r
        )
        .unwrap();
    }
    s
}

fn schur_text(f: &SchurRealForm) -> String {
    let lambdas: Vec<String> = f
        .lambdas
        .iter()
        .map(|l| qcanon::quaternion::format_sig(*l, 6))
        .collect();
    format!(
        "lambdas: [{}]\nsizes: {:?}\nU:\n{}F:\n{}",
        lambdas.join(", "),
        f.sizes,
        f.u,
        f.f
    )
}

fn special_text(s: &BlockSummary, c: &QMatrix) -> String {
    let b: Vec<String> = s
        .b_values
        .iter()
        .map(|v| qcanon::quaternion::format_sig(*v, 6))
        .collect();
    format!(
        "kind: {:?}\nb values: [{}]\nones: {}\nzeros: {}\ncanonical:\n{}",
        s.kind,
        b.join(", "),
        s.ones,
        s.zeros,
        c
    )
}

fn decompose_text(d: &Decomposition) -> String {
    let mut s = format!("permutation: {:?}\n", d.permutation);
    for (c, b) in d.components.iter().zip(&d.blocks) {
        write!(s, "block {c:?}:\n{b}").unwrap();
    }
    s
}
