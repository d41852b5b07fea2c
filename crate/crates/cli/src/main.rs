use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use moebius_core::lawvere::moebius_via_lawvere;
use moebius_core::models::{cm_moebius_closed_form, dm_moebius_closed_form};
use moebius_core::semigroup::{moebius_via_idempotent_lattice, moebius_via_quotients};
use moebius_core::verify::{verify_cm, verify_dm, VerifyReport};
use moebius_core::{
    Cm, CmMorphism, DivisionCategory, Dm, DmMorphism, FinitePoset, IdempotentTransversal,
    InverseSemigroup,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "moebius",
    version,
    about = "Möbius functions of posets, C_m, D_m and inverse semigroups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// μ of a morphism (a,x,i,j) of C_m
    MuCm {
        #[arg(long)]
        m: i64,
        /// a,x,i,j
        #[arg(allow_hyphen_values = true)]
        morphism: String,
        /// Also compute μ through the Lawvere interval and the convolution inverse
        #[arg(long)]
        verify: bool,
    },
    /// μ of a morphism (alpha,x) of D_m
    MuDm {
        #[arg(long)]
        m: i64,
        /// alpha,x
        #[arg(allow_hyphen_values = true)]
        morphism: String,
        #[arg(long)]
        verify: bool,
    },
    /// Cross-check C_m and D_m windows; without --m, sweeps m = 2, 3, 5
    Verify {
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, default_value_t = -8, allow_negative_numbers = true)]
        level_min: i64,
        /// Largest α in the D_m window [default: m - 1 + 10]
        #[arg(long, allow_negative_numbers = true)]
        alpha_max: Option<i64>,
    },
    /// Hasse diagram of the Lawvere interval of a C_m morphism
    IntervalDot {
        #[arg(long)]
        m: i64,
        #[arg(allow_hyphen_values = true)]
        morphism: String,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// μ(x, y) in a poset read from a JSON file
    PosetMu { file: PathBuf, x: String, y: String },
    /// μ(s, e) on the division category of an inverse semigroup read from a JSON file
    Semigroup {
        file: PathBuf,
        /// s,e
        morphism: String,
        /// Comma-separated idempotent representatives, one per D-class
        #[arg(long)]
        transversal: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check of the command passed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::MuCm {
            m,
            morphism,
            verify,
        } => mu_cm(cli.format, *m, morphism, *verify),
        Command::MuDm {
            m,
            morphism,
            verify,
        } => mu_dm(cli.format, *m, morphism, *verify),
        Command::Verify {
            m,
            level_min,
            alpha_max,
        } => run_verify(cli.format, *m, *level_min, *alpha_max),
        Command::IntervalDot { m, morphism, out } => {
            interval_dot(cli.format, *m, morphism, out.as_deref())
        }
        Command::PosetMu { file, x, y } => poset_mu(cli.format, file, x, y),
        Command::Semigroup {
            file,
            morphism,
            transversal,
        } => semigroup(cli.format, file, morphism, transversal.as_deref()),
    }
}

fn text_or_json(format: Format) -> Result<bool> {
    match format {
        Format::Text => Ok(false),
        Format::Json => Ok(true),
        Format::Dot => bail!("--format dot is only supported by interval-dot"),
    }
}

/// Prints `closed` alone, or `closed lawvere convolution AGREE|DISAGREE` when verifying.
fn report_mu(
    format: Format,
    morphism: String,
    closed: i64,
    checks: Option<(i64, i64)>,
) -> Result<bool> {
    let json = text_or_json(format)?;
    let agree = checks.is_none_or(|(l, c)| l == closed && c == closed);
    if json {
        let mut v = json!({ "morphism": morphism, "mu": closed });
        if let Some((l, c)) = checks {
            v["lawvere"] = json!(l);
            v["convolution"] = json!(c);
            v["agree"] = json!(agree);
        }
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        match checks {
            Some((l, c)) => println!("{closed} {l} {c} {}", verdict(agree)),
            None => println!("{closed}"),
        }
    }
    Ok(agree)
}

fn verdict(agree: bool) -> &'static str {
    if agree {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

fn mu_cm(format: Format, m: i64, spec: &str, verify: bool) -> Result<bool> {
    let cm = Cm::new(m)?;
    let f = CmMorphism::parse(spec)?;
    cm.check(&f)?;
    let closed = cm_moebius_closed_form(&f);
    let checks = if verify {
        let window = cm.slice(f.j)?;
        let mor = window
            .find(&f)
            .context("morphism missing from its window")?;
        let lawvere = moebius_via_lawvere(window.category(), mor)?;
        let convolution = window.category().moebius_values()?[mor.0];
        Some((lawvere, convolution))
    } else {
        None
    };
    report_mu(format, f.key(), closed, checks)
}

fn mu_dm(format: Format, m: i64, spec: &str, verify: bool) -> Result<bool> {
    let dm = Dm::new(m)?;
    let f = DmMorphism::parse(spec)?;
    dm.check(&f)?;
    let closed = dm_moebius_closed_form(&f);
    let checks = if verify {
        let window = dm.slice(f.alpha)?;
        let mor = window
            .find(&f)
            .context("morphism missing from its window")?;
        let lawvere = moebius_via_lawvere(window.category(), mor)?;
        let convolution = window.category().moebius_values()?[mor.0];
        Some((lawvere, convolution))
    } else {
        None
    };
    report_mu(format, f.key(), closed, checks)
}

fn run_verify(
    format: Format,
    m: Option<i64>,
    level_min: i64,
    alpha_max: Option<i64>,
) -> Result<bool> {
    let json = text_or_json(format)?;
    let moduli = match m {
        Some(m) => vec![m],
        None => vec![2, 3, 5],
    };
    let mut reports: Vec<VerifyReport> = Vec::new();
    for m in moduli {
        reports.push(verify_cm(m, level_min)?);
        reports.push(verify_dm(m, alpha_max.unwrap_or(m - 1 + 10))?);
    }
    let passed = reports.iter().all(VerifyReport::passed);
    if json {
        let v = json!({ "passed": passed, "reports": reports });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        for r in &reports {
            println!("{r}");
        }
        println!("{}", if passed { "PASS" } else { "FAIL" });
    }
    Ok(passed)
}

fn interval_dot(format: Format, m: i64, spec: &str, out: Option<&Path>) -> Result<bool> {
    let cm = Cm::new(m)?;
    let f = CmMorphism::parse(spec)?;
    cm.check(&f)?;
    let window = cm.slice(f.j)?;
    let mor = window
        .find(&f)
        .context("morphism missing from its window")?;
    let poset = window.interval_poset(mor)?;
    let text = match format {
        Format::Text | Format::Dot => poset.to_dot(&format!("I{}", f.key())),
        Format::Json => poset.to_json_string() + "\n",
    };
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(true)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn poset_mu(format: Format, file: &Path, x: &str, y: &str) -> Result<bool> {
    let json = text_or_json(format)?;
    let p = FinitePoset::from_json_str(&read(file)?)
        .with_context(|| format!("parsing {}", file.display()))?;
    let mu = p.moebius(p.element(x)?, p.element(y)?)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "x": x, "y": y, "mu": mu }))?
        );
    } else {
        println!("{mu}");
    }
    Ok(true)
}

/// Splits `s,e` at the unique comma leaving two element labels, so labels may contain commas.
fn split_pair(s: &InverseSemigroup, spec: &str) -> Result<(usize, usize)> {
    let mut found = spec
        .match_indices(',')
        .filter_map(|(i, _)| Some((s.element(&spec[..i]).ok()?, s.element(&spec[i + 1..]).ok()?)));
    match (found.next(), found.next()) {
        (Some(pair), None) => Ok(pair),
        (None, _) => bail!("`{spec}` is not of the form s,e with known elements"),
        (Some(_), Some(_)) => bail!("`{spec}` splits into element labels in more than one way"),
    }
}

fn semigroup(format: Format, file: &Path, spec: &str, transversal: Option<&str>) -> Result<bool> {
    let json = text_or_json(format)?;
    let s = InverseSemigroup::from_json_str(&read(file)?)
        .with_context(|| format!("parsing {}", file.display()))?;
    let t = match transversal {
        Some(list) => IdempotentTransversal::from_labels(
            &s,
            &list.split(',').map(str::trim).collect::<Vec<_>>(),
        )?,
        None => IdempotentTransversal::canonical(&s)
            .context("choose representatives with --transversal")?,
    };
    let d = DivisionCategory::build(&s, &t)?;
    let c = d.category();
    let (x, e) = split_pair(&s, spec)?;
    let Some(mor) = d.find(x, e) else {
        bail!(
            "({},{}) is not a morphism: e must be a representative with s⁻¹s <= e",
            s.label(x),
            s.label(e)
        );
    };
    let quotient = moebius_via_quotients(c, mor)?;
    let lattice = moebius_via_idempotent_lattice(&s, x, e)?;
    let lawvere = moebius_via_lawvere(c, mor)?;
    let convolution = c.moebius_values()?[mor.0];
    let agree = quotient == convolution && lattice == convolution && lawvere == convolution;
    if json {
        let v = json!({
            "morphism": c.key(mor),
            "quotient": quotient,
            "idempotent_lattice": lattice,
            "lawvere": lawvere,
            "convolution": convolution,
            "agree": agree,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("{quotient} {lattice} {lawvere} {}", verdict(agree));
    }
    Ok(agree)
}
