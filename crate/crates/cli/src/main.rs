use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gpin_core::centralizer::{decompose, image_in_gpin, image_in_gspin, restrict_so};
use gpin_core::conjugacy::{conjugator, conjugator_gspin};
use gpin_core::gpin::{center, enumerate_group, EnumeratedGroup, GPinElem, GroupKind};
use gpin_core::io::{element_to_json, matrix_to_json, parse_element, parse_isometry, parse_space, space_to_json};
use gpin_core::quadspace::QuadSpace;
use gpin_core::scalars::Field;
use gpin_core::suite::{emit_report, run_suite, Format, SuiteConfig};
use gpin_core::Error;

#[derive(Parser)]
#[command(name = "gpin", version, about = "Exact computations in GPin and GSpin groups of quadratic spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    O,
    So,
    Gpin,
    Gspin,
}

impl From<Group> for GroupKind {
    fn from(g: Group) -> GroupKind {
        match g {
            Group::O => GroupKind::O,
            Group::So => GroupKind::SO,
            Group::Gpin => GroupKind::GPin,
            Group::Gspin => GroupKind::GSpin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SpinGroup {
    Gpin,
    Gspin,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a Clifford element lies in GPin(V).
    Member {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// The isometry P(g), in original coordinates.
    Project {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// The normalized lift of an isometry to GPin(V).
    Lift {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// The center of GPin(V) or GSpin(V).
    Center {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum, default_value = "gpin")]
        group: SpinGroup,
    },
    /// Every element of O, SO, GPin or GSpin over a prime field.
    Enumerate {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum)]
        group: Group,
        /// Report the order only.
        #[arg(long)]
        count: bool,
    },
    /// Block decomposition and order of the centralizer of a semisimple isometry.
    Centralizer {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, group = "variant")]
        so: bool,
        #[arg(long, group = "variant")]
        gpin_image: bool,
        #[arg(long, group = "variant")]
        gspin_image: bool,
    },
    /// A certified conjugator between g and sigma_V(g).
    Conjugator {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        element: PathBuf,
        /// Conjugate inside GSpin(V) to e^k sigma_V(g) e^-k.
        #[arg(long)]
        gspin: bool,
    },
    /// Run a named verification suite.
    Suite {
        id: String,
        #[arg(long)]
        space: Option<PathBuf>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_space(path: &Path) -> Result<Arc<QuadSpace>> {
    Ok(parse_space(&read(path)?)?)
}

fn describe_element(g: &GPinElem) -> Value {
    json!({
        "element": element_to_json(g),
        "parity": if g.is_even() { "even" } else { "odd" },
        "norm": g.norm().to_string(),
        "sign": g.sign(),
        "pin_spin": g.pin_spin(),
        "projection": matrix_to_json(&g.projection().to_original()),
    })
}

fn print(value: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Member { space, element } => {
            let space = load_space(&space)?;
            match parse_element(&space, &read(&element)?) {
                Ok(g) => {
                    let mut report = describe_element(&g);
                    report["member"] = json!(true);
                    print(&report)?;
                }
                Err(Error::NotMember(reason)) => print(&json!({ "member": false, "reason": reason }))?,
                Err(e) => return Err(e.into()),
            }
        }
        Command::Project { space, element } => {
            let space = load_space(&space)?;
            let g = parse_element(&space, &read(&element)?)?;
            let p = g.projection();
            print(&json!({
                "matrix": matrix_to_json(&p.to_original()),
                "det": p.det_sign(),
            }))?;
        }
        Command::Lift { space, matrix } => {
            let space = load_space(&space)?;
            let m = parse_isometry(&space, &read(&matrix)?)?;
            print(&describe_element(&GPinElem::lift(&m)))?;
        }
        Command::Center { space, group } => {
            let space = load_space(&space)?;
            let kind = match group {
                SpinGroup::Gpin => GroupKind::GPin,
                SpinGroup::Gspin => GroupKind::GSpin,
            };
            print(&json!({ "space": space_to_json(&space), "center": center(&space, kind) }))?;
        }
        Command::Enumerate { space, group, count } => {
            let space = load_space(&space)?;
            let elements = enumerate_group(&space, group.into())?;
            let mut report = json!({ "group": GroupKind::from(group), "order": elements.len() });
            if !count {
                report["elements"] = match &elements {
                    EnumeratedGroup::Isometries(ms) => ms.iter().map(|m| matrix_to_json(&m.to_original())).collect(),
                    EnumeratedGroup::Spinors(gs) => gs.iter().map(element_to_json).collect(),
                };
            }
            print(&report)?;
        }
        Command::Centralizer { space, matrix, so, gpin_image, gspin_image } => {
            let space = load_space(&space)?;
            let h = parse_isometry(&space, &read(&matrix)?)?;
            let d = decompose(&h)?;
            let group = if so {
                restrict_so(&d)?
            } else if gpin_image {
                image_in_gpin(&d)
            } else if gspin_image {
                image_in_gspin(&d)?
            } else {
                d.full_group()
            };
            print(&group.to_json())?;
        }
        Command::Conjugator { space, element, gspin } => {
            let space = load_space(&space)?;
            let g = parse_element(&space, &read(&element)?)?;
            let report = if gspin { conjugator_gspin(&g)?.to_json() } else { conjugator(&g)?.to_json() };
            print(&report)?;
        }
        Command::Suite { id, space, field, dim, seed, slow, format } => {
            let format: Format = format.parse()?;
            let config = SuiteConfig {
                space: space.as_deref().map(load_space).transpose()?,
                field: field.as_deref().map(str::parse::<Field>).transpose()?,
                dim,
                seed,
                slow,
                ..SuiteConfig::default()
            };
            let report = run_suite(&id, &config)?;
            print!("{}", emit_report(&report, format));
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Exit code for unusable input, distinct from suite failures (1) and findings (2).
const INPUT_ERROR: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
