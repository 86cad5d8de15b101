//! Command line front end: `build`, `mutate`, `cut`, `regions`, `verify` and `show`.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::cutglue::{cut_surface, frieze_d};
use crate::documents::{
    cut_to_json, diff_to_json, frieze_from_json, frieze_to_json, mutation_to_json, parse_triangulation, Surface,
};
use crate::error::FriezeError;
use crate::frieze::{frieze_a, validate_frieze, FriezeGrid};
use crate::mutation::{mutate_frieze_a, mutate_frieze_d, MutationReport};
use crate::oracle::{differential_mutation_check, EnumerationSpec, SurfaceKind};
use crate::patterng::{build_pattern_g, classify_regions, ray_diagram};
use crate::render::{render_frieze, render_regions};
use crate::surfaces::{PuncturedArc, Triangulated};

#[derive(Debug, Parser)]
#[command(name = "frieze", version, about = "Exact friezes of types A and D and their mutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Triangulation or frieze document; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frieze of a triangulation.
    Build,
    /// Frieze after flipping one arc, computed in closed form.
    Mutate {
        /// `i,j`, `radius:v`, `loop:v` or `peripheral:a,b`.
        #[arg(long)]
        arc: String,
        #[arg(long)]
        trace: bool,
    },
    /// Doubled polygon of a punctured disk cut along a radius.
    Cut {
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Region diagram of the quotient pattern for a flip.
    Regions {
        #[arg(long)]
        arc: String,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Differential check of closed-form mutation against rebuilt friezes.
    Verify {
        #[arg(long, value_enum)]
        surface: SurfaceArg,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Offset picture of a frieze document or of a triangulation's frieze.
    Show {
        #[arg(long)]
        columns: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Polygon,
    PuncturedDisk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<FriezeError> for CliError {
    fn from(e: FriezeError) -> Self {
        let code = match e {
            FriezeError::SelfFoldedRadius(_)
            | FriezeError::NotInTriangulation(_)
            | FriezeError::NoAlternateCut(_)
            | FriezeError::ArcIsCutArc(_)
            | FriezeError::NotARadius(_) => 2,
            FriezeError::RegionMismatch(_) | FriezeError::SymmetryViolation(_) | FriezeError::NonIntegralStep { .. } => 3,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

pub fn parse_arc(s: &str) -> Result<ArcSpec, CliError> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| CliError::usage(format!("bad arc {s:?}")));
    let pair = |t: &str| -> Result<(usize, usize), CliError> {
        let (a, b) = t.split_once(',').ok_or_else(|| CliError::usage(format!("bad arc {s:?}")))?;
        Ok((num(a)?, num(b)?))
    };
    Ok(match s.split_once(':') {
        Some(("radius", v)) => ArcSpec::Punctured(PuncturedArc::Radius(num(v)?)),
        Some(("loop", v)) => ArcSpec::Punctured(PuncturedArc::Loop(num(v)?)),
        Some(("peripheral", ab)) => {
            let (a, b) = pair(ab)?;
            ArcSpec::Punctured(PuncturedArc::Peripheral(a, b))
        }
        Some(_) => return Err(CliError::usage(format!("bad arc {s:?}"))),
        None => {
            let (i, j) = pair(s)?;
            ArcSpec::Diagonal(i.min(j), i.max(j))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcSpec {
    Diagonal(usize, usize),
    Punctured(PuncturedArc),
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(e.to_string()))?;
            Ok(s)
        }
    }
}

fn validated(text: &str) -> Result<Surface, CliError> {
    let s = parse_triangulation(text)?;
    match &s {
        Surface::Polygon(t) => t.validate().map_err(FriezeError::InvalidTriangulation)?,
        Surface::Punctured(t) => t.validate().map_err(FriezeError::InvalidTriangulation)?,
    }
    Ok(s)
}

fn frieze_of(s: &Surface) -> Result<FriezeGrid, CliError> {
    let f = match s {
        Surface::Polygon(t) => frieze_a(t)?,
        Surface::Punctured(t) => frieze_d(t)?,
    };
    validate_frieze(&f).map_err(|v| CliError { code: 3, message: format!("frieze fails its axioms: {v:?}") })?;
    Ok(f)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn frieze_text(f: &FriezeGrid, format: Format, columns: Option<usize>) -> String {
    match format {
        Format::Machine => pretty(&frieze_to_json(f)),
        Format::Ascii => {
            let mut s = format!("{} frieze, period {}\n", f.kind(), f.period());
            s.push_str(&render_frieze(f, columns.unwrap_or(f.period())));
            s
        }
    }
}

fn trace_text(r: &MutationReport<FriezeGrid>) -> String {
    let mut s = String::new();
    for row in &r.rows {
        let p: Vec<String> = row.projections.iter().map(|(n, v)| format!("{n}={v}")).collect();
        let _ = writeln!(s, "{:?} {:?} old={} {} delta={} new={}", row.location, row.region, row.old, p.join(" "), row.delta, row.new);
    }
    s
}

fn punctured(s: &Surface) -> Result<&crate::surfaces::PuncturedTriangulation, CliError> {
    match s {
        Surface::Punctured(t) => Ok(t),
        Surface::Polygon(_) => Err(CliError::usage("this command needs a punctured disk")),
    }
}

/// Runs a command and returns the emitted document.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Build => {
            let f = frieze_of(&validated(&read_input(&cli.input)?)?)?;
            Ok(frieze_text(&f, cli.format, None))
        }
        Command::Mutate { arc, trace } => {
            let s = validated(&read_input(&cli.input)?)?;
            let report = match (&s, parse_arc(arc)?) {
                (Surface::Polygon(t), ArcSpec::Diagonal(i, j)) => mutate_frieze_a(&frieze_a(t)?, t, (i, j))?,
                (Surface::Punctured(t), ArcSpec::Punctured(a)) => mutate_frieze_d(t, &a)?,
                _ => return Err(CliError::usage(format!("arc {arc} does not live on this surface"))),
            };
            Ok(match cli.format {
                Format::Machine => pretty(&mutation_to_json(&report, *trace)),
                Format::Ascii => {
                    let mut out = frieze_text(&report.result, Format::Ascii, None);
                    if *trace {
                        out.push_str(&trace_text(&report));
                    }
                    out
                }
            })
        }
        Command::Cut { radius } => {
            let s = validated(&read_input(&cli.input)?)?;
            let t = punctured(&s)?;
            let v = radius.or_else(|| t.cut_radius(None)).expect("validated triangulations have a radius");
            let c = cut_surface(t, &PuncturedArc::Radius(v))?;
            Ok(match cli.format {
                Format::Machine => pretty(&cut_to_json(&c)?),
                Format::Ascii => {
                    let mut out = format!("cut along radius:{v}, quiddity {:?}\n", c.tilde.quiddity()?);
                    for (d, l) in &c.labels {
                        let _ = writeln!(out, "{d:?} {l:?}");
                    }
                    out
                }
            })
        }
        Command::Regions { arc, radius } => {
            let s = validated(&read_input(&cli.input)?)?;
            let t = punctured(&s)?;
            let ArcSpec::Punctured(a) = parse_arc(arc)? else {
                return Err(CliError::usage("regions needs a punctured-disk arc"));
            };
            let v = radius.or_else(|| t.cut_radius(Some(&a))).ok_or(FriezeError::NoAlternateCut(a))?;
            let g = build_pattern_g(t, &PuncturedArc::Radius(v))?;
            let d = ray_diagram(&g, &a)?;
            Ok(render_regions(&g, &d, &classify_regions(&g, &d)))
        }
        Command::Verify { surface, size, sample, seed } => {
            let kind = match surface {
                SurfaceArg::Polygon => SurfaceKind::Polygon,
                SurfaceArg::PuncturedDisk => SurfaceKind::PuncturedDisk,
            };
            let spec = match sample {
                Some(count) => EnumerationSpec::sampled(kind, *size, *seed, *count),
                None => EnumerationSpec::exhaustive(kind, *size),
            };
            let reports = differential_mutation_check(&spec)?;
            let name = match kind {
                SurfaceKind::Polygon => "polygon",
                SurfaceKind::PuncturedDisk => "punctured-disk",
            };
            let doc = diff_to_json(name, *size, &reports);
            let failures = reports.iter().filter(|r| !r.pass).count();
            let text = match cli.format {
                Format::Machine => pretty(&doc),
                Format::Ascii => format!("{} checks, {failures} failures\n", reports.len()),
            };
            if failures > 0 {
                return Err(CliError { code: 3, message: text });
            }
            Ok(text)
        }
        Command::Show { columns } => {
            let text = read_input(&cli.input)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| FriezeError::Parse(e.to_string()))?;
            let f = if v.get("rows").is_some() { frieze_from_json(&v)? } else { frieze_of(&validated(&text)?)? };
            Ok(frieze_text(&f, cli.format, *columns))
        }
    }
}

/// Entry point for the binary: emits the document and returns the exit status.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(text) => match &cli.output {
            Some(p) => match fs::write(p, text) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("{}: {e}", p.display());
                    1
                }
            },
            None => {
                print!("{text}");
                0
            }
        },
        Err(e) => {
            eprintln!("frieze: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_syntax() {
        assert_eq!(parse_arc("2,0").unwrap(), ArcSpec::Diagonal(0, 2));
        assert_eq!(parse_arc("radius:3").unwrap(), ArcSpec::Punctured(PuncturedArc::Radius(3)));
        assert_eq!(parse_arc("peripheral:4,1").unwrap(), ArcSpec::Punctured(PuncturedArc::Peripheral(4, 1)));
        assert_eq!(parse_arc("spiral:1").unwrap_err().code, 1);
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(FriezeError::SelfFoldedRadius(PuncturedArc::Radius(0))).code, 2);
        assert_eq!(CliError::from(FriezeError::Parse("x".into())).code, 1);
    }
}
