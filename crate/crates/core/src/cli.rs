//! The `mrd` command-line driver.
//!
//! Exit status: 0 on success, 1 when a verification fails (the report is
//! still written), 2 for invalid parameters or unreadable input.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cmp::{self, CmpEquivalenceReport, GammaSplashReport, NamedCheck};
use crate::codes::{self, DistanceMode, MrdReport};
use crate::error::{Error, Result};
use crate::geometry::{self, CongruenceReport, LinearSetReport, Reduction, SpreadDecompositionReport};
use crate::gfield::{FieldCtx, FieldDesc};
use crate::io::{self, fq_label, parse_fq_element, parse_fq_list, CodeFile};

/// Seed of the ChaCha8 stream behind the `geometry` congruence sample.
pub const SAMPLE_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "mrd", version, about = "Build and verify non-linear MRD codes")]
pub struct RunConfig {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// q = p^h.
    #[arg(long, default_value_t = 1)]
    pub h: usize,
    /// Extension degree of F_{q^m} over F_q.
    #[arg(long)]
    pub m: usize,
    /// Primitive modulus of degree h·m, little-endian coefficients
    /// (e.g. `1,2,0,1`). Defaults to the built-in table.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bruteforce,
    Orbit,
}

impl From<Mode> for DistanceMode {
    fn from(m: Mode) -> DistanceMode {
        match m {
            Mode::Bruteforce => DistanceMode::BruteForce,
            Mode::Orbit => DistanceMode::Orbit,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the field tower.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the code family (or a Gabidulin code) and write a code file.
    Build {
        #[command(flatten)]
        field: FieldArgs,
        /// Parameter set I: comma-separated residues `r` or powers `w^K`.
        #[arg(long, default_value = "")]
        set: String,
        /// Build the linear code with `a_i = 0` for `i > m-s-1` instead.
        #[arg(long)]
        gabidulin: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check size, minimum distance and linearity of a code file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Orbit)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank-distance histogram of a code file.
    Distdist {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Orbit)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projective and field-reduction checks for the family.
    Geometry {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        set: String,
        /// Size of the congruence sample.
        #[arg(long, default_value_t = 10_000)]
        sample: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// C_F^1-set family checks (m = 3).
    Cmp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        set: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exterior splash of [γ_a] on the line X_3 = 0 (m = 3).
    Splash {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn make_ctx(f: &FieldArgs) -> Result<Arc<FieldCtx>> {
    let modulus = f
        .modulus
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::BadModulus(format!("bad coefficient {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(Arc::new(FieldCtx::new(f.p, f.h, f.m, modulus)?))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json(out: Option<&Path>, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes())
}

#[derive(Serialize)]
struct FieldInfo {
    field: FieldDesc,
    q: u64,
    order: u64,
    subfield_index: u32,
    generator: Vec<u32>,
    fq_generator: Vec<u32>,
    fq_elements: Vec<String>,
}

#[derive(Serialize)]
struct Witness {
    w1: Vec<Vec<u32>>,
    w2: Vec<Vec<u32>>,
    c: String,
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    mrd: MrdReport,
    size_matches_bound: bool,
    linear: bool,
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct Histogram {
    pairs: u64,
    histogram: BTreeMap<usize, u64>,
}

#[derive(Serialize)]
struct GeometryReport {
    linear_sets: LinearSetReport,
    scattered: BTreeMap<String, bool>,
    congruence: CongruenceReport,
    sample_seed: u64,
    cyclic_decomposition: bool,
    /// `None` when PG(m²-1, q) is beyond the spread bound.
    spread: Option<SpreadDecompositionReport>,
    pass: bool,
}

#[derive(Serialize)]
struct CmpReport {
    theta_components: Vec<NamedCheck>,
    cf1_set: bool,
    equivalence: CmpEquivalenceReport,
    pass: bool,
}

#[derive(Serialize)]
struct SplashReport {
    gamma_splash: GammaSplashReport,
    /// Exterior splash of [π_a] on [W] is [J_{a²}].
    pi_splash_is_j: bool,
    pass: bool,
}

/// Runs one command; `Ok(false)` means a verification failed.
pub fn execute(cfg: &RunConfig) -> Result<bool> {
    match &cfg.command {
        Command::FieldInfo { field, out } => {
            let ctx = make_ctx(field)?;
            let info = FieldInfo {
                field: ctx.desc(),
                q: ctx.q(),
                order: ctx.order(),
                subfield_index: ctx.subfield_index(),
                generator: ctx.coeffs(ctx.generator()),
                fq_generator: ctx.coeffs(ctx.fq_generator()),
                fq_elements: ctx.fq_elements().into_iter().map(|a| fq_label(&ctx, a)).collect(),
            };
            emit_json(out.as_deref(), &info)?;
            Ok(true)
        }
        Command::Build {
            field,
            set,
            gabidulin,
            out,
        } => {
            let ctx = make_ctx(field)?;
            let code = match gabidulin {
                Some(s) => codes::build_gabidulin(ctx, *s)?,
                None => {
                    let set = parse_fq_list(&ctx, set)?;
                    codes::build_family(ctx, &set)?
                }
            };
            let mut text = serde_json::to_string(&CodeFile::from_code(&code))?;
            text.push('\n');
            emit(out.as_deref(), text.as_bytes())?;
            Ok(true)
        }
        Command::Verify { file, mode, out } => {
            let code = io::read_code(file)?;
            let ctx = code.ctx_arc().clone();
            let mrd = codes::verify_mrd(&code, (*mode).into());
            let witness = codes::linearity_witness(&code);
            let report = VerifyReport {
                size_matches_bound: mrd.size.to_string() == mrd.singleton_bound,
                linear: witness.is_none(),
                witness: witness.map(|(w1, w2, c)| Witness {
                    w1: w1.to_coeffs(&ctx),
                    w2: w2.to_coeffs(&ctx),
                    c: fq_label(&ctx, c),
                }),
                mrd,
            };
            emit_json(out.as_deref(), &report)?;
            Ok(report.mrd.mrd)
        }
        Command::Distdist {
            file,
            mode,
            format,
            out,
        } => {
            let code = io::read_code(file)?;
            let histogram = codes::distance_distribution(&code, (*mode).into());
            match format {
                Format::Json => emit_json(
                    out.as_deref(),
                    &Histogram {
                        pairs: histogram.values().sum(),
                        histogram,
                    },
                )?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    io::write_histogram_csv(&mut buf, &histogram)?;
                    emit(out.as_deref(), &buf)?;
                }
            }
            Ok(true)
        }
        Command::Geometry {
            field,
            set,
            sample,
            out,
        } => {
            let ctx = make_ctx(field)?;
            let set = parse_fq_list(&ctx, set)?;
            let linear_sets = geometry::verify_linear_set_union(&ctx, &set)?;
            let mut scattered = BTreeMap::new();
            scattered.insert(
                "pi_1".to_string(),
                geometry::is_scattered(&ctx, &geometry::cyclic_model_basis(&ctx))?,
            );
            for b in ctx.fq_units() {
                scattered.insert(
                    format!("J_{}", fq_label(&ctx, b)),
                    geometry::is_scattered(&ctx, &geometry::pseudoregulus_basis(&ctx, b)?)?,
                );
            }
            let red = Reduction::new(&ctx)?;
            let vectors = geometry::sample_vectors(&ctx, *sample, SAMPLE_SEED);
            let congruence = geometry::verify_singer_congruence(&ctx, &red, &vectors);
            let cyclic_decomposition = geometry::verify_cyclic_decomposition(&ctx, &red);
            let spread = match geometry::verify_spread_decomposition(&ctx, &set) {
                Ok(r) => Some(r),
                Err(Error::TooLarge { .. }) => None,
                Err(e) => return Err(e),
            };
            let pass = linear_sets.pass
                && scattered.values().all(|&s| s)
                && congruence.pass
                && cyclic_decomposition
                && spread.as_ref().is_none_or(|s| s.pass);
            emit_json(
                out.as_deref(),
                &GeometryReport {
                    linear_sets,
                    scattered,
                    congruence,
                    sample_seed: SAMPLE_SEED,
                    cyclic_decomposition,
                    spread,
                    pass,
                },
            )?;
            Ok(pass)
        }
        Command::Cmp { field, set, out } => {
            let ctx = make_ctx(field)?;
            let set = parse_fq_list(&ctx, set)?;
            let theta_components = cmp::verify_theta_components(&ctx)?;
            let cf1_set = cmp::on_cf1_set(&ctx)?;
            let equivalence = cmp::verify_cmp_equivalence(ctx.clone(), &set)?;
            let pass = cf1_set && equivalence.pass && theta_components.iter().all(|c| c.pass);
            emit_json(
                out.as_deref(),
                &CmpReport {
                    theta_components,
                    cf1_set,
                    equivalence,
                    pass,
                },
            )?;
            Ok(pass)
        }
        Command::Splash { field, a, out } => {
            let ctx = make_ctx(field)?;
            let a = parse_fq_element(&ctx, a)?;
            let gamma_splash = cmp::verify_gamma_splash(&ctx, a)?;
            let pi_splash_is_j = cmp::pi_splash_is_j(&ctx, a)?;
            let pass = gamma_splash.pass && pi_splash_is_j;
            emit_json(
                out.as_deref(),
                &SplashReport {
                    gamma_splash,
                    pi_splash_is_j,
                    pass,
                },
            )?;
            Ok(pass)
        }
    }
}

/// Runs a command and maps the outcome to an exit status.
pub fn run(cfg: &RunConfig) -> i32 {
    if let Some(n) = cfg.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(cfg) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_commands() {
        let cfg = RunConfig::try_parse_from([
            "mrd", "--threads", "2", "build", "--p", "3", "--m", "3", "--set", "2",
        ])
        .unwrap();
        assert_eq!(cfg.threads, Some(2));
        assert!(matches!(cfg.command, Command::Build { .. }));
        let cfg = RunConfig::try_parse_from(["mrd", "verify", "x.json", "--mode", "bruteforce"]).unwrap();
        assert!(matches!(
            cfg.command,
            Command::Verify {
                mode: Mode::Bruteforce,
                ..
            }
        ));
        assert!(RunConfig::try_parse_from(["mrd", "verify", "x.json", "--mode", "fast"]).is_err());
    }

    #[test]
    fn invalid_parameters_exit_2() {
        let cfg = RunConfig::try_parse_from(["mrd", "build", "--p", "4", "--m", "3"]).unwrap();
        assert_eq!(run(&cfg), 2);
        let cfg = RunConfig::try_parse_from(["mrd", "build", "--p", "3", "--m", "3", "--set", "1"]).unwrap();
        assert_eq!(run(&cfg), 2);
        let cfg = RunConfig::try_parse_from(["mrd", "verify", "/nonexistent/code.json"]).unwrap();
        assert_eq!(run(&cfg), 2);
    }
}
