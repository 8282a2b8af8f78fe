use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lieverify::catalog::{build_sl2, build_sl4, build_so32, build_so42, so5_borel_rmatrix, sl4_borel_rmatrix, ConformalAlgebra};
use lieverify::parse::{parse_algebra, parse_rmatrix_with, parse_scalar, serialize_rmatrix};
use lieverify::physmaps::{coefficient_diff, d3_two_mass_rmatrix, d4_null_plane_rmatrix, to_sub_basis};
use lieverify::report::{Check, VerificationReport};
use lieverify::star::{parse_star_spec, so32_borel, so32_involution, so42_borel, so42_involution};
use lieverify::suites::{hopf_checks, jacobi_check, run_claim, run_suite, Catalog};
use lieverify::tensoralg::cybe_residual;
use lieverify::{Element, LieAlgebra, Scalar, TwoTensor};

#[derive(Parser)]
#[command(name = "lieverify", version, about = "Exact verification of r-matrices, real forms and a Jordanian quantum sl(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named suite (default `all`) or the checks under one claim id.
    Verify {
        #[arg(long, conflicts_with = "claim")]
        suite: Option<String>,
        #[arg(long)]
        claim: Option<String>,
        /// Run against a catalog with corrupted sl(2) and sl(4) structure constants.
        #[arg(long, hide = true)]
        corrupt_catalog: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Jacobi identity of a catalog algebra or an algebra-definition file.
    CheckJacobi {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// CYBE residual of an r-matrix file over an algebra.
    CheckCybe {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rmatrix: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Anti-automorphism and reality checks for a Borel involution, e.g. `so32:lambda=1,eps=-1`.
    CheckReality {
        #[arg(long)]
        star: String,
        /// Borel r-matrix parameters `c1=...,c2=...`.
        #[arg(long, default_value = "c1=1,c2=2")]
        params: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Borel r-matrix at the given parameters, re-expressed in the physical basis.
    MapBasis {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "c1=1,c2=2")]
        params: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hopf-algebra axioms of the deformed sl(2) at a truncation order.
    HopfVerify {
        #[arg(long, default_value_t = lieverify::suites::HOPF_ORDER)]
        order: usize,
        #[arg(long)]
        compare_printed_antipode: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full report over every suite.
    Report {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Usage and input errors; these exit with status 2.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{source}")]
    Parse { path: String, source: lieverify::parse::ParseError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Suite(#[from] lieverify::suites::SuiteError),
    #[error(transparent)]
    Catalog(#[from] lieverify::catalog::CatalogError),
}

enum Target {
    Plain(LieAlgebra),
    Conformal(ConformalAlgebra),
}

impl Target {
    fn algebra(&self) -> &LieAlgebra {
        match self {
            Target::Plain(g) => g,
            Target::Conformal(c) => &c.ambient,
        }
    }

    fn resolve(&self, label: &str) -> Option<Element> {
        match self {
            Target::Plain(g) => g.element(label).ok(),
            Target::Conformal(c) => c.resolve(label),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_algebra(name: &str, for_jacobi: bool) -> Result<Target, CliError> {
    Ok(match name {
        "sl2" => Target::Plain(build_sl2()),
        "so32" | "sp4" => Target::Conformal(build_so32()?),
        "sl4" if for_jacobi => Target::Plain(build_sl4()),
        "so42" | "sl4" => Target::Conformal(build_so42()?),
        path => {
            let p = Path::new(path);
            if !p.exists() {
                return Err(CliError::Usage(format!("unknown algebra `{name}` (expected sl2, so32, sp4, so42, sl4 or a definition file)")));
            }
            let text = read(p)?;
            Target::Plain(parse_algebra(&text).map_err(|source| CliError::Parse { path: path.into(), source })?)
        }
    })
}

fn parse_params(text: &str) -> Result<BTreeMap<String, Scalar>, CliError> {
    let mut out = BTreeMap::new();
    for kv in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("bad parameter `{kv}` (expected name=value)")))?;
        let v = parse_scalar(v).map_err(|source| CliError::Parse { path: "--params".into(), source })?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn borel_params(text: &str) -> Result<(Scalar, Scalar), CliError> {
    let p = parse_params(text)?;
    if let Some(k) = p.keys().find(|k| *k != "c1" && *k != "c2") {
        return Err(CliError::Usage(format!("unknown parameter `{k}` (expected c1, c2)")));
    }
    Ok((p.get("c1").cloned().unwrap_or_else(Scalar::zero), p.get("c2").cloned().unwrap_or_else(Scalar::zero)))
}

fn emit(report: &VerificationReport, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn single(suite: &str, checks: Vec<Check>) -> VerificationReport {
    VerificationReport::new(suite, checks, BTreeMap::new())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify { suite, claim, corrupt_catalog, format } => {
            let mut catalog = Catalog::build()?;
            if corrupt_catalog {
                catalog = catalog.corrupted();
            }
            let report = match claim {
                Some(c) => run_claim(&catalog, &c)?,
                None => run_suite(&catalog, suite.as_deref().unwrap_or("all"))?,
            };
            Ok(emit(&report, format))
        }
        Command::CheckJacobi { algebra, format } => {
            let target = load_algebra(&algebra, true)?;
            let g = target.algebra();
            Ok(emit(&single("check-jacobi", vec![jacobi_check(&format!("jacobi.{}", g.name()), g)]), format))
        }
        Command::CheckCybe { algebra, rmatrix, format } => {
            let target = load_algebra(&algebra, false)?;
            let text = read(&rmatrix)?;
            let g = target.algebra();
            let r = parse_rmatrix_with(&text, g, &|l| target.resolve(l))
                .map_err(|source| CliError::Parse { path: rmatrix.display().to_string(), source })?;
            let desc = format!("CYBE for r = {} over {}", r.to_text(), g.name());
            let check = match cybe_residual(g, &r) {
                Ok(res) if res.is_zero() => Check::pass("cybe.file", &desc),
                Ok(res) => Check::fail("cybe.file", &desc, &format!("{} nonzero components, first {}", res.len(), res.first_component().unwrap_or_default())),
                Err(e) => Check::fail("cybe.file", &desc, &e.to_string()),
            };
            Ok(emit(&single("check-cybe", vec![check]), format))
        }
        Command::CheckReality { star, params, format } => {
            let (alg, signs) = parse_star_spec(&star).ok_or_else(|| CliError::Usage(format!("bad --star `{star}` (expected so32:lambda=±1,eps=±1 or so42:eta=±1,eps=±1)")))?;
            let sign = |name: &str| signs.iter().find(|(k, _)| k == name).map(|(_, v)| *v);
            let (c1, c2) = borel_params(&params)?;
            let (star, r) = match alg.as_str() {
                "so32" | "sp4" => {
                    let (Some(lambda), Some(eps)) = (sign("lambda"), sign("eps")) else {
                        return Err(CliError::Usage("so32 star needs lambda and eps".into()));
                    };
                    let borel = so32_borel(&build_so32()?).map_err(|e| CliError::Usage(e.to_string()))?.sub;
                    let r = so5_borel_rmatrix(&|l| borel.el(l), &c1, &c2);
                    (so32_involution(&borel, lambda, eps), r)
                }
                "so42" | "sl4" => {
                    let (Some(eta), Some(eps)) = (sign("eta"), sign("eps")) else {
                        return Err(CliError::Usage("so42 star needs eta and eps".into()));
                    };
                    let borel = so42_borel(&build_so42()?).map_err(|e| CliError::Usage(e.to_string()))?.sub;
                    let r = sl4_borel_rmatrix(&|l| borel.el(l), &c1, &c2);
                    (so42_involution(&borel, eta, eps), r)
                }
                other => return Err(CliError::Usage(format!("no involutions for `{other}`"))),
            };
            let anti = star.check_antiautomorphism();
            let mut checks = vec![Check::from_bool(
                "reality.anti-automorphism",
                &format!("{} is an involutive anti-automorphism", star.name),
                anti.ok(),
                || anti.witness(),
            )];
            let desc = format!("r = {} is star-real", r.to_text());
            checks.push(match star.reality_residual(&r) {
                Ok(res) => Check::from_bool("reality.r-matrix", &desc, res.is_zero(), || format!("r* − r = {}", res.to_text())),
                Err(e) => Check::fail("reality.r-matrix", &desc, &e.to_string()),
            });
            Ok(emit(&single("check-reality", checks), format))
        }
        Command::MapBasis { algebra, params, format } => {
            let (c1, c2) = borel_params(&params)?;
            let (conformal, ambient, expected): (ConformalAlgebra, TwoTensor, Box<dyn Fn(&LieAlgebra) -> TwoTensor>) = match algebra.as_str() {
                "so32" | "sp4" => {
                    let so = build_so32()?;
                    let r = so5_borel_rmatrix(&|l| so.get(l), &c1, &c2);
                    let half = Scalar::ratio(1, 2);
                    let (u1, u2) = (&c1 * &half, &c2 * &half);
                    (so, r, Box::new(move |g: &LieAlgebra| d3_two_mass_rmatrix(g, &u1, &u2)))
                }
                "so42" | "sl4" => {
                    let so = build_so42()?;
                    let r = sl4_borel_rmatrix(&|l| so.get(l), &c1, &c2);
                    let u = c1.clone();
                    (so, r, Box::new(move |g: &LieAlgebra| d4_null_plane_rmatrix(g, &u)))
                }
                other => return Err(CliError::Usage(format!("map-basis supports so32 and so42, not `{other}`"))),
            };
            let emb = conformal.physical_embedding().map_err(|e| CliError::Usage(e.to_string()))?;
            let image = to_sub_basis(&emb, &ambient).map_err(|e| CliError::Usage(e.to_string()))?;
            let want = expected(&emb.sub);
            let diff = coefficient_diff(&image, &want);
            match format {
                Format::Text => {
                    print!("{}", serialize_rmatrix(&image));
                    if diff.is_empty() {
                        println!("# equals the closed physical form");
                    } else {
                        println!("# differs from the closed physical form {}: {}", want.to_text(), diff.join("; "));
                    }
                }
                Format::Json => {
                    let terms: Vec<serde_json::Value> = image
                        .terms()
                        .map(|(k, c)| serde_json::json!({"left": emb.sub.labels()[k[0]], "right": emb.sub.labels()[k[1]], "coeff": c.to_string()}))
                        .collect();
                    let v = serde_json::json!({
                        "algebra": algebra,
                        "params": {"c1": c1.to_string(), "c2": c2.to_string()},
                        "tensor": image.to_text(),
                        "terms": terms,
                        "expected": want.to_text(),
                        "matches_expected": diff.is_empty(),
                        "differences": diff,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::HopfVerify { order, compare_printed_antipode, format } => {
            if order < 2 {
                return Err(CliError::Usage("--order must be at least 2".into()));
            }
            let mut report = single("hopf-verify", hopf_checks(order, compare_printed_antipode));
            report.suite = format!("hopf-verify (order {order})");
            Ok(emit(&report, format))
        }
        Command::Report { format } => {
            let catalog = Catalog::build()?;
            Ok(emit(&run_suite(&catalog, "all")?, format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
