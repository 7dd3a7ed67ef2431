//! Batch command-line surface over the residue library. Every subcommand is a
//! pure function of its arguments: output is canonically ordered and
//! byte-identical across runs. Exit codes: 0 success/PASS, 1 verification
//! FAIL, 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use thomres::equivariant;
use thomres::ggl;
use thomres::json;
use thomres::laurent;
use thomres::rational::rat_from_str;
use thomres::thom;

#[derive(Parser)]
#[command(
    name = "thomres",
    about = "Exact iterated residues at infinity: Thom series, multidegrees, \
             and hypersurface degree certificates",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Thom polynomial Tp_k^codim in Chern classes
    Tp {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        codim: u32,
        /// JSON file with a numerator polynomial (required for k > 5)
        #[arg(long)]
        q: Option<PathBuf>,
    },
    /// Compare computed Thom polynomials against the golden table
    VerifyTable1 {
        #[arg(long)]
        kmax: usize,
        /// JSON numerator files; each carries its own order k
        #[arg(long)]
        q: Vec<PathBuf>,
    },
    /// Positivity/connectedness scan of the Thom-series coefficients
    Scan {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        radius: i32,
        #[arg(long)]
        q: Option<PathBuf>,
    },
    /// The k = 3 factorized expansion cross-check
    Tp3 {
        #[arg(long, default_value_t = 6)]
        radius: i32,
    },
    /// Hypersurface degree certificate for dimension n
    Ggl {
        #[arg(long)]
        n: usize,
        /// Twist as a p/q string; defaults to 1/(n^3 (n+1))
        #[arg(long)]
        delta: Option<String>,
    },
    /// Multidegree of a monomial ideal
    Mdeg {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Fixed-point sum vs iterated residue double evaluation
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Homogeneous degree of the random test polynomial
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Generic iterated residue from a JSON problem description
    Residue {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn fail2(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_q(path: &PathBuf) -> Result<thom::QPoly, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let dto: json::QPolyDto =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    json::qpoly_from_json(&dto).map_err(|e| e.to_string())
}

fn q_for(k: usize, q: &Option<PathBuf>) -> Result<thom::QPoly, String> {
    match q {
        Some(path) => {
            let q = read_q(path)?;
            if q.k != k {
                return Err(format!("numerator file is for k = {}, requested k = {k}", q.k));
            }
            Ok(q)
        }
        None => thom::QPoly::builtin(k).map_err(|e| e.to_string()),
    }
}

#[derive(Serialize)]
struct ScanJson {
    k: usize,
    radius: i32,
    negative: Vec<Vec<i32>>,
    violations: Vec<Vec<i32>>,
    inconclusive: usize,
    satisfied: usize,
    verdict: String,
}

#[derive(Serialize)]
struct Tp3Json {
    radius: i32,
    tables_match: bool,
    negative: usize,
    ratio_violations: usize,
    verdict: String,
}

#[derive(Serialize)]
struct OracleJson {
    k: usize,
    n: usize,
    seed: u64,
    sum: String,
    residue: String,
    verdict: String,
}

#[derive(Serialize)]
struct VerifyRowJson {
    k: usize,
    pass: bool,
    differing: Vec<String>,
}

#[derive(Serialize)]
struct VerifyJson {
    rows: Vec<VerifyRowJson>,
    verdict: String,
}

fn main() -> ExitCode {
    // THREADS is accepted as a tuning hint; results never depend on it.
    let _ = std::env::var("THREADS");
    let cli = Cli::parse();
    let json_out = cli.format == Format::Json;
    match cli.command {
        Command::Tp { k, codim, q } => {
            let q = match q_for(k, &q) {
                Ok(q) => q,
                Err(e) => return fail2(e),
            };
            match thom::thom_polynomial(k, codim, &q) {
                Ok(tp) => {
                    if json_out {
                        println!("{}", json::to_string_pretty(&json::poly_to_json(&tp)));
                    } else {
                        println!("{tp}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail2(e),
            }
        }
        Command::VerifyTable1 { kmax, q } => {
            let mut user = BTreeMap::new();
            for path in &q {
                match read_q(path) {
                    Ok(qp) => {
                        user.insert(qp.k, qp);
                    }
                    Err(e) => return fail2(e),
                }
            }
            match thom::verify_table1(kmax, &user) {
                Ok(report) => {
                    let pass = report.all_pass();
                    if json_out {
                        let dto = VerifyJson {
                            rows: report
                                .rows
                                .iter()
                                .map(|r| VerifyRowJson {
                                    k: r.k,
                                    pass: r.pass,
                                    differing: r.differing_monomials.clone(),
                                })
                                .collect(),
                            verdict: if pass { "PASS".into() } else { "FAIL".into() },
                        };
                        println!("{}", json::to_string_pretty(&dto));
                    } else {
                        println!("{report}");
                    }
                    if pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail2(e),
            }
        }
        Command::Scan { k, radius, q } => {
            let q = match q_for(k, &q) {
                Ok(q) => q,
                Err(e) => return fail2(e),
            };
            match thom::scan_conjecture(k, radius, &q) {
                Ok(report) => {
                    if json_out {
                        let dto = ScanJson {
                            k,
                            radius,
                            negative: report.negative_keys.clone(),
                            violations: report.violations.clone(),
                            inconclusive: report.inconclusive.len(),
                            satisfied: report.satisfied,
                            verdict: if report.clean() { "PASS".into() } else { "FAIL".into() },
                        };
                        println!("{}", json::to_string_pretty(&dto));
                    } else {
                        println!("{report}");
                    }
                    if report.clean() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail2(e),
            }
        }
        Command::Tp3 { radius } => {
            let factorized = thom::tp3_factorized(radius);
            let q3 = thom::QPoly::builtin(3).expect("built-in Q_3");
            let engine = match thom::tp_window(3, &q3, radius) {
                Ok(t) => t,
                Err(e) => return fail2(e),
            };
            let mut tables_match = true;
            for r in -radius..=radius {
                for s in -radius..=radius {
                    let t = -r - s;
                    if t.abs() > radius {
                        continue;
                    }
                    let key = [r, s, t];
                    if factorized.get(&key) != engine.get(&key) {
                        tables_match = false;
                    }
                }
            }
            let negative = factorized
                .iter()
                .filter(|(_, c)| num_traits::Signed::is_negative(*c))
                .count();
            let ratio_violations = thom::tp3_ratio_violations(&factorized).len();
            let pass = tables_match && negative == 0 && ratio_violations == 0;
            if json_out {
                let dto = Tp3Json {
                    radius,
                    tables_match,
                    negative,
                    ratio_violations,
                    verdict: if pass { "PASS".into() } else { "FAIL".into() },
                };
                println!("{}", json::to_string_pretty(&dto));
            } else {
                println!(
                    "factorized vs residue window on radius {radius}: {}; \
                     {negative} negative coefficients; {ratio_violations} ratio violations",
                    if tables_match { "identical" } else { "DIFFER" }
                );
                println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Ggl { n, delta } => {
            let delta = match delta.as_deref().map(rat_from_str).transpose() {
                Ok(d) => d,
                Err(e) => return fail2(e),
            };
            let params = match ggl::GglParams::new(n, delta) {
                Ok(p) => p,
                Err(e) => return fail2(e),
            };
            match ggl::certify(&params) {
                Ok(cert) => {
                    if json_out {
                        println!(
                            "{}",
                            json::to_string_pretty(&json::certificate_to_json(&cert))
                        );
                    } else {
                        println!("{cert}");
                    }
                    if cert.verdict() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail2(e),
            }
        }
        Command::Mdeg { ideal, weights } => {
            let ideal_text = match std::fs::read_to_string(&ideal) {
                Ok(t) => t,
                Err(e) => return fail2(format!("{}: {e}", ideal.display())),
            };
            let ideal_dto: json::MonomialIdealDto = match serde_json::from_str(&ideal_text) {
                Ok(d) => d,
                Err(e) => return fail2(format!("{}: {e}", ideal.display())),
            };
            let weights_text = match std::fs::read_to_string(&weights) {
                Ok(t) => t,
                Err(e) => return fail2(format!("{}: {e}", weights.display())),
            };
            let weights_dto: json::WeightsDto = match serde_json::from_str(&weights_text) {
                Ok(d) => d,
                Err(e) => return fail2(format!("{}: {e}", weights.display())),
            };
            let m = json::ideal_from_json(&ideal_dto);
            let w = match json::weights_from_json(&weights_dto) {
                Ok(w) => w,
                Err(e) => return fail2(e),
            };
            match equivariant::mdeg_monomial(&m, &w) {
                Ok(mdeg) => {
                    if json_out {
                        println!("{}", json::to_string_pretty(&json::poly_to_json(&mdeg)));
                    } else {
                        println!("{mdeg}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail2(e),
            }
        }
        Command::Oracle { k, n, seed, degree } => {
            if k > n {
                return fail2("the localisation model needs k <= n");
            }
            let q = equivariant::random_homogeneous_q(k, degree, seed);
            match equivariant::localisation_oracle(&q, n, k, seed) {
                Ok(rep) => {
                    if json_out {
                        let dto = OracleJson {
                            k,
                            n,
                            seed,
                            sum: thomres::rat_to_string(&rep.sum_value),
                            residue: thomres::rat_to_string(&rep.residue_value),
                            verdict: rep.to_string(),
                        };
                        println!("{}", json::to_string_pretty(&dto));
                    } else {
                        println!("{rep}");
                    }
                    if rep.equal() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail2(e),
            }
        }
        Command::Residue { spec } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => return fail2(format!("{}: {e}", spec.display())),
            };
            let dto: json::ResidueSpecDto = match serde_json::from_str(&text) {
                Ok(d) => d,
                Err(e) => return fail2(format!("{}: {e}", spec.display())),
            };
            let (prob, _ring) = match json::residue_problem_from_json(&dto) {
                Ok(p) => p,
                Err(e) => return fail2(e),
            };
            match laurent::iterated_residue_checked(&prob) {
                Ok(res) => {
                    if json_out {
                        println!("{}", json::to_string_pretty(&json::poly_to_json(&res)));
                    } else {
                        println!("{res}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail2(e),
            }
        }
    }
}
