//! `qmac` — compute and verify multi-access channel rates, capacity-region
//! geometry, and Gaussian CV transmission thresholds from the command line.
//!
//! Output is deterministic: identical invocations produce byte-identical
//! CSV or JSON. Exit codes: 0 success, 1 domain/input error, 2 usage error.

mod input;
mod table;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use input::{load_ensemble, load_mac, load_scenario, Grid};
use table::{Table, Value};

use qmac_core::capacity_region::{
    is_polymatroid, minkowski_sum, polymatroid_vertices, rank_function, verify_additivity,
    AdditivityEnsembles, InputEnsemble,
};
use qmac_core::cv_rates::{
    demarcation_theta, entangled_squeezing_for_budget, input_entropy_bound,
    min_squeezing_threshold, output_entropy_bound, rate_bs_thermal, rate_coherent, rate_entangled,
    rate_one_mode_squeezed_optimized, BoundVariant,
};
use qmac_core::discrete_mac::{
    check_code_property, regularized_capacity_witness, symmetric_channel_rates,
    upper_bound_capacity, HelperChannelSpec,
};
use qmac_core::gaussian::{
    db_to_squeezing, squeezing_to_db, xp_gate_special_t, xp_noise_variances,
};
use qmac_core::qstate::{basis_ket, bell_phi_plus, code_5qubit, PureState};

#[derive(Parser)]
#[command(name = "qmac", version, about = "Quantum multi-access channel toolkit")]
struct Cli {
    #[command(subcommand)]
    domain: Domain,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Write to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Domain {
    /// Discrete helper-sender channels
    #[command(subcommand)]
    Discrete(DiscreteCmd),
    /// Classical capacity-region geometry
    #[command(subcommand)]
    Region(RegionCmd),
    /// Continuous-variable rates and thresholds
    #[command(subcommand)]
    Cv(CvCmd),
}

#[derive(Subcommand)]
enum DiscreteCmd {
    /// Check S(rho_e) = min(2|e|, m) over every erasure subset
    VerifyCode {
        #[arg(long, value_enum)]
        state: CodeState,
    },
    /// Capacity upper bound for m parallel channel copies
    Bound {
        /// Number of helper-senders
        #[arg(long)]
        n: u64,
        /// Largest copy count m to tabulate
        #[arg(long)]
        m_max: u64,
    },
    /// Holevo data of the symmetric two-sender protocol
    Symmetric,
    /// Regularized-capacity superadditivity witness
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeState {
    Zero,
    Bell,
    Code5,
}

#[derive(Subcommand)]
enum RegionCmd {
    /// Vertices of the rate region for a channel and input ensemble
    Vertices(ChannelArgs),
    /// Polymatroid axioms of the rank function
    Check(ChannelArgs),
    /// Minkowski sum of two channel regions
    Sum(TwoChannelArgs),
    /// Region additivity under parallel composition
    Additivity(AdditivityArgs),
}

#[derive(Args)]
struct ChannelArgs {
    /// Channel table file
    #[arg(long)]
    channel: PathBuf,
    /// Input ensemble file (uniform inputs when omitted)
    #[arg(long)]
    ensemble: Option<PathBuf>,
}

#[derive(Args)]
struct TwoChannelArgs {
    #[arg(long)]
    channel: PathBuf,
    #[arg(long)]
    channel2: PathBuf,
    #[arg(long)]
    ensemble: Option<PathBuf>,
    #[arg(long)]
    ensemble2: Option<PathBuf>,
}

#[derive(Args)]
struct AdditivityArgs {
    #[command(flatten)]
    channels: TwoChannelArgs,
    /// Ensemble over the product channel's alphabets (may correlate the two
    /// channel uses); switches the check to the containment direction
    #[arg(long, conflicts_with_all = ["ensemble", "ensemble2"])]
    correlated_ensemble: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CvCmd {
    /// Rates of the three encodings over a helper-budget grid
    Rates {
        /// Scenario file (key = value)
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Demarcation crossings theta(N_B) for the entangled strategy
    Demarcation {
        #[arg(long)]
        na: f64,
        /// Helper budget grid start:stop:count[:lin|log]
        #[arg(long)]
        nb_grid: String,
        #[arg(long, default_value = "coherent-amplitude")]
        variant: String,
    },
    /// Minimal squeezing for superadditivity under thermal loss
    Threshold {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        na: f64,
        /// Loss-channel transmissivity cos^2(omega)
        #[arg(long)]
        tloss: f64,
        /// Thermal photons in the loss channel
        #[arg(long)]
        nth: f64,
        #[arg(long, default_value = "coherent-amplitude")]
        variant: String,
    },
    /// Gate-noise variances of the measurement-induced XP gate
    XpNoise {
        /// Gate transmission parameter T (defaults to (3-sqrt(5))/2)
        #[arg(long)]
        t: Option<f64>,
        /// Homodyne efficiency
        #[arg(long)]
        eta: f64,
        /// Ancilla squeezing in dB
        #[arg(long)]
        sdb: f64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli.domain) {
        Ok(tbl) => {
            let rendered = match cli.format {
                OutFormat::Csv => tbl.to_csv(),
                OutFormat::Json => tbl.to_json(),
            };
            match &cli.out {
                None => print!("{rendered}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        std::process::exit(1);
                    }
                }
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(domain: &Domain) -> Result<Table, String> {
    match domain {
        Domain::Discrete(cmd) => run_discrete(cmd),
        Domain::Region(cmd) => run_region(cmd),
        Domain::Cv(cmd) => run_cv(cmd),
    }
}

// ---------------------------------------------------------------------------
// discrete
// ---------------------------------------------------------------------------

fn run_discrete(cmd: &DiscreteCmd) -> Result<Table, String> {
    match cmd {
        DiscreteCmd::VerifyCode { state } => {
            let (phi, m): (PureState, usize) = match state {
                CodeState::Zero => (basis_ket(0, 1), 1),
                CodeState::Bell => (bell_phi_plus(), 2),
                CodeState::Code5 => (code_5qubit(), 5),
            };
            let report = check_code_property(&phi, m).map_err(|e| e.to_string())?;
            let mut tbl = Table::new(vec!["mask", "erased", "entropy_bits", "expected_bits", "pass"]);
            for sub in &report.subsets {
                tbl.push(vec![
                    Value::Int(sub.mask as i64),
                    Value::Int(sub.mask.count_ones() as i64),
                    Value::Num(sub.entropy_bits),
                    Value::Num(sub.expected_bits),
                    Value::Bool(sub.pass),
                ]);
            }
            Ok(tbl)
        }
        DiscreteCmd::Bound { n, m_max } => {
            if *m_max < 1 {
                return Err("--m-max must be at least 1".into());
            }
            let mut tbl = Table::new(vec!["m", "bound_bits", "per_use_bits"]);
            for m in 1..=*m_max {
                let spec = HelperChannelSpec::new(*n, 1, m).map_err(|e| e.to_string())?;
                let total = upper_bound_capacity(&spec).map_err(|e| e.to_string())?;
                tbl.push(vec![
                    Value::Int(m as i64),
                    Value::Num(total),
                    Value::Num(total / m as f64),
                ]);
            }
            Ok(tbl)
        }
        DiscreteCmd::Symmetric => {
            let rates = symmetric_channel_rates().map_err(|e| e.to_string())?;
            let mut tbl = Table::new(vec!["s_mean", "s_cond", "chi"]);
            tbl.push(vec![
                Value::Num(rates.s_mean),
                Value::Num(rates.s_cond),
                Value::Num(rates.chi),
            ]);
            Ok(tbl)
        }
        DiscreteCmd::Witness => {
            let w = regularized_capacity_witness();
            let mut tbl = Table::new(vec!["lhs_bits", "rhs_bits", "holds"]);
            tbl.push(vec![Value::Num(w.lhs), Value::Num(w.rhs), Value::Bool(w.holds)]);
            Ok(tbl)
        }
    }
}

// ---------------------------------------------------------------------------
// region
// ---------------------------------------------------------------------------

fn channel_and_ensemble(
    args: &ChannelArgs,
) -> Result<(qmac_core::capacity_region::ClassicalMac, InputEnsemble), String> {
    let mac = load_mac(&args.channel)?;
    let ens = match &args.ensemble {
        Some(path) => load_ensemble(path)?,
        None => InputEnsemble::uniform(&mac),
    };
    Ok((mac, ens))
}

fn vertex_table(region: &qmac_core::capacity_region::RegionPolytope) -> Table {
    let cols: Vec<String> = (0..region.dim()).map(|i| format!("rate_{i}")).collect();
    let mut tbl = Table::new(cols);
    for v in region.vertices() {
        tbl.push(v.iter().map(|x| Value::Num(*x)).collect());
    }
    tbl
}

fn run_region(cmd: &RegionCmd) -> Result<Table, String> {
    match cmd {
        RegionCmd::Vertices(args) => {
            let (mac, ens) = channel_and_ensemble(args)?;
            let f = rank_function(&mac, &ens).map_err(|e| e.to_string())?;
            let region = polymatroid_vertices(&f).map_err(|e| e.to_string())?;
            Ok(vertex_table(&region))
        }
        RegionCmd::Check(args) => {
            let (mac, ens) = channel_and_ensemble(args)?;
            let f = rank_function(&mac, &ens).map_err(|e| e.to_string())?;
            let report = is_polymatroid(&f);
            let mut tbl = Table::new(vec![
                "polymatroid",
                "empty_value",
                "monotonicity_slack",
                "submodularity_slack",
            ]);
            tbl.push(vec![
                Value::Bool(report.passed),
                Value::Num(report.empty_value),
                Value::Num(report.monotonicity_slack),
                Value::Num(report.submodularity_slack),
            ]);
            Ok(tbl)
        }
        RegionCmd::Sum(args) => {
            let (mac_a, ens_a) = channel_and_ensemble(&ChannelArgs {
                channel: args.channel.clone(),
                ensemble: args.ensemble.clone(),
            })?;
            let (mac_b, ens_b) = channel_and_ensemble(&ChannelArgs {
                channel: args.channel2.clone(),
                ensemble: args.ensemble2.clone(),
            })?;
            let ra = polymatroid_vertices(&rank_function(&mac_a, &ens_a).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let rb = polymatroid_vertices(&rank_function(&mac_b, &ens_b).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let sum = minkowski_sum(&ra, &rb).map_err(|e| e.to_string())?;
            Ok(vertex_table(&sum))
        }
        RegionCmd::Additivity(args) => {
            let mac_a = load_mac(&args.channels.channel)?;
            let mac_b = load_mac(&args.channels.channel2)?;
            let (mode, ensembles) = match &args.correlated_ensemble {
                Some(path) => ("correlated", AdditivityEnsembles::Correlated(load_ensemble(path)?)),
                None => {
                    let ens_a = match &args.channels.ensemble {
                        Some(p) => load_ensemble(p)?,
                        None => InputEnsemble::uniform(&mac_a),
                    };
                    let ens_b = match &args.channels.ensemble2 {
                        Some(p) => load_ensemble(p)?,
                        None => InputEnsemble::uniform(&mac_b),
                    };
                    (
                        "product",
                        AdditivityEnsembles::Product {
                            first: ens_a,
                            second: ens_b,
                        },
                    )
                }
            };
            let report = verify_additivity(&mac_a, &mac_b, &ensembles).map_err(|e| e.to_string())?;
            let mut tbl = Table::new(vec![
                "mode",
                "passed",
                "worst_gap",
                "product_vertices",
                "reference_vertices",
            ]);
            tbl.push(vec![
                Value::Text(mode.into()),
                Value::Bool(report.passed),
                Value::Num(report.worst_gap),
                Value::Int(report.product_region.vertices().len() as i64),
                Value::Int(report.reference_region.vertices().len() as i64),
            ]);
            Ok(tbl)
        }
    }
}

// ---------------------------------------------------------------------------
// cv
// ---------------------------------------------------------------------------

fn scenario_f64(
    map: &std::collections::BTreeMap<String, String>,
    key: &str,
) -> Result<Option<f64>, String> {
    map.get(key)
        .map(|v| {
            v.parse::<f64>()
                .map_err(|_| format!("scenario key '{key}': expected a number, got '{v}'"))
        })
        .transpose()
}

fn require(map: &std::collections::BTreeMap<String, String>, key: &str) -> Result<f64, String> {
    scenario_f64(map, key)?.ok_or_else(|| format!("scenario is missing required key '{key}'"))
}

fn run_cv(cmd: &CvCmd) -> Result<Table, String> {
    match cmd {
        CvCmd::Rates { scenario } => {
            let map = load_scenario(scenario)?;
            let theta = require(&map, "theta")?;
            let n_a = require(&map, "na")?;
            let grid = match scenario_f64(&map, "nb")? {
                Some(nb) => Grid::new(nb, nb, 1, false)?,
                None => {
                    let start = require(&map, "nb_start")?;
                    let stop = require(&map, "nb_stop")?;
                    let count = require(&map, "nb_count")? as usize;
                    let log_spaced = match map.get("nb_scale").map(String::as_str) {
                        None | Some("lin") => false,
                        Some("log") => true,
                        Some(other) => {
                            return Err(format!("nb_scale must be lin or log, got '{other}'"))
                        }
                    };
                    Grid::new(start, stop, count, log_spaced)?
                }
            };
            let variant = match map.get("variant") {
                Some(v) => BoundVariant::parse(v).map_err(|e| e.to_string())?,
                None => BoundVariant::default(),
            };
            let noise = match (scenario_f64(&map, "tloss")?, scenario_f64(&map, "nth")?) {
                (Some(t), nth) => Some((t, nth.unwrap_or(0.0))),
                (None, Some(_)) => return Err("scenario sets 'nth' without 'tloss'".into()),
                (None, None) => None,
            };

            let mut cols = vec![
                "nb".to_string(),
                "squeezing_db".to_string(),
                "rate_coherent".to_string(),
                "rate_squeezed".to_string(),
                "rate_entangled".to_string(),
                "bound_output".to_string(),
                "bound_input".to_string(),
            ];
            if noise.is_some() {
                cols.push("rate_entangled_thermal".to_string());
            }
            let mut tbl = Table::new(cols);
            for nb in grid.points() {
                let r = entangled_squeezing_for_budget(nb);
                let mut row = vec![
                    Value::Num(nb),
                    Value::Num(squeezing_to_db(r)),
                    Value::Num(rate_coherent(n_a, theta).map_err(|e| e.to_string())?),
                    Value::Num(
                        rate_one_mode_squeezed_optimized(n_a, nb, theta)
                            .map_err(|e| e.to_string())?
                            .0,
                    ),
                    Value::Num(rate_entangled(n_a, r, theta).map_err(|e| e.to_string())?),
                    Value::Num(
                        output_entropy_bound(n_a, nb, theta, variant).map_err(|e| e.to_string())?,
                    ),
                    Value::Num(input_entropy_bound(n_a).map_err(|e| e.to_string())?),
                ];
                if let Some((t_loss, n_th)) = noise {
                    row.push(Value::Num(
                        rate_bs_thermal(n_a, r, theta, t_loss, n_th).map_err(|e| e.to_string())?,
                    ));
                }
                tbl.push(row);
            }
            Ok(tbl)
        }
        CvCmd::Demarcation { na, nb_grid, variant } => {
            let variant = BoundVariant::parse(variant).map_err(|e| e.to_string())?;
            let grid = Grid::parse(nb_grid)?;
            let mut tbl = Table::new(vec!["nb", "crossings", "theta_low", "theta_high"]);
            for nb in grid.points() {
                let roots = demarcation_theta(*na, nb, variant).map_err(|e| e.to_string())?;
                let (lo, hi) = match (roots.first(), roots.last()) {
                    (Some(a), Some(b)) => (Value::Num(*a), Value::Num(*b)),
                    _ => (Value::Null, Value::Null),
                };
                tbl.push(vec![Value::Num(nb), Value::Int(roots.len() as i64), lo, hi]);
            }
            Ok(tbl)
        }
        CvCmd::Threshold {
            theta,
            na,
            tloss,
            nth,
            variant,
        } => {
            let variant = BoundVariant::parse(variant).map_err(|e| e.to_string())?;
            let db = min_squeezing_threshold(*na, *theta, *tloss, *nth, variant)
                .map_err(|e| e.to_string())?;
            let mut tbl = Table::new(vec![
                "theta",
                "na",
                "t_loss",
                "n_th",
                "variant",
                "threshold_db",
                "nb_at_threshold",
            ]);
            let (db_cell, nb_cell) = match db {
                Some(db) => (
                    Value::Num(db),
                    Value::Num(2.0 * db_to_squeezing(db).sinh().powi(2)),
                ),
                None => (Value::Null, Value::Null),
            };
            tbl.push(vec![
                Value::Num(*theta),
                Value::Num(*na),
                Value::Num(*tloss),
                Value::Num(*nth),
                Value::Text(variant.name().into()),
                db_cell,
                nb_cell,
            ]);
            Ok(tbl)
        }
        CvCmd::XpNoise { t, eta, sdb } => {
            let t = t.unwrap_or_else(xp_gate_special_t);
            if !(t > 0.0 && t <= 1.0) {
                return Err(format!("--t must be in (0, 1], got {t}"));
            }
            if !(*eta > 0.0 && *eta <= 1.0) {
                return Err(format!("--eta must be in (0, 1], got {eta}"));
            }
            if *sdb < 0.0 {
                return Err(format!("--sdb must be nonnegative, got {sdb}"));
            }
            let (s1, s2) = xp_noise_variances(t, *eta, db_to_squeezing(*sdb));
            let mut tbl = Table::new(vec![
                "t",
                "eta",
                "s_db",
                "sigma1_sq",
                "sigma2_sq",
                "sigma2_noise",
            ]);
            tbl.push(vec![
                Value::Num(t),
                Value::Num(*eta),
                Value::Num(*sdb),
                Value::Num(s1),
                Value::Num(s2),
                Value::Num(s1 + s2),
            ]);
            Ok(tbl)
        }
    }
}
