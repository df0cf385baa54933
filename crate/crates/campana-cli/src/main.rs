//! `campana`: decide, certify, and construct witnesses for separable
//! Campana rational connectedness of complete toric orbifolds in positive
//! characteristic.
//!
//! Exit codes: 0 certified/success, 1 input error, 2 not SCRC, 3
//! inconclusive.

mod report;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use campana_core::campana::{scrc_check, CampanaOrbifold, Multiplicity};
use campana_core::fan::is_refinement;
use campana_core::modp::{Prime, SpanSearch};
use campana_core::oracle::{brute_force_witnesses, SearchBudget};
use campana_core::witness::{
    crit_sing, crit_sing_via_blowdown, witness_smooth, witness_surface, wps_verdict, Reason,
    Verdict, VerdictStatus,
};
use campana_core::wps::{wps_fan, Weights};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "campana",
    version,
    about = "Separable Campana rational connectedness of toric orbifolds over F_p-bar"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = false)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a contact-order collection against an orbifold
    Check {
        /// Field characteristic (prime)
        #[arg(long = "char")]
        characteristic: u64,
        /// Fan/orbifold JSON file
        fan: PathBuf,
        /// Contact-order JSON file
        sigma: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Construct a certified witness for an orbifold
    Witness {
        #[arg(long = "char")]
        characteristic: u64,
        fan: PathBuf,
        /// Coarse fan to run the blow-down criterion against
        #[arg(long)]
        coarse: Option<PathBuf>,
        /// Seed for sampled search paths
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Per-cone singularity table and per-ray non-adjacency summary
    Classify {
        #[arg(long = "char")]
        characteristic: u64,
        fan: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verdict for a weighted projective space given by its weights
    Wps {
        #[arg(long = "char")]
        characteristic: u64,
        /// Per-ray multiplicities, e.g. `inf,2,inf` (default: all inf)
        #[arg(long)]
        multiplicities: Option<String>,
        /// Weights q_0 q_1 ...
        #[arg(required = true)]
        weights: Vec<u64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Blow up a weighted projective space into a certified orbifold
    RepairWps {
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(required = true)]
        weights: Vec<u64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Star subdivision of a fan at a new ray
    Subdivide {
        fan: PathBuf,
        /// Coordinates of the new ray
        #[arg(required = true, allow_negative_numbers = true)]
        coords: Vec<i64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Is the first fan a refinement of the second?
    RefineCheck {
        fine: PathBuf,
        coarse: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Exhaustive witness enumeration within a coefficient bound
    Oracle {
        #[arg(long = "char")]
        characteristic: u64,
        fan: PathBuf,
        /// Largest marking coefficient to enumerate
        #[arg(long, default_value_t = 12)]
        bound: u64,
        /// Markings allowed on a single ray
        #[arg(long, default_value_t = 1)]
        max_markings: u32,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, format, code)) => {
            let rendered = match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
                Format::Text => report::render(&value).trim_end().to_string(),
            };
            println!("{rendered}");
            code
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn prime(characteristic: u64) -> Result<Prime, String> {
    Prime::new(characteristic).map_err(|e| e.to_string())
}

fn verdict_exit(status: VerdictStatus) -> ExitCode {
    match status {
        VerdictStatus::CertifiedScrc => ExitCode::from(0),
        VerdictStatus::NotScrc => ExitCode::from(2),
        VerdictStatus::Inconclusive => ExitCode::from(3),
    }
}

fn run(command: Command) -> Result<(Value, Format, ExitCode), String> {
    match command {
        Command::Check {
            characteristic,
            fan,
            sigma,
            out,
        } => {
            let p = prime(characteristic)?;
            let (orb, _) = schema::read_orbifold(&fan)?;
            let sigma = schema::read_sigma(&sigma, orb.fan())?;
            let cert = scrc_check(&sigma, &orb, p);
            let code = if cert.certified() {
                ExitCode::from(0)
            } else {
                ExitCode::from(3)
            };
            Ok((schema::certificate_value(&cert), out.format, code))
        }
        Command::Witness {
            characteristic,
            fan,
            coarse,
            seed,
            out,
        } => {
            let p = prime(characteristic)?;
            let (orb, _) = schema::read_orbifold(&fan)?;
            let verdict = construct_witness(&orb, coarse.as_deref(), p, seed)?;
            let code = verdict_exit(verdict.status);
            Ok((schema::verdict_value(&verdict), out.format, code))
        }
        Command::Classify {
            characteristic,
            fan,
            out,
        } => {
            let p = prime(characteristic)?;
            let (orb, _) = schema::read_orbifold(&fan)?;
            let value = classify_report(&orb, p)?;
            Ok((value, out.format, ExitCode::from(0)))
        }
        Command::Wps {
            characteristic,
            multiplicities,
            weights,
            out,
        } => {
            let p = prime(characteristic)?;
            let weights = Weights::new(weights).map_err(|e| e.to_string())?;
            let mults = match multiplicities {
                None => vec![Multiplicity::Infinite; weights.len()],
                Some(spec) => schema::parse_multiplicity_list(&spec)?,
            };
            let verdict = wps_verdict(&weights, &mults, p).map_err(|e| e.to_string())?;
            let fan = wps_fan(&weights).map_err(|e| e.to_string())?;
            let mut value = schema::verdict_value(&verdict);
            value
                .as_object_mut()
                .expect("verdict is an object")
                .insert("fan".into(), schema::fan_value(&fan, Some(&mults)));
            let code = verdict_exit(verdict.status);
            Ok((value, out.format, code))
        }
        Command::RepairWps {
            characteristic,
            weights,
            out,
        } => {
            let p = prime(characteristic)?;
            let weights = Weights::new(weights).map_err(|e| e.to_string())?;
            let (fan, sigma, cert) =
                campana_core::witness::wps_repair(&weights, p).map_err(|e| e.to_string())?;
            let value = json!({
                "fan": schema::fan_value(&fan, None),
                "witness": schema::sigma_value(&sigma),
                "certificate": schema::certificate_value(&cert),
            });
            Ok((value, out.format, ExitCode::from(0)))
        }
        Command::Subdivide { fan, coords, out } => {
            let (orb, explicit) = schema::read_orbifold(&fan)?;
            let subdivided = orb
                .fan()
                .star_subdivide(&coords)
                .map_err(|e| e.to_string())?;
            let mults = explicit.then(|| {
                let mut m = orb.multiplicities().to_vec();
                m.push(Multiplicity::Infinite);
                m
            });
            Ok((
                schema::fan_value(&subdivided, mults.as_deref()),
                out.format,
                ExitCode::from(0),
            ))
        }
        Command::RefineCheck { fine, coarse, out } => {
            let (fine_orb, _) = schema::read_orbifold(&fine)?;
            let (coarse_orb, _) = schema::read_orbifold(&coarse)?;
            let refinement =
                is_refinement(fine_orb.fan(), coarse_orb.fan()).map_err(|e| e.to_string())?;
            Ok((
                json!({ "refinement": refinement }),
                out.format,
                ExitCode::from(0),
            ))
        }
        Command::Oracle {
            characteristic,
            fan,
            bound,
            max_markings,
            out,
        } => {
            let p = prime(characteristic)?;
            let (orb, _) = schema::read_orbifold(&fan)?;
            let budget = SearchBudget {
                max_coeff: bound,
                max_markings_per_ray: max_markings,
                ..SearchBudget::default()
            };
            let found = brute_force_witnesses(&orb, p, &budget).map_err(|e| e.to_string())?;
            let list: Vec<Value> = found.iter().map(schema::sigma_value).collect();
            Ok((Value::Array(list), out.format, ExitCode::from(0)))
        }
    }
}

/// Strategy chain for `witness`: the smooth-cone construction, then (on
/// surfaces) the singularity criterion, the raw surface hypothesis, and the
/// blow-down route when a coarse fan is supplied.
fn construct_witness(
    orb: &CampanaOrbifold,
    coarse: Option<&std::path::Path>,
    p: Prime,
    seed: u64,
) -> Result<Verdict, String> {
    let search = SpanSearch::with_seed(seed);
    let smooth = witness_smooth(orb, p, &search);
    if smooth.is_certified() {
        return Ok(smooth);
    }
    if orb.fan().dim() == 2 {
        let sing = crit_sing(orb, p);
        if sing.is_certified() {
            return Ok(sing);
        }
        let surface = witness_surface(orb, p);
        if surface.is_certified() {
            return Ok(surface);
        }
    }
    if let Some(coarse_path) = coarse {
        if orb.fan().dim() != 2 {
            return Err("the blow-down criterion applies to surfaces only".into());
        }
        let (coarse_orb, _) = schema::read_orbifold(coarse_path)?;
        let verdict =
            crit_sing_via_blowdown(orb, coarse_orb.fan(), p).map_err(|e| e.to_string())?;
        if verdict.is_certified() {
            return Ok(verdict);
        }
    }
    Ok(Verdict {
        status: VerdictStatus::Inconclusive,
        reason: Reason::NoCriterionApplies,
        witness: None,
        certificate: None,
    })
}

fn classify_report(orb: &CampanaOrbifold, p: Prime) -> Result<Value, String> {
    let fan = orb.fan();
    let classes = fan.classify_all(p).map_err(|e| e.to_string())?;
    let adjacency = fan.adjacency();
    let cones: Vec<Value> = fan
        .max_cones()
        .iter()
        .zip(&classes)
        .map(|(cone, class)| {
            use campana_core::fan::SingularityClass;
            let name = match class {
                SingularityClass::Smooth => "smooth",
                SingularityClass::Tame(_) => "tame",
                SingularityClass::Wild(_) => "wild",
            };
            json!({
                "cone": cone.rays(),
                "class": name,
                "index": schema::bigint_value(&class.index()),
            })
        })
        .collect();
    let mut criterion_holds = true;
    let rays: Vec<Value> = (0..fan.rays().len())
        .map(|ray| {
            let non_adjacent = &adjacency.ray_non_adjacent[ray];
            let has_good = non_adjacent.iter().any(|&c| !classes[c].is_wild());
            criterion_holds &= has_good;
            json!({
                "ray": ray,
                "coords": fan.ray(ray).coords(),
                "non_adjacent_cones": non_adjacent,
                "has_smooth_or_tame_non_adjacent": has_good,
            })
        })
        .collect();
    Ok(json!({
        "dim": fan.dim(),
        "characteristic": p.get(),
        "cones": cones,
        "rays": rays,
        "criterion_holds": criterion_holds,
    }))
}
